#pragma once

#include <algorithm>
#include <bit>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bicayley/automorphism.hpp"
#include "bicayley/canonical.hpp"
#include "bicayley/cayley.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"
#include "bicayley/index.hpp"
#include "bicayley/parse.hpp"
#include "bicayley/stabilizer.hpp"
#include "bicayley/subsets.hpp"

namespace bicayley {

enum class Method { Exhaustive, Random, Reduced };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Exhaustive: return "exhaustive";
    case Method::Random: return "random";
    case Method::Reduced: return "reduced";
  }
  return "?";
}

inline Method method_from_string(std::string_view s) {
  if (s == "exhaustive") return Method::Exhaustive;
  if (s == "random") return Method::Random;
  if (s == "reduced") return Method::Reduced;
  throw Error(ErrorCode::BadParameter, "unknown method '" + std::string(s) + "'");
}

inline constexpr std::uint64_t kDefaultSurveyBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultRandomSamples = 10000;
/// Name of the generator behind every sampled set, echoed into reports.
inline constexpr std::string_view kRngName = "std::mt19937_64";

struct SurveyOptions {
  Method method = Method::Exhaustive;
  std::uint64_t budget = kDefaultSurveyBudget;  // stabilizer searches
  std::uint64_t samples = kDefaultRandomSamples;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // 0: hardware concurrency
  unsigned shard_bits = 8;
  std::string checkpoint;  // NDJSON file, empty for none
  SearchLimits limits;
  std::size_t aut_cap = kDefaultAutEnumerationCap;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

struct IndexSurveyResult {
  std::string group;
  std::string subgroup;
  Mode mode = Mode::Directed;
  Method method = Method::Exhaustive;
  BigInt min_index;
  Bitset argmin_set;
  std::uint64_t sets_examined = 0;
  bool upper_bound_only = false;  // random sampling
};

namespace detail {

inline unsigned resolve_threads(unsigned t) {
  if (t) return t;
  const unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

/// Runs work(i) for i in [0, count) on a small pool. The first exception
/// stops the remaining items and is rethrown.
template <class Work>
void parallel_for(std::uint64_t count, unsigned threads, Work&& work) {
  threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto loop = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard lk(failure_mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };
  if (threads <= 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

struct ShardBest {
  bool done = false;
  bool found = false;
  BigInt index;
  std::uint64_t mask = 0;
  std::uint64_t examined = 0;
};

/// Single writer for survey checkpoints: one header line, then one line per
/// finished shard {shard_id, best_index, best_set, cursor}.
class Checkpoint {
 public:
  Checkpoint(std::string path, nlohmann::json header) : path_(std::move(path)), header_(std::move(header)) {}

  bool enabled() const { return !path_.empty(); }

  /// Loads finished shards from an existing file with a matching header.
  std::map<std::uint64_t, nlohmann::json> load() const {
    std::map<std::uint64_t, nlohmann::json> out;
    if (!enabled()) return out;
    std::ifstream in(path_);
    if (!in) return out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) continue;  // torn final line
      if (first) {
        if (j != header_) throw Error(ErrorCode::BadParameter, "checkpoint " + path_ + " belongs to another run");
        first = false;
        continue;
      }
      out[j.at("shard_id").get<std::uint64_t>()] = j;
    }
    return out;
  }

  void open(bool fresh) {
    if (!enabled()) return;
    out_.open(path_, fresh ? std::ios::trunc : std::ios::app);
    if (!out_) throw Error(ErrorCode::BadParameter, "cannot write checkpoint " + path_);
    if (fresh) out_ << header_.dump() << '\n' << std::flush;
  }

  void write(const nlohmann::json& record) {
    if (!enabled()) return;
    std::lock_guard lk(mu_);
    out_ << record.dump() << '\n' << std::flush;
  }

 private:
  std::string path_;
  nlohmann::json header_;
  std::ofstream out_;
  std::mutex mu_;
};

inline std::string big_to_string(const BigInt& b) { return b.str(); }

/// Image of each unit under each B-stabilizing automorphism.
inline std::vector<std::vector<std::uint8_t>> unit_actions(const AbelianGroup& A, const Subgroup& B,
                                                           const AdmissibleSets& sets, std::size_t aut_cap) {
  std::vector<std::size_t> unit_of(A.size(), 0);
  for (std::size_t i = 0; i < sets.units().size(); ++i)
    for (ElementIndex a : sets.units()[i]) unit_of[a] = i;
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto& alpha : stabilizing_automorphisms(A, B, aut_cap)) {
    if (alpha.is_identity()) continue;
    std::vector<std::uint8_t> img(sets.unit_count());
    for (std::size_t i = 0; i < sets.unit_count(); ++i)
      img[i] = static_cast<std::uint8_t>(unit_of[alpha(sets.units()[i].front())]);
    out.push_back(std::move(img));
  }
  return out;
}

inline bool orbit_minimal(std::uint64_t mask, const std::vector<std::vector<std::uint8_t>>& actions) {
  for (const auto& img : actions) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
      if (mask >> i & 1) m |= std::uint64_t{1} << img[i];
    if (m < mask) return false;
  }
  return true;
}

/// Fair coin flips drawn 64 at a time, low bit first.
class BitStream {
 public:
  explicit BitStream(std::mt19937_64& rng) : rng_(rng) {}
  bool next() {
    if (left_ == 0) {
      word_ = rng_();
      left_ = 64;
    }
    const bool b = word_ & 1;
    word_ >>= 1;
    --left_;
    return b;
  }

 private:
  std::mt19937_64& rng_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

/// One uniform admissible set: a fair bit per unit, in unit order.
inline Bitset sample_set(const AbelianGroup& A, const AdmissibleSets& sets, BitStream& bits) {
  Bitset s = A.empty_set();
  for (const auto& u : sets.units())
    if (bits.next())
      for (ElementIndex a : u) s.set(a);
  return s;
}

}  // namespace detail

/// Minimum Cayley index over the admissible sets of (A, B, mode).
///
/// Exhaustive: every set, split into 2^shard_bits shards on the high mask
/// bits; shards are reduced in order, so ties go to the smallest mask for
/// any thread count. Reduced: only sets that are lexicographically least in
/// their orbit under the B-stabilizing automorphisms (isomorphic digraphs,
/// same index). Random: opts.samples uniform sets; the result is an upper
/// bound.
inline IndexSurveyResult bipartite_index(const AbelianGroup& A, const Subgroup& B, Mode mode,
                                         const SurveyOptions& opts = {}) {
  require_index_two(A, B);
  const AdmissibleSets sets(A, B, mode);
  IndexSurveyResult res;
  res.group = A.name();
  res.subgroup = isomorphism_type_name(invariant_factors(A, B));
  res.mode = mode;
  res.method = opts.method;

  if (opts.method == Method::Random) {
    std::mt19937_64 rng(opts.seed);
    detail::BitStream bits(rng);
    std::vector<Bitset> drawn;
    drawn.reserve(opts.samples);
    for (std::uint64_t i = 0; i < opts.samples; ++i) drawn.push_back(detail::sample_set(A, sets, bits));
    std::vector<BigInt> idx(drawn.size());
    std::atomic<std::uint64_t> done{0};
    detail::parallel_for(drawn.size(), opts.threads, [&](std::uint64_t i) {
      idx[i] = cayley_index(A, drawn[i], opts.limits);
      const auto d = ++done;
      if (opts.progress && d % 256 == 0) opts.progress(d, drawn.size());
    });
    for (std::size_t i = 0; i < drawn.size(); ++i)
      if (i == 0 || idx[i] < res.min_index) {
        res.min_index = idx[i];
        res.argmin_set = drawn[i];
      }
    res.sets_examined = drawn.size();
    res.upper_bound_only = true;
    return res;
  }

  const std::uint64_t total = sets.count();
  if (opts.method == Method::Exhaustive && total > opts.budget && opts.checkpoint.empty())
    throw Error(ErrorCode::BudgetExceeded, std::to_string(total) + " admissible sets for (" + res.group + ", " +
                                               res.subgroup + ") exceed the budget of " +
                                               std::to_string(opts.budget));
  std::vector<std::vector<std::uint8_t>> actions;
  if (opts.method == Method::Reduced) actions = detail::unit_actions(A, B, sets, opts.aut_cap);

  const unsigned units = static_cast<unsigned>(sets.unit_count());
  const unsigned shard_bits = std::min(opts.shard_bits, units);
  const std::uint64_t shards = std::uint64_t{1} << shard_bits;
  const unsigned low = units - shard_bits;

  nlohmann::json header{{"group", res.group},
                        {"subgroup_members", B.members().indices()},
                        {"mode", to_string(mode)},
                        {"method", to_string(opts.method)},
                        {"shards", shards}};
  detail::Checkpoint ck(opts.checkpoint, header);
  std::vector<detail::ShardBest> best(shards);
  const auto resumed = ck.load();
  for (const auto& [id, j] : resumed) {
    if (id >= shards) continue;
    auto& b = best[id];
    b.done = true;
    b.examined = j.at("examined").get<std::uint64_t>();
    if (!j.at("best_index").is_null()) {
      b.found = true;
      b.index = BigInt(j.at("best_index").get<std::string>());
      b.mask = j.at("best_mask").get<std::uint64_t>();
    }
  }
  // With a checkpoint the budget caps this invocation only: whole shards are
  // taken in order while they fit, and a later run resumes the rest.
  std::vector<std::uint64_t> todo;
  std::uint64_t planned = 0;
  for (std::uint64_t shard = 0; shard < shards; ++shard) {
    if (best[shard].done) continue;
    if (planned + (std::uint64_t{1} << low) > opts.budget) break;
    planned += std::uint64_t{1} << low;
    todo.push_back(shard);
  }
  std::uint64_t pending = 0;
  for (const auto& b : best) pending += !b.done;
  if (pending > 0 && todo.empty())
    throw Error(ErrorCode::BudgetExceeded, "one shard of " + std::to_string(std::uint64_t{1} << low) +
                                               " sets exceeds the budget of " + std::to_string(opts.budget) +
                                               "; raise the shard bits or the budget");
  ck.open(resumed.empty());

  std::atomic<std::uint64_t> finished{0};
  detail::parallel_for(todo.size(), opts.threads, [&](std::uint64_t t) {
    const std::uint64_t shard = todo[t];
    auto& b = best[shard];
    const std::uint64_t begin = shard << low;
    const std::uint64_t end = (shard + 1) << low;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      if (opts.method == Method::Reduced && !detail::orbit_minimal(mask, actions)) continue;
      const BigInt c = cayley_index(A, sets.set_for(mask), opts.limits);
      ++b.examined;
      if (!b.found || c < b.index) {
        b.found = true;
        b.index = c;
        b.mask = mask;
      }
    }
    b.done = true;
    ck.write({{"shard_id", shard},
              {"best_index", b.found ? nlohmann::json(detail::big_to_string(b.index)) : nlohmann::json()},
              {"best_mask", b.mask},
              {"best_set", b.found ? format_set(A, sets.set_for(b.mask)) : ""},
              {"cursor", end},
              {"examined", b.examined}});
    const auto f = ++finished;
    if (opts.progress) opts.progress(f, todo.size());
  });
  if (todo.size() < pending)
    throw Error(ErrorCode::BudgetExceeded, std::to_string(pending - todo.size()) + " of " + std::to_string(shards) +
                                               " shards left for (" + res.group + ", " + res.subgroup +
                                               "); rerun with the same checkpoint to resume");

  bool any = false;
  for (const auto& b : best) {
    res.sets_examined += b.examined;
    if (b.found && (!any || b.index < res.min_index)) {
      any = true;
      res.min_index = b.index;
      res.argmin_set = sets.set_for(b.mask);
    }
  }
  return res;
}

struct GlobalIndexResult {
  BigInt min_index;
  std::vector<IndexSurveyResult> per_subgroup;  // index2_subgroups order
};

/// Minimum of bipartite_index over every index-2 subgroup.
inline GlobalIndexResult global_index(const AbelianGroup& A, Mode mode, const SurveyOptions& opts = {}) {
  if (A.size() % 2) throw Error(ErrorCode::OddOrder, A.name() + " has odd order");
  GlobalIndexResult out;
  for (const auto& B : index2_subgroups(A)) {
    auto r = bipartite_index(A, B, mode, opts);
    if (out.per_subgroup.empty() || r.min_index < out.min_index) out.min_index = r.min_index;
    out.per_subgroup.push_back(std::move(r));
  }
  return out;
}

// --------------------------------------------------------------------------
// Tables

struct TableRow {
  std::string group;     // group spec
  std::string subgroup;  // isomorphism type of B
  std::optional<BigInt> published;
  std::string note;
};

inline const std::vector<TableRow>& table_rows(int which) {
  static const std::vector<TableRow> t1{
      {"C2^2", "C2", BigInt(2), ""},
      {"C2^3", "C2^2", BigInt(6), ""},
      {"C2^4", "C2^3", BigInt(24), ""},
      {"C2^5", "C2^4", BigInt(72), ""},
      {"C2^6", "C2^5", BigInt(4), "see c26"},
      {"C3xC6", "C3^2", BigInt(2), ""},
      {"C4xC2^3", "C2^4", BigInt(4), ""},
      {"C4xC2^2", "C2^3", BigInt(4), ""},
      {"C4xC2^2", "C4xC2", BigInt(2), ""},
      {"C4xC2", "C2^2", BigInt(2), ""},
  };
  static const std::vector<TableRow> t2{
      {"C4xC2^l", "C2^(l+1)", std::nullopt, "infinite family, not known for l >= 4"},
      {"C4^2xC2^l", "C4xC2^(l+1)", std::nullopt, "infinite family, not known for l >= 2"},
      {"C2^3", "C2^2", BigInt(6), ""},
      {"C2^4", "C2^3", BigInt(24), ""},
      {"C2^5", "C2^4", BigInt(72), ""},
      {"C2^6", "C2^5", BigInt(4), ""},
      {"C2xC4", "C4", BigInt(6), ""},
      {"C2xC4", "C2^2", BigInt(16), ""},
      {"C2xC8", "C2xC4", BigInt(16), ""},
      {"C4xC4", "C4xC2", BigInt(24), ""},
      {"C4xC2^2", "C2^3", BigInt(768), ""},
      {"C4xC2^2", "C4xC2", BigInt(24), ""},
      {"C3xC6", "C3^2", BigInt(8), ""},
      {"C2xC12", "C2xC6", BigInt(4), ""},
      {"C2^2xC6", "C2xC6", BigInt(4), ""},
      {"C4xC8", "C4^2", BigInt(4), ""},
      {"C4xC8", "C2xC8", BigInt(4), ""},
      {"C2^2xC8", "C2^2xC4", BigInt(12), ""},
      {"C2xC4^2", "C4^2", BigInt(12), ""},
      {"C2xC4^2", "C2^2xC4", BigInt(128), ""},
      {"C2^3xC4", "C2^4", BigInt(786432), ""},
      {"C2^3xC4", "C2^2xC4", BigInt(72), ""},
      {"C3xC12", "C3xC6", BigInt(4), ""},
      {"C2^2xC12", "C2^2xC6", BigInt(4), ""},
      {"C3^2xC6", "C3^3", BigInt(12), ""},
      {"C2^3xC8", "C2^3xC4", BigInt(8), ""},
      {"C4^3", "C2xC4^2", BigInt(4), ""},
      {"C2^4xC4", "C2^3xC4", BigInt(4), ""},
  };
  if (which == 1) return t1;
  if (which == 2) return t2;
  throw Error(ErrorCode::BadParameter, "table must be 1 or 2");
}

struct TableCheck {
  TableRow row;
  bool skipped = false;
  std::string reason;
  BigInt computed;
  bool matches = false;
  std::uint64_t sets_examined = 0;
  std::string argmin_set;
  std::string subgroup_members;
};

/// First index-2 subgroup (index2_subgroups order) of the given type.
inline std::optional<Subgroup> subgroup_of_type(const AbelianGroup& A, const std::string& type) {
  const auto want = AbelianGroup::build(parse_group_spec(type)).invariant_factors();
  for (const auto& B : index2_subgroups(A))
    if (invariant_factors(A, B) == want) return B;
  return std::nullopt;
}

/// Exhaustive recomputation of each table row whose admissible-set count is
/// within opts.budget and whose order is at most size_cap; the rest are
/// reported as skipped with the reason.
inline std::vector<TableCheck> verify_table(int which, std::size_t size_cap, const SurveyOptions& opts = {}) {
  const Mode mode = which == 1 ? Mode::Directed : Mode::Undirected;
  std::vector<TableCheck> out;
  for (const auto& row : table_rows(which)) {
    TableCheck c;
    c.row = row;
    if (!row.published) {
      c.skipped = true;
      c.reason = row.note;
      out.push_back(std::move(c));
      continue;
    }
    const auto A = parse_group(row.group);
    const auto B = subgroup_of_type(A, row.subgroup);
    if (!B) throw Error(ErrorCode::BadSubgroup, row.group + " has no index-2 subgroup of type " + row.subgroup);
    const AdmissibleSets sets(A, *B, mode);
    c.subgroup_members = format_set(A, B->members());
    if (A.size() > size_cap) {
      c.skipped = true;
      c.reason = "order " + std::to_string(A.size()) + " above size cap " + std::to_string(size_cap);
    } else if (sets.unit_count() >= 63 || sets.count() > opts.budget) {
      c.skipped = true;
      c.reason = "2^" + std::to_string(sets.unit_count()) + " sets exceed budget " + std::to_string(opts.budget);
    }
    if (c.skipped) {
      out.push_back(std::move(c));
      continue;
    }
    SurveyOptions o = opts;
    o.method = Method::Exhaustive;
    o.checkpoint.clear();
    const auto r = bipartite_index(A, *B, mode, o);
    c.computed = r.min_index;
    c.matches = r.min_index == *row.published;
    c.sets_examined = r.sets_examined;
    c.argmin_set = format_set(A, r.argmin_set);
    out.push_back(std::move(c));
  }
  return out;
}

// --------------------------------------------------------------------------
// Monte Carlo

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct ProportionEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double estimate = 0;
  double wilson_low = 0;
  double wilson_high = 0;
  std::uint64_t target_index = 1;
  std::uint64_t seed = 0;
};

inline std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n, double z = kWilsonZ95) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double centre = (p + z2 / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Uniform admissible sets (a fair bit per element of A \ B, or per
/// inverse pair {a, -a} and per involution when undirected), drawn from
/// mt19937_64(seed) in order; hits are sets reaching the minimal index.
inline ProportionEstimate monte_carlo_proportion(const AbelianGroup& A, const Subgroup& B, Mode mode,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const SurveyOptions& opts = {}) {
  require_index_two(A, B);
  const AdmissibleSets sets(A, B, mode);
  ProportionEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.target_index = mode == Mode::Directed ? 1 : minimal_graph_index(A);
  std::mt19937_64 rng(seed);
  detail::BitStream bits(rng);
  std::vector<Bitset> drawn;
  drawn.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) drawn.push_back(detail::sample_set(A, sets, bits));
  std::vector<char> hit(samples, 0);
  std::atomic<std::uint64_t> done{0};
  detail::parallel_for(samples, opts.threads, [&](std::uint64_t i) {
    hit[i] = cayley_index(A, drawn[i], opts.limits) == out.target_index;
    const auto d = ++done;
    if (opts.progress && d % 256 == 0) opts.progress(d, samples);
  });
  for (char h : hit) out.hits += h ? 1 : 0;
  out.estimate = samples ? static_cast<double>(out.hits) / static_cast<double>(samples) : 0.0;
  std::tie(out.wilson_low, out.wilson_high) = wilson_interval(out.hits, samples);
  return out;
}

// --------------------------------------------------------------------------
// Unlabeled counts

struct UnlabeledCount {
  std::uint64_t total_sets = 0;
  std::uint64_t total_classes = 0;
  std::uint64_t minimal_sets = 0;     // sets reaching the minimal index
  std::uint64_t minimal_classes = 0;  // classes reaching it
  std::uint64_t target_index = 1;
  std::size_t aut_order = 0;
  bool index_constant_on_classes = true;
  bool orbit_bound_holds = true;  // total_classes * |Aut(A)| >= total_sets
};

/// Isomorphism classes of the admissible Cay(A, S), by canonical form.
inline UnlabeledCount unlabeled_count(const AbelianGroup& A, const Subgroup& B, Mode mode,
                                      const SurveyOptions& opts = {}, const CanonicalLimits& climits = {}) {
  require_index_two(A, B);
  if (A.size() > climits.vertex_cap)
    throw Error(ErrorCode::CapExceeded, A.name() + " exceeds the canonical form cap of " +
                                            std::to_string(climits.vertex_cap) + " vertices");
  const AdmissibleSets sets(A, B, mode);
  if (sets.count() > opts.budget)
    throw Error(ErrorCode::BudgetExceeded, std::to_string(sets.count()) + " sets exceed the budget");
  const std::uint64_t total = sets.count();
  std::vector<CanonicalForm> forms(total);
  std::vector<BigInt> idx(total);
  detail::parallel_for(total, opts.threads, [&](std::uint64_t mask) {
    const auto G = build_cayley(A, sets.set_for(mask));
    forms[mask] = canonical_form(G.digraph(), climits);
    idx[mask] = automorphism_report(G, opts.limits).cayley_index;
  });
  UnlabeledCount out;
  out.target_index = mode == Mode::Directed ? 1 : minimal_graph_index(A);
  out.total_sets = total;
  std::map<CanonicalForm, BigInt> classes;
  for (std::uint64_t m = 0; m < total; ++m) {
    auto [it, fresh] = classes.emplace(forms[m], idx[m]);
    if (!fresh && it->second != idx[m]) out.index_constant_on_classes = false;
    if (idx[m] == out.target_index) ++out.minimal_sets;
  }
  out.total_classes = classes.size();
  for (const auto& [f, c] : classes)
    if (c == out.target_index) ++out.minimal_classes;
  out.aut_order = automorphism_count(A, opts.aut_cap);
  out.orbit_bound_holds = out.total_classes * out.aut_order >= out.total_sets;
  return out;
}

// --------------------------------------------------------------------------
// C2^6 reduction

inline constexpr std::uint64_t kC26MaxExtra = 9;

struct C26Setup {
  AbelianGroup group;
  Subgroup hyperplane;                           // even-weight vectors
  std::vector<ElementIndex> basis;               // e_1..e_6
  std::vector<ElementIndex> representatives;     // e1+e2+e3, e1+...+e5
  std::vector<ElementIndex> residual;            // odd vectors outside the basis (26)
  std::vector<std::vector<ElementIndex>> pools;  // residual minus each representative (25 each)
};

inline C26Setup c26_setup() {
  auto A = AbelianGroup::build({2, 2, 2, 2, 2, 2});
  Bitset even = A.empty_set();
  for (ElementIndex a = 0; a < A.size(); ++a)
    if (std::popcount(a) % 2 == 0) even.set(a);
  C26Setup s{A, Subgroup::from_members(A, even), {}, {}, {}, {}};
  for (std::size_t i = 0; i < 6; ++i) s.basis.push_back(A.unit(i));
  s.representatives = {A.unit(0) | A.unit(1) | A.unit(2), A.unit(0) | A.unit(1) | A.unit(2) | A.unit(3) | A.unit(4)};
  for (ElementIndex a = 0; a < A.size(); ++a)
    if (std::popcount(a) % 2 == 1 && std::popcount(a) != 1) s.residual.push_back(a);
  for (ElementIndex r : s.representatives) {
    std::vector<ElementIndex> pool;
    for (ElementIndex a : s.residual)
      if (a != r) pool.push_back(a);
    s.pools.push_back(std::move(pool));
  }
  return s;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// 2 * sum_{k <= max_extra} C(25, k).
inline std::uint64_t c26_candidate_count(std::uint64_t max_extra = kC26MaxExtra) {
  std::uint64_t t = 0;
  for (std::uint64_t k = 0; k <= max_extra; ++k) t += binomial(25, k);
  return 2 * t;
}

struct OrbitSplit {
  std::vector<std::size_t> sizes;                 // descending
  std::vector<std::size_t> representative_orbit;  // orbit size of each representative
};

/// Orbits of the coordinate permutations (monomial matrices) on the
/// residual odd vectors.
inline OrbitSplit c26_orbit_split() {
  const auto s = c26_setup();
  std::vector<int> perm{0, 1, 2, 3, 4, 5};
  std::map<ElementIndex, std::size_t> orbit_id;
  std::vector<std::vector<ElementIndex>> orbits;
  for (ElementIndex v : s.residual) {
    if (orbit_id.count(v)) continue;
    std::set<ElementIndex> orb;
    std::sort(perm.begin(), perm.end());
    do {
      ElementIndex w = 0;
      for (int i = 0; i < 6; ++i)
        if (v >> i & 1) w |= ElementIndex{1} << perm[i];
      orb.insert(w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (ElementIndex w : orb) orbit_id[w] = orbits.size();
    orbits.emplace_back(orb.begin(), orb.end());
  }
  OrbitSplit out;
  for (const auto& o : orbits) out.sizes.push_back(o.size());
  std::sort(out.sizes.rbegin(), out.sizes.rend());
  for (ElementIndex r : s.representatives) out.representative_orbit.push_back(orbits[orbit_id.at(r)].size());
  return out;
}

/// Lower bound on the index when <S> = C2^l < C2^6: 2^(6-l) components,
/// each with index at least the published directed value for C2^l.
inline BigInt c26_disconnected_bound() {
  const std::map<int, BigInt> table{{2, 2}, {3, 6}, {4, 24}, {5, 72}};
  std::optional<BigInt> best;
  for (const auto& [l, c] : table) {
    const unsigned k = 1u << (6 - l);
    BigInt term = 1;
    for (unsigned i = 2; i <= k; ++i) term *= i;
    const BigInt comp = c << l;
    for (unsigned i = 0; i < k; ++i) term *= comp;
    term >>= 6;
    if (!best || term < *best) best = term;
  }
  return *best;
}

/// Candidate number `rank` in the fixed order: representative, then |T|,
/// then colex rank of T inside the pool.
inline Bitset c26_candidate(const C26Setup& s, std::uint64_t rank) {
  const std::uint64_t half = c26_candidate_count() / 2;
  const std::size_t which = rank >= half ? 1 : 0;
  rank -= which * half;
  std::uint64_t k = 0;
  while (rank >= binomial(25, k)) rank -= binomial(25, k++);
  Bitset S = s.group.empty_set();
  for (ElementIndex e : s.basis) S.set(e);
  S.set(s.representatives[which]);
  // colex unrank
  std::uint64_t r = rank;
  for (std::uint64_t i = k; i >= 1; --i) {
    std::uint64_t c = i - 1;
    while (binomial(c + 1, i) <= r) ++c;
    r -= binomial(c, i);
    S.set(s.pools[which][c]);
  }
  return S;
}

/// Budgeted scan of the reduced C2^6 candidates. Resumes from the last
/// checkpoint record; throws BudgetExceeded after writing a record when the
/// scan is incomplete.
inline IndexSurveyResult c26_reduced_search(std::uint64_t budget, const SurveyOptions& opts = {}) {
  const auto s = c26_setup();
  const std::uint64_t total = c26_candidate_count();
  IndexSurveyResult res;
  res.group = s.group.name();
  res.subgroup = isomorphism_type_name(invariant_factors(s.group, s.hyperplane));
  res.mode = Mode::Directed;
  res.method = Method::Reduced;

  nlohmann::json header{{"search", "c26"}, {"candidates", total}};
  detail::Checkpoint ck(opts.checkpoint, header);
  std::uint64_t start = 0;
  std::uint64_t best_rank = 0;
  bool have = false;
  for (const auto& [id, j] : ck.load()) {
    (void)id;
    start = j.at("cursor").get<std::uint64_t>();
    res.sets_examined = j.at("examined").get<std::uint64_t>();
    if (!j.at("best_index").is_null()) {
      have = true;
      res.min_index = BigInt(j.at("best_index").get<std::string>());
      best_rank = j.at("best_rank").get<std::uint64_t>();
      res.argmin_set = c26_candidate(s, best_rank);
    }
  }
  ck.open(start == 0);
  const std::uint64_t end = std::min(total, start + budget);

  constexpr std::uint64_t chunk = 1024;
  const std::uint64_t chunks = (end - start + chunk - 1) / chunk;
  std::vector<detail::ShardBest> best(chunks);
  std::atomic<std::uint64_t> finished{0};
  detail::parallel_for(chunks, opts.threads, [&](std::uint64_t c) {
    auto& b = best[c];
    const std::uint64_t lo = start + c * chunk, hi = std::min(end, lo + chunk);
    for (std::uint64_t r = lo; r < hi; ++r) {
      const BigInt idx = cayley_index(s.group, c26_candidate(s, r), opts.limits);
      ++b.examined;
      if (!b.found || idx < b.index) {
        b.found = true;
        b.index = idx;
        b.mask = r;
      }
    }
    const auto f = ++finished;
    if (opts.progress) opts.progress(f, chunks);
  });
  for (const auto& b : best) {
    res.sets_examined += b.examined;
    if (b.found && (!have || b.index < res.min_index)) {
      have = true;
      res.min_index = b.index;
      best_rank = b.mask;
      res.argmin_set = c26_candidate(s, b.mask);
    }
  }
  ck.write({{"shard_id", 0},
            {"best_index", have ? nlohmann::json(res.min_index.str()) : nlohmann::json()},
            {"best_rank", best_rank},
            {"best_set", have ? format_set(s.group, res.argmin_set) : ""},
            {"cursor", end},
            {"examined", res.sets_examined}});
  if (end < total)
    throw Error(ErrorCode::BudgetExceeded, "c26 search stopped at candidate " + std::to_string(end) + " of " +
                                               std::to_string(total) + (have ? ", best index so far " + res.min_index.str() : ""));
  return res;
}

}  // namespace bicayley
