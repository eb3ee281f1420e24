// bicayley: command-line front end.
//
// Exit status: 0 success, 2 usage or input error, 3 budget/cap/timeout,
// 4 falsification (an asserted invariant failed on the computed data).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicayley/arguments.hpp"
#include "bicayley/bounds.hpp"
#include "bicayley/canonical.hpp"
#include "bicayley/classifier.hpp"
#include "bicayley/index.hpp"
#include "bicayley/report.hpp"
#include "bicayley/survey.hpp"

using namespace bicayley;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitFalsified = 4;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::CapExceeded:
    case ErrorCode::Timeout:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::SizeCapExceeded: return kExitBudget;
    default: return kExitUsage;
  }
}

/// Everything a run needs beyond its subcommand arguments. Flags win over
/// BICAYLEY_* environment variables, which win over the defaults.
struct Settings {
  std::string format;
  unsigned threads = 0;
  std::string seed = "1";
  std::string budget;
  std::string node_budget;
  std::string vertex_cap;
  std::string aut_cap;
  bool quiet = false;

  Json env = Json::object();

  std::string from_env(const char* var, const std::string& flag, const std::string& fallback) {
    if (!flag.empty()) return flag;
    if (const char* v = std::getenv(var)) {
      env[var] = v;
      return v;
    }
    return fallback;
  }

  std::uint64_t budget_value() { return parse_count(from_env("BICAYLEY_BUDGET", budget, std::to_string(kDefaultSurveyBudget))); }
  SearchLimits limits() {
    SearchLimits l;
    l.node_budget = parse_count(from_env("BICAYLEY_NODE_BUDGET", node_budget, std::to_string(kDefaultNodeBudget)));
    l.vertex_cap = parse_count(from_env("BICAYLEY_VERTEX_CAP", vertex_cap, std::to_string(kDefaultSearchVertexCap)));
    return l;
  }
  std::size_t aut_cap_value() {
    return parse_count(from_env("BICAYLEY_AUT_CAP", aut_cap, std::to_string(kDefaultAutEnumerationCap)));
  }
  unsigned thread_count() {
    const std::string t = from_env("BICAYLEY_THREADS", threads ? std::to_string(threads) : "", "0");
    return detail::resolve_threads(static_cast<unsigned>(parse_count(t)));
  }
  std::uint64_t seed_value() { return parse_count(seed); }
};

Json big(const BigInt& b) {
  if (b >= 0 && b <= BigInt(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(b);
  if (b < 0 && b >= BigInt(std::numeric_limits<std::int64_t>::min())) return static_cast<std::int64_t>(b);
  return b.str();
}

Json subgroup_json(const AbelianGroup& A, const Subgroup& H) {
  return Json{{"type", isomorphism_type_name(invariant_factors(A, H))},
              {"order", H.order()},
              {"members", format_set(A, H.members())}};
}

std::string alpha_text(const AbelianGroup& A, const GroupAutomorphism& alpha) {
  std::string s;
  for (std::size_t i = 0; i < A.rank(); ++i) {
    if (i) s += ' ';
    s += A.format(A.unit(i)) + "->" + A.format(alpha(A.unit(i)));
  }
  return s;
}

Json witness_json(const AbelianGroup& A, const Witness& w) {
  return std::visit(
      [&](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return Json();
        } else if constexpr (std::is_same_v<T, A1Witness>) {
          return Json{{"C", subgroup_json(A, x.c)}};
        } else if constexpr (std::is_same_v<T, A2Witness>) {
          return Json{{"alpha", alpha_text(A, x.alpha)}, {"alpha_order", x.alpha.order()}};
        } else if constexpr (std::is_same_v<T, A3Witness>) {
          return Json{{"H", subgroup_json(A, x.h)}, {"K", subgroup_json(A, x.k)}};
        } else {
          return Json{{"C", subgroup_json(A, x.c)},
                      {"Z", subgroup_json(A, x.z)},
                      {"S_prime", std::string(to_string(x.s_prime_kind))},
                      {"S_double_prime", format_set(A, x.s_double_prime)}};
        }
      },
      w);
}

/// Rate-limited progress lines on stderr.
std::function<void(std::uint64_t, std::uint64_t)> progress_printer(bool quiet, std::string label) {
  if (quiet) return {};
  auto last = std::make_shared<int>(-1);
  return [last, label](std::uint64_t done, std::uint64_t total) {
    const int pct = total ? static_cast<int>(100 * done / total) : 100;
    if (pct / 5 == *last / 5 && done != total) return;
    *last = pct;
    std::cerr << label << ": " << done << "/" << total << " (" << pct << "%)\n";
  };
}

struct Common {
  std::string group;
  std::string subgroup;
  std::string set;
  std::string mode = "directed";
};

class App {
 public:
  int run(int argc, char** argv) {
    CLI::App app{"Bipartite Cayley digraphs on abelian groups"};
    app.require_subcommand(1);
    app.add_option("--format", s_.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", s_.threads, "worker threads (0: all cores)");
    app.add_option("--seed", s_.seed, "PRNG seed");
    app.add_option("--budget", s_.budget, "max stabilizer searches, e.g. 1e6 or 2^24");
    app.add_option("--node-budget", s_.node_budget, "refinement calls per search");
    app.add_option("--vertex-cap", s_.vertex_cap, "largest digraph searched");
    app.add_option("--aut-cap", s_.aut_cap, "largest Aut(A) enumerated");
    app.add_flag("--quiet", s_.quiet, "no progress on stderr");
    app.fallthrough();

    auto need_group = [&](CLI::App* sc) { sc->add_option("--group", c_.group, "e.g. C4xC2^2")->required(); };
    auto opt_sub = [&](CLI::App* sc, bool required) {
      auto o = sc->add_option("--subgroup", c_.subgroup, "index:k, type:<group>, A2 or generators");
      if (required) o->required();
    };
    auto opt_mode = [&](CLI::App* sc) {
      sc->add_option("--mode", c_.mode, "directed or undirected")->check(CLI::IsMember({"directed", "undirected"}));
    };

    auto* info = app.add_subcommand("group-info", "invariants of a group");
    need_group(info);

    auto* subs = app.add_subcommand("subgroups", "list subgroups");
    need_group(subs);
    std::string kind = "index2";
    subs->add_option("--kind", kind, "index2, prime-order, prime-index or all")
        ->check(CLI::IsMember({"index2", "prime-order", "prime-index", "all"}));

    auto* auts = app.add_subcommand("auts", "automorphisms, optionally those fixing B");
    need_group(auts);
    opt_sub(auts, false);
    std::size_t list_limit = 0;
    auts->add_option("--list", list_limit, "print up to this many automorphisms");

    auto* index = app.add_subcommand("index", "Cayley index of one Cay(A,S)");
    need_group(index);
    opt_sub(index, false);
    index->add_option("--set", c_.set, "connection set, e.g. \"1,3,5\" or \"(1,0);(0,1)\" or all-minus-B")->required();
    opt_mode(index);

    auto* classify = app.add_subcommand("classify", "A1-A4 class of a connection set");
    need_group(classify);
    opt_sub(classify, true);
    classify->add_option("--set", c_.set, "connection set")->required();
    opt_mode(classify);
    bool all_matches = false, no_cross = false;
    classify->add_flag("--all-matches", all_matches, "report every class that matches");
    classify->add_flag("--no-cross-check", no_cross, "skip the stabilizer search");

    auto* bounds = app.add_subcommand("bounds", "lemma bounds with exact counts, lower bounds, thresholds");
    bounds->add_option("--group", c_.group, "group");
    opt_sub(bounds, false);
    std::string lemma = "all";
    bounds->add_option("--lemma", lemma, "lemma name or all");
    bool thresholds = false, prelim = false;
    bounds->add_flag("--thresholds", thresholds, "scan the two size thresholds (744, 8214)");
    bounds->add_flag("--prelim", prelim, "check the preliminary facts on the group");
    std::string exact_cap = std::to_string(kDefaultExactSubsetCap);
    bounds->add_option("--exact-cap", exact_cap, "largest |A| counted exactly");

    auto* table = app.add_subcommand("table", "recompute a published table");
    int which = 1;
    table->add_option("--which", which, "1 (directed) or 2 (undirected)")->check(CLI::IsMember({1, 2}))->required();
    std::string size_cap = "64";
    table->add_option("--size-cap", size_cap, "skip groups larger than this");

    auto* survey = app.add_subcommand("survey", "bipartite Cayley index of (A,B) or of A");
    need_group(survey);
    opt_sub(survey, false);
    opt_mode(survey);
    std::string method = "exhaustive", samples = std::to_string(kDefaultRandomSamples), checkpoint;
    unsigned shard_bits = 8;
    bool global = false;
    survey->add_option("--method", method, "exhaustive, random or reduced")
        ->check(CLI::IsMember({"exhaustive", "random", "reduced"}));
    survey->add_option("--samples", samples, "random method sample count");
    survey->add_option("--checkpoint", checkpoint, "NDJSON checkpoint file (resumes if present)");
    survey->add_option("--shard-bits", shard_bits, "2^k shards on the high subset bits");
    survey->add_flag("--global", global, "minimum over every index-2 subgroup");

    auto* sample = app.add_subcommand("sample", "Monte Carlo proportion of minimal-index sets");
    need_group(sample);
    opt_sub(sample, true);
    opt_mode(sample);
    std::string mc_samples = "2000";
    sample->add_option("--samples", mc_samples, "sample count");
    double min_lower = -1;
    sample->add_option("--require-lower", min_lower, "exit 4 unless the Wilson lower bound exceeds this");

    auto* unl = app.add_subcommand("unlabeled", "isomorphism classes of the admissible Cay(A,S)");
    need_group(unl);
    opt_sub(unl, true);
    opt_mode(unl);

    auto* c26 = app.add_subcommand("c26", "C2^6 reduction checks and search");
    bool c26_search = false;
    c26->add_flag("--search", c26_search, "run the candidate search (long)");
    c26->add_option("--checkpoint", checkpoint, "NDJSON checkpoint file");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
      if (*info) return group_info();
      if (*subs) return subgroups(kind);
      if (*auts) return automorphisms(list_limit);
      if (*index) return index_cmd();
      if (*classify) return classify_cmd(all_matches, !no_cross);
      if (*bounds) return bounds_cmd(lemma, thresholds, prelim, parse_count(exact_cap));
      if (*table) return table_cmd(which, parse_count(size_cap));
      if (*survey) return survey_cmd(method_from_string(method), parse_count(samples), checkpoint, shard_bits, global);
      if (*sample) return sample_cmd(parse_count(mc_samples), min_lower);
      if (*unl) return unlabeled_cmd();
      if (*c26) return c26_cmd(c26_search, checkpoint);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_code_for(e.code());
    }
    return kExitUsage;
  }

 private:
  Settings s_;
  Common c_;
  std::string command_;

  Json config(const std::string& command, Json extra = Json::object()) {
    Json cfg{{"command", command}};
    if (!c_.group.empty()) cfg["group"] = c_.group;
    if (!c_.subgroup.empty()) cfg["subgroup"] = c_.subgroup;
    if (!c_.set.empty()) cfg["set"] = c_.set;
    for (auto it = extra.begin(); it != extra.end(); ++it) cfg[it.key()] = it.value();
    cfg["env"] = s_.env;
    return cfg;
  }

  int emit(Json doc, const char* default_format = "json") {
    const std::string f = s_.format.empty() ? default_format : s_.format;
    bicayley::emit(doc, format_from_string(f), std::cout);
    return kExitOk;
  }

  AbelianGroup group() { return parse_group(c_.group); }

  std::optional<Subgroup> subgroup(const AbelianGroup& A) {
    if (c_.subgroup.empty()) return std::nullopt;
    return parse_subgroup(A, c_.subgroup);
  }

  Mode mode() { return parse_mode(c_.mode); }

  SurveyOptions survey_options(const std::string& label) {
    SurveyOptions o;
    o.budget = s_.budget_value();
    o.threads = s_.thread_count();
    o.seed = s_.seed_value();
    o.limits = s_.limits();
    o.aut_cap = s_.aut_cap_value();
    o.progress = progress_printer(s_.quiet, label);
    return o;
  }

  Json options_json(const SurveyOptions& o) {
    return Json{{"budget", o.budget},
                {"threads", o.threads},
                {"seed", o.seed},
                {"rng", std::string(kRngName)},
                {"node_budget", o.limits.node_budget},
                {"vertex_cap", o.limits.vertex_cap},
                {"aut_cap", o.aut_cap}};
  }

  int group_info() {
    const auto A = group();
    const auto cap = s_.aut_cap_value();
    Json r{{"name", A.name()},
           {"order", A.size()},
           {"invariant_factors", A.invariant_factors()},
           {"exponent", A.exponent()},
           {"involutions_subgroup_order", involution_subgroup(A).order()},
           {"index2_subgroups", index2_subgroups(A).size()}};
    try {
      r["aut_order"] = automorphism_count(A, cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
      r["aut_order"] = "above aut cap " + std::to_string(cap);
    }
    return emit(Json{{"config", config("group-info", {{"aut_cap", cap}})}, {"result", r}});
  }

  int subgroups(const std::string& kind) {
    const auto A = group();
    std::vector<Subgroup> list;
    if (kind == "index2") list = index2_subgroups(A);
    else if (kind == "prime-order") list = prime_order_subgroups(A);
    else if (kind == "prime-index") list = prime_index_subgroups(A);
    else list = all_subgroups(A);
    Json rows = Json::array();
    for (std::size_t i = 0; i < list.size(); ++i) {
      Json row{{"k", i}};
      const Json sub = subgroup_json(A, list[i]);
      for (auto it = sub.begin(); it != sub.end(); ++it) row[it.key()] = it.value();
      if (kind == "index2") row["exceptional"] = is_exceptional_pair(A, list[i]);
      rows.push_back(row);
    }
    return emit(Json{{"config", config("subgroups", {{"kind", kind}})}, {"result", {{"count", list.size()}}}, {"rows", rows}});
  }

  int automorphisms(std::size_t list_limit) {
    const auto A = group();
    const auto B = subgroup(A);
    const auto cap = s_.aut_cap_value();
    Json rows = Json::array();
    std::size_t count = 0, fixing = 0;
    for_each_automorphism(
        A,
        [&](const GroupAutomorphism& alpha) {
          ++count;
          const bool fixes = B && alpha.stabilizes(B->members());
          if (fixes) ++fixing;
          if (rows.size() < list_limit && (!B || fixes))
            rows.push_back(Json{{"images", alpha_text(A, alpha)}, {"order", alpha.order()}});
          return true;
        },
        cap);
    Json r{{"aut_order", count}};
    if (B) {
      require_index_two(A, *B);
      r["fixing_B"] = fixing;
      r["exceptional_pair"] = is_exceptional_pair(A, *B);
    }
    return emit(Json{{"config", config("auts", {{"aut_cap", cap}})}, {"result", r}, {"rows", rows}});
  }

  int index_cmd() {
    const auto A = group();
    const auto B = subgroup(A);
    const Bitset S = parse_connection_set(A, B ? &*B : nullptr, c_.set);
    const auto m = mode();
    const auto conn = ConnectionSet::from_bits(A, S);
    if (m == Mode::Undirected && !conn.inverse_closed())
      throw Error(ErrorCode::NotInverseClosed, "connection set " + format_set(A, S) + " is not inverse-closed");
    const auto limits = s_.limits();
    const auto G = build_cayley(A, conn);
    const auto rep = automorphism_report(G, limits);
    Json r{{"set", format_set(A, S)},
           {"mode", std::string(to_string(m))},
           {"cayley_index", big(rep.cayley_index)},
           {"aut_order", big(rep.full_order)},
           {"is_drr", rep.cayley_index == 1},
           {"connected", is_connected(G)},
           {"stabilizer_generators", rep.stabilizer_generators.size()}};
    if (m == Mode::Undirected) r["minimal_graph_index"] = rep.cayley_index == minimal_graph_index(A);
    if (B) r["bipartite_over_B"] = bipartition_respected(G, *B);
    return emit(Json{{"config", config("index", {{"mode", c_.mode}, {"node_budget", limits.node_budget}})},
                     {"result", r}});
  }

  int classify_cmd(bool all_matches, bool cross) {
    const auto A = group();
    const auto B = *subgroup(A);
    const Bitset S = parse_connection_set(A, &B, c_.set);
    const auto m = mode();
    const Classifier cl(A, B, m, s_.aut_cap_value());
    const auto c = cl.classify(S, all_matches);
    Json r{{"set", format_set(A, S)},
           {"verdict", std::string(to_string(c.verdict))},
           {"witness", witness_json(A, c.witness)},
           {"witness_verified", cl.verify(S, c)}};
    if (all_matches) {
      Json all = Json::array();
      for (auto v : c.all_matches) all.push_back(std::string(to_string(v)));
      r["all_matches"] = all;
    }
    bool consistent = r["witness_verified"].get<bool>();
    if (cross) {
      const auto idx = cayley_index(A, S, s_.limits());
      const std::uint64_t target = m == Mode::Directed ? 1 : minimal_graph_index(A);
      const bool ok = c.verdict != Verdict::Good || idx == target;
      r["cross_check"] = Json{{"cayley_index", big(idx)}, {"consistent", ok}};
      consistent = consistent && ok;
    }
    emit(Json{{"config", config("classify", {{"mode", c_.mode}, {"cross_check", cross}})}, {"result", r}});
    return consistent ? kExitOk : kExitFalsified;
  }

  int bounds_cmd(const std::string& lemma, bool thresholds, bool prelim, std::size_t exact_cap) {
    Json rows = Json::array();
    bool all_hold = true;
    auto add = [&](const BoundReport& b) {
      rows.push_back(Json{{"name", b.name},
                          {"group", b.group},
                          {"subgroup", b.subgroup},
                          {"params", b.params},
                          {"exact", b.exact ? big(*b.exact) : Json()},
                          {"log2_bound", b.bound.log2_value()},
                          {"formula", b.bound.formula},
                          {"holds", b.holds}});
      all_hold = all_hold && b.holds;
    };
    if (thresholds) {
      for (Mode m : {Mode::Directed, Mode::Undirected}) {
        const auto t = threshold_scan(m);
        rows.push_back(Json{{"name", std::string("threshold-") + std::string(to_string(m))},
                            {"group", ""},
                            {"subgroup", ""},
                            {"params", t.inequality},
                            {"exact", t.computed},
                            {"log2_bound", Json()},
                            {"formula", "published " + std::to_string(t.published_value)},
                            {"holds", t.computed == t.published_value}});
      }
      return emit(Json{{"config", config("bounds", {{"thresholds", true}})}, {"rows", rows}}, "csv");
    }
    if (c_.group.empty()) throw Error(ErrorCode::BadParameter, "bounds needs --group (or --thresholds)");
    const auto A = group();
    const auto cap = s_.aut_cap_value();
    if (prelim) {
      for (const auto& b : prelim_facts_check(A, cap)) add(b);
    } else {
      const auto B = subgroup(A);
      if (!B) throw Error(ErrorCode::BadParameter, "bounds needs --subgroup");
      LemmaParams base;
      base.exact_cap = exact_cap;
      auto want = [&](const char* name) { return lemma == "all" || lemma == name; };
      for (const char* name : {"a1-directed", "a1-undirected", "triples"})
        if (want(name)) add(lemma_bound(name, A, *B, base));
      if (want("alpha-invariant") || want("alpha-undirected")) {
        const auto iota = inversion_automorphism(A);
        const bool exceptional = is_exceptional_pair(A, *B);
        for (const auto& alpha : stabilizing_automorphisms(A, *B, cap)) {
          if (alpha.is_identity()) continue;
          LemmaParams p = base;
          p.alpha = alpha;
          if (want("alpha-invariant")) add(lemma_bound("alpha-invariant", A, *B, p));
          if (want("alpha-undirected") && A.exponent() > 2 && !(alpha == iota) && !exceptional)
            add(lemma_bound("alpha-undirected", A, *B, p));
        }
      }
      if (want("hk-cosets") || want("hk-undirected"))
        for (const auto& h : prime_order_subgroups(A))
          for (const auto& k : prime_index_subgroups(A)) {
            if (!h.is_subgroup_of(k) || !h.is_subgroup_of(*B)) continue;
            LemmaParams p = base;
            p.h = h;
            p.k = k;
            if (want("hk-cosets")) add(lemma_bound("hk-cosets", A, *B, p));
            if (want("hk-undirected") && !A.is_two_group()) add(lemma_bound("hk-undirected", A, *B, p));
          }
      for (Mode m : {Mode::Directed, Mode::Undirected}) {
        if (lemma != "all") break;
        const auto lb = theorem_lower_bound(m, A, *B);
        rows.push_back(Json{{"name", std::string("lower-bound-") + std::string(to_string(m))},
                            {"group", A.name()},
                            {"subgroup", isomorphism_type_name(invariant_factors(A, *B))},
                            {"params", "ceil((log2|A|)^2)=" + std::to_string(lb.log2_squared_ceiling)},
                            {"exact", big(lb.value)},
                            {"log2_bound", Json()},
                            {"formula", lb.formula},
                            {"holds", true}});
      }
    }
    emit(Json{{"config", config("bounds", {{"lemma", lemma}, {"exact_cap", exact_cap}, {"aut_cap", cap}})},
              {"rows", rows}},
         "csv");
    return all_hold ? kExitOk : kExitFalsified;
  }

  int table_cmd(int which, std::size_t size_cap) {
    auto o = survey_options("table");
    const auto checks = verify_table(which, size_cap, o);
    Json rows = Json::array();
    bool all_match = true;
    for (const auto& c : checks) {
      rows.push_back(Json{{"A", c.row.group},
                          {"B", c.row.subgroup},
                          {"published", c.row.published ? big(*c.row.published) : Json()},
                          {"computed", c.skipped ? Json() : big(c.computed)},
                          {"match", c.skipped ? Json() : Json(c.matches)},
                          {"status", c.skipped ? "SKIPPED" : (c.matches ? "OK" : "MISMATCH")},
                          {"sets_examined", c.sets_examined},
                          {"B_members", c.subgroup_members},
                          {"argmin_set", c.argmin_set},
                          {"reason", c.reason}});
      if (!c.skipped && !c.matches) all_match = false;
    }
    Json extra = options_json(o);
    extra["which"] = which;
    extra["size_cap"] = size_cap;
    extra["mode"] = which == 1 ? "directed" : "undirected";
    emit(Json{{"config", config("table", extra)}, {"rows", rows}}, "csv");
    return all_match ? kExitOk : kExitFalsified;
  }

  Json survey_json(const AbelianGroup& A, const IndexSurveyResult& r) {
    return Json{{"group", r.group},
                {"subgroup", r.subgroup},
                {"mode", std::string(to_string(r.mode))},
                {"method", std::string(to_string(r.method))},
                {"min_index", big(r.min_index)},
                {"argmin_set", format_set(A, r.argmin_set)},
                {"sets_examined", r.sets_examined},
                {"upper_bound_only", r.upper_bound_only}};
  }

  int survey_cmd(Method method, std::uint64_t samples, const std::string& checkpoint, unsigned shard_bits, bool global) {
    const auto A = group();
    auto o = survey_options("survey");
    o.method = method;
    o.samples = samples;
    o.checkpoint = checkpoint;
    o.shard_bits = shard_bits;
    const auto m = mode();
    Json extra = options_json(o);
    extra["mode"] = c_.mode;
    extra["method"] = std::string(to_string(method));
    extra["samples"] = samples;
    extra["shard_bits"] = shard_bits;
    extra["checkpoint"] = checkpoint;
    if (global) {
      o.checkpoint.clear();
      const auto g = global_index(A, m, o);
      Json rows = Json::array();
      for (const auto& r : g.per_subgroup) rows.push_back(survey_json(A, r));
      return emit(Json{{"config", config("survey", extra)}, {"result", {{"global_index", big(g.min_index)}}}, {"rows", rows}});
    }
    const auto B = subgroup(A);
    if (!B) throw Error(ErrorCode::BadParameter, "survey needs --subgroup or --global");
    const auto r = bipartite_index(A, *B, m, o);
    return emit(Json{{"config", config("survey", extra)}, {"result", survey_json(A, r)}});
  }

  int sample_cmd(std::uint64_t samples, double min_lower) {
    const auto A = group();
    const auto B = *subgroup(A);
    auto o = survey_options("sample");
    const auto e = monte_carlo_proportion(A, B, mode(), samples, o.seed, o);
    Json extra = options_json(o);
    extra["mode"] = c_.mode;
    extra["samples"] = samples;
    Json r{{"group", A.name()},
           {"subgroup", isomorphism_type_name(invariant_factors(A, B))},
           {"target_index", e.target_index},
           {"samples", e.samples},
           {"hits", e.hits},
           {"estimate", e.estimate},
           {"wilson_low", e.wilson_low},
           {"wilson_high", e.wilson_high},
           {"wilson_z", kWilsonZ95}};
    emit(Json{{"config", config("sample", extra)}, {"result", r}});
    return min_lower >= 0 && !(e.wilson_low > min_lower) ? kExitFalsified : kExitOk;
  }

  int unlabeled_cmd() {
    const auto A = group();
    const auto B = *subgroup(A);
    auto o = survey_options("unlabeled");
    const auto u = unlabeled_count(A, B, mode(), o);
    Json r{{"group", A.name()},
           {"subgroup", isomorphism_type_name(invariant_factors(A, B))},
           {"total_sets", u.total_sets},
           {"total_classes", u.total_classes},
           {"minimal_index", u.target_index},
           {"minimal_sets", u.minimal_sets},
           {"minimal_classes", u.minimal_classes},
           {"aut_order", u.aut_order},
           {"orbit_bound_holds", u.orbit_bound_holds},
           {"index_constant_on_classes", u.index_constant_on_classes}};
    Json extra = options_json(o);
    extra["mode"] = c_.mode;
    emit(Json{{"config", config("unlabeled", extra)}, {"result", r}});
    return u.orbit_bound_holds && u.index_constant_on_classes ? kExitOk : kExitFalsified;
  }

  int c26_cmd(bool search, const std::string& checkpoint) {
    const auto split = c26_orbit_split();
    const auto count = c26_candidate_count();
    const auto bound = c26_disconnected_bound();
    const bool orbits_ok = split.sizes == std::vector<std::size_t>{20, 6} &&
                           split.representative_orbit == std::vector<std::size_t>{20, 6};
    Json r{{"candidate_count", count},
           {"candidate_count_ok", count == 7701512},
           {"orbit_sizes", split.sizes},
           {"representative_orbit_sizes", split.representative_orbit},
           {"orbits_ok", orbits_ok},
           {"disconnected_bound", big(bound)},
           {"disconnected_bound_ok", bound == 165888}};
    auto o = survey_options("c26");
    o.checkpoint = checkpoint;
    Json extra = options_json(o);
    extra["search"] = search;
    extra["checkpoint"] = checkpoint;
    if (search) {
      const auto res = c26_reduced_search(o.budget, o);
      r["search"] = Json{{"min_index", big(res.min_index)},
                         {"argmin_set", format_set(c26_setup().group, res.argmin_set)},
                         {"sets_examined", res.sets_examined}};
    }
    emit(Json{{"config", config("c26", extra)}, {"result", r}});
    return r["candidate_count_ok"].get<bool>() && orbits_ok && r["disconnected_bound_ok"].get<bool>() ? kExitOk
                                                                                                      : kExitFalsified;
  }
};

}  // namespace

int main(int argc, char** argv) { return App().run(argc, argv); }
