#include "streq/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "streq/border.hpp"
#include "streq/core.hpp"
#include "streq/exact.hpp"
#include "streq/io.hpp"
#include "streq/lcs.hpp"
#include "streq/reductions.hpp"
#include "streq/system.hpp"

namespace streq::cli {

namespace {

using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string stats_line(const SystemStats& st) {
  std::ostringstream ss;
  ss << "k=" << st.k << " r=" << st.r << " c=" << st.c << " t=" << st.t
     << " duplicate-free=" << yesno(st.duplicate_free)
     << " only-border=" << yesno(st.only_border_blocks)
     << " unique-target=" << yesno(st.unique_target);
  return ss.str();
}

json stats_json(const SystemStats& st) {
  return json{{"k", st.k},
              {"r", st.r},
              {"c", st.c},
              {"t", st.t},
              {"duplicate_free", st.duplicate_free},
              {"only_border_blocks", st.only_border_blocks},
              {"unique_target", st.unique_target}};
}

json witness_json(const System& sys, const Assignment& sigma) {
  json w = json::object();
  std::istringstream lines(render_assignment(sys, sigma));
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::string name, eq, tok;
    toks >> name >> eq;
    json value = json::array();
    while (toks >> tok) value.push_back(tok);
    w[name] = std::move(value);
  }
  return w;
}

// The "auto" dispatch rule: border-sat for zero-budget non-erasing
// only-border systems; otherwise compare the lcs-del branch count t^(rc)
// with the deletion-enumeration bound sum_{i<=d} C(N,i) * t^(2k) and take
// the cheaper solver, brute force on ties.
std::string pick_solver(const System& sys, const SystemStats& st, int budget) {
  if (budget == 0) {
    if (st.only_border_blocks && sys.semantics == Semantics::NonErasing)
      return "border-sat";
    return "brute";
  }
  double positions = 0;
  for (const auto& eq : sys.equations()) positions += double(eq.target.size());
  const double log_t = std::log(std::max(1, st.t));
  double rc = 0, twok = 0;
  for (const auto& eq : sys.equations()) rc += double(eq.pattern.size());
  twok = 2.0 * st.k;
  const double lcs_bound = rc * log_t;

  double sets = 0;  // sum_{i<=d} C(N,i), saturating
  double binom = 1;
  for (int i = 0; i <= budget; ++i) {
    sets += binom;
    binom = binom * (positions - i) / (i + 1);
    if (binom < 0) binom = 0;
    if (sets > 1e300) break;
  }
  const double del_bound = std::log(std::max(1.0, sets)) + twok * log_t;
  return lcs_bound < del_bound ? "lcs-del" : "brute";
}

int effective_budget(const System& sys, int flag) {
  if (flag >= 0) return flag;
  return sys.deletion_budget.value_or(0);
}

struct SolveArgs {
  std::string file;
  std::string solver = "auto";
  int deletions = -1;
  std::uint64_t branch_cap = SolveOptions{}.branch_cap;
  bool json_out = false;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  System sys = parse_instance_string(slurp(a.file));
  const SystemStats st = classify(sys);
  const int budget = effective_budget(sys, a.deletions);
  sys.deletion_budget = budget;

  std::string solver = a.solver;
  if (solver == "auto") solver = pick_solver(sys, st, budget);

  SolveOptions opts;
  opts.branch_cap = a.branch_cap;

  const auto start = std::chrono::steady_clock::now();
  SolveOutcome outcome;
  if (solver == "border-sat") {
    if (budget != 0) throw Error("border-sat cannot handle deletions");
    outcome = solve_border(sys);
  } else if (solver == "lcs-del") {
    outcome = solve_deletions_lcs(sys, budget, opts);
  } else if (solver == "brute") {
    outcome = budget > 0 ? solve_deletions_xp(sys, budget, opts) : solve_xp(sys, opts);
  } else {
    throw Error("unknown solver '" + solver + "'");
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();

  if (a.json_out) {
    json rep{{"status", outcome.sat() ? "SAT" : "UNSAT"},
             {"witness", outcome.sat() ? witness_json(sys, *outcome.witness) : json()},
             {"stats", stats_json(st)},
             {"solver", solver},
             {"branches", outcome.branches},
             {"ms", ms}};
    out << rep.dump(2) << "\n";
  } else {
    out << "# status: " << (outcome.sat() ? "SAT" : "UNSAT") << "\n"
        << "# solver: " << solver << "\n"
        << "# branches: " << outcome.branches << "\n"
        << "# ms: " << ms << "\n"
        << "# " << stats_line(st) << "\n";
    if (outcome.sat()) out << render_assignment(sys, *outcome.witness);
  }
  return outcome.sat() ? 0 : 1;
}

struct VerifyArgs {
  std::string file;
  std::string assignment;
  int deletions = -1;
  bool json_out = false;
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
  System sys = parse_instance_string(slurp(a.file));
  Assignment sigma = parse_assignment_string(sys, slurp(a.assignment));
  const int budget = effective_budget(sys, a.deletions);
  const VerifyResult res =
      budget > 0 ? verify_deletions(sys, sigma, budget) : verify(sys, sigma);

  if (a.json_out) {
    json rep{{"status", res.ok ? "ACCEPTED" : "REJECTED"},
             {"reason", res.reason},
             {"equation", res.failed_equation}};
    out << rep.dump(2) << "\n";
  } else {
    out << "# status: " << (res.ok ? "ACCEPTED" : "REJECTED") << "\n";
    if (!res.ok) out << "# reason: " << res.reason << "\n";
  }
  return res.ok ? 0 : 1;
}

json graph_json(const Graph& g) {
  json j{{"n", g.n}, {"edges", json::array()}};
  for (auto [s, t] : g.edges) j["edges"].push_back(json::array({s, t}));
  if (!g.colors.empty()) j["colors"] = g.colors;
  if (!g.labels.empty()) j["labels"] = g.labels;
  return j;
}

Graph graph_from_json(const json& j) {
  Graph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges"))
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  if (j.contains("colors")) g.colors = j.at("colors").get<std::vector<int>>();
  if (j.contains("labels")) g.labels = j.at("labels").get<std::vector<std::string>>();
  return g;
}

json meta_json(const ReductionOutput& ro) {
  json roles = json::object();
  for (const auto& [b, role] : ro.roles)
    roles[ro.system.block_name(b)] = json{{"role", to_string(role.role)},
                                          {"i", role.i},
                                          {"j", role.j},
                                          {"primed", role.primed}};
  return json{{"kind", to_string(ro.kind)},
              {"kappa", ro.kappa},
              {"graph", graph_json(ro.graph)},
              {"roles", std::move(roles)}};
}

ReductionOutput meta_from_json(const json& j, System sys) {
  ReductionOutput ro;
  auto kind = kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw Error("meta names unknown reduction kind");
  ro.kind = *kind;
  ro.kappa = j.at("kappa").get<int>();
  ro.graph = graph_from_json(j.at("graph"));
  ro.system = std::move(sys);
  for (const auto& [name, obj] : j.at("roles").items()) {
    auto b = ro.system.find_block(name);
    if (!b) throw Error("meta references unknown block '" + name + "'");
    auto role = role_from_string(obj.at("role").get<std::string>());
    if (!role) throw Error("meta names unknown role for block '" + name + "'");
    ro.roles[*b] = {*role, obj.at("i").get<int>(), obj.at("j").get<int>(),
                    obj.at("primed").get<bool>()};
  }
  return ro;
}

std::vector<std::string> split_words(const std::string& csv) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : csv) {
    if (ch == ',') {
      words.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  words.push_back(cur);
  return words;
}

struct GenArgs {
  std::string kind;
  std::string graph_file;
  int kappa = 0;
  std::string strings;
  int lcs_len = -1;
  int deletions = -1;
  std::string out_file;
  std::string meta_file;
};

int do_gen(const GenArgs& a, std::ostream& out) {
  std::optional<ReductionOutput> ro;
  System sys;

  if (a.kind == "lcs-multi" || a.kind == "lcs-single") {
    if (a.strings.empty()) throw Error("gen " + a.kind + " needs --strings");
    auto words = split_words(a.strings);
    if (a.kind == "lcs-multi") {
      LcsEmbedding emb = gen_from_lcs_multi(words);
      if (a.lcs_len >= 0) emb.system.deletion_budget = emb.budget(a.lcs_len);
      sys = std::move(emb.system);
    } else {
      int d = a.deletions;
      if (d < 0) {
        if (a.lcs_len < 0)
          throw Error("gen lcs-single needs --deletions or --lcs");
        d = gen_from_lcs_multi(words).budget(a.lcs_len);
        if (d < 0) throw Error("requested LCS length exceeds the input words");
      }
      sys = gen_from_lcs_single(words, d);
    }
  } else {
    auto kind = kind_from_string(a.kind);
    if (!kind) throw Error("unknown generator '" + a.kind + "'");
    if (a.graph_file.empty()) throw Error("gen " + a.kind + " needs --graph");
    if (a.kappa <= 0) throw Error("gen " + a.kind + " needs --kappa");
    Graph g = parse_graph_string(slurp(a.graph_file));
    switch (*kind) {
      case ReductionKind::CliqueSingleEq: ro = gen_clique_single_eq(g, a.kappa); break;
      case ReductionKind::CliqueTwoEq: ro = gen_clique_two_eq(g, a.kappa); break;
      case ReductionKind::CliqueTwoEqEmpty: ro = gen_clique_two_eq_empty(g, a.kappa); break;
      case ReductionKind::MccSize3: ro = gen_mcc_size3(g, a.kappa); break;
      case ReductionKind::CliqueMixed: ro = gen_clique_mixed(g, a.kappa); break;
    }
  }

  const System& emit = ro ? ro->system : sys;
  const std::string text = render_instance(emit);
  if (a.out_file.empty()) {
    out << text;
  } else {
    spit(a.out_file, text);
  }
  if (ro) {
    std::string meta_path = a.meta_file;
    if (meta_path.empty() && !a.out_file.empty()) meta_path = a.out_file + ".meta.json";
    if (!meta_path.empty()) spit(meta_path, meta_json(*ro).dump(2) + "\n");
  }
  return 0;
}

struct DecodeArgs {
  std::string file;
  std::string assignment;
  std::string meta_file;
};

int do_decode(const DecodeArgs& a, std::ostream& out) {
  System sys = parse_instance_string(slurp(a.file));
  std::string meta_path = a.meta_file.empty() ? a.file + ".meta.json" : a.meta_file;
  ReductionOutput ro = meta_from_json(json::parse(slurp(meta_path)), std::move(sys));
  Assignment sigma = parse_assignment_string(ro.system, slurp(a.assignment));
  if (VerifyResult res = verify(ro.system, sigma); !res.ok)
    throw Error("assignment does not satisfy the instance: " + res.reason);
  std::set<int> picked = decode(ro, sigma);
  bool first = true;
  for (int v : picked) {
    out << (first ? "" : " ") << ro.graph.label(v);
    first = false;
  }
  out << "\n";
  return 0;
}

int do_classify(const std::string& file, bool json_out, std::ostream& out) {
  System sys = parse_instance_string(slurp(file));
  const SystemStats st = classify(sys);
  if (json_out)
    out << stats_json(st).dump(2) << "\n";
  else
    out << stats_line(st) << "\n";
  return 0;
}

int do_formula(const std::string& file, std::ostream& out) {
  System sys = parse_instance_string(slurp(file));
  if (sys.semantics != Semantics::NonErasing)
    throw Error("the length formula is defined for non-erasing systems");
  if (!classify(sys).only_border_blocks)
    throw NotBorderOnly("system has a named block in an interior position");
  ValidLengthTable table = compute_valid_lengths(sys);
  Formula2SAT f = build_formula(sys, table);
  out << "# " << f.vars.size() << " variables, " << f.clauses.size() << " clauses"
      << (f.contradiction ? ", contradiction during construction" : "") << "\n"
      << dump_formula(sys, f);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"solver and instance toolbox for systems of string equations"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "decide an instance and print a witness");
  solve_cmd->add_option("file", sa.file, "instance file")->required();
  solve_cmd->add_option("--solver", sa.solver, "auto|brute|border-sat|lcs-del")
      ->check(CLI::IsMember({"auto", "brute", "border-sat", "lcs-del"}));
  solve_cmd->add_option("--deletions", sa.deletions, "deletion budget (overrides the file)");
  solve_cmd->add_option("--branch-cap", sa.branch_cap, "abort after this many branches");
  solve_cmd->add_flag("--json", sa.json_out, "machine-readable report");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "check an assignment against an instance");
  verify_cmd->add_option("file", va.file, "instance file")->required();
  verify_cmd->add_option("--assignment", va.assignment, "assignment file")->required();
  verify_cmd->add_option("--deletions", va.deletions, "deletion budget (overrides the file)");
  verify_cmd->add_flag("--json", va.json_out, "machine-readable report");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance from a graph or word list");
  gen_cmd->add_option("kind", ga.kind,
                      "clique-1eq|clique-2eq|clique-2eq-empty|mcc-size3|clique-mixed|"
                      "lcs-multi|lcs-single")
      ->required();
  gen_cmd->add_option("--graph", ga.graph_file, "graph file (clique/mcc kinds)");
  gen_cmd->add_option("--kappa", ga.kappa, "clique size / number of colors");
  gen_cmd->add_option("--strings", ga.strings, "comma-separated words (lcs kinds)");
  gen_cmd->add_option("--lcs", ga.lcs_len, "target common-subsequence length");
  gen_cmd->add_option("--deletions", ga.deletions, "padding length for lcs-single");
  gen_cmd->add_option("-o,--out", ga.out_file, "write the instance here");
  gen_cmd->add_option("--meta", ga.meta_file, "write decode metadata here");

  DecodeArgs da;
  auto* decode_cmd =
      app.add_subcommand("decode", "read the selected vertices out of a witness");
  decode_cmd->add_option("file", da.file, "instance file")->required();
  decode_cmd->add_option("--assignment", da.assignment, "assignment file")->required();
  decode_cmd->add_option("--meta", da.meta_file, "metadata file (default: file.meta.json)");

  std::string cf_file;
  bool cf_json = false;
  auto* classify_cmd = app.add_subcommand("classify", "print instance parameters");
  classify_cmd->add_option("file", cf_file, "instance file")->required();
  classify_cmd->add_flag("--json", cf_json, "machine-readable output");

  std::string ff_file;
  auto* formula_cmd =
      app.add_subcommand("formula", "dump the length formula of a border instance");
  formula_cmd->add_option("file", ff_file, "instance file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) return do_solve(sa, out);
    if (verify_cmd->parsed()) return do_verify(va, out);
    if (gen_cmd->parsed()) return do_gen(ga, out);
    if (decode_cmd->parsed()) return do_decode(da, out);
    if (classify_cmd->parsed()) return do_classify(cf_file, cf_json, out);
    if (formula_cmd->parsed()) return do_formula(ff_file, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace streq::cli
