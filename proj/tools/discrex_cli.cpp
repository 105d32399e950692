// Command-line front end: validate graphs, explain decisions, cross-check
// explanations against brute-force search.

#include <cstdlib>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "discrex/format.hpp"
#include "discrex/json_io.hpp"

namespace {

using namespace discrex;

enum Exit { ok = 0, failure = 1, usage = 2, capacity = 3 };

Limits limits_from_env() {
  Limits limits;
  if (const char* env = std::getenv("DISCREX_ORACLE_LIMIT")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0))
      throw InputError("DISCREX_ORACLE_LIMIT must be a positive number");
    limits.max_worlds = v;
  }
  return limits;
}

struct Subject {
  std::optional<DecisionGraph> graph;
  FormulaDocument formula;
  const VariableTable& table() const {
    return graph ? graph->table() : formula.circuit->table();
  }
};

Subject load(const std::string& path) {
  const auto text = read_text_file(path);
  Subject s;
  if (looks_like_graph(text)) s.graph = graph_from_json(text);
  else s.formula = formula_from_json(text);
  return s;
}

ExplanationReport explain_subject(const Subject& s, const Instance& inst, const Limits& limits) {
  if (s.graph) return explain(*s.graph, inst, limits);
  return explain_formula(s.formula.circuit, s.formula.root, inst, limits);
}

int cmd_validate(const std::string& path) {
  Subject s;
  try {
    s = load(path);
  } catch (const InputError& e) {
    std::cout << path << ": invalid\n" << e.what() << "\n";
    return failure;
  }
  if (!s.graph) {
    std::cout << path << ": valid formula over " << s.table().size() << " variables\n";
    return ok;
  }
  const auto report = validate(*s.graph);
  if (!report.ok()) {
    std::cout << path << ": invalid\n" << report.describe();
    return failure;
  }
  std::cout << path << ": valid decision graph with " << s.graph->nodes().size() << " nodes over "
            << s.table().size() << " variables\n";
  return ok;
}

struct ExplainArgs {
  std::string path;
  std::vector<std::string> sets;
  std::string instance_file;
  std::string kind = "all";
  std::string format = "text";
  bool check = false;
};

int cmd_explain(const ExplainArgs& a) {
  const Limits limits = limits_from_env();
  const Subject s = load(a.path);
  if (s.graph) require_valid(*s.graph);
  Instance inst;
  if (!a.instance_file.empty()) {
    if (!a.sets.empty()) throw InputError("use either --instance or --set, not both");
    inst = instance_from_json(s.table(), read_text_file(a.instance_file));
  } else {
    std::vector<std::pair<std::string, std::string>> kv;
    for (const auto& entry : a.sets) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos) throw InputError("--set expects Var=state, got '" + entry + "'");
      kv.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
    }
    inst = instance_from_assignments(s.table(), kv);
  }
  const auto part = parse_report_part(a.kind);
  const auto report = explain_subject(s, inst, limits);
  std::cout << (a.format == "json" ? report_to_json(report, part) : report_to_text(report, part));
  if (a.check) {
    const auto bad = check_report(report, limits);
    for (const auto& b : bad) std::cerr << "check failed: " << b << "\n";
    if (!bad.empty()) return failure;
    std::cerr << "check passed\n";
  }
  return ok;
}

int cmd_check(const std::string& path, std::size_t samples, std::uint64_t seed) {
  const Limits limits = limits_from_env();
  const Subject s = load(path);
  if (s.graph) require_valid(*s.graph);
  const VariableTable& table = s.table();
  std::vector<World> worlds;
  const auto vars = all_vars(table);
  if (static_cast<double>(samples) >= table.world_count()) {
    require_world_budget(table.world_count(), limits, "exhaustive check");
    for_each_assignment(table, vars, World(std::vector<StateId>(table.size(), 0)),
                        [&](const World& w) { worlds.push_back(w); });
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      std::vector<StateId> w;
      for (VarId v : vars)
        w.push_back(static_cast<StateId>(
            std::uniform_int_distribution<std::size_t>(0, table.arity(v) - 1)(rng)));
      worlds.emplace_back(std::move(w));
    }
  }
  std::size_t failed = 0, checked = 0;
  for (const auto& w : worlds) {
    const Instance inst(w);
    if (!s.graph && !evaluate(*s.formula.circuit, s.formula.root, inst)) continue;
    const auto report = explain_subject(s, inst, limits);
    const auto bad = check_report(report, limits);
    ++checked;
    std::cout << format_world(table, inst);
    if (!report.decision.empty()) std::cout << " -> " << report.decision;
    std::cout << (bad.empty() ? ": ok\n" : ": FAILED\n");
    for (const auto& b : bad) std::cout << "  " << b << "\n";
    failed += bad.empty() ? 0 : 1;
  }
  std::cout << checked << " instances checked, " << failed << " failed\n";
  return failed ? failure : ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sufficient, necessary and general reasons for decisions over discrete features"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a decision graph or formula file");
  validate_cmd->add_option("file", validate_path, "graph or formula JSON")->required();

  ExplainArgs ea;
  auto* explain_cmd = app.add_subcommand("explain", "Explain the decision on one instance");
  explain_cmd->add_option("file", ea.path, "graph or formula JSON")->required();
  explain_cmd->add_option("--set", ea.sets, "Var=state assignment (repeatable)");
  explain_cmd->add_option("--instance", ea.instance_file, "instance JSON file");
  explain_cmd->add_option("--kind", ea.kind, "sr, nr, gsr, gnr, general, complete or all")
      ->check(CLI::IsMember({"sr", "nr", "gsr", "gnr", "general", "complete", "all"}));
  explain_cmd->add_option("--format", ea.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  explain_cmd->add_flag("--check", ea.check, "cross-check against brute-force search");

  std::string check_path;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  auto* check_cmd = app.add_subcommand("check", "Cross-check explanations on many instances");
  check_cmd->add_option("file", check_path, "graph or formula JSON")->required();
  check_cmd->add_option("--samples", samples, "instances to draw (all if at least the world count)");
  check_cmd->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate_path);
    if (*explain_cmd) return cmd_explain(ea);
    if (*check_cmd) return cmd_check(check_path, samples, seed);
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what()
              << " (raise DISCREX_ORACLE_LIMIT or use a smaller input)\n";
    return capacity;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
  return usage;
}
