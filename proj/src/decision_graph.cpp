#include "discrex/decision_graph.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "discrex/format.hpp"
#include "discrex/quantify.hpp"

namespace discrex {

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "node '" << v.node << "'";
    if (!v.path.empty()) {
      os << " (path ";
      for (std::size_t i = 0; i < v.path.size(); ++i) os << (i ? " -> " : "") << v.path[i];
      os << ")";
    }
    if (!v.variable.empty()) os << ", variable " << v.variable;
    os << ": " << v.message << "\n";
  }
  return os.str();
}

DecisionGraph::DecisionGraph(TablePtr table, std::vector<std::string> classes,
                             std::vector<GraphNode> nodes, std::string root)
    : table_(std::move(table)), classes_(std::move(classes)), nodes_(std::move(nodes)),
      root_(std::move(root)) {
  if (!table_) throw PreconditionError("decision graph needs a variable table");
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!index_.emplace(nodes_[i].id, i).second)
      throw InputError("duplicate node id '" + nodes_[i].id + "'");
}

const GraphNode& DecisionGraph::node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown node '" + id + "'");
  return nodes_[it->second];
}

bool DecisionGraph::has_class(const std::string& label) const {
  return std::find(classes_.begin(), classes_.end(), label) != classes_.end();
}

namespace {

constexpr std::size_t max_reported = 32;

void structural_checks(const DecisionGraph& g, std::vector<Violation>& out) {
  const auto& table = g.table();
  std::set<std::string> seen;
  for (const auto& c : g.classes()) {
    if (c.empty()) out.push_back({"", {}, "", "class labels must not be empty"});
    if (!seen.insert(c).second) out.push_back({"", {}, "", "class '" + c + "' listed twice"});
  }
  if (!g.has_node(g.root())) out.push_back({g.root(), {}, "", "root node does not exist"});
  for (const auto& n : g.nodes()) {
    if (n.is_leaf()) {
      if (!g.has_class(*n.label))
        out.push_back({n.id, {}, "", "leaf names unknown class '" + *n.label + "'"});
      continue;
    }
    if (n.var >= table.size()) {
      out.push_back({n.id, {}, "", "test names an unknown variable"});
      continue;
    }
    const std::string& vname = table[n.var].name;
    if (n.edges.size() < 2) out.push_back({n.id, {}, vname, "test needs at least two edges"});
    StateMask used = 0;
    for (const auto& e : n.edges) {
      if (e.states == 0) out.push_back({n.id, {}, vname, "edge has no states"});
      if ((e.states & ~table.full_mask(n.var)) != 0)
        out.push_back({n.id, {}, vname, "edge names a state outside the domain"});
      if ((used & e.states) != 0)
        out.push_back({n.id, {}, vname, "edges share a state"});
      used |= e.states;
      if (!g.has_node(e.to))
        out.push_back({n.id, {}, vname, "edge points to unknown node '" + e.to + "'"});
    }
  }
}

bool has_cycle(const DecisionGraph& g, std::vector<Violation>& out) {
  enum Color : char { white, grey, black };
  std::unordered_map<std::string, Color> color;
  std::vector<std::pair<const GraphNode*, std::size_t>> stack{{&g.node(g.root()), 0}};
  color[g.root()] = grey;
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < n->edges.size()) {
      const std::string& to = n->edges[next++].to;
      Color& c = color[to];
      if (c == grey) {
        out.push_back({to, {}, "", "graph contains a cycle"});
        return true;
      }
      if (c == white) {
        c = grey;
        stack.emplace_back(&g.node(to), 0);
      }
    } else {
      color[n->id] = black;
      stack.pop_back();
    }
  }
  return false;
}

struct PathChecker {
  const DecisionGraph& g;
  std::vector<Violation>& out;
  std::vector<std::string> path;
  std::set<std::pair<std::string, std::vector<StateMask>>> done;

  void visit(const GraphNode& n, std::vector<StateMask>& inherited) {
    if (out.size() >= max_reported) return;
    if (!done.emplace(n.id, inherited).second) return;
    path.push_back(n.id);
    if (!n.is_leaf()) {
      const auto& table = g.table();
      const StateMask expected = inherited[n.var] ? inherited[n.var] : table.full_mask(n.var);
      StateMask covered = 0;
      for (const auto& e : n.edges) covered |= e.states;
      if (covered != expected) {
        std::ostringstream msg;
        if (inherited[n.var] == 0)
          msg << "first test must partition all states; edges cover "
              << format_states(table, n.var, covered);
        else
          msg << "re-test must partition the inherited states "
              << format_states(table, n.var, expected) << "; edges cover "
              << format_states(table, n.var, covered);
        out.push_back({n.id, path, table[n.var].name, msg.str()});
      }
      const StateMask saved = inherited[n.var];
      for (const auto& e : n.edges) {
        inherited[n.var] = e.states;
        visit(g.node(e.to), inherited);
      }
      inherited[n.var] = saved;
    }
    path.pop_back();
  }
};

} // namespace

ValidationReport validate(const DecisionGraph& g) {
  ValidationReport report;
  structural_checks(g, report.violations);
  if (!report.ok() || has_cycle(g, report.violations)) return report;
  PathChecker checker{g, report.violations, {}, {}};
  std::vector<StateMask> inherited(g.table().size(), 0);
  checker.visit(g.node(g.root()), inherited);
  return report;
}

void require_valid(const DecisionGraph& g) {
  const auto report = validate(g);
  if (!report.ok()) throw ValidationError("invalid decision graph:\n" + report.describe());
}

std::string classify(const DecisionGraph& g, const Instance& inst) {
  check_world(g.table(), inst);
  const GraphNode* n = &g.node(g.root());
  for (std::size_t steps = 0; !n->is_leaf(); ++steps) {
    if (steps > g.nodes().size()) throw ValidationError("classification does not terminate");
    const GraphEdge* next = nullptr;
    for (const auto& e : n->edges)
      if (e.states & state_bit(inst[n->var])) next = &e;
    if (next == nullptr)
      throw ValidationError("node '" + n->id + "' has no edge for the instance's state of '" +
                            g.table()[n->var].name + "'");
    n = &g.node(next->to);
  }
  return *n->label;
}

namespace {

void check_circuit_table(const Circuit& c, const DecisionGraph& g) {
  if (!(c.table() == g.table()))
    throw PreconditionError("circuit and decision graph use different variable tables");
}

void check_class(const DecisionGraph& g, const std::string& label) {
  if (!g.has_class(label)) throw InputError("unknown class '" + label + "'");
}

void check_member(const DecisionGraph& g, const std::string& label, const Instance& inst) {
  check_class(g, label);
  const auto actual = classify(g, inst);
  if (actual != label)
    throw PreconditionError("instance is in class '" + actual + "', not '" + label + "'");
}

// Shared recursion for Δc and Γc; `keep` decides whether edge j contributes ℓj.
template <class Keep>
NodeId compile(Circuit& c, const DecisionGraph& g, const std::string& label, Keep&& keep) {
  std::unordered_map<std::string, NodeId> memo;
  std::function<NodeId(const GraphNode&)> go = [&](const GraphNode& n) -> NodeId {
    if (auto it = memo.find(n.id); it != memo.end()) return it->second;
    NodeId out;
    if (n.is_leaf()) {
      out = *n.label == label ? Circuit::top : Circuit::bottom;
    } else {
      std::vector<NodeId> parts;
      const StateMask full = g.table().full_mask(n.var);
      for (const auto& e : n.edges) {
        const NodeId sub = go(g.node(e.to));
        const NodeId lit = keep(n, e) ? c.literal(n.var, full & ~e.states) : Circuit::bottom;
        parts.push_back(c.disjoin(sub, lit));
      }
      out = c.conjoin(std::move(parts));
    }
    memo.emplace(n.id, out);
    return out;
  };
  return go(g.node(g.root()));
}

} // namespace

NodeId class_formula(Circuit& c, const DecisionGraph& g, const std::string& label) {
  check_circuit_table(c, g);
  check_class(g, label);
  return compile(c, g, label, [](const GraphNode&, const GraphEdge&) { return true; });
}

NodeId general_reason_circuit(Circuit& c, const DecisionGraph& g, const std::string& label,
                              const Instance& inst) {
  check_circuit_table(c, g);
  check_member(g, label, inst);
  return compile(c, g, label, [&](const GraphNode& n, const GraphEdge& e) {
    return (e.states & state_bit(inst[n.var])) == 0;
  });
}

std::string general_reason_unfolded(const DecisionGraph& g, const std::string& label,
                                    const Instance& inst) {
  check_member(g, label, inst);
  const auto& table = g.table();
  std::function<std::string(const GraphNode&)> go = [&](const GraphNode& n) -> std::string {
    if (n.is_leaf()) return *n.label == label ? "⊤" : "⊥";
    std::string out = "(";
    for (std::size_t j = 0; j < n.edges.size(); ++j) {
      const auto& e = n.edges[j];
      if (j) out += " ∧ ";
      std::string lit = "⊥";
      if ((e.states & state_bit(inst[n.var])) == 0)
        lit = format_literal(table, Literal(table, n.var, table.full_mask(n.var) & ~e.states));
      out += "(" + go(g.node(e.to)) + " ∨ " + lit + ")";
    }
    return out + ")";
  };
  return go(g.node(g.root()));
}

NodeId complete_reason(Circuit& c, const DecisionGraph& g, const std::string& label,
                       const Instance& inst) {
  check_member(g, label, inst);
  return forall_term(c, class_formula(c, g, label), inst.as_term(g.table()));
}

} // namespace discrex
