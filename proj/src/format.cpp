#include "discrex/format.hpp"

#include <cmath>
#include <sstream>

namespace discrex {

namespace {

std::string number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::optional<std::string> as_range(const Variable& v, StateMask states) {
  if (v.intervals.empty()) return std::nullopt;
  for (std::size_t i = 1; i < v.intervals.size(); ++i)
    if (v.intervals[i - 1].upper != v.intervals[i].lower) return std::nullopt;
  const int first = std::countr_zero(states);
  const int last = 63 - std::countl_zero(states);
  if (std::popcount(states) != last - first + 1) return std::nullopt;
  const double lo = v.intervals[first].lower;
  const double hi = v.intervals[last].upper;
  const bool open_below = first == 0 || std::isinf(lo);
  const bool open_above = static_cast<std::size_t>(last) + 1 == v.arity() || std::isinf(hi);
  if (open_below && open_above) return std::nullopt;
  if (open_below) return v.name + " < " + number(hi);
  if (open_above) return v.name + " ≥ " + number(lo);
  return number(lo) + " ≤ " + v.name + " < " + number(hi);
}

} // namespace

std::string format_states(const VariableTable& table, VarId var, StateMask states) {
  std::string out = "{";
  bool first = true;
  for (std::size_t s = 0; s < table.arity(var); ++s) {
    if (!(states & state_bit(s))) continue;
    if (!first) out += ",";
    out += table[var].states[s];
    first = false;
  }
  return out + "}";
}

std::string format_literal(const VariableTable& table, const Literal& lit) {
  const Variable& v = table[lit.var()];
  if (auto r = as_range(v, lit.states())) return *r;
  if (lit.is_simple()) return v.name + " = " + v.states[std::countr_zero(lit.states())];
  return v.name + " ∈ " + format_states(table, lit.var(), lit.states());
}

std::string format_term(const VariableTable& table, const Term& term) {
  if (term.empty()) return "⊤";
  std::string out;
  for (const auto& l : term) out += (out.empty() ? "" : " ∧ ") + format_literal(table, l);
  return out;
}

std::string format_clause(const VariableTable& table, const Clause& clause) {
  if (clause.empty()) return "⊥";
  std::string out;
  for (const auto& l : clause) out += (out.empty() ? "" : " ∨ ") + format_literal(table, l);
  return out;
}

std::string format_world(const VariableTable& table, const World& w) {
  std::string out;
  for (VarId v = 0; v < w.size(); ++v)
    out += (v ? ", " : "") + table[v].name + " = " + table[v].states[w[v]];
  return out;
}

std::string format_circuit(const Circuit& c, NodeId root) {
  std::unordered_map<NodeId, std::string> text;
  for (NodeId id : topological_order(c, root)) {
    const Node& n = c.node(id);
    std::string s;
    switch (n.kind) {
    case NodeKind::False: s = "⊥"; break;
    case NodeKind::True: s = "⊤"; break;
    case NodeKind::Leaf: s = format_literal(c.table(), *n.literal); break;
    case NodeKind::And:
    case NodeKind::Or: {
      const char* op = n.kind == NodeKind::And ? " ∧ " : " ∨ ";
      s = "(";
      for (std::size_t i = 0; i < n.children.size(); ++i)
        s += (i ? op : "") + text.at(n.children[i]);
      s += ")";
    }
    }
    text.emplace(id, std::move(s));
  }
  std::string out = text.at(root);
  if (out.size() > 1 && out.front() == '(' && c.kind(root) != NodeKind::Leaf)
    out = out.substr(1, out.size() - 2);
  return out;
}

} // namespace discrex
