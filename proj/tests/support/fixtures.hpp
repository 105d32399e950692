#pragma once

#include <string>

#include "discrex/json_io.hpp"

namespace discrex::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DISCREX_FIXTURE_DIR) + "/" + name;
}

inline DecisionGraph load_graph(const std::string& name) {
  return graph_from_json(read_text_file(fixture_path(name)));
}

inline FormulaDocument load_formula(const std::string& name) {
  return formula_from_json(read_text_file(fixture_path(name)));
}

/// Parses "X=x1,Y=y2" style assignments.
inline Instance make_instance(const VariableTable& table, const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    pos = comma + 1;
  }
  return instance_from_assignments(table, kv);
}

/// Literal from "Var:s1|s2".
inline Literal lit(const VariableTable& table, const std::string& text) {
  const auto colon = text.find(':');
  const VarId v = table.id(text.substr(0, colon));
  StateMask m = 0;
  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    auto bar = text.find('|', pos);
    if (bar == std::string::npos) bar = text.size();
    m |= state_bit(table.state(v, text.substr(pos, bar - pos)));
    pos = bar + 1;
  }
  return Literal(table, v, m);
}

/// Term or clause from literal specs separated by spaces.
template <class Set>
Set make_set(const VariableTable& table, const std::string& text) {
  std::vector<Literal> lits;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto sp = text.find(' ', pos);
    if (sp == std::string::npos) sp = text.size();
    if (sp > pos) lits.push_back(lit(table, text.substr(pos, sp - pos)));
    pos = sp + 1;
  }
  return Set(std::move(lits));
}

inline Term term(const VariableTable& t, const std::string& s) { return make_set<Term>(t, s); }
inline Clause clause(const VariableTable& t, const std::string& s) { return make_set<Clause>(t, s); }

inline TermSet terms(const VariableTable& t, std::initializer_list<const char*> specs) {
  TermSet out;
  for (const char* s : specs) out.push_back(term(t, s));
  canonicalize(out);
  return out;
}

inline ClauseSet clauses(const VariableTable& t, std::initializer_list<const char*> specs) {
  ClauseSet out;
  for (const char* s : specs) out.push_back(clause(t, s));
  canonicalize(out);
  return out;
}

/// Ternary X, Y, Z with states x1..x3, y1..y3, z1..z3.
inline TablePtr xyz_table() {
  auto t = std::make_shared<VariableTable>();
  t->add("X", {"x1", "x2", "x3"});
  t->add("Y", {"y1", "y2", "y3"});
  t->add("Z", {"z1", "z2", "z3"});
  return t;
}

} // namespace discrex::testing
