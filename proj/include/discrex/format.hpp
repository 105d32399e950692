#pragma once

/// @file
/// Human-readable rendering of literals, terms, clauses and circuits.
///
/// A literal prints as "Var = s" when simple and "Var ∈ {s1,s2}" otherwise.
/// When the variable carries interval metadata and the literal's states form
/// a contiguous run of intervals, it prints as a range instead: "Age ≥ 40",
/// "BMI < 25" or "27 ≤ BMI < 30".

#include <string>

#include "discrex/circuit.hpp"

namespace discrex {

std::string format_states(const VariableTable& table, VarId var, StateMask states);
std::string format_literal(const VariableTable& table, const Literal& lit);
std::string format_term(const VariableTable& table, const Term& term);
std::string format_clause(const VariableTable& table, const Clause& clause);
std::string format_world(const VariableTable& table, const World& w);
std::string format_circuit(const Circuit& c, NodeId root);

} // namespace discrex
