#pragma once

/// @file
/// CNF conversion of NNF circuits, discrete resolution, closure under
/// resolution, and variable-minimal prime implicates of fixated CNFs.

#include "discrex/circuit.hpp"

namespace discrex {

/// CNF equivalent to the circuit: union at AND, pairwise clause disjunction at
/// OR (valid results dropped), subsumed clauses removed after every node.
ClauseSet nnf_to_cnf(const Circuit& c, NodeId root);

enum class ResolveStatus {
  resolvent,      // clause holds the X-resolvent
  tautology,      // (ℓ1 ∧ ℓ2) ∨ σ1 ∨ σ2 is valid
  not_applicable, // a clause misses X, or one X-literal entails the other
};

struct Resolution {
  ResolveStatus status = ResolveStatus::not_applicable;
  std::optional<Clause> clause;
};

/// X-resolvent of ℓ1 ∨ σ1 and ℓ2 ∨ σ2: the clause (ℓ1 ∧ ℓ2) ∨ σ1 ∨ σ2, with
/// the X-literal omitted when ℓ1 ∩ ℓ2 is empty.
Resolution resolve(const VariableTable& table, const Clause& a, const Clause& b, VarId var);

/// Fixpoint of resolution with subsumption removal; the prime implicates of S.
/// Throws CapacityError once more than `limits.max_clauses` clauses were made.
ClauseSet close_resolution(const VariableTable& table, ClauseSet clauses,
                           const Limits& limits = {});

/// Every literal of every clause contains the instance's state.
bool is_locally_fixated(const ClauseSet& clauses, const Instance& inst);

/// Variable-minimal prime implicates of a CNF locally fixated on `inst`,
/// dropping clauses that stop being variable-minimal after every resolution
/// step. Throws PreconditionError when the CNF is not fixated on `inst`.
ClauseSet gnr_clauses(const VariableTable& table, ClauseSet clauses, const Instance& inst,
                      const Limits& limits = {});

} // namespace discrex
