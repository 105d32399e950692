#pragma once

/// @file
/// Literal quantification: universal quantification ∀, selection ⫰ and the
/// dual forgetting operator ⫯, lifted to simple terms, plus fixation tests.

#include "discrex/circuit.hpp"

namespace discrex {

/// ∀x·Δ = Δ|x ∧ ⋀_{j≠i} (x ∨ Δ|xj).
NodeId forall_state(Circuit& c, NodeId root, VarId var, StateId state);

/// ⫰x·Δ = Δ|x ∧ Δ.
NodeId select_state(Circuit& c, NodeId root, VarId var, StateId state);

/// ⫯x·Δ = Δ ∨ Δ|x.
NodeId forget_state(Circuit& c, NodeId root, VarId var, StateId state);

/// (Δ|x) ∧ ⋀_{j≠i} (ℓj ∨ Δ|xj) with ℓj the complement of xj. Equivalent to
/// ⫰x·Δ; kept as a separate construction for inspection and testing.
NodeId select_state_alternative(Circuit& c, NodeId root, VarId var, StateId state);

/// Iterated selection over the states of a simple term, in variable order.
NodeId select_term(Circuit& c, NodeId root, const Term& simple_term);
/// Iterated universal quantification over the states of a simple term.
NodeId forall_term(Circuit& c, NodeId root, const Term& simple_term);

/// True iff no OR node has two children sharing a variable.
bool is_or_decomposable(const Circuit& c, NodeId root);

/// ⫰τ·Δ for ∨-decomposable Δ in one pass: a literal ℓ on a variable of τ stays
/// ℓ when it contains τ's state and becomes ⊥ otherwise. Throws
/// PreconditionError when Δ is not ∨-decomposable.
NodeId select_decomposable(Circuit& c, NodeId root, const Term& simple_term);

/// Every literal reachable from `root` contains the instance's state.
bool is_locally_fixated(const Circuit& c, NodeId root, const Instance& inst);

} // namespace discrex
