#pragma once

/// @file
/// Prime implicants of NNF circuits whose disjunctions have the form ℓ ∨ Δ,
/// where ℓ is strictly contained in every literal of Δ on ℓ's variable, and
/// the variable-minimal prime implicants of such circuits when they are also
/// locally fixated.

#include <string>

#include "discrex/circuit.hpp"

namespace discrex {

/// S1 × S2: pairwise conjunctions, inconsistent pairs dropped. Canonical output.
TermSet cross_product(const VariableTable& table, const TermSet& a, const TermSet& b);

/// Drops τ when some τ′ in S has vars(τ′) ⊂ vars(τ) and vars(τ) ∖ vars(τ′)
/// meets V. V must be sorted.
TermSet vmin_prune(const TermSet& set, const std::vector<VarId>& vars);

/// Variables occurring only below `node`: every path from `root` to a literal
/// on such a variable passes through `node`. Sorted.
std::vector<VarId> inner_vars(const Circuit& c, NodeId node, NodeId root);

/// inner_vars for every node reachable from `root`.
std::unordered_map<NodeId, std::vector<VarId>> inner_vars_all(const Circuit& c, NodeId root);

/// Empty when every OR node can be read as ℓ1 ∨ (ℓ2 ∨ (… ∨ Δ)) with each
/// peeled leaf ℓk strictly inside every literal on its variable in the rest;
/// otherwise a description of the first offending node.
std::optional<std::string> or_discipline_violation(const Circuit& c, NodeId root);

/// Some instance agrees with every literal of the circuit, i.e. the literals
/// on each variable share a state.
bool has_fixating_instance(const Circuit& c, NodeId root);

struct PiOptions {
  bool use_cache = true;
};

/// Prime implicants. Throws PreconditionError when the OR discipline fails.
TermSet pi(const Circuit& c, NodeId root, const PiOptions& options = {});

/// Variable-minimal prime implicants. Throws PreconditionError unless the OR
/// discipline holds and the circuit is fixated on some instance.
TermSet gsr_terms(const Circuit& c, NodeId root, const PiOptions& options = {});

} // namespace discrex
