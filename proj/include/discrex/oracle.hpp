#pragma once

/// @file
/// Brute-force ground truth. Everything here works by enumerating worlds,
/// terms or clauses and checking definitions directly; none of it relies on
/// the quantification, compilation or resolution code.

#include "discrex/circuit.hpp"

namespace discrex::oracle {

/// All models over the whole variable table, in mixed-radix order.
std::vector<World> enumerate_models(const Circuit& c, NodeId root, const Limits& limits = {});

enum class Mode { forall, select };

/// Models computed straight from the change semantics of the operators.
/// select: w ⊨ Δ and every world obtained by setting some variables of w to
/// their τ-states satisfies Δ. forall: w ⊨ Δ and every world obtained by
/// changing some variables whose w-state differs from τ satisfies Δ.
std::vector<World> select_semantics(const Circuit& c, NodeId root, const Term& simple_term,
                                    Mode mode, const Limits& limits = {});

/// All prime implicants / implicates over vars(Δ), by exhaustive search.
TermSet brute_prime_implicants(const Circuit& c, NodeId root, const Limits& limits = {});
ClauseSet brute_prime_implicates(const Circuit& c, NodeId root, const Limits& limits = {});

/// Closure of a DNF under pairwise consensus with subsumption removal.
TermSet consensus_closure(const VariableTable& table, TermSet dnf, const Limits& limits = {});

/// X-consensus (ℓ1 ∨ ℓ2) ∧ γ1 ∧ γ2; nullopt when either clause misses X, one
/// X-literal entails the other, or γ1 ∧ γ2 is inconsistent.
std::optional<Term> consensus(const VariableTable& table, const Term& a, const Term& b, VarId var);

struct Explanations {
  TermSet srs;
  ClauseSet nrs;
  TermSet gsrs;
  ClauseSet gnrs;
};

/// Sufficient, necessary, general sufficient and general necessary reasons,
/// found by scanning every candidate term and clause over the whole table.
Explanations brute_explanations(const Circuit& c, NodeId root, const Instance& inst,
                                const Limits& limits = {});

/// Individual definition checks for a single candidate.
bool is_gsr(const Circuit& c, NodeId root, const Instance& inst, const Term& term,
            const Limits& limits = {});
bool is_gnr(const Circuit& c, NodeId root, const Instance& inst, const Clause& clause,
            const Limits& limits = {});

} // namespace discrex::oracle
