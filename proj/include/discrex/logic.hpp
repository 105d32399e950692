#pragma once

/// @file
/// Multi-valued discrete logic: variables with finite state sets, literals
/// (non-empty proper subsets of a variable's states), terms, clauses and
/// worlds, plus the instance operators used by explanations.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "discrex/errors.hpp"

namespace discrex {

using VarId = std::uint32_t;
using StateId = std::uint8_t;
using StateMask = std::uint64_t;

inline constexpr std::size_t max_arity = 64;

constexpr StateMask state_bit(std::size_t s) { return StateMask{1} << s; }

constexpr StateMask full_mask_for(std::size_t arity) {
  return arity >= 64 ? ~StateMask{0} : (StateMask{1} << arity) - 1;
}

/// Display-only metadata for discretized numeric states: [lower, upper).
struct Interval {
  double lower = 0;
  double upper = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Variable {
  std::string name;
  std::vector<std::string> states;
  std::vector<Interval> intervals; // empty, or one per state

  std::size_t arity() const { return states.size(); }
  StateMask full_mask() const { return full_mask_for(arity()); }
};

/// Ordered set of variables. Ids are positions in insertion order.
class VariableTable {
public:
  VariableTable() = default;

  VarId add(Variable var);
  VarId add(std::string name, std::vector<std::string> states);

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](VarId v) const { return vars_.at(v); }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

  std::optional<VarId> find(std::string_view name) const;
  VarId id(std::string_view name) const;
  StateId state(VarId var, std::string_view name) const;
  std::size_t arity(VarId v) const { return vars_.at(v).arity(); }
  StateMask full_mask(VarId v) const { return vars_.at(v).full_mask(); }

  /// Product of arities (as double; saturates rather than overflowing).
  double world_count() const;
  double world_count(std::span<const VarId> vars) const;

  friend bool operator==(const VariableTable& a, const VariableTable& b);

private:
  std::vector<Variable> vars_;
  std::unordered_map<std::string, VarId> index_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

/// A set of states of one variable with ∅ ⊂ states ⊂ domain.
class Literal {
public:
  Literal(const VariableTable& table, VarId var, StateMask states);

  static Literal simple(const VariableTable& table, VarId var, StateId state) {
    return Literal(table, var, state_bit(state));
  }

  VarId var() const { return var_; }
  StateMask states() const { return states_; }
  bool contains(StateId s) const { return (states_ & state_bit(s)) != 0; }
  bool is_simple() const { return std::has_single_bit(states_); }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(states_)); }

  /// Same variable and this literal's states are a subset of `other`'s.
  bool entails(const Literal& other) const {
    return var_ == other.var_ && (states_ & ~other.states_) == 0;
  }

  friend bool operator==(const Literal&, const Literal&) = default;
  /// Orders by variable, then by ascending state lists (lexicographic).
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);

private:
  VarId var_;
  StateMask states_;
};

/// Lexicographic comparison of the ascending state lists encoded by two masks.
std::strong_ordering compare_state_lists(StateMask a, StateMask b);

enum class Junction { conjunction, disjunction };

/// Literals over pairwise distinct variables, kept sorted by variable.
/// As a conjunction this is a term (never inconsistent), as a disjunction a
/// clause (never valid). The empty term is ⊤ and the empty clause is ⊥.
template <Junction J>
class LiteralSet {
public:
  LiteralSet() = default;

  explicit LiteralSet(std::vector<Literal> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    for (std::size_t i = 1; i < lits_.size(); ++i) {
      if (lits_[i - 1].var() == lits_[i].var())
        throw PreconditionError("literal set mentions a variable twice");
    }
  }

  std::span<const Literal> literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  const Literal* find(VarId v) const {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), v,
                               [](const Literal& l, VarId x) { return l.var() < x; });
    return it != lits_.end() && it->var() == v ? &*it : nullptr;
  }
  bool mentions(VarId v) const { return find(v) != nullptr; }

  std::vector<VarId> vars() const {
    std::vector<VarId> out;
    out.reserve(lits_.size());
    for (const auto& l : lits_) out.push_back(l.var());
    return out;
  }

  bool is_simple() const {
    return std::all_of(lits_.begin(), lits_.end(), [](const Literal& l) { return l.is_simple(); });
  }

  friend bool operator==(const LiteralSet&, const LiteralSet&) = default;
  friend std::strong_ordering operator<=>(const LiteralSet& a, const LiteralSet& b) {
    return std::lexicographical_compare_three_way(a.lits_.begin(), a.lits_.end(),
                                                  b.lits_.begin(), b.lits_.end());
  }

private:
  std::vector<Literal> lits_;
};

using Term = LiteralSet<Junction::conjunction>;
using Clause = LiteralSet<Junction::disjunction>;
using TermSet = std::vector<Term>;
using ClauseSet = std::vector<Clause>;

/// τ1 ∧ τ2 with per-variable intersection; nullopt when inconsistent.
std::optional<Term> conjoin(const VariableTable& table, const Term& a, const Term& b);

/// σ1 ∨ σ2 with per-variable union; nullopt when the result is valid.
std::optional<Clause> disjoin(const VariableTable& table, const Clause& a, const Clause& b);

/// Term `a` subsumes term `b` iff b ⊨ a.
bool subsumes(const Term& a, const Term& b);
/// Clause `a` subsumes clause `b` iff a ⊨ b.
bool subsumes(const Clause& a, const Clause& b);

/// vars(a) ⊂ vars(b), strictly.
template <Junction A, Junction B>
bool vars_strict_subset(const LiteralSet<A>& a, const LiteralSet<B>& b) {
  if (a.size() >= b.size()) return false;
  auto ia = a.begin();
  for (auto ib = b.begin(); ia != a.end() && ib != b.end(); ++ib) {
    if (ia->var() == ib->var()) ++ia;
    else if (ia->var() < ib->var()) return false;
  }
  return ia == a.end();
}

/// Sorts and removes duplicates.
template <Junction J>
void canonicalize(std::vector<LiteralSet<J>>& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

/// Sub[S]: drops every element subsumed by a distinct element. Output is canonical.
template <Junction J>
std::vector<LiteralSet<J>> remove_subsumed(std::vector<LiteralSet<J>> set) {
  canonicalize(set);
  std::vector<LiteralSet<J>> out;
  out.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < set.size() && !dominated; ++j)
      dominated = j != i && subsumes(set[j], set[i]);
    if (!dominated) out.push_back(set[i]);
  }
  return out;
}

/// Keeps the elements whose variable set has no strict subset among the others.
template <Junction J>
std::vector<LiteralSet<J>> variable_minimal(const std::vector<LiteralSet<J>>& set) {
  std::vector<LiteralSet<J>> out;
  for (const auto& s : set) {
    bool dominated = std::any_of(set.begin(), set.end(),
                                 [&](const auto& o) { return vars_strict_subset(o, s); });
    if (!dominated) out.push_back(s);
  }
  canonicalize(out);
  return out;
}

/// A total assignment of one state per variable.
class World {
public:
  World() = default;
  explicit World(std::vector<StateId> states) : states_(std::move(states)) {}

  StateId operator[](VarId v) const { return states_[v]; }
  void set(VarId v, StateId s) { states_[v] = s; }
  std::size_t size() const { return states_.size(); }
  std::span<const StateId> states() const { return states_; }

  friend bool operator==(const World&, const World&) = default;
  friend auto operator<=>(const World&, const World&) = default;

private:
  std::vector<StateId> states_;
};

/// A world read as a simple term with one literal per variable.
class Instance : public World {
public:
  Instance() = default;
  explicit Instance(World w) : World(std::move(w)) {}
  explicit Instance(std::vector<StateId> states) : World(std::move(states)) {}

  Term as_term(const VariableTable& table) const;
};

/// Throws InputError unless `w` assigns a valid state to every variable.
void check_world(const VariableTable& table, const World& w);

bool satisfies(const World& w, const Literal& l);
bool satisfies(const World& w, const Term& t);
bool satisfies(const World& w, const Clause& c);

/// I ⊓ τ: the literals of I on vars(τ). Requires I ⊨ τ.
Term instance_cap_term(const VariableTable& table, const Instance& inst, const Term& term);
/// I ⊓ σ: disjunction of I's states occurring in σ. Requires the result to be non-empty.
Clause instance_cap_clause(const VariableTable& table, const Instance& inst, const Clause& clause);
/// I ∖ σ: the literals of I on variables σ does not mention.
Term instance_minus_clause(const VariableTable& table, const Instance& inst, const Clause& clause);
/// I ⫦ σ: I implies every literal of σ.
bool strongly_implies(const Instance& inst, const Clause& clause);

/// Enumeration and resolution budgets.
struct Limits {
  double max_worlds = 1e6;
  std::size_t max_clauses = 100000;
};

/// Throws CapacityError when `count` exceeds `limits.max_worlds`.
void require_world_budget(double count, const Limits& limits, std::string_view what);

/// Calls `fn(world)` for every assignment of `vars`, starting from `base` for
/// the remaining positions. The world passed to `fn` is reused between calls.
template <class Fn>
void for_each_assignment(const VariableTable& table, std::span<const VarId> vars, World base,
                         Fn&& fn) {
  for (VarId v : vars) base.set(v, 0);
  while (true) {
    fn(static_cast<const World&>(base));
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      const VarId v = vars[k];
      if (base[v] + 1u < table.arity(v)) {
        base.set(v, static_cast<StateId>(base[v] + 1));
        break;
      }
      base.set(v, 0);
    }
    if (k == vars.size()) return;
  }
}

/// All variable ids of the table, in order.
std::vector<VarId> all_vars(const VariableTable& table);

} // namespace discrex
