#include "discrex/logic.hpp"

#include <limits>
#include <sstream>
#include <unordered_set>

namespace discrex {

VarId VariableTable::add(Variable var) {
  if (var.name.empty()) throw InputError("variable name must not be empty");
  if (index_.count(var.name)) throw InputError("duplicate variable '" + var.name + "'");
  if (var.arity() < 2)
    throw InputError("variable '" + var.name + "' needs at least two states");
  if (var.arity() > max_arity)
    throw InputError("variable '" + var.name + "' has more than 64 states");
  std::unordered_set<std::string> seen;
  for (const auto& s : var.states) {
    if (s.empty()) throw InputError("variable '" + var.name + "' has an empty state name");
    if (!seen.insert(s).second)
      throw InputError("variable '" + var.name + "' repeats state '" + s + "'");
  }
  if (!var.intervals.empty() && var.intervals.size() != var.arity())
    throw InputError("variable '" + var.name + "' needs one interval per state");
  const auto id = static_cast<VarId>(vars_.size());
  index_.emplace(var.name, id);
  vars_.push_back(std::move(var));
  return id;
}

VarId VariableTable::add(std::string name, std::vector<std::string> states) {
  return add(Variable{std::move(name), std::move(states), {}});
}

std::optional<VarId> VariableTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId VariableTable::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

StateId VariableTable::state(VarId var, std::string_view name) const {
  const auto& states = vars_.at(var).states;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<StateId>(i);
  throw InputError("variable '" + vars_.at(var).name + "' has no state '" + std::string(name) +
                   "'");
}

double VariableTable::world_count() const {
  double n = 1;
  for (const auto& v : vars_) n *= static_cast<double>(v.arity());
  return n;
}

double VariableTable::world_count(std::span<const VarId> vars) const {
  double n = 1;
  for (VarId v : vars) n *= static_cast<double>(arity(v));
  return n;
}

bool operator==(const VariableTable& a, const VariableTable& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  for (std::size_t i = 0; i < a.vars_.size(); ++i) {
    const auto& x = a.vars_[i];
    const auto& y = b.vars_[i];
    if (x.name != y.name || x.states != y.states || x.intervals != y.intervals) return false;
  }
  return true;
}

Literal::Literal(const VariableTable& table, VarId var, StateMask states)
    : var_(var), states_(states) {
  if (var >= table.size()) throw InputError("literal refers to an unknown variable");
  const StateMask full = table.full_mask(var);
  if ((states & ~full) != 0)
    throw InputError("literal on '" + table[var].name + "' names a state outside the domain");
  if (states == 0) throw PreconditionError("literal on '" + table[var].name + "' is empty");
  if (states == full)
    throw PreconditionError("literal on '" + table[var].name + "' covers the whole domain");
}

std::strong_ordering compare_state_lists(StateMask a, StateMask b) {
  while (a != 0 && b != 0) {
    const int sa = std::countr_zero(a);
    const int sb = std::countr_zero(b);
    if (sa != sb) return sa <=> sb;
    a &= a - 1;
    b &= b - 1;
  }
  return (a != 0) <=> (b != 0);
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.var_ <=> b.var_; c != 0) return c;
  return compare_state_lists(a.states_, b.states_);
}

std::optional<Term> conjoin(const VariableTable& table, const Term& a, const Term& b) {
  std::vector<Literal> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->var() < ib->var())) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->var() < ia->var()) {
      out.push_back(*ib++);
    } else {
      const StateMask m = ia->states() & ib->states();
      if (m == 0) return std::nullopt;
      out.emplace_back(table, ia->var(), m);
      ++ia;
      ++ib;
    }
  }
  return Term(std::move(out));
}

std::optional<Clause> disjoin(const VariableTable& table, const Clause& a, const Clause& b) {
  std::vector<Literal> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->var() < ib->var())) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->var() < ia->var()) {
      out.push_back(*ib++);
    } else {
      const StateMask m = ia->states() | ib->states();
      if (m == table.full_mask(ia->var())) return std::nullopt;
      out.emplace_back(table, ia->var(), m);
      ++ia;
      ++ib;
    }
  }
  return Clause(std::move(out));
}

bool subsumes(const Term& a, const Term& b) {
  // b ⊨ a: every literal of a is implied by b's literal on the same variable.
  for (const auto& la : a) {
    const Literal* lb = b.find(la.var());
    if (lb == nullptr || !lb->entails(la)) return false;
  }
  return true;
}

bool subsumes(const Clause& a, const Clause& b) {
  // a ⊨ b: every literal of a implies b's literal on the same variable.
  for (const auto& la : a) {
    const Literal* lb = b.find(la.var());
    if (lb == nullptr || !la.entails(*lb)) return false;
  }
  return true;
}

Term Instance::as_term(const VariableTable& table) const {
  std::vector<Literal> lits;
  lits.reserve(size());
  for (VarId v = 0; v < size(); ++v) lits.push_back(Literal::simple(table, v, (*this)[v]));
  return Term(std::move(lits));
}

void check_world(const VariableTable& table, const World& w) {
  if (w.size() != table.size()) {
    std::ostringstream os;
    os << "world assigns " << w.size() << " variables, expected " << table.size();
    throw InputError(os.str());
  }
  for (VarId v = 0; v < w.size(); ++v)
    if (w[v] >= table.arity(v))
      throw InputError("world assigns an unknown state to '" + table[v].name + "'");
}

bool satisfies(const World& w, const Literal& l) { return l.contains(w[l.var()]); }

bool satisfies(const World& w, const Term& t) {
  return std::all_of(t.begin(), t.end(), [&](const Literal& l) { return satisfies(w, l); });
}

bool satisfies(const World& w, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return satisfies(w, l); });
}

Term instance_cap_term(const VariableTable& table, const Instance& inst, const Term& term) {
  if (!satisfies(inst, term)) throw PreconditionError("instance does not imply the term");
  std::vector<Literal> lits;
  for (const auto& l : term) lits.push_back(Literal::simple(table, l.var(), inst[l.var()]));
  return Term(std::move(lits));
}

Clause instance_cap_clause(const VariableTable& table, const Instance& inst,
                           const Clause& clause) {
  std::vector<Literal> lits;
  for (const auto& l : clause)
    if (l.contains(inst[l.var()])) lits.push_back(Literal::simple(table, l.var(), inst[l.var()]));
  if (lits.empty()) throw PreconditionError("instance shares no state with the clause");
  return Clause(std::move(lits));
}

Term instance_minus_clause(const VariableTable& table, const Instance& inst,
                           const Clause& clause) {
  std::vector<Literal> lits;
  for (VarId v = 0; v < inst.size(); ++v)
    if (!clause.mentions(v)) lits.push_back(Literal::simple(table, v, inst[v]));
  return Term(std::move(lits));
}

bool strongly_implies(const Instance& inst, const Clause& clause) {
  return std::all_of(clause.begin(), clause.end(),
                     [&](const Literal& l) { return l.contains(inst[l.var()]); });
}

void require_world_budget(double count, const Limits& limits, std::string_view what) {
  if (count > limits.max_worlds) {
    std::ostringstream os;
    os << what << ": " << count << " worlds exceed the enumeration limit of "
       << limits.max_worlds;
    throw CapacityError(os.str());
  }
}

std::vector<VarId> all_vars(const VariableTable& table) {
  std::vector<VarId> out(table.size());
  for (VarId v = 0; v < out.size(); ++v) out[v] = v;
  return out;
}

} // namespace discrex
