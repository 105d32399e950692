#include "discrex/prime_implicates.hpp"

#include <deque>
#include <sstream>

namespace discrex {

ClauseSet nnf_to_cnf(const Circuit& c, NodeId root) {
  const VariableTable& table = c.table();
  std::unordered_map<NodeId, ClauseSet> cnf;
  for (NodeId id : topological_order(c, root)) {
    const Node& n = c.node(id);
    ClauseSet s;
    switch (n.kind) {
    case NodeKind::True: break;
    case NodeKind::False: s.push_back(Clause()); break;
    case NodeKind::Leaf: s.push_back(Clause({*n.literal})); break;
    case NodeKind::And:
      for (NodeId ch : n.children) {
        const auto& sub = cnf.at(ch);
        s.insert(s.end(), sub.begin(), sub.end());
      }
      s = remove_subsumed(std::move(s));
      break;
    case NodeKind::Or:
      s = cnf.at(n.children.front());
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        ClauseSet next;
        for (const auto& a : s)
          for (const auto& b : cnf.at(n.children[i]))
            if (auto d = disjoin(table, a, b)) next.push_back(std::move(*d));
        s = remove_subsumed(std::move(next));
      }
      break;
    }
    cnf.emplace(id, std::move(s));
  }
  return cnf.at(root);
}

namespace {

Clause without(const Clause& c, VarId var) {
  std::vector<Literal> lits;
  for (const auto& l : c)
    if (l.var() != var) lits.push_back(l);
  return Clause(std::move(lits));
}

std::vector<VarId> shared_vars(const Clause& a, const Clause& b) {
  std::vector<VarId> out;
  for (const auto& l : a)
    if (b.mentions(l.var())) out.push_back(l.var());
  return out;
}

} // namespace

Resolution resolve(const VariableTable& table, const Clause& a, const Clause& b, VarId var) {
  const Literal* la = a.find(var);
  const Literal* lb = b.find(var);
  if (la == nullptr || lb == nullptr || la->entails(*lb) || lb->entails(*la)) return {};
  auto rest = disjoin(table, without(a, var), without(b, var));
  if (!rest) return {ResolveStatus::tautology, std::nullopt};
  const StateMask m = la->states() & lb->states();
  if (m == 0) return {ResolveStatus::resolvent, std::move(rest)};
  auto lits = std::vector<Literal>(rest->begin(), rest->end());
  lits.emplace_back(table, var, m);
  return {ResolveStatus::resolvent, Clause(std::move(lits))};
}

bool is_locally_fixated(const ClauseSet& clauses, const Instance& inst) {
  for (const auto& c : clauses)
    for (const auto& l : c)
      if (!l.contains(inst[l.var()])) return false;
  return true;
}

namespace {

// Given-clause saturation. With `vmin` set, clauses whose variables strictly
// contain another live clause's variables are discarded on arrival and evicted
// when a smaller one shows up.
class Saturation {
public:
  Saturation(const VariableTable& table, const Limits& limits, bool vmin)
      : table_(table), limits_(limits), vmin_(vmin) {}

  void add(const Clause& c) {
    for (std::size_t i = 0; i < store_.size(); ++i) {
      if (!alive_[i]) continue;
      if (subsumes(store_[i], c)) return;
      if (vmin_ && vars_strict_subset(store_[i], c)) return;
    }
    for (std::size_t i = 0; i < store_.size(); ++i) {
      if (!alive_[i]) continue;
      if (subsumes(c, store_[i]) || (vmin_ && vars_strict_subset(c, store_[i])))
        alive_[i] = false;
    }
    if (store_.size() >= limits_.max_clauses) {
      std::ostringstream os;
      os << "resolution closure produced more than " << limits_.max_clauses << " clauses";
      throw CapacityError(os.str());
    }
    store_.push_back(c);
    alive_.push_back(true);
    queue_.push_back(store_.size() - 1);
  }

  ClauseSet run() {
    std::vector<std::size_t> active;
    while (!queue_.empty()) {
      const std::size_t given = queue_.front();
      queue_.pop_front();
      if (!alive_[given]) continue;
      for (std::size_t k = 0; k < active.size() && alive_[given]; ++k) {
        const std::size_t other = active[k];
        if (!alive_[other]) continue;
        for (VarId x : shared_vars(store_[given], store_[other])) {
          // Copies: add() may reallocate the store.
          const Clause a = store_[given];
          const Clause b = store_[other];
          auto r = resolve(table_, a, b, x);
          if (r.status != ResolveStatus::resolvent) continue;
          if (vmin_) check_growth(a, b, *r.clause);
          add(*r.clause);
          if (!alive_[given]) break;
        }
      }
      if (alive_[given]) active.push_back(given);
    }
    ClauseSet out;
    for (std::size_t i = 0; i < store_.size(); ++i)
      if (alive_[i]) out.push_back(store_[i]);
    canonicalize(out);
    return out;
  }

private:
  static void check_growth(const Clause& a, const Clause& b, const Clause& r) {
    auto va = a.vars();
    auto vb = b.vars();
    std::vector<VarId> u;
    std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(u));
    if (u != r.vars())
      throw Error("internal: resolvent of fixated clauses lost a variable");
  }

  const VariableTable& table_;
  Limits limits_;
  bool vmin_;
  std::vector<Clause> store_;
  std::vector<char> alive_;
  std::deque<std::size_t> queue_;
};

} // namespace

ClauseSet close_resolution(const VariableTable& table, ClauseSet clauses, const Limits& limits) {
  Saturation sat(table, limits, false);
  for (const auto& c : remove_subsumed(std::move(clauses))) sat.add(c);
  return sat.run();
}

ClauseSet gnr_clauses(const VariableTable& table, ClauseSet clauses, const Instance& inst,
                      const Limits& limits) {
  check_world(table, inst);
  if (!is_locally_fixated(clauses, inst))
    throw PreconditionError("clauses are not locally fixated on the instance");
  Saturation sat(table, limits, true);
  for (const auto& c : remove_subsumed(std::move(clauses))) sat.add(c);
  return sat.run();
}

} // namespace discrex
