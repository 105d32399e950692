#include "discrex/circuit.hpp"

#include <algorithm>
#include <functional>

namespace discrex {

std::size_t Circuit::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(k.states);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(k.kind));
  mix(k.var);
  for (NodeId c : k.children) mix(c);
  return h;
}

Circuit::Circuit(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw PreconditionError("circuit needs a variable table");
  intern(Key{NodeKind::False, 0, 0, {}}, Node{NodeKind::False, std::nullopt, {}});
  intern(Key{NodeKind::True, 0, 0, {}}, Node{NodeKind::True, std::nullopt, {}});
}

NodeId Circuit::intern(Key key, Node node) {
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

NodeId Circuit::literal(const Literal& lit) {
  return intern(Key{NodeKind::Leaf, lit.var(), lit.states(), {}},
                Node{NodeKind::Leaf, lit, {}});
}

NodeId Circuit::literal(VarId var, StateMask states) {
  if (states == 0) return bottom;
  if (states == table_->full_mask(var)) return top;
  return literal(Literal(*table_, var, states));
}

NodeId Circuit::conjoin(std::vector<NodeId> children) {
  std::vector<NodeId> flat;
  flat.reserve(children.size());
  for (NodeId ch : children) {
    const Node& n = node(ch);
    switch (n.kind) {
    case NodeKind::False: return bottom;
    case NodeKind::True: break;
    case NodeKind::And: flat.insert(flat.end(), n.children.begin(), n.children.end()); break;
    default: flat.push_back(ch);
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return top;
  if (flat.size() == 1) return flat.front();
  return intern(Key{NodeKind::And, 0, 0, flat}, Node{NodeKind::And, std::nullopt, flat});
}

NodeId Circuit::disjoin(std::vector<NodeId> children) {
  std::vector<NodeId> kept;
  kept.reserve(children.size());
  for (NodeId ch : children) {
    const NodeKind k = kind(ch);
    if (k == NodeKind::True) return top;
    if (k != NodeKind::False) kept.push_back(ch);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) return bottom;
  if (kept.size() == 1) return kept.front();
  return intern(Key{NodeKind::Or, 0, 0, kept}, Node{NodeKind::Or, std::nullopt, kept});
}

NodeId Circuit::term(const Term& t) {
  std::vector<NodeId> ch;
  for (const auto& l : t) ch.push_back(literal(l));
  return conjoin(std::move(ch));
}

NodeId Circuit::clause(const Clause& c) {
  std::vector<NodeId> ch;
  for (const auto& l : c) ch.push_back(literal(l));
  return disjoin(std::move(ch));
}

NodeId Circuit::dnf(const TermSet& terms) {
  std::vector<NodeId> ch;
  for (const auto& t : terms) ch.push_back(term(t));
  return disjoin(std::move(ch));
}

NodeId Circuit::cnf(const ClauseSet& clauses) {
  std::vector<NodeId> ch;
  for (const auto& c : clauses) ch.push_back(clause(c));
  return conjoin(std::move(ch));
}

std::vector<NodeId> topological_order(const Circuit& c, NodeId root) {
  std::vector<NodeId> order;
  std::vector<char> seen(c.size(), 0);
  // Iterative post-order: (node, next child index).
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  seen[root] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& children = c.node(id).children;
    if (next < children.size()) {
      const NodeId ch = children[next++];
      if (!seen[ch]) {
        seen[ch] = 1;
        stack.emplace_back(ch, 0);
      }
    } else {
      order.push_back(id);
      stack.pop_back();
    }
  }
  return order;
}

std::vector<Literal> literals(const Circuit& c, NodeId root) {
  std::vector<Literal> out;
  for (NodeId id : topological_order(c, root))
    if (c.kind(id) == NodeKind::Leaf) out.push_back(*c.node(id).literal);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VarId> variables(const Circuit& c, NodeId root) {
  std::vector<VarId> out;
  for (const auto& l : literals(c, root)) out.push_back(l.var());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool evaluate(const Circuit& c, NodeId root, const World& w) { return Evaluator(c, root)(w); }

Evaluator::Evaluator(const Circuit& c, NodeId root)
    : circuit_(&c), order_(topological_order(c, root)) {
  for (std::size_t i = 0; i < order_.size(); ++i) slot_.emplace(order_[i], i);
  child_slots_.resize(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i)
    for (NodeId ch : c.node(order_[i]).children) child_slots_[i].push_back(slot_.at(ch));
  value_.resize(order_.size());
}

bool Evaluator::operator()(const World& w) const {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const Node& n = circuit_->node(order_[i]);
    char v = 0;
    switch (n.kind) {
    case NodeKind::False: v = 0; break;
    case NodeKind::True: v = 1; break;
    case NodeKind::Leaf: v = satisfies(w, *n.literal); break;
    case NodeKind::And:
      v = 1;
      for (std::size_t s : child_slots_[i])
        if (!value_[s]) { v = 0; break; }
      break;
    case NodeKind::Or:
      v = 0;
      for (std::size_t s : child_slots_[i])
        if (value_[s]) { v = 1; break; }
      break;
    }
    value_[i] = v;
  }
  return value_.back() != 0;
}

namespace {

template <class LeafFn, class GateFn>
NodeId rebuild(Circuit& c, NodeId root, LeafFn&& leaf, GateFn&& gate) {
  std::unordered_map<NodeId, NodeId> image;
  for (NodeId id : topological_order(c, root)) {
    const Node n = c.node(id); // copy: the arena grows below
    NodeId out = id;
    switch (n.kind) {
    case NodeKind::False:
    case NodeKind::True:
    case NodeKind::Leaf: out = leaf(id, n); break;
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<NodeId> ch;
      ch.reserve(n.children.size());
      for (NodeId x : n.children) ch.push_back(image.at(x));
      out = gate(n.kind, std::move(ch));
      break;
    }
    }
    image.emplace(id, out);
  }
  return image.at(root);
}

} // namespace

NodeId condition(Circuit& c, NodeId root, const Term& simple_term) {
  if (!simple_term.is_simple()) throw PreconditionError("conditioning requires a simple term");
  return rebuild(
      c, root,
      [&](NodeId id, const Node& n) -> NodeId {
        if (n.kind != NodeKind::Leaf) return id;
        const Literal* t = simple_term.find(n.literal->var());
        if (t == nullptr) return id;
        return (n.literal->states() & t->states()) != 0 ? Circuit::top : Circuit::bottom;
      },
      [&](NodeKind k, std::vector<NodeId> ch) {
        return k == NodeKind::And ? c.conjoin(std::move(ch)) : c.disjoin(std::move(ch));
      });
}

NodeId negate(Circuit& c, NodeId root) {
  const VariableTable& table = c.table();
  return rebuild(
      c, root,
      [&](NodeId, const Node& n) -> NodeId {
        switch (n.kind) {
        case NodeKind::False: return Circuit::top;
        case NodeKind::True: return Circuit::bottom;
        default: {
          const Literal& l = *n.literal;
          return c.literal(l.var(), table.full_mask(l.var()) & ~l.states());
        }
        }
      },
      [&](NodeKind k, std::vector<NodeId> ch) {
        return k == NodeKind::And ? c.disjoin(std::move(ch)) : c.conjoin(std::move(ch));
      });
}

bool entails(const Circuit& c, NodeId a, NodeId b, const Limits& limits) {
  if (a == b || b == Circuit::top || a == Circuit::bottom) return true;
  auto va = variables(c, a);
  auto vb = variables(c, b);
  std::vector<VarId> vars;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(vars));
  require_world_budget(c.table().world_count(vars), limits, "entailment check");
  const Evaluator ea(c, a);
  const Evaluator eb(c, b);
  bool holds = true;
  for_each_assignment(c.table(), vars, World(std::vector<StateId>(c.table().size(), 0)),
                      [&](const World& w) {
                        if (holds && ea(w) && !eb(w)) holds = false;
                      });
  return holds;
}

bool equivalent(const Circuit& c, NodeId a, NodeId b, const Limits& limits) {
  return entails(c, a, b, limits) && entails(c, b, a, limits);
}

double count_models(const Circuit& c, NodeId root, const Limits& limits) {
  const auto vars = variables(c, root);
  require_world_budget(c.table().world_count(vars), limits, "model count");
  const Evaluator eval(c, root);
  double n = 0;
  for_each_assignment(c.table(), vars, World(std::vector<StateId>(c.table().size(), 0)),
                      [&](const World& w) { n += eval(w) ? 1 : 0; });
  return n * c.table().world_count() / c.table().world_count(vars);
}

} // namespace discrex
