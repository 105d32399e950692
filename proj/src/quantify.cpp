#include "discrex/quantify.hpp"

#include <algorithm>

namespace discrex {

namespace {

Term simple_term_of(const Circuit& c, VarId var, StateId state) {
  return Term({Literal::simple(c.table(), var, state)});
}

NodeId condition_state(Circuit& c, NodeId root, VarId var, StateId state) {
  return condition(c, root, simple_term_of(c, var, state));
}

void check_state(const Circuit& c, VarId var, StateId state) {
  if (var >= c.table().size()) throw InputError("quantifier names an unknown variable");
  if (state >= c.table().arity(var))
    throw InputError("quantifier names an unknown state of '" + c.table()[var].name + "'");
}

} // namespace

NodeId forall_state(Circuit& c, NodeId root, VarId var, StateId state) {
  check_state(c, var, state);
  const NodeId x = c.literal(var, state_bit(state));
  std::vector<NodeId> parts{condition_state(c, root, var, state)};
  for (StateId j = 0; j < c.table().arity(var); ++j)
    if (j != state) parts.push_back(c.disjoin(x, condition_state(c, root, var, j)));
  return c.conjoin(std::move(parts));
}

NodeId select_state(Circuit& c, NodeId root, VarId var, StateId state) {
  check_state(c, var, state);
  return c.conjoin(condition_state(c, root, var, state), root);
}

NodeId forget_state(Circuit& c, NodeId root, VarId var, StateId state) {
  check_state(c, var, state);
  return c.disjoin(root, condition_state(c, root, var, state));
}

NodeId select_state_alternative(Circuit& c, NodeId root, VarId var, StateId state) {
  check_state(c, var, state);
  const StateMask full = c.table().full_mask(var);
  std::vector<NodeId> parts{condition_state(c, root, var, state)};
  for (StateId j = 0; j < c.table().arity(var); ++j) {
    if (j == state) continue;
    const NodeId not_j = c.literal(var, full & ~state_bit(j));
    parts.push_back(c.disjoin(not_j, condition_state(c, root, var, j)));
  }
  return c.conjoin(std::move(parts));
}

NodeId select_term(Circuit& c, NodeId root, const Term& simple_term) {
  if (!simple_term.is_simple()) throw PreconditionError("selection requires a simple term");
  NodeId out = root;
  for (const auto& l : simple_term)
    out = select_state(c, out, l.var(), static_cast<StateId>(std::countr_zero(l.states())));
  return out;
}

NodeId forall_term(Circuit& c, NodeId root, const Term& simple_term) {
  if (!simple_term.is_simple())
    throw PreconditionError("universal quantification requires a simple term");
  NodeId out = root;
  for (const auto& l : simple_term)
    out = forall_state(c, out, l.var(), static_cast<StateId>(std::countr_zero(l.states())));
  return out;
}

bool is_or_decomposable(const Circuit& c, NodeId root) {
  std::unordered_map<NodeId, std::vector<VarId>> vars;
  for (NodeId id : topological_order(c, root)) {
    const Node& n = c.node(id);
    std::vector<VarId> mine;
    if (n.kind == NodeKind::Leaf) mine.push_back(n.literal->var());
    for (NodeId ch : n.children) {
      const auto& cv = vars.at(ch);
      if (n.kind == NodeKind::Or) {
        std::vector<VarId> common;
        std::set_intersection(mine.begin(), mine.end(), cv.begin(), cv.end(),
                              std::back_inserter(common));
        if (!common.empty()) return false;
      }
      std::vector<VarId> merged;
      std::set_union(mine.begin(), mine.end(), cv.begin(), cv.end(), std::back_inserter(merged));
      mine = std::move(merged);
    }
    vars.emplace(id, std::move(mine));
  }
  return true;
}

NodeId select_decomposable(Circuit& c, NodeId root, const Term& simple_term) {
  if (!simple_term.is_simple()) throw PreconditionError("selection requires a simple term");
  if (!is_or_decomposable(c, root))
    throw PreconditionError("circuit is not or-decomposable; use select_term");
  std::unordered_map<NodeId, NodeId> image;
  for (NodeId id : topological_order(c, root)) {
    const Node n = c.node(id);
    NodeId out = id;
    if (n.kind == NodeKind::Leaf) {
      if (const Literal* t = simple_term.find(n.literal->var()))
        out = (n.literal->states() & t->states()) != 0 ? id : Circuit::bottom;
    } else if (n.kind == NodeKind::And || n.kind == NodeKind::Or) {
      std::vector<NodeId> ch;
      for (NodeId x : n.children) ch.push_back(image.at(x));
      out = n.kind == NodeKind::And ? c.conjoin(std::move(ch)) : c.disjoin(std::move(ch));
    }
    image.emplace(id, out);
  }
  return image.at(root);
}

bool is_locally_fixated(const Circuit& c, NodeId root, const Instance& inst) {
  check_world(c.table(), inst);
  for (const auto& l : literals(c, root))
    if (!l.contains(inst[l.var()])) return false;
  return true;
}

} // namespace discrex
