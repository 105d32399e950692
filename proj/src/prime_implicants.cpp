#include "discrex/prime_implicants.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "discrex/format.hpp"

namespace discrex {

TermSet cross_product(const VariableTable& table, const TermSet& a, const TermSet& b) {
  TermSet out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b)
      if (auto t = conjoin(table, x, y)) out.push_back(std::move(*t));
  canonicalize(out);
  return out;
}

TermSet vmin_prune(const TermSet& set, const std::vector<VarId>& vars) {
  if (vars.empty()) return set;
  TermSet out;
  for (const auto& t : set) {
    bool drop = false;
    for (const auto& u : set) {
      if (!vars_strict_subset(u, t)) continue;
      for (const auto& l : t) {
        if (!u.mentions(l.var()) && std::binary_search(vars.begin(), vars.end(), l.var())) {
          drop = true;
          break;
        }
      }
      if (drop) break;
    }
    if (!drop) out.push_back(t);
  }
  return out;
}

namespace {

// Immediate dominators on the DAG below `root` (Cooper, Harvey and Kennedy).
std::unordered_map<NodeId, NodeId> dominators(const Circuit& c, NodeId root,
                                              const std::vector<NodeId>& post) {
  std::unordered_map<NodeId, std::size_t> po_index;
  for (std::size_t i = 0; i < post.size(); ++i) po_index.emplace(post[i], i);
  std::unordered_map<NodeId, std::vector<NodeId>> preds;
  for (NodeId id : post)
    for (NodeId ch : c.node(id).children) preds[ch].push_back(id);

  std::unordered_map<NodeId, NodeId> idom{{root, root}};
  auto intersect = [&](NodeId a, NodeId b) {
    while (a != b) {
      while (po_index.at(a) < po_index.at(b)) a = idom.at(a);
      while (po_index.at(b) < po_index.at(a)) b = idom.at(b);
    }
    return a;
  };
  // Parents always precede children in reverse post-order of a DAG, so one
  // sweep reaches the fixpoint.
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    if (*it == root) continue;
    std::optional<NodeId> d;
    for (NodeId p : preds[*it]) {
      if (!idom.count(p)) continue;
      d = d ? intersect(*d, p) : p;
    }
    idom[*it] = *d;
  }
  return idom;
}

} // namespace

std::unordered_map<NodeId, std::vector<VarId>> inner_vars_all(const Circuit& c, NodeId root) {
  const auto post = topological_order(c, root);
  const auto idom = dominators(c, root, post);
  std::unordered_map<NodeId, std::size_t> po_index;
  for (std::size_t i = 0; i < post.size(); ++i) po_index.emplace(post[i], i);
  auto lca = [&](NodeId a, NodeId b) {
    while (a != b) {
      while (po_index.at(a) < po_index.at(b)) a = idom.at(a);
      while (po_index.at(b) < po_index.at(a)) b = idom.at(b);
    }
    return a;
  };

  std::map<VarId, NodeId> anchor; // dominator-tree LCA of the variable's leaves
  for (NodeId id : post) {
    if (c.kind(id) != NodeKind::Leaf) continue;
    const VarId v = c.node(id).literal->var();
    auto [it, fresh] = anchor.emplace(v, id);
    if (!fresh) it->second = lca(it->second, id);
  }

  std::unordered_map<NodeId, std::vector<VarId>> out;
  for (NodeId id : post) out[id];
  for (const auto& [v, a] : anchor) {
    for (NodeId n = a;; n = idom.at(n)) {
      out[n].push_back(v);
      if (n == root) break;
    }
  }
  return out; // vars pushed in ascending order, so each list is sorted
}

std::vector<VarId> inner_vars(const Circuit& c, NodeId node, NodeId root) {
  auto all = inner_vars_all(c, root);
  auto it = all.find(node);
  if (it == all.end()) throw PreconditionError("node is not reachable from the root");
  return it->second;
}

std::optional<std::string> or_discipline_violation(const Circuit& c, NodeId root) {
  // Masks of the literals reachable from each node, per variable.
  std::unordered_map<NodeId, std::map<VarId, std::vector<StateMask>>> below;
  for (NodeId id : topological_order(c, root)) {
    const Node& n = c.node(id);
    auto& mine = below[id];
    if (n.kind == NodeKind::Leaf) mine[n.literal->var()].push_back(n.literal->states());
    for (NodeId ch : n.children)
      for (const auto& [v, masks] : below.at(ch)) {
        auto& dst = mine[v];
        dst.insert(dst.end(), masks.begin(), masks.end());
      }
    for (auto& [v, masks] : mine) {
      std::sort(masks.begin(), masks.end());
      masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    }
    if (n.kind != NodeKind::Or) continue;

    std::vector<NodeId> rest = n.children;
    while (rest.size() > 1) {
      auto peel = std::find_if(rest.begin(), rest.end(), [&](NodeId k) {
        if (c.kind(k) != NodeKind::Leaf) return false;
        const Literal& l = *c.node(k).literal;
        for (NodeId r : rest) {
          if (r == k) continue;
          const auto& m = below.at(r);
          auto it = m.find(l.var());
          if (it == m.end()) continue;
          for (StateMask s : it->second)
            if (s == l.states() || (l.states() & ~s) != 0) return false;
        }
        return true;
      });
      if (peel == rest.end()) {
        std::ostringstream os;
        os << "disjunction " << format_circuit(c, id)
           << " is not of the form ℓ ∨ Δ with ℓ strictly inside Δ's literals on its variable";
        return os.str();
      }
      rest.erase(peel);
    }
  }
  return std::nullopt;
}

bool has_fixating_instance(const Circuit& c, NodeId root) {
  std::map<VarId, StateMask> common;
  for (const auto& l : literals(c, root)) {
    auto [it, fresh] = common.emplace(l.var(), l.states());
    if (!fresh) it->second &= l.states();
    if (it->second == 0) return false;
  }
  return true;
}

namespace {

TermSet run(const Circuit& c, NodeId root, const PiOptions& options, bool prune) {
  std::unordered_map<NodeId, std::vector<VarId>> inner;
  if (prune) inner = inner_vars_all(c, root);
  std::unordered_map<NodeId, TermSet> cache;
  const VariableTable& table = c.table();

  std::function<TermSet(NodeId)> go = [&](NodeId id) -> TermSet {
    if (options.use_cache)
      if (auto it = cache.find(id); it != cache.end()) return it->second;
    const Node& n = c.node(id);
    TermSet s;
    switch (n.kind) {
    case NodeKind::True: s.push_back(Term()); break;
    case NodeKind::False: break;
    case NodeKind::Leaf: s.push_back(Term({*n.literal})); break;
    case NodeKind::And:
      s = go(n.children.front());
      for (std::size_t i = 1; i < n.children.size(); ++i)
        s = remove_subsumed(cross_product(table, s, go(n.children[i])));
      break;
    case NodeKind::Or:
      for (NodeId ch : n.children) {
        auto sub = go(ch);
        s.insert(s.end(), sub.begin(), sub.end());
      }
      s = remove_subsumed(std::move(s));
      break;
    }
    if (prune) s = vmin_prune(s, inner.at(id));
    if (options.use_cache) cache.emplace(id, s);
    return s;
  };
  auto out = go(root);
  canonicalize(out);
  return out;
}

void require_discipline(const Circuit& c, NodeId root) {
  if (auto why = or_discipline_violation(c, root))
    throw PreconditionError(*why + "; prime implicants of such circuits need the oracle or "
                                   "resolution path");
}

} // namespace

TermSet pi(const Circuit& c, NodeId root, const PiOptions& options) {
  require_discipline(c, root);
  return run(c, root, options, false);
}

TermSet gsr_terms(const Circuit& c, NodeId root, const PiOptions& options) {
  require_discipline(c, root);
  if (!has_fixating_instance(c, root))
    throw PreconditionError("circuit is not locally fixated on any instance");
  return run(c, root, options, true);
}

} // namespace discrex
