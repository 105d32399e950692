#pragma once

/// @file
/// Hash-consed NNF circuits over a variable table.
///
/// All nodes live in one arena owned by a Circuit. Structurally identical
/// nodes share one id, and constants are folded as nodes are built: ⊥ absorbs
/// AND, ⊤ absorbs OR, neutral constants are dropped, duplicate children are
/// merged and single-child gates collapse to the child. Nested ANDs are
/// flattened; ORs are kept as built.
///
/// A Circuit may be read concurrently, but building nodes mutates the arena
/// and must be serialized by the caller.

#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "discrex/logic.hpp"

namespace discrex {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { False, True, Leaf, And, Or };

struct Node {
  NodeKind kind = NodeKind::False;
  std::optional<Literal> literal; // set iff kind == Leaf
  std::vector<NodeId> children;   // And / Or only, sorted by id
};

class Circuit {
public:
  static constexpr NodeId bottom = 0;
  static constexpr NodeId top = 1;

  explicit Circuit(TablePtr table);

  const VariableTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }

  NodeId literal(const Literal& lit);
  /// Literal from a raw mask; the empty mask folds to ⊥ and the full mask to ⊤.
  NodeId literal(VarId var, StateMask states);
  NodeId conjoin(std::vector<NodeId> children);
  NodeId disjoin(std::vector<NodeId> children);
  NodeId conjoin(NodeId a, NodeId b) { return conjoin(std::vector<NodeId>{a, b}); }
  NodeId disjoin(NodeId a, NodeId b) { return disjoin(std::vector<NodeId>{a, b}); }

  NodeId term(const Term& t);
  NodeId clause(const Clause& c);
  NodeId dnf(const TermSet& terms);
  NodeId cnf(const ClauseSet& clauses);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  NodeKind kind(NodeId id) const { return nodes_.at(id).kind; }
  std::size_t size() const { return nodes_.size(); }

private:
  struct Key {
    NodeKind kind;
    VarId var;
    StateMask states;
    std::vector<NodeId> children;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  NodeId intern(Key key, Node node);

  TablePtr table_;
  std::deque<Node> nodes_; // stable references while the arena grows
  std::unordered_map<Key, NodeId, KeyHash> index_;
};

/// Reachable nodes of `root`, children before parents.
std::vector<NodeId> topological_order(const Circuit& c, NodeId root);

/// Sorted variables mentioned by literals reachable from `root`.
std::vector<VarId> variables(const Circuit& c, NodeId root);

/// Distinct literals reachable from `root`, sorted.
std::vector<Literal> literals(const Circuit& c, NodeId root);

/// w ⊨ Δ.
bool evaluate(const Circuit& c, NodeId root, const World& w);

/// Repeated evaluation of one root; keeps the traversal order and a scratch
/// buffer, so a single Evaluator must not be shared between threads.
class Evaluator {
public:
  Evaluator(const Circuit& c, NodeId root);
  bool operator()(const World& w) const;

private:
  const Circuit* circuit_;
  std::vector<NodeId> order_;
  std::unordered_map<NodeId, std::size_t> slot_;
  std::vector<std::vector<std::size_t>> child_slots_;
  mutable std::vector<char> value_;
};

/// Δ | τ for a simple term τ: each literal of a variable of τ becomes ⊤ if it
/// contains τ's state and ⊥ otherwise.
NodeId condition(Circuit& c, NodeId root, const Term& simple_term);

/// NNF of ¬Δ by De Morgan, complementing literals against their domain.
NodeId negate(Circuit& c, NodeId root);

/// α ⊨ β by enumerating the worlds of vars(α) ∪ vars(β).
bool entails(const Circuit& c, NodeId a, NodeId b, const Limits& limits = {});
bool equivalent(const Circuit& c, NodeId a, NodeId b, const Limits& limits = {});

/// Number of models over the whole table.
double count_models(const Circuit& c, NodeId root, const Limits& limits = {});

} // namespace discrex
