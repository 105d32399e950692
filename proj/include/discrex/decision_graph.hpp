#pragma once

/// @file
/// Decision graphs over discrete variables: validation of the weak test-once
/// property, classification, class formulas and closed-form general reasons.

#include <string>
#include <unordered_map>
#include <vector>

#include "discrex/circuit.hpp"

namespace discrex {

struct GraphEdge {
  StateMask states = 0;
  std::string to;
};

struct GraphNode {
  std::string id;
  std::optional<std::string> label; // set on leaves
  VarId var = 0;                    // tests only
  std::vector<GraphEdge> edges;     // tests only

  bool is_leaf() const { return label.has_value(); }
};

struct Violation {
  std::string node;
  std::vector<std::string> path; // node ids from the root to `node`
  std::string variable;          // empty for structural problems
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

class DecisionGraph {
public:
  DecisionGraph(TablePtr table, std::vector<std::string> classes, std::vector<GraphNode> nodes,
                std::string root);

  const VariableTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::string& root() const { return root_; }

  bool has_node(const std::string& id) const { return index_.count(id) != 0; }
  const GraphNode& node(const std::string& id) const;
  bool has_class(const std::string& label) const;

private:
  TablePtr table_;
  std::vector<std::string> classes_;
  std::vector<GraphNode> nodes_;
  std::string root_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Structural checks plus the weak test-once property on every path: the first
/// test of a variable partitions all of its states, and a later test of the
/// same variable partitions the state set inherited from the previous one.
ValidationReport validate(const DecisionGraph& g);

/// Throws ValidationError carrying the report's description when invalid.
void require_valid(const DecisionGraph& g);

/// Label of the leaf reached by following the instance.
std::string classify(const DecisionGraph& g, const Instance& inst);

/// Δc: ⊤/⊥ at leaves and ⋀j (Δc[Tj] ∨ ℓj) at tests, ℓj the complement of Sj.
NodeId class_formula(Circuit& c, const DecisionGraph& g, const std::string& label);

/// Γc for an instance of class c: like Δc, but ℓj is dropped (⊥) when the
/// instance's state lies in Sj.
NodeId general_reason_circuit(Circuit& c, const DecisionGraph& g, const std::string& label,
                              const Instance& inst);

/// The same recursion as general_reason_circuit written out without any
/// constant folding or sharing, for inspection.
std::string general_reason_unfolded(const DecisionGraph& g, const std::string& label,
                                    const Instance& inst);

/// ∀I·Δc.
NodeId complete_reason(Circuit& c, const DecisionGraph& g, const std::string& label,
                       const Instance& inst);

} // namespace discrex
