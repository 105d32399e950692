#pragma once

/// @file
/// JSON documents for variable tables, formulas, decision graphs, instances
/// and explanation reports.
///
/// Graph:    {"variables": [{"name", "states": [...], "intervals"?: [[lo, hi], ...]}],
///            "classes": [...],
///            "nodes": [{"id", "var", "edges": [{"states": [...], "to"}]} | {"id", "class"}],
///            "root"}
/// Formula:  {"variables": [...], "formula": F} with F one of true, false,
///            {"var", "states"}, {"and": [F...]}, {"or": [F...]}, {"not": F}.
/// Instance: {"Var": "state", ...} covering every variable.
///
/// Interval bounds may be null for an unbounded side. Node ids may be strings
/// or integers and are normalized to strings.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "discrex/decision_graph.hpp"
#include "discrex/explain.hpp"

namespace discrex {

std::string read_text_file(const std::string& path);

DecisionGraph graph_from_json(const std::string& text);
std::string graph_to_json(const DecisionGraph& g);

struct FormulaDocument {
  std::shared_ptr<Circuit> circuit;
  NodeId root = Circuit::bottom;
};

FormulaDocument formula_from_json(const std::string& text);
/// Formula document with shared subcircuits written out in full.
std::string formula_to_json(const Circuit& c, NodeId root);

/// True when the text is a graph document (has "nodes"), false for a formula.
bool looks_like_graph(const std::string& text);

Instance instance_from_json(const VariableTable& table, const std::string& text);
Instance instance_from_assignments(const VariableTable& table,
                                   const std::vector<std::pair<std::string, std::string>>& kv);

std::string report_to_json(const ExplanationReport& report, ReportPart part = ReportPart::all);

} // namespace discrex
