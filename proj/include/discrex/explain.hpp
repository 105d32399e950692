#pragma once

/// @file
/// End-to-end explanations for a decision: sufficient and necessary reasons,
/// their general counterparts, and the general and complete reasons.

#include <memory>
#include <string>

#include "discrex/circuit.hpp"
#include "discrex/decision_graph.hpp"

namespace discrex {

struct ExplanationReport {
  std::string decision; // class label; empty when explaining a bare formula
  Instance instance;
  std::shared_ptr<Circuit> circuit;
  NodeId formula = Circuit::bottom; // class formula Δ
  NodeId general_reason = Circuit::bottom;
  NodeId complete_reason = Circuit::bottom;
  std::string general_reason_unfolded; // graphs only
  TermSet srs;
  ClauseSet nrs;
  TermSet gsrs;
  ClauseSet gnrs;
  std::string gsr_method; // "algorithm" or "resolution"
  std::string gnr_method; // "incremental" or "closure"

  const VariableTable& table() const { return circuit->table(); }
};

/// Full report for the decision a valid graph makes on an instance.
ExplanationReport explain(const DecisionGraph& g, const Instance& inst, const Limits& limits = {});

/// Full report for an instance of the class whose formula is `root`. Circuits
/// without the disjunction discipline of closed-form general reasons go
/// through resolution on the negated general reason instead of the
/// prime-implicant algorithm. Throws PreconditionError when I ⊭ Δ.
ExplanationReport explain_formula(std::shared_ptr<Circuit> circuit, NodeId root,
                                  const Instance& inst, const Limits& limits = {},
                                  std::string decision = {});

/// Definition checks by enumeration.
bool verify_gsr(const Circuit& c, NodeId root, const Instance& inst, const Term& term,
                const Limits& limits = {});
bool verify_gnr(const Circuit& c, NodeId root, const Instance& inst, const Clause& clause,
                const Limits& limits = {});

struct GapSummary {
  bool gsrs_equal_general_reason = false; // ⋁GSRs ≡ ⫰I·Δ
  bool gnrs_equal_general_reason = false; // ⋀GNRs ≡ ⫰I·Δ
  bool gsrs_equal_gnrs = false;           // ⋁GSRs ≡ ⋀GNRs
};

GapSummary report_gaps(const ExplanationReport& report, const Limits& limits = {});

/// Compares the report with brute-force search over the definitions and with
/// the report's own invariants. Returns one line per disagreement.
std::vector<std::string> check_report(const ExplanationReport& report, const Limits& limits = {});

enum class ReportPart { sr, nr, gsr, gnr, general, complete, all };

ReportPart parse_report_part(const std::string& name);
std::string report_to_text(const ExplanationReport& report, ReportPart part = ReportPart::all);

} // namespace discrex
