#include "discrex/explain.hpp"

#include <sstream>

#include "discrex/format.hpp"
#include "discrex/oracle.hpp"
#include "discrex/prime_implicants.hpp"
#include "discrex/prime_implicates.hpp"
#include "discrex/quantify.hpp"

namespace discrex {

namespace {

void recover(ExplanationReport& r) {
  const VariableTable& table = r.table();
  for (const auto& t : r.gsrs) r.srs.push_back(instance_cap_term(table, r.instance, t));
  for (const auto& s : r.gnrs) r.nrs.push_back(instance_cap_clause(table, r.instance, s));
  canonicalize(r.srs);
  canonicalize(r.nrs);
}

Term negate_clause(const VariableTable& table, const Clause& c) {
  std::vector<Literal> lits;
  for (const auto& l : c) lits.emplace_back(table, l.var(), table.full_mask(l.var()) & ~l.states());
  return Term(std::move(lits));
}

} // namespace

ExplanationReport explain(const DecisionGraph& g, const Instance& inst, const Limits& limits) {
  require_valid(g);
  check_world(g.table(), inst);
  ExplanationReport r;
  r.decision = classify(g, inst);
  r.instance = inst;
  r.circuit = std::make_shared<Circuit>(g.table_ptr());
  Circuit& c = *r.circuit;
  r.formula = class_formula(c, g, r.decision);
  r.general_reason = general_reason_circuit(c, g, r.decision, inst);
  r.general_reason_unfolded = general_reason_unfolded(g, r.decision, inst);
  r.complete_reason = forall_term(c, r.formula, inst.as_term(c.table()));

  r.gsrs = gsr_terms(c, r.general_reason);
  r.gsr_method = "algorithm";
  r.gnrs = gnr_clauses(c.table(), nnf_to_cnf(c, r.general_reason), inst, limits);
  r.gnr_method = "incremental";
  recover(r);
  return r;
}

ExplanationReport explain_formula(std::shared_ptr<Circuit> circuit, NodeId root,
                                  const Instance& inst, const Limits& limits,
                                  std::string decision) {
  if (!circuit) throw PreconditionError("explain_formula needs a circuit");
  Circuit& c = *circuit;
  const VariableTable& table = c.table();
  check_world(table, inst);
  if (!evaluate(c, root, inst)) throw PreconditionError("instance not in class");

  ExplanationReport r;
  r.decision = std::move(decision);
  r.instance = inst;
  r.circuit = circuit;
  r.formula = root;
  const Term it = inst.as_term(table);
  r.general_reason = is_or_decomposable(c, root) ? select_decomposable(c, root, it)
                                                 : select_term(c, root, it);
  r.complete_reason = forall_term(c, root, it);

  if (!or_discipline_violation(c, r.general_reason) && has_fixating_instance(c, r.general_reason)) {
    r.gsrs = gsr_terms(c, r.general_reason);
    r.gsr_method = "algorithm";
  } else {
    // Prime implicants of Γ are the negated prime implicates of ¬Γ.
    const auto dual = close_resolution(table, nnf_to_cnf(c, negate(c, r.general_reason)), limits);
    for (const auto& cl : dual) r.gsrs.push_back(negate_clause(table, cl));
    r.gsrs = variable_minimal(r.gsrs);
    r.gsr_method = "resolution";
  }

  auto cnf = nnf_to_cnf(c, r.general_reason);
  if (is_locally_fixated(cnf, inst)) {
    r.gnrs = gnr_clauses(table, std::move(cnf), inst, limits);
    r.gnr_method = "incremental";
  } else {
    r.gnrs = variable_minimal(close_resolution(table, std::move(cnf), limits));
    r.gnr_method = "closure";
  }
  recover(r);
  return r;
}

bool verify_gsr(const Circuit& c, NodeId root, const Instance& inst, const Term& term,
                const Limits& limits) {
  return oracle::is_gsr(c, root, inst, term, limits);
}

bool verify_gnr(const Circuit& c, NodeId root, const Instance& inst, const Clause& clause,
                const Limits& limits) {
  return oracle::is_gnr(c, root, inst, clause, limits);
}

GapSummary report_gaps(const ExplanationReport& r, const Limits& limits) {
  Circuit& c = *r.circuit;
  const NodeId gsr = c.dnf(r.gsrs);
  const NodeId gnr = c.cnf(r.gnrs);
  return {equivalent(c, gsr, r.general_reason, limits),
          equivalent(c, gnr, r.general_reason, limits), equivalent(c, gsr, gnr, limits)};
}

std::vector<std::string> check_report(const ExplanationReport& r, const Limits& limits) {
  std::vector<std::string> bad;
  Circuit& c = *r.circuit;
  const VariableTable& table = c.table();
  const auto brute = oracle::brute_explanations(c, r.formula, r.instance, limits);
  auto compare = [&](const char* what, const auto& got, const auto& want, auto fmt) {
    if (got == want) return;
    std::ostringstream os;
    os << what << " differ from brute-force search: got {";
    for (std::size_t i = 0; i < got.size(); ++i) os << (i ? "; " : "") << fmt(table, got[i]);
    os << "}, expected {";
    for (std::size_t i = 0; i < want.size(); ++i) os << (i ? "; " : "") << fmt(table, want[i]);
    os << "}";
    bad.push_back(os.str());
  };
  compare("sufficient reasons", r.srs, brute.srs, format_term);
  compare("necessary reasons", r.nrs, brute.nrs, format_clause);
  compare("general sufficient reasons", r.gsrs, brute.gsrs, format_term);
  compare("general necessary reasons", r.gnrs, brute.gnrs, format_clause);

  const NodeId selected = select_term(c, r.formula, r.instance.as_term(table));
  if (!equivalent(c, selected, r.general_reason, limits))
    bad.push_back("general reason is not equivalent to selection over the class formula");
  if (!evaluate(c, r.complete_reason, r.instance))
    bad.push_back("instance does not satisfy the complete reason");
  if (!entails(c, r.complete_reason, r.general_reason, limits))
    bad.push_back("complete reason does not entail the general reason");
  if (!entails(c, r.general_reason, r.formula, limits))
    bad.push_back("general reason does not entail the class formula");
  if (!r.general_reason_unfolded.empty()) {
    if (!is_locally_fixated(c, r.general_reason, r.instance))
      bad.push_back("general reason circuit is not locally fixated on the instance");
    if (auto why = or_discipline_violation(c, r.general_reason)) bad.push_back(*why);
  }
  for (const auto& s : r.gnrs)
    if (!strongly_implies(r.instance, s))
      bad.push_back("instance does not strongly imply " + format_clause(table, s));
  return bad;
}

ReportPart parse_report_part(const std::string& name) {
  if (name == "sr") return ReportPart::sr;
  if (name == "nr") return ReportPart::nr;
  if (name == "gsr") return ReportPart::gsr;
  if (name == "gnr") return ReportPart::gnr;
  if (name == "general") return ReportPart::general;
  if (name == "complete") return ReportPart::complete;
  if (name == "all") return ReportPart::all;
  throw InputError("unknown explanation kind '" + name + "'");
}

std::string report_to_text(const ExplanationReport& r, ReportPart part) {
  const VariableTable& table = r.table();
  std::ostringstream os;
  const bool all = part == ReportPart::all;
  if (all) {
    if (!r.decision.empty()) os << "decision: " << r.decision << "\n";
    os << "instance: " << format_world(table, r.instance) << "\n";
  }
  auto section = [&](ReportPart p, const char* title, const auto& items, auto fmt) {
    if (!all && part != p) return;
    if (all) os << title << ":\n";
    for (const auto& x : items) os << (all ? "  " : "") << fmt(table, x) << "\n";
  };
  section(ReportPart::sr, "sufficient reasons", r.srs, format_term);
  section(ReportPart::nr, "necessary reasons", r.nrs, format_clause);
  section(ReportPart::gsr, "general sufficient reasons", r.gsrs, format_term);
  section(ReportPart::gnr, "general necessary reasons", r.gnrs, format_clause);
  if (all || part == ReportPart::general)
    os << (all ? "general reason:\n  " : "") << format_circuit(*r.circuit, r.general_reason)
       << "\n";
  if (all || part == ReportPart::complete)
    os << (all ? "complete reason:\n  " : "") << format_circuit(*r.circuit, r.complete_reason)
       << "\n";
  return os.str();
}

} // namespace discrex
