#include <doctest.h>

#include "discrex/decision_graph.hpp"
#include "discrex/oracle.hpp"
#include "discrex/prime_implicates.hpp"
#include "discrex/quantify.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace discrex;
using namespace discrex::testing;

namespace {

ClauseSet var_min(const ClauseSet& s) {
  ClauseSet out;
  for (const auto& c : s) {
    auto vc = c.vars();
    bool dominated = false;
    for (const auto& o : s) {
      auto vo = o.vars();
      if (vo.size() < vc.size() && std::includes(vc.begin(), vc.end(), vo.begin(), vo.end()))
        dominated = true;
    }
    if (!dominated) out.push_back(c);
  }
  canonicalize(out);
  return out;
}

bool contains(const ClauseSet& s, const Clause& c) {
  return std::find(s.begin(), s.end(), c) != s.end();
}

// A CNF whose literals all hold the instance's state.
ClauseSet fixated_cnf(Rng& rng, const VariableTable& t, const Instance& inst) {
  ClauseSet out;
  const std::size_t n = 1 + rng() % 5;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Literal> lits;
    for (VarId v = 0; v < t.size(); ++v) {
      if (rng() % 2) continue;
      StateMask m = state_bit(inst[v]);
      for (StateId s = 0; s < t.arity(v); ++s)
        if (rng() % 3 == 0) m |= state_bit(s);
      if (m != t.full_mask(v)) lits.emplace_back(t, v, m);
    }
    if (!lits.empty()) out.push_back(Clause(std::move(lits)));
  }
  canonicalize(out);
  return out;
}

} // namespace

TEST_SUITE("prime_implicates") {

TEST_CASE("nnf_to_cnf") {
  auto t = xyz_table();
  Circuit c(t);
  CHECK(nnf_to_cnf(c, c.term(term(*t, "X:x1 Y:y1"))) == clauses(*t, {"X:x1", "Y:y1"}));
  CHECK(nnf_to_cnf(c, Circuit::top).empty());
  CHECK(nnf_to_cnf(c, Circuit::bottom) == ClauseSet{Clause()});
  auto d1 = load_formula("fix_d1.json");
  CHECK(equivalent(*d1.circuit, d1.root, d1.circuit->cnf(nnf_to_cnf(*d1.circuit, d1.root))));
}

TEST_CASE("nnf_to_cnf preserves meaning") {
  Rng rng(61);
  for (int k = 0; k < 150; ++k) {
    auto t = random_table(rng);
    Circuit c(t);
    const NodeId d = random_nnf(rng, c);
    CHECK(equivalent(c, d, c.cnf(nnf_to_cnf(c, d))));
  }
}

TEST_CASE("cnf of a tree-shaped general reason stays small") {
  for (const char* name : {"fix_a.json", "fix_b.json", "fix_c.json", "fix_n.json", "path_graph.json"}) {
    CAPTURE(name);
    const auto g = load_graph(name);
    Circuit c(g.table_ptr());
    Rng rng(62);
    for (int k = 0; k < 8; ++k) {
      const Instance inst = random_instance(rng, g.table());
      const NodeId gr = general_reason_circuit(c, g, classify(g, inst), inst);
      CHECK(nnf_to_cnf(c, gr).size() <= topological_order(c, gr).size());
    }
  }
}

TEST_CASE("resolve") {
  auto t = xyz_table();
  const auto r = resolve(*t, clause(*t, "Y:y1 Z:z1|z2"), clause(*t, "X:x1 Z:z1|z3"), 2);
  REQUIRE(r.status == ResolveStatus::resolvent);
  CHECK(*r.clause == clause(*t, "X:x1 Y:y1 Z:z1"));

  VariableTable b;
  b.add("X", {"0", "1"});
  b.add("Y", {"0", "1"});
  b.add("Z", {"0", "1"});
  const auto rb = resolve(b, clause(b, "X:0 Y:1"), clause(b, "X:1 Z:0"), 0);
  REQUIRE(rb.status == ResolveStatus::resolvent);
  CHECK(*rb.clause == clause(b, "Y:1 Z:0"));

  const auto taut = resolve(*t, clause(*t, "X:x1 Y:y1|y2"), clause(*t, "X:x2 Y:y3"), 0);
  CHECK(taut.status == ResolveStatus::tautology);
  CHECK_FALSE(taut.clause.has_value());

  const auto na = resolve(*t, clause(*t, "X:x1 Y:y1"), clause(*t, "X:x1|x2 Z:z1"), 0);
  CHECK(na.status == ResolveStatus::not_applicable);
  CHECK(resolve(*t, clause(*t, "Y:y1"), clause(*t, "X:x1 Z:z1"), 0).status ==
        ResolveStatus::not_applicable);
}

TEST_CASE("resolvents are entailed by their parents") {
  Rng rng(63);
  for (int k = 0; k < 300; ++k) {
    auto t = random_table(rng);
    Circuit c(t);
    const Clause a = random_clause(rng, *t), b = random_clause(rng, *t);
    for (VarId v = 0; v < t->size(); ++v) {
      const auto r = resolve(*t, a, b, v);
      if (r.status != ResolveStatus::resolvent) continue;
      CHECK(entails(c, c.conjoin(c.clause(a), c.clause(b)), c.clause(*r.clause)));
    }
  }
}

TEST_CASE("close_resolution on the negated nine-term formula") {
  auto d2 = load_formula("fix_d2.json");
  auto& c = *d2.circuit;
  const auto& t = c.table();
  const Instance i = make_instance(t, "X=x1,Y=y1,Z=z1");
  const NodeId gr = select_term(c, d2.root, i.as_term(t));
  const auto closed = close_resolution(t, nnf_to_cnf(c, gr));
  CHECK(contains(closed, clause(t, "X:x1 Y:y1 Z:z1")));
  for (const char* s : {"Y:y1|y2 Z:z1", "Y:y1 Z:z1|z2", "X:x1|x2 Z:z1", "X:x1 Z:z1|z3",
                        "X:x1|x3 Y:y1", "X:x1 Y:y1|y3"})
    CHECK(contains(closed, clause(t, s)));
  CHECK(closed == oracle::brute_prime_implicates(c, gr));
  const auto gnrs = gnr_clauses(t, nnf_to_cnf(c, gr), i);
  CHECK_FALSE(contains(gnrs, clause(t, "X:x1 Y:y1 Z:z1")));
  CHECK(gnrs == clauses(t, {"Y:y1|y2 Z:z1", "Y:y1 Z:z1|z2", "X:x1|x2 Z:z1", "X:x1 Z:z1|z3",
                            "X:x1|x3 Y:y1", "X:x1 Y:y1|y3"}));
}

TEST_CASE("close_resolution matches the oracle") {
  Rng rng(64);
  for (int k = 0; k < 200; ++k) {
    auto t = random_table(rng);
    Circuit c(t);
    const auto cnf = random_cnf(rng, *t, 5);
    const auto closed = close_resolution(*t, cnf);
    CHECK(closed == oracle::brute_prime_implicates(c, c.cnf(cnf)));
    CHECK(remove_subsumed(closed) == closed);
    CHECK(equivalent(c, c.cnf(closed), c.cnf(cnf)));
  }
  auto t = xyz_table();
  CHECK(close_resolution(*t, clauses(*t, {"X:x1 Y:y2"})) == clauses(*t, {"X:x1 Y:y2"}));
}

TEST_CASE("close_resolution honours the clause budget") {
  // Each pair of clauses below resolves on A, so closing them makes many clauses.
  auto t = std::make_shared<VariableTable>();
  for (char v = 'A'; v <= 'F'; ++v) t->add(std::string(1, v), {"0", "1", "2", "3"});
  ClauseSet cnf;
  const char* states[] = {"0", "1", "2", "3"};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      cnf.push_back(clause(*t, std::string("A:") + states[a] + " B:" + states[b] + " C:" +
                                   states[(a + b) % 4] + " D:" + states[(a * b) % 4]));
  const auto full = close_resolution(*t, cnf);
  Circuit c(t);
  CHECK(full == oracle::brute_prime_implicates(c, c.cnf(cnf)));
  Limits tiny;
  tiny.max_clauses = cnf.size() + 2;
  CHECK_THROWS_AS(close_resolution(*t, cnf, tiny), CapacityError);
}

TEST_CASE("gnr_clauses on the blood-type examples") {
  {
    const auto g = load_graph("fix_b.json");
    const auto& t = g.table();
    Circuit c(g.table_ptr());
    const Instance patient = make_instance(t, "Age=>=55,BType=A,Weight=Overweight");
    const auto cnf = nnf_to_cnf(c, general_reason_circuit(c, g, "yes", patient));
    CHECK(gnr_clauses(t, cnf, patient) ==
          clauses(t, {"Age:>=55", "BType:A|B|AB Weight:Overweight",
                      "BType:A|B Weight:Underweight|Overweight"}));
  }
  {
    const auto g = load_graph("fix_c.json");
    const auto& t = g.table();
    Circuit c(g.table_ptr());
    const Instance patient = make_instance(t, "Age=>=55,BType=A,Weight=Overweight");
    const auto cnf = nnf_to_cnf(c, general_reason_circuit(c, g, "yes", patient));
    CHECK(gnr_clauses(t, cnf, patient) ==
          clauses(t, {"Age:>=55", "BType:A|O Weight:Normal|Overweight"}));
  }
}

TEST_CASE("gnr_clauses requires fixation") {
  auto t = xyz_table();
  const Instance i = make_instance(*t, "X=x1,Y=y1,Z=z1");
  CHECK(is_locally_fixated(clauses(*t, {"X:x1|x2 Y:y3"}), make_instance(*t, "X=x2,Y=y3,Z=z1")));
  CHECK_FALSE(is_locally_fixated(clauses(*t, {"X:x1|x2 Y:y3"}), i));
  CHECK_THROWS_AS(gnr_clauses(*t, clauses(*t, {"X:x1|x2 Y:y3"}), i), PreconditionError);
}

TEST_CASE("gnr_clauses equals the variable-minimal prime implicates") {
  Rng rng(66);
  for (int k = 0; k < 200; ++k) {
    auto t = random_table(rng);
    Circuit c(t);
    const Instance inst = random_instance(rng, *t);
    const auto cnf = fixated_cnf(rng, *t, inst);
    REQUIRE(is_locally_fixated(cnf, inst));
    const auto gnrs = gnr_clauses(*t, cnf, inst);
    const auto primes = oracle::brute_prime_implicates(c, c.cnf(cnf));
    CHECK(gnrs == var_min(primes));
    CHECK(gnrs == var_min(close_resolution(*t, cnf)));
    for (const auto& s : gnrs) CHECK(strongly_implies(inst, s));
  }
}

TEST_CASE("resolvents of fixated clauses keep every parent variable") {
  Rng rng(67);
  for (int k = 0; k < 300; ++k) {
    auto t = random_table(rng);
    const Instance inst = random_instance(rng, *t);
    const auto cnf = fixated_cnf(rng, *t, inst);
    for (std::size_t a = 0; a < cnf.size(); ++a)
      for (std::size_t b = a + 1; b < cnf.size(); ++b)
        for (VarId v = 0; v < t->size(); ++v) {
          const auto r = resolve(*t, cnf[a], cnf[b], v);
          if (r.status != ResolveStatus::resolvent) continue;
          auto va = cnf[a].vars(), vb = cnf[b].vars();
          std::vector<VarId> u;
          std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(u));
          CHECK(r.clause->vars() == u);
        }
  }
}

TEST_CASE("general necessary reasons of graph decisions") {
  for (const char* name : {"fix_a.json", "fix_b.json", "fix_c.json", "fix_n.json", "path_graph.json"}) {
    CAPTURE(name);
    const auto g = load_graph(name);
    const auto& t = g.table();
    Circuit c(g.table_ptr());
    Rng rng(68);
    for (int k = 0; k < 6; ++k) {
      const Instance inst = random_instance(rng, t);
      const auto label = classify(g, inst);
      const NodeId d = class_formula(c, g, label);
      const auto gnrs = gnr_clauses(t, nnf_to_cnf(c, general_reason_circuit(c, g, label, inst)), inst);
      const auto truth = oracle::brute_explanations(c, d, inst);
      CHECK(gnrs == truth.gnrs);
      ClauseSet recovered;
      for (const auto& s : gnrs) {
        // (I ∖ σ) ∧ ¬σ ⊨ ¬Δ.
        const NodeId flip = c.conjoin(c.term(instance_minus_clause(t, inst, s)),
                                      negate(c, c.clause(s)));
        CHECK(entails(c, flip, negate(c, d)));
        recovered.push_back(instance_cap_clause(t, inst, s));
      }
      canonicalize(recovered);
      CHECK(recovered == truth.nrs);
    }
  }
}

} // TEST_SUITE
