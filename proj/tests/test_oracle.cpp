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

Clause negate_term(const VariableTable& t, const Term& tau) {
  std::vector<Literal> lits;
  for (const auto& l : tau) lits.emplace_back(t, l.var(), t.full_mask(l.var()) & ~l.states());
  return Clause(std::move(lits));
}

bool subset(std::vector<World> a, std::vector<World> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("enumerate_models") {
  const auto g = load_graph("fix_a.json");
  Circuit c(g.table_ptr());
  CHECK(oracle::enumerate_models(c, class_formula(c, g, "c1")).size() == 20);
  CHECK(oracle::enumerate_models(c, class_formula(c, g, "c3")).size() == 4);
  CHECK(oracle::enumerate_models(c, Circuit::bottom).empty());
  CHECK(oracle::enumerate_models(c, Circuit::top).size() == 27);
  Limits tiny;
  tiny.max_worlds = 10;
  CHECK_THROWS_AS(oracle::enumerate_models(c, Circuit::top, tiny), CapacityError);
}

TEST_CASE("select_semantics") {
  auto d1 = load_formula("fix_d1.json");
  auto& c = *d1.circuit;
  const Term i = make_instance(c.table(), "X=x1,Y=y1,Z=z1").as_term(c.table());
  const auto sel = oracle::select_semantics(c, d1.root, i, oracle::Mode::select);
  CHECK(sel == oracle::enumerate_models(c, select_term(c, d1.root, i)));
  CHECK(sel == oracle::enumerate_models(c, d1.root));

  Rng rng(71);
  for (int k = 0; k < 100; ++k) {
    auto t = random_table(rng);
    Circuit rc(t);
    const NodeId d = random_nnf(rng, rc);
    const Term tau = random_instance(rng, *t).as_term(*t);
    const auto fa = oracle::select_semantics(rc, d, tau, oracle::Mode::forall);
    const auto se = oracle::select_semantics(rc, d, tau, oracle::Mode::select);
    CHECK(subset(fa, se));
    CHECK(subset(se, oracle::enumerate_models(rc, d)));
  }

  auto bt = std::make_shared<VariableTable>();
  bt->add("A", {"0", "1"});
  bt->add("B", {"0", "1"});
  bt->add("C", {"0", "1"});
  for (int k = 0; k < 50; ++k) {
    Circuit bc(bt);
    const NodeId d = random_nnf(rng, bc);
    auto m = random_model(rng, bc, d);
    if (!m) continue;
    const Term tau = m->as_term(*bt);
    CHECK(oracle::select_semantics(bc, d, tau, oracle::Mode::forall) ==
          oracle::select_semantics(bc, d, tau, oracle::Mode::select));
  }
}

TEST_CASE("brute prime implicants and implicates") {
  auto t = xyz_table();
  Circuit c(t);
  const NodeId d = c.term(term(*t, "X:x1 Y:y1"));
  CHECK(oracle::brute_prime_implicants(c, d) == terms(*t, {"X:x1 Y:y1"}));
  CHECK(oracle::brute_prime_implicates(c, d) == clauses(*t, {"X:x1", "Y:y1"}));

  auto d2 = load_formula("fix_d2.json");
  const auto& t2 = d2.circuit->table();
  const NodeId gr = select_term(*d2.circuit, d2.root,
                                make_instance(t2, "X=x1,Y=y1,Z=z1").as_term(t2));
  const auto primes = oracle::brute_prime_implicates(*d2.circuit, gr);
  CHECK(std::find(primes.begin(), primes.end(), clause(t2, "X:x1 Y:y1 Z:z1")) != primes.end());

  Rng rng(72);
  for (int k = 0; k < 100; ++k) {
    auto rt = random_table(rng);
    Circuit rc(rt);
    const NodeId rd = random_nnf(rng, rc);
    CHECK(equivalent(rc, rc.cnf(oracle::brute_prime_implicates(rc, rd)), rd));
    CHECK(equivalent(rc, rc.dnf(oracle::brute_prime_implicants(rc, rd)), rd));
  }
}

TEST_CASE("consensus") {
  auto t = xyz_table();
  CHECK(oracle::consensus_closure(*t, terms(*t, {"X:x1 Y:y1", "X:x2 Y:y1"})) ==
        terms(*t, {"X:x1|x2 Y:y1"}));
  CHECK(oracle::consensus_closure(*t, terms(*t, {"X:x1 Z:z2"})) == terms(*t, {"X:x1 Z:z2"}));
  CHECK_FALSE(oracle::consensus(*t, term(*t, "X:x1 Y:y1"), term(*t, "X:x1|x2 Y:y1"), 0));
  CHECK_FALSE(oracle::consensus(*t, term(*t, "X:x1 Y:y1"), term(*t, "X:x2 Y:y2"), 0));
  CHECK_FALSE(oracle::consensus(*t, term(*t, "Y:y1"), term(*t, "X:x2 Y:y1"), 0));
}

TEST_CASE("consensus closure agrees with term enumeration") {
  Rng rng(73);
  for (int k = 0; k < 200; ++k) {
    auto t = random_table(rng);
    Circuit c(t);
    const auto dnf = random_dnf(rng, *t, 5);
    CHECK(oracle::consensus_closure(*t, dnf) == oracle::brute_prime_implicants(c, c.dnf(dnf)));
  }
}

TEST_CASE("consensus is dual to resolution") {
  Rng rng(74);
  int pairs = 0;
  for (int k = 0; k < 300; ++k) {
    auto t = random_table(rng);
    Circuit c(t);
    const Term a = random_term(rng, *t), b = random_term(rng, *t);
    for (VarId v = 0; v < t->size(); ++v) {
      const auto cons = oracle::consensus(*t, a, b, v);
      const auto res = resolve(*t, negate_term(*t, a), negate_term(*t, b), v);
      CHECK(cons.has_value() == (res.status == ResolveStatus::resolvent));
      if (cons && res.clause) {
        ++pairs;
        CHECK(equivalent(c, negate(c, c.term(*cons)), c.clause(*res.clause)));
      }
    }
  }
  CHECK(pairs > 50);
}

TEST_CASE("brute_explanations on the examples") {
  {
    const auto g = load_graph("fix_b.json");
    const auto& t = g.table();
    Circuit c(g.table_ptr());
    const Instance patient = make_instance(t, "Age=>=55,BType=A,Weight=Overweight");
    const auto e = oracle::brute_explanations(c, class_formula(c, g, "yes"), patient);
    CHECK(e.srs == terms(t, {"Age:>=55 BType:A", "Age:>=55 Weight:Overweight"}));
    CHECK(e.nrs == clauses(t, {"Age:>=55", "BType:A Weight:Overweight"}));
    CHECK(e.gsrs == terms(t, {"Age:>=55 BType:A|B", "Age:>=55 Weight:Overweight"}));
    CHECK(e.gnrs == clauses(t, {"Age:>=55", "BType:A|B|AB Weight:Overweight",
                                "BType:A|B Weight:Underweight|Overweight"}));
  }
  {
    auto d1 = load_formula("fix_d1.json");
    const auto& t = d1.circuit->table();
    const auto e = oracle::brute_explanations(*d1.circuit, d1.root, make_instance(t, "X=x1,Y=y1,Z=z1"));
    CHECK(e.gsrs == terms(t, {"X:x1 Y:y1"}));
    CHECK(e.gnrs == clauses(t, {"X:x1|x2", "Y:y1|y2"}));
    CHECK(oracle::is_gsr(*d1.circuit, d1.root, make_instance(t, "X=x1,Y=y1,Z=z1"), term(t, "X:x1 Y:y1")));
    CHECK_FALSE(oracle::is_gnr(*d1.circuit, d1.root, make_instance(t, "X=x1,Y=y1,Z=z1"), clause(t, "X:x1")));
  }
  auto big = std::make_shared<VariableTable>();
  for (int v = 0; v < 21; ++v) big->add("V" + std::to_string(v), {"0", "1"});
  Circuit bc(big);
  CHECK_THROWS_AS(oracle::brute_explanations(bc, Circuit::top, Instance(std::vector<StateId>(21, 0))),
                  CapacityError);
}

} // TEST_SUITE
