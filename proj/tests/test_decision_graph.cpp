#include <doctest.h>

#include "discrex/decision_graph.hpp"
#include "discrex/oracle.hpp"
#include "discrex/prime_implicants.hpp"
#include "discrex/quantify.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace discrex;
using namespace discrex::testing;

namespace {

const char* const graph_fixtures[] = {"fix_a.json", "fix_b.json", "fix_c.json",
                                      "fix_n.json", "fix_p.json", "path_graph.json"};

DecisionGraph xyz_graph(const std::string& nodes, const std::string& root) {
  return graph_from_json(R"({"variables": [{"name": "X", "states": ["x1", "x2", "x3"]},
      {"name": "Y", "states": ["y1", "y2", "y3"]}], "classes": ["p", "q"],
      "nodes": [)" + nodes + R"(, {"id": "p", "class": "p"}, {"id": "q", "class": "q"}],
      "root": ")" + root + "\"}");
}

bool mentions(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r.violations)
    if (v.message.find(text) != std::string::npos) return true;
  return false;
}

template <class Fn>
void for_each_world(const VariableTable& t, Fn&& fn) {
  for_each_assignment(t, all_vars(t), World(std::vector<StateId>(t.size(), 0)),
                      [&](const World& w) { fn(Instance(w)); });
}

} // namespace

TEST_SUITE("decision_graph") {

TEST_CASE("validate accepts the fixtures") {
  for (const char* name : graph_fixtures) {
    CAPTURE(name);
    CHECK(validate(load_graph(name)).ok());
  }
}

TEST_CASE("validate reports the path of a bad re-test") {
  const auto r = validate(load_graph("fix_b_broken.json"));
  REQUIRE(r.violations.size() == 1);
  const auto& v = r.violations.front();
  CHECK(v.node == "b1");
  CHECK(v.variable == "Weight");
  CHECK(v.path == std::vector<std::string>{"age", "weight", "b1"});
  CHECK_THROWS_AS(require_valid(load_graph("fix_b_broken.json")), ValidationError);
}

TEST_CASE("validate structural problems") {
  // First test leaves x3 out.
  auto g1 = xyz_graph(R"({"id": "r", "var": "X", "edges": [{"states": ["x1"], "to": "p"},
                          {"states": ["x2"], "to": "q"}]})", "r");
  CHECK(mentions(validate(g1), "first test must partition all states"));
  auto g2 = xyz_graph(R"({"id": "r", "var": "X", "edges": [{"states": ["x1", "x2"], "to": "p"},
                          {"states": ["x2", "x3"], "to": "q"}]})", "r");
  CHECK(mentions(validate(g2), "edges share a state"));
  auto g3 = xyz_graph(R"({"id": "r", "var": "X", "edges": [{"states": ["x1", "x2", "x3"], "to": "p"}]})", "r");
  CHECK(mentions(validate(g3), "at least two edges"));
  auto g4 = xyz_graph(R"({"id": "r", "var": "X", "edges": [{"states": ["x1"], "to": "p"},
                          {"states": ["x2", "x3"], "to": "nowhere"}]})", "r");
  CHECK(mentions(validate(g4), "unknown node"));
  auto g5 = xyz_graph(R"({"id": "r", "var": "X", "edges": [{"states": ["x1"], "to": "p"},
                          {"states": ["x2", "x3"], "to": "s"}]},
                         {"id": "s", "var": "Y", "edges": [{"states": ["y1"], "to": "r"},
                          {"states": ["y2", "y3"], "to": "q"}]})", "r");
  CHECK(mentions(validate(g5), "cycle"));
  CHECK_THROWS_AS(xyz_graph(R"({"id": "p", "class": "p"})", "p"), InputError);
}

TEST_CASE("re-tests on a shared node are checked per path") {
  // s is reached with X ∈ {x1} and with X ∈ {x2,x3}; its X re-test fits only the first.
  auto g = xyz_graph(R"({"id": "r", "var": "Y", "edges": [{"states": ["y1"], "to": "a"},
                          {"states": ["y2", "y3"], "to": "b"}]},
                         {"id": "a", "var": "X", "edges": [{"states": ["x1"], "to": "s"},
                          {"states": ["x2", "x3"], "to": "q"}]},
                         {"id": "b", "var": "X", "edges": [{"states": ["x1"], "to": "q"},
                          {"states": ["x2", "x3"], "to": "s"}]},
                         {"id": "s", "var": "X", "edges": [{"states": ["x1"], "to": "p"}]})", "r");
  const auto r = validate(g);
  CHECK(mentions(r, "at least two edges"));
  auto ok = xyz_graph(R"({"id": "r", "var": "Y", "edges": [{"states": ["y1"], "to": "a"},
                          {"states": ["y2", "y3"], "to": "s"}]},
                         {"id": "a", "var": "X", "edges": [{"states": ["x1"], "to": "p"},
                          {"states": ["x2", "x3"], "to": "s"}]},
                         {"id": "s", "var": "X", "edges": [{"states": ["x2"], "to": "p"},
                          {"states": ["x3"], "to": "q"}]})", "r");
  const auto r2 = validate(ok);
  REQUIRE_FALSE(r2.ok());
  // Via r -> s the X test is the first one and misses x1.
  CHECK(r2.violations.front().path == std::vector<std::string>{"r", "s"});
}

TEST_CASE("classify") {
  const auto b = load_graph("fix_b.json");
  CHECK(classify(b, make_instance(b.table(), "Age=>=55,BType=A,Weight=Overweight")) == "yes");
  const auto n = load_graph("fix_n.json");
  CHECK(classify(n, instance_from_json(n.table(), read_text_file(fixture_path("fix_n_instance.json")))) == "yes");
  const auto p = load_graph("path_graph.json");
  CHECK(classify(p, make_instance(p.table(), "x1=1,x2=1,x3=1,x4=1")) == "Y");
}

TEST_CASE("class formulas of the three-class example") {
  const auto g = load_graph("fix_a.json");
  const auto& t = g.table();
  Circuit c(g.table_ptr());
  const NodeId d1 = class_formula(c, g, "c1");
  CHECK(count_models(c, d1) == 20);
  CHECK(equivalent(c, d1, c.disjoin(c.literal(lit(t, "X:x1|x2")), c.term(term(t, "X:x3 Y:y1 Z:z1|z3")))));
  const NodeId d2 = class_formula(c, g, "c2");
  CHECK(count_models(c, d2) == 3);
  CHECK(equivalent(c, d2, c.term(term(t, "X:x3 Z:z2"))));
  const NodeId d3 = class_formula(c, g, "c3");
  CHECK(count_models(c, d3) == 4);
  CHECK(equivalent(c, d3, c.term(term(t, "X:x3 Y:y2|y3 Z:z1|z3"))));
  CHECK_THROWS_AS(class_formula(c, g, "c9"), InputError);
}

TEST_CASE("class formulas partition the worlds and agree with classify") {
  for (const char* name : graph_fixtures) {
    CAPTURE(name);
    const auto g = load_graph(name);
    Circuit c(g.table_ptr());
    std::vector<NodeId> ds;
    for (const auto& label : g.classes()) ds.push_back(class_formula(c, g, label));
    for_each_world(g.table(), [&](const Instance& w) {
      int hits = 0;
      const auto label = classify(g, w);
      for (std::size_t k = 0; k < ds.size(); ++k) {
        const bool in = evaluate(c, ds[k], w);
        hits += in;
        CHECK(in == (g.classes()[k] == label));
      }
      CHECK(hits == 1);
    });
  }
}

TEST_CASE("closed-form general reason equals selection on the class formula") {
  for (const char* name : graph_fixtures) {
    CAPTURE(name);
    const auto g = load_graph(name);
    Circuit c(g.table_ptr());
    for_each_world(g.table(), [&](const Instance& w) {
      const auto label = classify(g, w);
      const NodeId gr = general_reason_circuit(c, g, label, w);
      const NodeId sel = select_term(c, class_formula(c, g, label), w.as_term(g.table()));
      CHECK(equivalent(c, gr, sel));
      CHECK(is_locally_fixated(c, gr, w));
      CHECK_FALSE(or_discipline_violation(c, gr).has_value());
      const NodeId cr = complete_reason(c, g, label, w);
      CHECK(entails(c, cr, gr));
    });
  }
}

TEST_CASE("general reason of the blood-type example") {
  const auto g = load_graph("fix_b.json");
  const auto& t = g.table();
  Circuit c(g.table_ptr());
  const Instance patient = make_instance(t, "Age=>=55,BType=A,Weight=Overweight");
  const NodeId gr = general_reason_circuit(c, g, "yes", patient);
  CHECK(variable_minimal(oracle::brute_prime_implicants(c, gr)) ==
        terms(t, {"Age:>=55 BType:A|B", "Age:>=55 Weight:Overweight"}));
  CHECK(oracle::brute_prime_implicants(c, complete_reason(c, g, "yes", patient)) ==
        terms(t, {"Age:>=55 BType:A", "Age:>=55 Weight:Overweight"}));
  CHECK_THROWS_AS(general_reason_circuit(c, g, "no", patient), PreconditionError);
  CHECK_THROWS_AS(complete_reason(c, g, "no", patient), PreconditionError);
  const std::string raw = general_reason_unfolded(g, "yes", patient);
  CHECK(raw.find("⊥") != std::string::npos);
  CHECK(raw.find("⊤") != std::string::npos);
}

TEST_CASE("complete and general reasons coincide on binary graphs") {
  const auto g = load_graph("fix_p.json");
  Circuit c(g.table_ptr());
  for_each_world(g.table(), [&](const Instance& w) {
    const auto label = classify(g, w);
    CHECK(equivalent(c, complete_reason(c, g, label, w), general_reason_circuit(c, g, label, w)));
  });
}

TEST_CASE("random graphs") {
  Rng rng(41);
  for (int k = 0; k < 60; ++k) {
    auto t = random_table(rng, 2, 4, 3);
    const auto g = random_graph(rng, t);
    REQUIRE(validate(g).ok());
    Circuit c(t);
    for (int j = 0; j < 3; ++j) {
      const Instance w = random_instance(rng, *t);
      const auto label = classify(g, w);
      const NodeId d = class_formula(c, g, label);
      CHECK(evaluate(c, d, w));
      const NodeId gr = general_reason_circuit(c, g, label, w);
      CHECK(equivalent(c, gr, select_term(c, d, w.as_term(*t))));
      CHECK(is_locally_fixated(c, gr, w));
      CHECK_FALSE(or_discipline_violation(c, gr).has_value());
    }
  }
}

} // TEST_SUITE
