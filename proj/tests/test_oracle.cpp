#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "glc/corpus.hpp"
#include "glc/formula.hpp"
#include "glc/oracle.hpp"

using namespace glc;

TEST_CASE("model construction validates frame conditions") {
  CHECK_NOTHROW(KripkeModel(2, {{0, 1}}, {{"p", {1}}}));
  // reflexive edge
  CHECK_THROWS_AS(KripkeModel(1, {{0, 0}}, {}), std::invalid_argument);
  // missing transitive edge 0->2
  CHECK_THROWS_AS(KripkeModel(3, {{0, 1}, {1, 2}}, {}),
                  std::invalid_argument);
  CHECK_NOTHROW(KripkeModel(3, {{0, 1}, {1, 2}, {0, 2}}, {}));
  // out of range endpoints
  CHECK_THROWS_AS(KripkeModel(2, {{0, 5}}, {}), std::invalid_argument);
}

TEST_CASE("forces follows the standard clauses") {
  KripkeModel m(2, {{0, 1}}, {{"p", {1}}});
  CHECK(forces(m, 1, atom("p")));
  CHECK(!forces(m, 0, atom("p")));
  CHECK(forces(m, 0, neg_atom("p")));
  CHECK(forces(m, 0, diamond(atom("p"))));
  CHECK(forces(m, 0, box(atom("p"))));
  // world 1 is terminal: box vacuously true, diamond false
  CHECK(forces(m, 1, box(bottom())));
  CHECK(!forces(m, 1, diamond(top())));
  CHECK(forces(m, 0, parse("p | <>p")));
  CHECK(!forces(m, 0, parse("p & <>p")));
  CHECK(forces(m, 0, top()));
  CHECK(!forces(m, 0, bottom()));
}

TEST_CASE("countermodel search finds minimal refutations") {
  auto cm = find_countermodel(atom("p"), 5);
  REQUIRE(cm.has_value());
  CHECK(cm->model.worlds() == 1);
  CHECK(cm->model.relation().empty());
  CHECK(cm->fail_world == 0);
  CHECK(!forces(cm->model, cm->fail_world, atom("p")));

  // []p -> p is not a GL validity (irreflexivity)
  auto cm2 = find_countermodel(parse("[]p -> p"), 5);
  REQUIRE(cm2.has_value());
  CHECK(cm2->model.worlds() == 1);
  CHECK(!forces(cm2->model, cm2->fail_world, parse("[]p -> p")));
}

TEST_CASE("validities have no countermodel within the bound") {
  for (auto s : {"p | ~p", "[](p -> q) -> ([]p -> []q)", "[]p -> [][]p",
                 "[]([]p -> p) -> []p", "<>([]p & ~p) | []p",
                 "[](p & q) -> []p"}) {
    CAPTURE(s);
    CHECK(!find_countermodel(parse(s), 5).has_value());
  }
}

TEST_CASE("invalid formulas are refuted within small bounds") {
  for (auto s : {"p", "[]p -> p", "[]p", "<>T", "[](p | q) -> []p | []q",
                 "p -> []p", "<>p -> [][]F"}) {
    CAPTURE(s);
    auto cm = find_countermodel(parse(s), 5);
    REQUIRE(cm.has_value());
    CHECK(!forces(cm->model, cm->fail_world, parse(s)));
  }
}

TEST_CASE("returned countermodels genuinely refute the formula") {
  CorpusSpec spec;
  spec.count = 200;
  for (const auto& f : generate_corpus(spec)) {
    auto cm = find_countermodel(f, 4);
    if (cm) {
      CAPTURE(render(f));
      CHECK(!forces(cm->model, cm->fail_world, f));
    }
  }
}

TEST_CASE("countermodel existence is monotone in the world bound") {
  CorpusSpec spec;
  spec.count = 150;
  for (const auto& f : generate_corpus(spec)) {
    bool at3 = find_countermodel(f, 3).has_value();
    bool at4 = find_countermodel(f, 4).has_value();
    CAPTURE(render(f));
    if (at3) CHECK(at4);
  }
}

TEST_CASE("world bound is range checked") {
  CHECK_THROWS_AS(find_countermodel(atom("p"), 0), std::invalid_argument);
  CHECK_THROWS_AS(find_countermodel(atom("p"), 7), std::invalid_argument);
  CHECK_NOTHROW(find_countermodel(atom("p"), 6));
}
