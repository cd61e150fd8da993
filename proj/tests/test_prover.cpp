#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "glc/certificate_io.hpp"
#include "glc/corpus.hpp"
#include "glc/formula.hpp"
#include "glc/proof.hpp"
#include "glc/prover.hpp"
#include "glc/sequent.hpp"

using namespace glc;

namespace {

ProveVerdict verdict_circ(const std::string& s) {
  return prove_circ(Sequent({parse(s)}), {}).verdict;
}

ProveVerdict verdict_seq(const std::string& s) {
  return prove_glseq(Sequent({parse(s)}), {}).verdict;
}

}  // namespace

TEST_CASE("the running example has the frozen certificate shape") {
  ProveResult r = prove_circ(Sequent({parse("<>([]p & ~p) | []p")}), {});
  REQUIRE(r.verdict == ProveVerdict::Provable);
  REQUIRE(r.certificate.has_value());
  const CircularProof& p = *r.certificate;

  CHECK(p.root == "n0");
  CHECK(p.nodes.size() == 6);
  CHECK(p.backlinks == std::map<std::string, std::string>{{"n4", "n2"}});
  CHECK(p.nodes[0].rule == Rule::Or);
  int boxes = 0;
  for (const auto& n : p.nodes)
    if (n.rule == Rule::BoxK4) ++boxes;
  CHECK(boxes == 2);
  CHECK(p.nodes[0].sequent == parse_sequent("<>([]p & ~p) | []p"));

  CHECK(r.stats.nodes_expanded == 6);
  CHECK(r.stats.backlinks == 1);
  CHECK(r.stats.memo_hits == 0);

  CHECK(check_circular(p).accepted);
}

TEST_CASE("standard validities are provable in both calculi") {
  const std::vector<std::string> valid = {
      "p | ~p",
      "[](~p | q) -> ([]p -> []q)",   // distribution
      "[]p -> [][]p",                 // transitivity
      "[]([]p -> p) -> []p",          // the characteristic axiom
      "<>([]p & ~p) | []p",
      "[](p & q) -> []p",
      "([]p & []q) -> [](p & q)",
      "[]T",
      "<>p -> <><>p | <>(p & []~p)",
  };
  for (const auto& s : valid) {
    CAPTURE(s);
    CHECK(verdict_circ(s) == ProveVerdict::Provable);
    CHECK(verdict_seq(s) == ProveVerdict::Provable);
  }
}

TEST_CASE("non-theorems are rejected in both calculi") {
  const std::vector<std::string> invalid = {
      "p",
      "F",
      "[]p -> p",
      "[](p | q) -> []p | []q",
      "<>T",
      "[]p -> <>p",
      "p -> []p",
      "<>p -> p",
  };
  for (const auto& s : invalid) {
    CAPTURE(s);
    CHECK(verdict_circ(s) == ProveVerdict::NotProvable);
    CHECK(verdict_seq(s) == ProveVerdict::NotProvable);
  }
}

TEST_CASE("sequents are multisets, not sets") {
  CHECK(prove_circ(parse_sequent("p, p"), {}).verdict ==
        ProveVerdict::NotProvable);
  CHECK(prove_circ(parse_sequent("p, ~p, p"), {}).verdict ==
        ProveVerdict::Provable);
  CHECK(prove_glseq(parse_sequent("p, p"), {}).verdict ==
        ProveVerdict::NotProvable);
}

TEST_CASE("the clash axiom applies to arbitrary dual pairs") {
  ProveResult r = prove_circ(parse_sequent("[]p, <>~p"), {});
  REQUIRE(r.verdict == ProveVerdict::Provable);
  CHECK(r.certificate->nodes.size() == 1);
  CHECK(r.certificate->nodes[0].rule == Rule::AxClash);

  CHECK(prove_circ(parse_sequent("[](p | q), <>(~p & ~q)"), {}).verdict ==
        ProveVerdict::Provable);
  CHECK(prove_circ(parse_sequent("T, F"), {}).verdict ==
        ProveVerdict::Provable);  // top axiom, not clash
}

TEST_CASE("the empty sequent is not provable") {
  CHECK(prove_circ(Sequent{}, {}).verdict == ProveVerdict::NotProvable);
  CHECK(prove_glseq(Sequent{}, {}).verdict == ProveVerdict::NotProvable);
}

TEST_CASE("duplicate diamonds collapse into one box instance") {
  // <>~p twice: the box instance takes one copy into Gamma, the other
  // stays in Delta.  ([](p | q) avoids closing by a direct clash.)
  ProveResult r = prove_circ(parse_sequent("<>~p, <>~p, [](p | q)"), {});
  REQUIRE(r.verdict == ProveVerdict::Provable);
  bool saw_box = false;
  for (const auto& n : r.certificate->nodes) {
    if (n.rule != Rule::BoxK4) continue;
    saw_box = true;
    REQUIRE(n.principal.gamma.has_value());
    CHECK(n.principal.gamma->count(parse("~p")) == 1);  // deduplicated
    REQUIRE(n.principal.delta.has_value());
    CHECK(n.principal.delta->count(parse("<>~p")) == 1);  // surplus copy
  }
  CHECK(saw_box);
}

TEST_CASE("exhausting the budget yields an aborted verdict") {
  ProverOptions tight;
  tight.budget = 3;
  ProveResult r = prove_circ(Sequent({parse("<>([]p & ~p) | []p")}), tight);
  CHECK(r.verdict == ProveVerdict::Aborted);
  CHECK(!r.certificate.has_value());
  CHECK(r.stats.nodes_expanded <= 3);

  CHECK_THROWS_MATCHES(
      provable_formula(parse("<>([]p & ~p) | []p"), tight), BudgetExceeded,
      Catch::Matchers::Message(
          "proof search exceeded budget of 3 expansions"));

  ProverOptions enough;
  enough.budget = 6;
  CHECK(prove_circ(Sequent({parse("<>([]p & ~p) | []p")}), enough).verdict ==
        ProveVerdict::Provable);
}

TEST_CASE("both provers agree across a generated corpus") {
  CorpusSpec spec;
  spec.seed = 7;
  spec.count = 60;
  int provable = 0;
  for (const Formula& f : generate_corpus(spec)) {
    ProveResult a = prove_circ(Sequent({f}), {});
    ProveResult b = prove_glseq(Sequent({f}), {});
    CAPTURE(render(f));
    REQUIRE(a.verdict != ProveVerdict::Aborted);
    CHECK(a.verdict == b.verdict);
    if (a.verdict == ProveVerdict::Provable) {
      ++provable;
      CHECK(check_circular(*a.certificate).accepted);
      CHECK(check_glseq(*b.certificate).accepted);
      CHECK(a.certificate->nodes[0].sequent == Sequent({f}));
    }
  }
  CHECK(provable > 0);
}

TEST_CASE("emitted certificates survive a json round trip") {
  ProveResult r = prove_circ(Sequent({parse("[]([]p -> p) -> []p")}), {});
  REQUIRE(r.verdict == ProveVerdict::Provable);
  auto j = certificate_to_json(*r.certificate, Calculus::GLCirc);
  LoadedCertificate back = certificate_from_json(j);
  CHECK(check_loaded(back).accepted);
  CHECK(certificate_to_json(*back.plain, back.calculus) == j);

  ProveResult g = prove_glseq(Sequent({parse("[]([]p -> p) -> []p")}), {});
  REQUIRE(g.verdict == ProveVerdict::Provable);
  auto gj = certificate_to_json(*g.certificate, Calculus::GLSeq);
  CHECK(check_loaded(certificate_from_json(gj)).accepted);
}

TEST_CASE("back-links in emitted proofs always cross a box step") {
  // provable formula with nested boxes that forces several cycles
  ProveResult r = prove_circ(
      Sequent({parse("<>(([]p & ~p) | ([]q & ~q)) | [](p | q) | <>~q")}), {});
  REQUIRE(r.verdict == ProveVerdict::Provable);
  CHECK(check_circular(*r.certificate).accepted);

  // a deeper instance of the characteristic axiom
  ProveResult d =
      prove_circ(Sequent({parse("[]([][]p -> []p) -> [][]p | <>[]~p")}), {});
  REQUIRE(d.verdict == ProveVerdict::Provable);
  CHECK(check_circular(*d.certificate).accepted);
}
