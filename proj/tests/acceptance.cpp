// Acceptance gate: ten criteria, one pass/fail line each, nonzero exit
// if any fails.  Every threshold and time cap is a named constant here;
// the bundle strings collect the machine-readable outputs whose byte
// stability criterion 10 asserts.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adversarial.hpp"
#include "glc/certificate_io.hpp"
#include "glc/corpus.hpp"
#include "glc/formula.hpp"
#include "glc/interpolation.hpp"
#include "glc/oracle.hpp"
#include "glc/proof.hpp"
#include "glc/prover.hpp"
#include "glc/selftest.hpp"
#include "glc/sequent.hpp"

using namespace glc;

namespace {

constexpr double kMaxSecondsRunningExample = 1.0;
constexpr double kMaxSecondsAxioms = 5.0;
constexpr double kMaxSecondsEquivalence = 60.0;
constexpr double kMaxSecondsOracle = 600.0;
constexpr double kMaxSecondsInterpolation = 600.0;
constexpr int kOracleWorldBound = 5;
constexpr int kAdmissibilityInstances = 200;
constexpr int kInterpolationPairs = 1000;
constexpr int kMinProvablePairs = 30;

struct Pass {
  std::string bundle;
  SelfTestReport selftest;
  bool have_selftest = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SelfTestReport& selftest_report(Pass& p) {
  if (!p.have_selftest) {
    CorpusSpec spec;
    spec.seed = 42;
    spec.count = kAdmissibilityInstances;
    p.selftest = run_selftest(spec, {});
    p.have_selftest = true;
    p.bundle += selftest_json(p.selftest).dump() + "\n";
  }
  return p.selftest;
}

using Outcome = std::pair<bool, std::string>;

Outcome c1_running_example(Pass& p) {
  auto t0 = std::chrono::steady_clock::now();
  ProveResult r = prove_circ(Sequent({parse("<>([]p & ~p) | []p")}), {});
  double dt = seconds_since(t0);
  if (r.verdict != ProveVerdict::Provable || !r.certificate)
    return {false, "not provable"};
  int boxes = 0;
  for (const auto& n : r.certificate->nodes)
    if (n.rule == Rule::BoxK4) ++boxes;
  CheckResult chk = check_circular(*r.certificate);
  p.bundle += certificate_to_json(*r.certificate, Calculus::GLCirc).dump();
  p.bundle += "\n";
  bool ok = r.certificate->backlinks.size() == 1 && boxes >= 2 &&
            chk.accepted && dt < kMaxSecondsRunningExample;
  std::ostringstream d;
  d << "1 back-link, " << boxes << " box steps, checker "
    << (chk.accepted ? "ok" : "rejected") << ", " << std::fixed
    << std::setprecision(2) << dt << "s";
  return {ok, d.str()};
}

Outcome c2_axiom_schemes(Pass& p) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<Formula> insts = {parse("p"), parse("q"), parse("[]p"),
                                      parse("p & q")};
  // the three schemes: excluded middle for the Boolean tautologies,
  // box distribution, and the characteristic axiom
  std::vector<Formula> axioms;
  for (const auto& a : insts)
    for (const auto& b : insts)
      axioms.push_back(impl(box(impl(a, b)), impl(box(a), box(b))));
  for (const auto& a : insts) {
    axioms.push_back(disj(a, negate(a)));
    axioms.push_back(impl(box(impl(box(a), a)), box(a)));
  }
  int failed = 0;
  for (const auto& f : axioms) {
    ProveVerdict vc = prove_circ(Sequent({f}), {}).verdict;
    ProveVerdict vs = prove_glseq(Sequent({f}), {}).verdict;
    bool ok = vc == ProveVerdict::Provable && vs == ProveVerdict::Provable;
    if (!ok) ++failed;
    p.bundle += render(f) + " " + (ok ? "provable" : "FAILED") + "\n";
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << axioms.size() << " instances, " << failed << " failures, " << std::fixed
    << std::setprecision(2) << dt << "s";
  return {failed == 0 && dt < kMaxSecondsAxioms, d.str()};
}

Outcome c3_calculus_equivalence(Pass& p) {
  auto t0 = std::chrono::steady_clock::now();
  CorpusSpec spec;  // seed 42, 500 formulas, 2 atoms, depth 3, modal depth 2
  std::vector<Formula> fs = generate_corpus(spec);
  int agree = 0;
  for (const auto& f : fs) {
    ProveVerdict vc = prove_circ(Sequent({f}), {}).verdict;
    ProveVerdict vs = prove_glseq(Sequent({f}), {}).verdict;
    if (vc == vs && vc != ProveVerdict::Aborted) ++agree;
    p.bundle += (vc == ProveVerdict::Provable ? 'P' : 'N');
  }
  p.bundle += "\n";
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << agree << "/" << fs.size() << " agreements, " << std::fixed
    << std::setprecision(2) << dt << "s";
  return {agree == static_cast<int>(fs.size()) && dt < kMaxSecondsEquivalence,
          d.str()};
}

Outcome c4_oracle_agreement(Pass& p) {
  auto t0 = std::chrono::steady_clock::now();
  CorpusSpec spec;
  std::vector<Formula> fs = generate_corpus(spec);
  int mismatches = 0;
  for (const auto& f : fs) {
    bool provable =
        prove_circ(Sequent({f}), {}).verdict == ProveVerdict::Provable;
    std::optional<Countermodel> cm = find_countermodel(f, kOracleWorldBound);
    bool ok = provable ? !cm.has_value()
                       : cm.has_value() &&
                             cm->model.worlds() <= kOracleWorldBound;
    if (!ok) ++mismatches;
    p.bundle += provable ? "valid\n"
                         : "cm worlds=" +
                               std::to_string(cm ? cm->model.worlds() : -1) +
                               "\n";
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << fs.size() << " formulas, " << mismatches << " mismatches, "
    << std::fixed << std::setprecision(2) << dt << "s";
  return {mismatches == 0 && dt < kMaxSecondsOracle, d.str()};
}

Outcome c5_cut_and_lob(Pass& p) {
  SelfTestReport& rep = selftest_report(p);
  long long bad = 0;
  for (const char* key : {"cut", "lob"}) {
    auto it = rep.properties.find(key);
    if (it == rep.properties.end() ||
        it->second.instances != kAdmissibilityInstances)
      return {false, std::string("missing property ") + key};
    bad += it->second.violations;
  }
  std::ostringstream d;
  d << "2 properties x " << kAdmissibilityInstances << " instances, " << bad
    << " violations";
  return {bad == 0, d.str()};
}

Outcome c6_structural_admissibility(Pass& p) {
  SelfTestReport& rep = selftest_report(p);
  long long bad = 0;
  for (const char* key : {"inversion-and", "inversion-or", "inversion-bottom",
                          "weakening", "contraction"}) {
    auto it = rep.properties.find(key);
    if (it == rep.properties.end() ||
        it->second.instances != kAdmissibilityInstances)
      return {false, std::string("missing property ") + key};
    bad += it->second.violations;
  }
  std::ostringstream d;
  d << "5 properties x " << kAdmissibilityInstances << " instances, " << bad
    << " violations";
  return {bad == 0, d.str()};
}

Outcome c7_interpolation(Pass& p) {
  auto t0 = std::chrono::steady_clock::now();
  CorpusSpec spec;
  spec.count = 2 * kInterpolationPairs;
  std::vector<Formula> fs = generate_corpus(spec);
  int provable_pairs = 0;
  int failures = 0;
  for (int i = 0; i < kInterpolationPairs; ++i) {
    const Formula& a = fs[2 * i];
    const Formula& b = fs[2 * i + 1];
    InterpolateResult r = interpolate(a, b, {});
    if (r.status == InterpolateStatus::NotProvable) continue;
    ++provable_pairs;
    bool ok = r.status == InterpolateStatus::Interpolant &&
              r.check.accepted() &&
              difference(r.vocab_c, intersect(r.vocab_a, r.vocab_b)).empty();
    if (!ok) ++failures;
    p.bundle += render(impl(a, b)) + " : " + render(r.interpolant) + "\n";
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << provable_pairs << " provable pairs of " << kInterpolationPairs << ", "
    << failures << " failures, " << std::fixed << std::setprecision(2) << dt
    << "s";
  return {provable_pairs >= kMinProvablePairs && failures == 0 &&
              dt < kMaxSecondsInterpolation,
          d.str()};
}

Outcome c8_fixed_points(Pass& p) {
  struct Case {
    const char* equation;
    const char* expected;  // empty: no closed-form check
  };
  const std::vector<Case> cases = {
      {"[]p", "T"}, {"[]~p", "[]F"}, {"<>~p", "<>T"}, {"[](p & q)", ""}};
  int failures = 0;
  for (const auto& c : cases) {
    Formula a = parse(c.equation);
    Formula f = fixpoint("p", a, {});
    p.bundle += std::string(c.equation) + " : " + render(f) + "\n";
    Formula lhs = boxdot(iff(atom("p"), a));
    Formula rhs = boxdot(iff(atom("p"), f));
    bool certified = provable_formula(iff(lhs, rhs), {});
    bool closed_form = std::string(c.expected).empty()
                           ? true
                           : provable_formula(iff(f, parse(c.expected)), {});
    VocabularySet allowed = vocab_star(a);
    if (occurs_complemented(a, "p")) {
      VocabularySet extra = vocab_star(negate(a));
      allowed.insert(extra.begin(), extra.end());
    }
    allowed.erase({"p", false, false});
    allowed.erase({"p", false, true});
    allowed.erase({"p", true, false});
    allowed.erase({"p", true, true});
    bool vocab_ok = count_occurrences(f, "p") == 0 &&
                    difference(vocab(f).w, allowed).empty();
    if (!(certified && closed_form && vocab_ok)) ++failures;
  }
  std::ostringstream d;
  d << cases.size() << " equations, " << failures << " failures";
  return {failures == 0, d.str()};
}

Outcome c9_adversarial(Pass&) {
  int rejected = 0;
  std::vector<testing::AdversarialCase> suite = testing::adversarial_suite();
  for (const auto& c : suite) {
    CheckResult r = c.run();
    if (!r.accepted && r.reason == c.want) ++rejected;
  }
  std::ostringstream d;
  d << rejected << "/" << suite.size()
    << " rejected with the designated reason";
  return {rejected == static_cast<int>(suite.size()) &&
              suite.size() == 20,
          d.str()};
}

bool run_criteria_1_to_8(Pass& p) {
  bool all = true;
  all &= c1_running_example(p).first;
  all &= c2_axiom_schemes(p).first;
  all &= c3_calculus_equivalence(p).first;
  all &= c4_oracle_agreement(p).first;
  all &= c5_cut_and_lob(p).first;
  all &= c6_structural_admissibility(p).first;
  all &= c7_interpolation(p).first;
  all &= c8_fixed_points(p).first;
  return all;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*run)(Pass&);
  };
  const std::vector<Entry> entries = {
      {"circular proof of the running example", c1_running_example},
      {"axiom schemes under both calculi", c2_axiom_schemes},
      {"calculus equivalence on the corpus", c3_calculus_equivalence},
      {"oracle agreement on the corpus", c4_oracle_agreement},
      {"cut and lob-rule admissibility", c5_cut_and_lob},
      {"inversion, weakening, contraction admissibility",
       c6_structural_admissibility},
      {"interpolation across corpus pairs", c7_interpolation},
      {"guarded fixed points", c8_fixed_points},
      {"adversarial certificate rejection", c9_adversarial},
  };

  Pass first;
  bool all = true;
  int id = 1;
  for (const auto& e : entries) {
    Outcome o;
    try {
      o = e.run(first);
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::cout << (o.first ? "[PASS]" : "[FAIL]") << " criterion " << id << ": "
              << e.label << " (" << o.second << ")\n";
    all &= o.first;
    ++id;
  }

  // criterion 10: a second full pass must reproduce the bundle byte for
  // byte
  bool deterministic = false;
  std::string detail;
  try {
    Pass second;
    bool rerun_ok = run_criteria_1_to_8(second);
    deterministic = rerun_ok && second.bundle == first.bundle;
    detail = std::to_string(first.bundle.size()) + " bundle bytes " +
             (second.bundle == first.bundle ? "reproduced" : "diverged");
  } catch (const std::exception& ex) {
    detail = std::string("exception: ") + ex.what();
  }
  std::cout << (deterministic ? "[PASS]" : "[FAIL]")
            << " criterion 10: byte-identical reruns (" << detail << ")\n";
  all &= deterministic;

  return all ? 0 : 1;
}
