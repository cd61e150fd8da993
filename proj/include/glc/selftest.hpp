#pragma once

// Extensional admissibility suites: cut, the Löb rule, inversion,
// weakening and contraction, tested as closure properties of the
// provability verdict over randomly assembled instances.  Instances
// rotate through flavors that guarantee the premise via a provable
// pool formula and flavors that sample freely (those may be vacuous
// when the premise fails).

#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "glc/corpus.hpp"
#include "glc/formula.hpp"
#include "glc/prover.hpp"
#include "glc/sequent.hpp"

namespace glc {

struct PropertyStats {
  long long instances = 0;
  long long vacuous = 0;    // premise failed; nothing to conclude
  long long violations = 0;  // premise held, conclusion failed
};

struct SelfTestReport {
  CorpusSpec spec;
  long long pool_size = 0;  // provable corpus formulas found
  std::map<std::string, PropertyStats> properties;
  long long violations = 0;
};

namespace detail {

class SelfTest {
 public:
  SelfTest(const CorpusSpec& spec, const ProverOptions& opts)
      : opts_(opts), rng_(spec.seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL) {
    report_.spec = spec;
    corpus_ = generate_corpus(spec);
    for (const auto& f : corpus_)
      if (decide(Sequent({f}))) pool_.push_back(f);
    report_.pool_size = static_cast<long long>(pool_.size());
    if (pool_.empty()) pool_.push_back(top());
  }

  SelfTestReport run() {
    const int n = report_.spec.count;
    for (int i = 0; i < n; ++i) cut_instance(i);
    for (int i = 0; i < n; ++i) lob_instance(i);
    for (int i = 0; i < n; ++i) inversion_and_instance(i);
    for (int i = 0; i < n; ++i) inversion_or_instance(i);
    for (int i = 0; i < n; ++i) inversion_bottom_instance(i);
    for (int i = 0; i < n; ++i) weakening_instance(i);
    for (int i = 0; i < n; ++i) contraction_instance(i);
    for (const auto& [name, st] : report_.properties)
      report_.violations += st.violations;
    return report_;
  }

 private:
  bool decide(const Sequent& s) {
    ProveResult r = prove_circ(s, opts_);
    if (r.verdict == ProveVerdict::Aborted)
      throw BudgetExceeded("selftest: budget exhausted on " + render(s));
    return r.verdict == ProveVerdict::Provable;
  }

  std::size_t draw(std::size_t bound) { return rng_() % bound; }
  const Formula& pick() { return corpus_[draw(corpus_.size())]; }
  const Formula& pick_provable() { return pool_[draw(pool_.size())]; }

  // 0 to 2 side formulas, plus an optional guaranteed-provable member.
  Sequent gamma(bool seeded) {
    std::vector<Formula> fs;
    if (seeded) fs.push_back(pick_provable());
    std::size_t extra = draw(3);
    for (std::size_t i = 0; i < extra; ++i) fs.push_back(pick());
    return Sequent{std::move(fs)};
  }

  void record(const std::string& name, bool premise, bool conclusion) {
    PropertyStats& st = report_.properties[name];
    ++st.instances;
    if (!premise)
      ++st.vacuous;
    else if (!conclusion)
      ++st.violations;
  }

  // provable(G,A) and provable(G,~A) imply provable(G)
  void cut_instance(int i) {
    Sequent g = gamma(i % 3 != 2);
    Formula a = i % 3 == 1 ? negate(pick()) : pick();
    bool premise = decide(g.plus(a)) && decide(g.plus(negate(a)));
    record("cut", premise, !premise || decide(g));
  }

  // provable(G, <>G, <>~A, A) implies provable(G, <>G, A)
  void lob_instance(int i) {
    Sequent g = gamma(i % 3 == 0);
    Formula a = i % 3 == 1 ? pick_provable() : pick();
    Sequent core = g.plus(diamonds(g)).plus(a);
    bool premise = decide(core.plus(diamond(negate(a))));
    record("lob", premise, !premise || decide(core));
  }

  // provable(G, A&B) implies provable(G,A) and provable(G,B)
  void inversion_and_instance(int i) {
    Sequent g = gamma(i % 3 == 0);
    Formula a = i % 3 == 1 ? pick_provable() : pick();
    Formula b = i % 3 == 1 ? pick_provable() : pick();
    bool premise = decide(g.plus(conj(a, b)));
    record("inversion-and", premise,
           !premise || (decide(g.plus(a)) && decide(g.plus(b))));
  }

  // provable(G, A|B) implies provable(G,A,B)
  void inversion_or_instance(int i) {
    Sequent g = gamma(i % 3 == 0);
    Formula a = i % 3 == 1 ? pick_provable() : pick();
    Formula b = pick();
    bool premise = decide(g.plus(disj(a, b)));
    record("inversion-or", premise, !premise || decide(g.plus(a).plus(b)));
  }

  // provable(G, F) implies provable(G)
  void inversion_bottom_instance(int i) {
    Sequent g = gamma(i % 2 == 0);
    bool premise = decide(g.plus(bottom()));
    record("inversion-bottom", premise, !premise || decide(g));
  }

  // provable(G) implies provable(G, A)
  void weakening_instance(int i) {
    Sequent g = gamma(i % 2 == 0);
    Formula a = pick();
    bool premise = decide(g);
    record("weakening", premise, !premise || decide(g.plus(a)));
  }

  // provable(G, A, A) implies provable(G, A)
  void contraction_instance(int i) {
    Sequent g = gamma(i % 3 == 1);
    Formula a = i % 3 == 0 ? pick_provable() : pick();
    bool premise = decide(g.plus(a).plus(a));
    record("contraction", premise, !premise || decide(g.plus(a)));
  }

  ProverOptions opts_;
  std::mt19937_64 rng_;
  std::vector<Formula> corpus_;
  std::vector<Formula> pool_;
  SelfTestReport report_;
};

}  // namespace detail

inline SelfTestReport run_selftest(const CorpusSpec& spec,
                                   const ProverOptions& opts = {}) {
  return detail::SelfTest(spec, opts).run();
}

inline nlohmann::json selftest_json(const SelfTestReport& r) {
  nlohmann::json props = nlohmann::json::object();
  for (const auto& [name, st] : r.properties)
    props[name] = nlohmann::json{{"instances", st.instances},
                                 {"vacuous", st.vacuous},
                                 {"violations", st.violations}};
  return nlohmann::json{{"seed", r.spec.seed},
                        {"count", r.spec.count},
                        {"provable_pool", r.pool_size},
                        {"properties", props},
                        {"violations", r.violations}};
}

}  // namespace glc
