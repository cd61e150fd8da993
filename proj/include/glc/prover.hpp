#pragma once

// Backward proof search.
//
// prove_circ searches the circular calculus: invertible and/or rules
// are applied eagerly, box rules only at saturated states, and a
// branch closes when its sequent is initial or equals an ancestor on
// the current path (a back-link; a box application always lies in
// between, because the other rules strictly shrink the sequent).
// Box instances are maximal: Gamma is the set of distinct diamond
// members, duplicates stay in Delta, so premises match the finitely
// many shapes the closure admits.  Failures of saturated states are
// cached across branches keyed on the underlying set; successes are
// path-relative and never cached.
//
// prove_glseq searches the plain calculus whose box rule carries the
// diagonal <>~A.  Termination comes from a per-branch history that
// refuses to re-expand a repeated (state, principal) pair.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "glc/formula.hpp"
#include "glc/proof.hpp"
#include "glc/sequent.hpp"

namespace glc {

struct ProverOptions {
  long long budget = 1000000;  // node expansions before aborting
  bool self_check = true;      // re-run the checker on emitted certificates
};

struct SearchStats {
  long long nodes_expanded = 0;
  long long backlinks = 0;
  long long memo_hits = 0;
};

enum class ProveVerdict { Provable, NotProvable, Aborted };

struct ProveResult {
  ProveVerdict verdict = ProveVerdict::NotProvable;
  std::optional<CircularProof> certificate;
  SearchStats stats;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(long long budget)
      : std::runtime_error("proof search exceeded budget of " +
                           std::to_string(budget) + " expansions") {}
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

class SoundnessError : public std::logic_error {
 public:
  explicit SoundnessError(const std::string& msg)
      : std::logic_error("internal soundness error: " + msg) {}
};

namespace detail {

struct AbortSearch {};

struct TNode {
  Sequent seq;
  Rule rule = Rule::Leaf;
  Principal principal;
  std::vector<std::unique_ptr<TNode>> kids;
  int backlink_depth = -1;
};

// Least And/Or member in canonical order, or null when saturated.
inline const Formula* first_compound(const Sequent& s) {
  for (const auto& f : s.items())
    if (is_binary(f.kind())) return &f;
  return nullptr;
}

// Distinct diamond members, one copy each.
inline Sequent distinct_diamonds(const Sequent& s) {
  std::vector<Formula> out;
  for (const auto& f : s.items())
    if (f.kind() == Kind::Diamond && (out.empty() || out.back() != f))
      out.push_back(f);
  return Sequent(std::move(out));
}

inline std::vector<Formula> distinct_boxes(const Sequent& s) {
  std::vector<Formula> out;
  for (const auto& f : s.items())
    if (f.kind() == Kind::Box && (out.empty() || out.back() != f))
      out.push_back(f);
  return out;
}

// Least member whose dual is also present, if any.
inline const Formula* find_clash(const Sequent& s) {
  for (const auto& f : s.items())
    if (s.contains(negate(f))) return &f;
  return nullptr;
}

class CircSearch {
 public:
  explicit CircSearch(const ProverOptions& opts) : opts_(opts) {}

  std::unique_ptr<TNode> expand(const Sequent& state) {
    if (stats_.nodes_expanded >= opts_.budget) throw AbortSearch{};
    ++stats_.nodes_expanded;
    auto node = std::make_unique<TNode>();
    node->seq = state;

    if (state.contains(top_)) {
      node->rule = Rule::AxTop;
      return node;
    }
    if (const Formula* a = find_clash(state)) {
      node->rule = Rule::AxClash;
      node->principal.formula = *a;
      return node;
    }
    if (auto it = path_index_.find(state);
        it != path_index_.end() && !it->second.empty()) {
      node->rule = Rule::Leaf;
      node->backlink_depth = it->second.back();
      ++stats_.backlinks;
      return node;
    }

    if (const Formula* pr = first_compound(state)) {
      PathGuard guard(*this, state);
      Sequent gamma = *state.minus_one(*pr);
      node->principal.formula = *pr;
      if (pr->kind() == Kind::And) {
        auto k0 = expand(gamma.plus(pr->left()));
        if (!k0) return nullptr;
        auto k1 = expand(gamma.plus(pr->right()));
        if (!k1) return nullptr;
        node->rule = Rule::And;
        node->kids.push_back(std::move(k0));
        node->kids.push_back(std::move(k1));
      } else {
        auto k0 = expand(gamma.plus(pr->left()).plus(pr->right()));
        if (!k0) return nullptr;
        node->rule = Rule::Or;
        node->kids.push_back(std::move(k0));
      }
      return node;
    }

    // Saturated.  Only definitive failures are cached; provability via
    // back-link depends on the path and must not be.
    Sequent key = underlying_set(state);
    if (failed_.count(key)) {
      ++stats_.memo_hits;
      return nullptr;
    }
    std::vector<Formula> boxes = distinct_boxes(state);
    if (!boxes.empty()) {
      PathGuard guard(*this, state);
      Sequent dia = distinct_diamonds(state);
      std::vector<Formula> bodies;
      bodies.reserve(dia.size());
      for (const auto& d : dia.items()) bodies.push_back(d.child());
      Sequent gamma(std::move(bodies));
      Sequent rest = *state.minus(dia);
      for (const auto& b : boxes) {
        Formula a = b.child();
        auto kid = expand(gamma.plus(dia).plus(a));
        if (kid) {
          node->rule = Rule::BoxK4;
          node->principal.formula = a;
          node->principal.gamma = gamma;
          node->principal.delta = *rest.minus_one(b);
          node->kids.push_back(std::move(kid));
          return node;
        }
      }
    }
    failed_.insert(std::move(key));
    return nullptr;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  struct PathGuard {
    PathGuard(CircSearch& s, const Sequent& state) : search(s), seq(state) {
      search.path_index_[seq].push_back(search.depth_++);
    }
    ~PathGuard() {
      auto it = search.path_index_.find(seq);
      it->second.pop_back();
      if (it->second.empty()) search.path_index_.erase(it);
      --search.depth_;
    }
    CircSearch& search;
    Sequent seq;
  };

  ProverOptions opts_;
  SearchStats stats_;
  Formula top_ = top();
  int depth_ = 0;
  std::unordered_map<Sequent, std::vector<int>, SequentHash> path_index_;
  std::unordered_set<Sequent, SequentHash> failed_;
};

inline CircularProof assemble(const TNode& root) {
  CircularProof out;
  int counter = 0;
  std::vector<std::string> depth_ids;
  std::function<std::string(const TNode&)> go =
      [&](const TNode& t) -> std::string {
    std::string id = "n" + std::to_string(counter++);
    std::size_t slot = out.nodes.size();
    ProofNode n;
    n.id = id;
    n.sequent = t.seq;
    n.rule = t.rule;
    n.principal = t.principal;
    out.nodes.push_back(std::move(n));
    if (t.backlink_depth >= 0)
      out.backlinks[id] = depth_ids[static_cast<std::size_t>(t.backlink_depth)];
    depth_ids.push_back(id);
    std::vector<std::string> kid_ids;
    for (const auto& k : t.kids) kid_ids.push_back(go(*k));
    depth_ids.pop_back();
    out.nodes[slot].premises = std::move(kid_ids);
    return id;
  };
  out.root = go(root);
  return out;
}

class SeqSearch {
 public:
  explicit SeqSearch(const ProverOptions& opts) : opts_(opts) {}

  std::unique_ptr<TNode> expand(const Sequent& state) {
    if (stats_.nodes_expanded >= opts_.budget) throw AbortSearch{};
    ++stats_.nodes_expanded;
    auto node = std::make_unique<TNode>();
    node->seq = state;

    if (state.contains(top_)) {
      node->rule = Rule::AxTop;
      return node;
    }
    if (const Formula* a = find_clash(state)) {
      node->rule = Rule::AxClash;
      node->principal.formula = *a;
      return node;
    }

    if (const Formula* pr = first_compound(state)) {
      Sequent gamma = *state.minus_one(*pr);
      node->principal.formula = *pr;
      if (pr->kind() == Kind::And) {
        auto k0 = expand(gamma.plus(pr->left()));
        if (!k0) return nullptr;
        auto k1 = expand(gamma.plus(pr->right()));
        if (!k1) return nullptr;
        node->rule = Rule::And;
        node->kids.push_back(std::move(k0));
        node->kids.push_back(std::move(k1));
      } else {
        auto k0 = expand(gamma.plus(pr->left()).plus(pr->right()));
        if (!k0) return nullptr;
        node->rule = Rule::Or;
        node->kids.push_back(std::move(k0));
      }
      return node;
    }

    std::vector<Formula> boxes = distinct_boxes(state);
    if (boxes.empty()) return nullptr;
    Sequent dia = distinct_diamonds(state);
    std::vector<Formula> bodies;
    bodies.reserve(dia.size());
    for (const auto& d : dia.items()) bodies.push_back(d.child());
    Sequent gamma(std::move(bodies));
    Sequent rest = *state.minus(dia);
    for (const auto& b : boxes) {
      Formula a = b.child();
      HistoryKey key{state, a};
      if (history_.count(key)) continue;  // repeated (state, principal)
      history_.insert(key);
      auto kid =
          expand(gamma.plus(dia).plus(diamond(negate(a))).plus(a));
      history_.erase(key);
      if (kid) {
        node->rule = Rule::BoxGL;
        node->principal.formula = a;
        node->principal.gamma = gamma;
        node->principal.delta = *rest.minus_one(b);
        node->kids.push_back(std::move(kid));
        return node;
      }
    }
    return nullptr;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  struct HistoryKey {
    Sequent state;
    Formula principal;
    friend bool operator==(const HistoryKey& a, const HistoryKey& b) {
      return a.state == b.state && a.principal == b.principal;
    }
  };
  struct HistoryHash {
    std::size_t operator()(const HistoryKey& k) const {
      return static_cast<std::size_t>(
          mix(k.state.hash(), k.principal.hash()));
    }
  };

  ProverOptions opts_;
  SearchStats stats_;
  Formula top_ = top();
  std::unordered_set<HistoryKey, HistoryHash> history_;
};

}  // namespace detail

inline ProveResult prove_circ(const Sequent& goal,
                              const ProverOptions& opts = {}) {
  detail::CircSearch search(opts);
  try {
    auto tree = search.expand(goal);
    if (!tree) return {ProveVerdict::NotProvable, std::nullopt, search.stats()};
    CircularProof cert = detail::assemble(*tree);
    if (opts.self_check) {
      CheckResult chk = check_circular(cert);
      if (!chk.accepted)
        throw SoundnessError("emitted circular certificate rejected at node " +
                             chk.node + ": " + chk.message);
    }
    return {ProveVerdict::Provable, std::move(cert), search.stats()};
  } catch (const detail::AbortSearch&) {
    return {ProveVerdict::Aborted, std::nullopt, search.stats()};
  }
}

inline ProveResult prove_glseq(const Sequent& goal,
                               const ProverOptions& opts = {}) {
  detail::SeqSearch search(opts);
  try {
    auto tree = search.expand(goal);
    if (!tree) return {ProveVerdict::NotProvable, std::nullopt, search.stats()};
    CircularProof cert = detail::assemble(*tree);
    if (opts.self_check) {
      CheckResult chk = check_glseq(cert);
      if (!chk.accepted)
        throw SoundnessError("emitted sequent certificate rejected at node " +
                             chk.node + ": " + chk.message);
    }
    return {ProveVerdict::Provable, std::move(cert), search.stats()};
  } catch (const detail::AbortSearch&) {
    return {ProveVerdict::Aborted, std::nullopt, search.stats()};
  }
}

// Provability of a single formula in the circular calculus; throws
// BudgetExceeded instead of returning a third verdict.
inline bool provable_formula(const Formula& f, const ProverOptions& opts = {}) {
  ProveResult r = prove_circ(Sequent({f}), opts);
  if (r.verdict == ProveVerdict::Aborted) throw BudgetExceeded(opts.budget);
  return r.verdict == ProveVerdict::Provable;
}

}  // namespace glc
