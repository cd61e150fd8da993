#pragma once

// Proof certificates and their checkers.
//
// A certificate is a finite tree of rule applications plus, for the
// circular calculi, a partial back-link map from leaves to identical
// interior ancestors.  Checkers are total: any structurally readable
// certificate is either accepted or rejected with a reason code and
// the offending node, never a crash.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "glc/formula.hpp"
#include "glc/sequent.hpp"

namespace glc {

enum class Rule {
  Leaf,     // back-linked leaf, no rule applied
  AxClash,  // Gamma, A, ~A
  AxTop,    // Gamma, T
  And,
  Or,
  BoxGL,  // premise Gamma, <>Gamma, <>~A, A; conclusion <>Gamma, []A, Delta
  BoxK4,  // premise Gamma, <>Gamma, A;      conclusion <>Gamma, []A, Delta
};

enum class Side { Left, Right };

enum class SplitRule {
  Leaf,
  AxTopRight,    // G1 | T, G2
  AxTopLeft,     // G1, T | G2
  AxClashLeft,   // G1, A, ~A | G2
  AxCross,       // G1, A | ~A, G2
  AxClashRight,  // G1 | A, ~A, G2
  AndLeft,
  AndRight,
  OrLeft,
  OrRight,
  BoxLeft,
  BoxRight,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Leaf:
      return "leaf";
    case Rule::AxClash:
      return "ax-clash";
    case Rule::AxTop:
      return "ax-top";
    case Rule::And:
      return "and";
    case Rule::Or:
      return "or";
    case Rule::BoxGL:
      return "box-gl";
    case Rule::BoxK4:
      return "box-k4";
  }
  return "?";
}

inline const char* rule_name(SplitRule r) {
  switch (r) {
    case SplitRule::Leaf:
      return "leaf";
    case SplitRule::AxTopRight:
      return "ax-top-r";
    case SplitRule::AxTopLeft:
      return "ax-top-l";
    case SplitRule::AxClashLeft:
      return "ax-clash-l";
    case SplitRule::AxCross:
      return "ax-cross";
    case SplitRule::AxClashRight:
      return "ax-clash-r";
    case SplitRule::AndLeft:
      return "and-l";
    case SplitRule::AndRight:
      return "and-r";
    case SplitRule::OrLeft:
      return "or-l";
    case SplitRule::OrRight:
      return "or-r";
    case SplitRule::BoxLeft:
      return "box-l";
    case SplitRule::BoxRight:
      return "box-r";
  }
  return "?";
}

// Rule instance data beyond the conclusion: the principal formula (for
// box rules, the body A of the principal []A) and, for box rules, the
// chosen Gamma and leftover Delta.
struct Principal {
  std::optional<Formula> formula;
  std::optional<Sequent> gamma;
  std::optional<Sequent> delta;
};

struct ProofNode {
  std::string id;
  Sequent sequent;
  Rule rule = Rule::Leaf;
  std::vector<std::string> premises;
  Principal principal;
};

struct CircularProof {
  std::string root;
  std::vector<ProofNode> nodes;
  std::map<std::string, std::string> backlinks;  // leaf id -> target id
};

struct SplitPrincipal {
  std::optional<Formula> formula;
  Side side = Side::Left;
  std::optional<Sequent> gamma_left;
  std::optional<Sequent> gamma_right;
  std::optional<Sequent> delta_left;
  std::optional<Sequent> delta_right;
};

struct SplitProofNode {
  std::string id;
  SplitSequent sequent;
  SplitRule rule = SplitRule::Leaf;
  std::vector<std::string> premises;
  SplitPrincipal principal;
};

struct SplitCircularProof {
  std::string root;
  std::vector<SplitProofNode> nodes;
  std::map<std::string, std::string> backlinks;
};

enum class CheckReason {
  Ok,
  Malformed,
  BadAxiom,
  PremiseMismatch,
  BadDecomposition,
  NonAncestorTarget,
  UnequalBacklinkSequents,
  UnequalBacklinkSplittings,
  DanglingLeaf,
  MissingBoxOnCycle,
  WrongCalculus,
};

inline const char* reason_name(CheckReason r) {
  switch (r) {
    case CheckReason::Ok:
      return "ok";
    case CheckReason::Malformed:
      return "malformed";
    case CheckReason::BadAxiom:
      return "bad-axiom";
    case CheckReason::PremiseMismatch:
      return "premise-mismatch";
    case CheckReason::BadDecomposition:
      return "bad-decomposition";
    case CheckReason::NonAncestorTarget:
      return "non-ancestor-target";
    case CheckReason::UnequalBacklinkSequents:
      return "unequal-backlink-sequents";
    case CheckReason::UnequalBacklinkSplittings:
      return "unequal-backlink-splittings";
    case CheckReason::DanglingLeaf:
      return "dangling-leaf";
    case CheckReason::MissingBoxOnCycle:
      return "missing-box-on-cycle";
    case CheckReason::WrongCalculus:
      return "wrong-calculus";
  }
  return "?";
}

struct CheckResult {
  bool accepted = false;
  CheckReason reason = CheckReason::Malformed;
  std::string node;
  std::string message;

  static CheckResult ok() { return {true, CheckReason::Ok, {}, {}}; }
  static CheckResult fail(CheckReason r, std::string node, std::string msg) {
    return {false, r, std::move(node), std::move(msg)};
  }
};

namespace detail {

// Builds id -> node and child -> parent maps and verifies that the
// premise edges form a tree covering every listed node exactly once.
template <class NodeT>
struct TreeIndex {
  std::unordered_map<std::string, const NodeT*> by_id;
  std::unordered_map<std::string, std::string> parent;
  std::vector<const NodeT*> preorder;
};

template <class NodeT, class ProofT>
inline std::optional<CheckResult> index_tree(const ProofT& p,
                                             TreeIndex<NodeT>& out) {
  for (const auto& n : p.nodes) {
    if (n.id.empty())
      return CheckResult::fail(CheckReason::Malformed, n.id, "empty node id");
    if (!out.by_id.emplace(n.id, &n).second)
      return CheckResult::fail(CheckReason::Malformed, n.id,
                               "duplicate node id");
  }
  auto root_it = out.by_id.find(p.root);
  if (root_it == out.by_id.end())
    return CheckResult::fail(CheckReason::Malformed, p.root,
                             "root node missing");
  std::unordered_set<std::string> visited;
  std::vector<const NodeT*> stack{root_it->second};
  while (!stack.empty()) {
    const NodeT* n = stack.back();
    stack.pop_back();
    if (!visited.insert(n->id).second)
      return CheckResult::fail(CheckReason::Malformed, n->id,
                               "node reached twice; premise edges must form "
                               "a tree");
    out.preorder.push_back(n);
    for (auto it = n->premises.rbegin(); it != n->premises.rend(); ++it) {
      auto child = out.by_id.find(*it);
      if (child == out.by_id.end())
        return CheckResult::fail(CheckReason::Malformed, n->id,
                                 "premise id '" + *it + "' missing");
      out.parent[*it] = n->id;
      stack.push_back(child->second);
    }
  }
  if (visited.size() != p.nodes.size())
    return CheckResult::fail(CheckReason::Malformed, p.root,
                             "nodes unreachable from the root");
  return std::nullopt;
}

// Walks parents from leaf to target, checking strict ancestry and that
// some node on the way applies a box rule.
template <class NodeT, class BoxPred>
inline std::optional<CheckResult> check_backlink_path(
    const TreeIndex<NodeT>& idx, const std::string& leaf,
    const std::string& target, BoxPred is_box) {
  bool saw_box = false;
  std::string cur = leaf;
  while (true) {
    auto pit = idx.parent.find(cur);
    if (pit == idx.parent.end())
      return CheckResult::fail(CheckReason::NonAncestorTarget, leaf,
                               "back-link target '" + target +
                                   "' is not a strict ancestor");
    cur = pit->second;
    const NodeT* n = idx.by_id.at(cur);
    if (is_box(n->rule)) saw_box = true;
    if (cur == target) break;
  }
  if (!saw_box)
    return CheckResult::fail(CheckReason::MissingBoxOnCycle, leaf,
                             "no box application between back-link target '" +
                                 target + "' and leaf");
  return std::nullopt;
}

inline std::optional<CheckResult> check_plain_rule(const ProofNode& n,
                                                  bool circular) {
  auto arity = [&](std::size_t want) -> std::optional<CheckResult> {
    if (n.premises.size() != want)
      return CheckResult::fail(CheckReason::Malformed, n.id,
                               "wrong premise count for rule");
    return std::nullopt;
  };
  switch (n.rule) {
    case Rule::Leaf:
      return arity(0);  // back-link presence is checked separately
    case Rule::AxTop: {
      if (auto r = arity(0)) return r;
      if (!n.sequent.contains(top()))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "axiom sequent lacks T");
      return std::nullopt;
    }
    case Rule::AxClash: {
      if (auto r = arity(0)) return r;
      if (!n.principal.formula)
        return CheckResult::fail(CheckReason::Malformed, n.id,
                                 "clash axiom needs a principal formula");
      const Formula& a = *n.principal.formula;
      if (!n.sequent.contains(a) || !n.sequent.contains(negate(a)))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "clash pair not present in sequent");
      return std::nullopt;
    }
    case Rule::And:
      if (auto r = arity(2)) return r;
      return std::nullopt;
    case Rule::Or:
      if (auto r = arity(1)) return r;
      return std::nullopt;
    case Rule::BoxGL:
      if (!circular) {
        if (auto r = arity(1)) return r;
        return std::nullopt;
      }
      return CheckResult::fail(CheckReason::WrongCalculus, n.id,
                               "box-gl is not a circular-proof rule");
    case Rule::BoxK4:
      if (circular) {
        if (auto r = arity(1)) return r;
        return std::nullopt;
      }
      return CheckResult::fail(CheckReason::WrongCalculus, n.id,
                               "box-k4 is not a sequent-proof rule");
  }
  return CheckResult::fail(CheckReason::Malformed, n.id, "unknown rule");
}

// Verifies premise sequents against the rule instance at n.
inline std::optional<CheckResult> check_plain_premises(
    const ProofNode& n, const TreeIndex<ProofNode>& idx) {
  auto premise_seq = [&](std::size_t i) -> const Sequent& {
    return idx.by_id.at(n.premises[i])->sequent;
  };
  switch (n.rule) {
    case Rule::And: {
      if (!n.principal.formula || n.principal.formula->kind() != Kind::And)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal of an and node must be a "
                                 "conjunction");
      const Formula& ab = *n.principal.formula;
      auto gamma = n.sequent.minus_one(ab);
      if (!gamma)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal formula not in sequent");
      if (premise_seq(0) != gamma->plus(ab.left()))
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "first premise must add the left conjunct");
      if (premise_seq(1) != gamma->plus(ab.right()))
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "second premise must add the right conjunct");
      return std::nullopt;
    }
    case Rule::Or: {
      if (!n.principal.formula || n.principal.formula->kind() != Kind::Or)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal of an or node must be a "
                                 "disjunction");
      const Formula& ab = *n.principal.formula;
      auto gamma = n.sequent.minus_one(ab);
      if (!gamma)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal formula not in sequent");
      if (premise_seq(0) != gamma->plus(ab.left()).plus(ab.right()))
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "premise must add both disjuncts");
      return std::nullopt;
    }
    case Rule::BoxGL:
    case Rule::BoxK4: {
      if (!n.principal.formula || !n.principal.gamma || !n.principal.delta)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "box node needs principal, gamma and delta");
      const Formula& a = *n.principal.formula;
      const Sequent& gamma = *n.principal.gamma;
      const Sequent& delta = *n.principal.delta;
      Sequent dia = diamonds(gamma);
      if (n.sequent != dia.plus(box(a)).plus(delta))
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "conclusion is not <>Gamma, []A, Delta for "
                                 "the recorded instance");
      Sequent want = gamma.plus(dia).plus(a);
      if (n.rule == Rule::BoxGL) want = want.plus(diamond(negate(a)));
      if (premise_seq(0) != want)
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "box premise sequent mismatch");
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace detail

// Checker for circular proofs: initial sequents, and/or rules and the
// four-zone box rule, plus back-links from leaves to identical strict
// ancestors crossing at least one box application.
inline CheckResult check_circular(const CircularProof& p) {
  detail::TreeIndex<ProofNode> idx;
  if (auto r = detail::index_tree(p, idx)) return *r;
  // Back-link structure first: a box-free cycle can only coexist with
  // a broken rule application elsewhere, and should be reported as the
  // cycle defect it is.
  for (const auto& [leaf, target] : p.backlinks) {
    auto lit = idx.by_id.find(leaf);
    if (lit == idx.by_id.end())
      return CheckResult::fail(CheckReason::Malformed, leaf,
                               "back-link source missing");
    if (lit->second->rule != Rule::Leaf)
      return CheckResult::fail(CheckReason::Malformed, leaf,
                               "back-link source is not a leaf node");
    auto tit = idx.by_id.find(target);
    if (tit == idx.by_id.end())
      return CheckResult::fail(CheckReason::NonAncestorTarget, leaf,
                               "back-link target missing");
    if (lit->second->sequent != tit->second->sequent)
      return CheckResult::fail(CheckReason::UnequalBacklinkSequents, leaf,
                               "back-link endpoints carry different sequents");
    if (auto r = detail::check_backlink_path(
            idx, leaf, target, [](Rule r) { return r == Rule::BoxK4; }))
      return *r;
  }
  for (const ProofNode* n : idx.preorder) {
    if (auto r = detail::check_plain_rule(*n, /*circular=*/true)) return *r;
    if (auto r = detail::check_plain_premises(*n, idx)) return *r;
  }
  for (const ProofNode* n : idx.preorder)
    if (n->rule == Rule::Leaf && !p.backlinks.count(n->id))
      return CheckResult::fail(CheckReason::DanglingLeaf, n->id,
                               "leaf is neither initial nor back-linked");
  return CheckResult::ok();
}

// Checker for plain sequent-calculus proofs: finite trees whose box
// rule carries the diagonal <>~A premise member; no back-links.
inline CheckResult check_glseq(const CircularProof& p) {
  if (!p.backlinks.empty())
    return CheckResult::fail(CheckReason::WrongCalculus,
                             p.backlinks.begin()->first,
                             "sequent proofs cannot contain back-links");
  detail::TreeIndex<ProofNode> idx;
  if (auto r = detail::index_tree(p, idx)) return *r;
  for (const ProofNode* n : idx.preorder) {
    if (n->rule == Rule::Leaf)
      return CheckResult::fail(CheckReason::DanglingLeaf, n->id,
                               "leaf is not an initial sequent");
    if (auto r = detail::check_plain_rule(*n, /*circular=*/false)) return *r;
    if (auto r = detail::check_plain_premises(*n, idx)) return *r;
  }
  return CheckResult::ok();
}

namespace detail {

inline std::optional<CheckResult> check_split_rule(
    const SplitProofNode& n, const TreeIndex<SplitProofNode>& idx) {
  auto arity = [&](std::size_t want) -> std::optional<CheckResult> {
    if (n.premises.size() != want)
      return CheckResult::fail(CheckReason::Malformed, n.id,
                               "wrong premise count for rule");
    return std::nullopt;
  };
  auto premise = [&](std::size_t i) -> const SplitSequent& {
    return idx.by_id.at(n.premises[i])->sequent;
  };
  auto need_principal = [&]() -> std::optional<CheckResult> {
    if (!n.principal.formula)
      return CheckResult::fail(CheckReason::Malformed, n.id,
                               "rule needs a principal formula");
    return std::nullopt;
  };
  const Sequent& L = n.sequent.left;
  const Sequent& R = n.sequent.right;
  switch (n.rule) {
    case SplitRule::Leaf:
      return arity(0);
    case SplitRule::AxTopRight: {
      if (auto r = arity(0)) return r;
      if (!R.contains(top()))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "right zone lacks T");
      return std::nullopt;
    }
    case SplitRule::AxTopLeft: {
      if (auto r = arity(0)) return r;
      if (!L.contains(top()))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "left zone lacks T");
      return std::nullopt;
    }
    case SplitRule::AxClashLeft: {
      if (auto r = arity(0)) return r;
      if (auto r = need_principal()) return r;
      const Formula& a = *n.principal.formula;
      if (!L.contains(a) || !L.contains(negate(a)))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "clash pair not in left zone");
      return std::nullopt;
    }
    case SplitRule::AxClashRight: {
      if (auto r = arity(0)) return r;
      if (auto r = need_principal()) return r;
      const Formula& a = *n.principal.formula;
      if (!R.contains(a) || !R.contains(negate(a)))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "clash pair not in right zone");
      return std::nullopt;
    }
    case SplitRule::AxCross: {
      if (auto r = arity(0)) return r;
      if (auto r = need_principal()) return r;
      const Formula& a = *n.principal.formula;
      if (!L.contains(a) || !R.contains(negate(a)))
        return CheckResult::fail(CheckReason::BadAxiom, n.id,
                                 "cross clash needs A on the left and ~A on "
                                 "the right");
      return std::nullopt;
    }
    case SplitRule::AndLeft:
    case SplitRule::AndRight: {
      if (auto r = arity(2)) return r;
      if (auto r = need_principal()) return r;
      const Formula& ab = *n.principal.formula;
      if (ab.kind() != Kind::And)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal must be a conjunction");
      bool left_side = n.rule == SplitRule::AndLeft;
      const Sequent& zone = left_side ? L : R;
      auto gamma = zone.minus_one(ab);
      if (!gamma)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal formula not in its zone");
      SplitSequent want0 = left_side
                               ? SplitSequent{gamma->plus(ab.left()), R}
                               : SplitSequent{L, gamma->plus(ab.left())};
      SplitSequent want1 = left_side
                               ? SplitSequent{gamma->plus(ab.right()), R}
                               : SplitSequent{L, gamma->plus(ab.right())};
      if (premise(0) != want0)
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "first premise must add the left conjunct");
      if (premise(1) != want1)
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "second premise must add the right conjunct");
      return std::nullopt;
    }
    case SplitRule::OrLeft:
    case SplitRule::OrRight: {
      if (auto r = arity(1)) return r;
      if (auto r = need_principal()) return r;
      const Formula& ab = *n.principal.formula;
      if (ab.kind() != Kind::Or)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal must be a disjunction");
      bool left_side = n.rule == SplitRule::OrLeft;
      const Sequent& zone = left_side ? L : R;
      auto gamma = zone.minus_one(ab);
      if (!gamma)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "principal formula not in its zone");
      Sequent grown = gamma->plus(ab.left()).plus(ab.right());
      SplitSequent want = left_side ? SplitSequent{grown, R}
                                    : SplitSequent{L, grown};
      if (premise(0) != want)
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "premise must add both disjuncts");
      return std::nullopt;
    }
    case SplitRule::BoxLeft:
    case SplitRule::BoxRight: {
      if (auto r = arity(1)) return r;
      if (auto r = need_principal()) return r;
      if (!n.principal.gamma_left || !n.principal.gamma_right ||
          !n.principal.delta_left || !n.principal.delta_right)
        return CheckResult::fail(CheckReason::Malformed, n.id,
                                 "box node needs gamma and delta per zone");
      const Formula& a = *n.principal.formula;
      const Sequent& gl = *n.principal.gamma_left;
      const Sequent& gr = *n.principal.gamma_right;
      Sequent dial = diamonds(gl);
      Sequent diar = diamonds(gr);
      bool left_side = n.rule == SplitRule::BoxLeft;
      Sequent want_l = dial.plus(*n.principal.delta_left);
      Sequent want_r = diar.plus(*n.principal.delta_right);
      if (left_side)
        want_l = want_l.plus(box(a));
      else
        want_r = want_r.plus(box(a));
      if (L != want_l || R != want_r)
        return CheckResult::fail(CheckReason::BadDecomposition, n.id,
                                 "conclusion does not match the recorded box "
                                 "instance");
      Sequent prem_l = gl.plus(dial);
      Sequent prem_r = gr.plus(diar);
      if (left_side)
        prem_l = prem_l.plus(a);
      else
        prem_r = prem_r.plus(a);
      if (premise(0) != SplitSequent{prem_l, prem_r})
        return CheckResult::fail(CheckReason::PremiseMismatch, n.id,
                                 "box premise split sequent mismatch");
      return std::nullopt;
    }
  }
  return CheckResult::fail(CheckReason::Malformed, n.id, "unknown rule");
}

}  // namespace detail

// Checker for split circular proofs.  Matches the node-local side
// conditions of the split rules, then the back-link conditions; a
// back-link whose endpoints agree on the flattened sequent but not the
// splitting is rejected separately.
inline CheckResult check_split_circular(const SplitCircularProof& p) {
  detail::TreeIndex<SplitProofNode> idx;
  if (auto r = detail::index_tree(p, idx)) return *r;
  for (const auto& [leaf, target] : p.backlinks) {
    auto lit = idx.by_id.find(leaf);
    if (lit == idx.by_id.end())
      return CheckResult::fail(CheckReason::Malformed, leaf,
                               "back-link source missing");
    if (lit->second->rule != SplitRule::Leaf)
      return CheckResult::fail(CheckReason::Malformed, leaf,
                               "back-link source is not a leaf node");
    auto tit = idx.by_id.find(target);
    if (tit == idx.by_id.end())
      return CheckResult::fail(CheckReason::NonAncestorTarget, leaf,
                               "back-link target missing");
    const SplitSequent& ls = lit->second->sequent;
    const SplitSequent& ts = tit->second->sequent;
    if (ls != ts) {
      if (ls.flatten() == ts.flatten())
        return CheckResult::fail(CheckReason::UnequalBacklinkSplittings, leaf,
                                 "back-link endpoints agree on the sequent "
                                 "but not its splitting");
      return CheckResult::fail(CheckReason::UnequalBacklinkSequents, leaf,
                               "back-link endpoints carry different sequents");
    }
    if (auto r = detail::check_backlink_path(
            idx, leaf, target, [](SplitRule r) {
              return r == SplitRule::BoxLeft || r == SplitRule::BoxRight;
            }))
      return *r;
  }
  for (const SplitProofNode* n : idx.preorder)
    if (auto r = detail::check_split_rule(*n, idx)) return *r;
  for (const SplitProofNode* n : idx.preorder)
    if (n->rule == SplitRule::Leaf && !p.backlinks.count(n->id))
      return CheckResult::fail(CheckReason::DanglingLeaf, n->id,
                               "leaf is neither initial nor back-linked");
  return CheckResult::ok();
}

// Forgets the zone structure of a split proof.
inline CircularProof flatten_split(const SplitCircularProof& p) {
  CircularProof out;
  out.root = p.root;
  out.backlinks = p.backlinks;
  out.nodes.reserve(p.nodes.size());
  for (const auto& n : p.nodes) {
    ProofNode m;
    m.id = n.id;
    m.sequent = n.sequent.flatten();
    m.premises = n.premises;
    switch (n.rule) {
      case SplitRule::Leaf:
        m.rule = Rule::Leaf;
        break;
      case SplitRule::AxTopLeft:
      case SplitRule::AxTopRight:
        m.rule = Rule::AxTop;
        break;
      case SplitRule::AxClashLeft:
      case SplitRule::AxClashRight:
      case SplitRule::AxCross:
        m.rule = Rule::AxClash;
        m.principal.formula = n.principal.formula;
        break;
      case SplitRule::AndLeft:
      case SplitRule::AndRight:
        m.rule = Rule::And;
        m.principal.formula = n.principal.formula;
        break;
      case SplitRule::OrLeft:
      case SplitRule::OrRight:
        m.rule = Rule::Or;
        m.principal.formula = n.principal.formula;
        break;
      case SplitRule::BoxLeft:
      case SplitRule::BoxRight:
        m.rule = Rule::BoxK4;
        m.principal.formula = n.principal.formula;
        if (n.principal.gamma_left && n.principal.gamma_right)
          m.principal.gamma =
              n.principal.gamma_left->plus(*n.principal.gamma_right);
        if (n.principal.delta_left && n.principal.delta_right)
          m.principal.delta =
              n.principal.delta_left->plus(*n.principal.delta_right);
        break;
    }
    out.nodes.push_back(std::move(m));
  }
  return out;
}

}  // namespace glc
