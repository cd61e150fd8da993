#pragma once

// Interpolant extraction from circular proofs.
//
// A proved sequent ~A, B is split into zones ~A | B and the proof is
// replayed zone by zone.  Back-links may land on nodes whose splitting
// differs from the target's, so the proof graph is unfolded and
// re-closed on identical split sequents; finitely many splittings over
// the closure keep this finite.  Interpolants are then computed
// bottom-up, with a fresh unknown atom per back-linked leaf; at each
// back-link target the unknown occurs only under modal operators and
// is eliminated through the modal fixed-point construction.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "glc/formula.hpp"
#include "glc/proof.hpp"
#include "glc/prover.hpp"
#include "glc/sequent.hpp"

namespace glc {

namespace detail {

// Iterates F_{i+1} = a[x := F_i] from the given seed, folding
// constants, and returns the first F_i with boxdot(F_{i+1} <-> F_i)
// provable.  Fixed points of modalized equations are unique up to
// provable equivalence, so a stabilized iterate from either seed is
// the fixed point.
inline std::optional<Formula> iterate_fixpoint(const std::string& x,
                                               const Formula& a, Formula seed,
                                               int cap,
                                               const ProverOptions& opts) {
  Formula fi = std::move(seed);
  for (int i = 0; i < cap; ++i) {
    Formula fnext = fold_constants(substitute(a, x, fi));
    Formula step = iff(fnext, fi);
    if (provable_formula(conj(step, box(step)), opts)) return fi;
    fi = std::move(fnext);
  }
  return std::nullopt;
}

}  // namespace detail

// Fixed point construction: for a with x and ~x only under modal
// operators, returns F with x eliminated such that x <-> a and x <-> F
// define the same dot-boxed equivalence, certified by the prover
// before returning.  Iterates from seed T with the count capped at
// occurrences(x) + 2; if that does not stabilize (pure-diamond
// equations such as x <-> <>x descend towards the fixed point instead
// of ascending), the same iteration is retried from seed F.
inline Formula fixpoint(const std::string& x, const Formula& a,
                        const ProverOptions& opts = {}) {
  if (occurs_outside_modal(a, x))
    throw std::invalid_argument(
        "fixpoint: '" + x + "' must occur only under modal operators");
  int cap = count_occurrences(a, x) + 2;
  std::optional<Formula> result =
      detail::iterate_fixpoint(x, a, top(), cap, opts);
  if (!result) result = detail::iterate_fixpoint(x, a, bottom(), cap, opts);
  if (!result)
    throw SoundnessError("fixpoint iteration for '" + x +
                         "' did not stabilize within " + std::to_string(cap) +
                         " steps from either seed");
  const Formula& f = *result;

  Formula claim = iff(boxdot(iff(atom(x), a)), boxdot(iff(atom(x), f)));
  if (!provable_formula(claim, opts))
    throw SoundnessError("fixpoint equivalence for '" + x +
                         "' failed certification");

  VocabularySet bound = vocab_star(a);
  if (occurs_complemented(a, x)) {
    VocabularySet dual = vocab_star(negate(a));
    bound.insert(dual.begin(), dual.end());
  }
  bound.erase({x, false, true});
  bound.erase({x, true, true});
  if (!subset(vocab(f).w, bound))
    throw SoundnessError("fixpoint result for '" + x +
                         "' leaves the vocabulary bound");
  return f;
}

namespace detail {

struct SplitWalk {
  const CircularProof& proof;
  std::unordered_map<std::string, const ProofNode*> by_id;
  SplitCircularProof out;
  int counter = 0;
  // Ancestors of the current product path, per original node.
  std::unordered_map<std::string, std::vector<std::pair<SplitSequent, std::string>>>
      ancestors;

  explicit SplitWalk(const CircularProof& p) : proof(p) {
    for (const auto& n : p.nodes) by_id[n.id] = &n;
  }

  std::string fresh() { return "s" + std::to_string(counter++); }

  // Assigns the occurrences of a box instance to zones matching the
  // conclusion splitting: gamma occurrences first, then the principal
  // box, then delta, each preferring the left zone while copies remain.
  struct BoxAssignment {
    std::vector<Formula> gamma_left, gamma_right;
    std::vector<Formula> delta_left, delta_right;
    Side principal_side = Side::Left;
  };

  static BoxAssignment assign_box(const ProofNode& n,
                                  const SplitSequent& split) {
    BoxAssignment out;
    Sequent remaining = split.left;
    auto take_left = [&](const Formula& f) {
      auto r = remaining.minus_one(f);
      if (!r) return false;
      remaining = std::move(*r);
      return true;
    };
    const Formula& a = *n.principal.formula;
    for (const auto& g : n.principal.gamma->items()) {
      if (take_left(diamond(g)))
        out.gamma_left.push_back(g);
      else
        out.gamma_right.push_back(g);
    }
    out.principal_side = take_left(box(a)) ? Side::Left : Side::Right;
    for (const auto& d : n.principal.delta->items()) {
      if (take_left(d))
        out.delta_left.push_back(d);
      else
        out.delta_right.push_back(d);
    }
    return out;
  }

  std::string build(std::string orig_id, SplitSequent split) {
    // Back-linked leaves continue at their target with the same split.
    while (true) {
      auto bit = proof.backlinks.find(orig_id);
      if (bit == proof.backlinks.end()) break;
      orig_id = bit->second;
    }
    for (const auto& [anc_split, anc_id] : ancestors[orig_id]) {
      if (anc_split == split) {
        std::string id = fresh();
        SplitProofNode leaf;
        leaf.id = id;
        leaf.sequent = split;
        leaf.rule = SplitRule::Leaf;
        out.nodes.push_back(std::move(leaf));
        out.backlinks[id] = anc_id;
        return id;
      }
    }

    const ProofNode& n = *by_id.at(orig_id);
    std::string id = fresh();
    std::size_t slot = out.nodes.size();
    SplitProofNode sn;
    sn.id = id;
    sn.sequent = split;
    out.nodes.push_back(std::move(sn));
    ancestors[orig_id].emplace_back(split, id);
    std::vector<std::string> premise_ids;

    switch (n.rule) {
      case Rule::AxTop: {
        out.nodes[slot].rule = split.left.contains(top())
                                   ? SplitRule::AxTopLeft
                                   : SplitRule::AxTopRight;
        break;
      }
      case Rule::AxClash: {
        const Formula& a = *n.principal.formula;
        Formula na = negate(a);
        SplitProofNode& m = out.nodes[slot];
        if (split.left.contains(a) && split.left.contains(na)) {
          m.rule = SplitRule::AxClashLeft;
          m.principal.formula = a;
        } else if (split.right.contains(a) && split.right.contains(na)) {
          m.rule = SplitRule::AxClashRight;
          m.principal.formula = a;
        } else if (split.left.contains(a)) {
          m.rule = SplitRule::AxCross;
          m.principal.formula = a;
        } else {
          m.rule = SplitRule::AxCross;
          m.principal.formula = na;
        }
        break;
      }
      case Rule::And:
      case Rule::Or: {
        const Formula& ab = *n.principal.formula;
        bool left_side = split.left.contains(ab);
        Sequent zone = left_side ? split.left : split.right;
        Sequent gamma = *zone.minus_one(ab);
        auto premise_split = [&](const Sequent& grown) {
          return left_side ? SplitSequent{grown, split.right}
                           : SplitSequent{split.left, grown};
        };
        if (n.rule == Rule::And) {
          premise_ids.push_back(
              build(n.premises[0], premise_split(gamma.plus(ab.left()))));
          premise_ids.push_back(
              build(n.premises[1], premise_split(gamma.plus(ab.right()))));
          out.nodes[slot].rule =
              left_side ? SplitRule::AndLeft : SplitRule::AndRight;
        } else {
          premise_ids.push_back(build(
              n.premises[0],
              premise_split(gamma.plus(ab.left()).plus(ab.right()))));
          out.nodes[slot].rule =
              left_side ? SplitRule::OrLeft : SplitRule::OrRight;
        }
        out.nodes[slot].principal.formula = ab;
        out.nodes[slot].principal.side =
            left_side ? Side::Left : Side::Right;
        break;
      }
      case Rule::BoxK4: {
        BoxAssignment asg = assign_box(n, split);
        Sequent gl{std::vector<Formula>(asg.gamma_left)};
        Sequent gr{std::vector<Formula>(asg.gamma_right)};
        Sequent prem_l = gl.plus(diamonds(gl));
        Sequent prem_r = gr.plus(diamonds(gr));
        const Formula& a = *n.principal.formula;
        if (asg.principal_side == Side::Left)
          prem_l = prem_l.plus(a);
        else
          prem_r = prem_r.plus(a);
        premise_ids.push_back(
            build(n.premises[0], SplitSequent{prem_l, prem_r}));
        SplitProofNode& m = out.nodes[slot];
        m.rule = asg.principal_side == Side::Left ? SplitRule::BoxLeft
                                                  : SplitRule::BoxRight;
        m.principal.formula = a;
        m.principal.side = asg.principal_side;
        m.principal.gamma_left = gl;
        m.principal.gamma_right = gr;
        m.principal.delta_left = Sequent{std::vector<Formula>(asg.delta_left)};
        m.principal.delta_right =
            Sequent{std::vector<Formula>(asg.delta_right)};
        break;
      }
      case Rule::Leaf:
      case Rule::BoxGL:
        throw SoundnessError("split propagation hit an unexpected rule");
    }

    ancestors[orig_id].pop_back();
    out.nodes[slot].premises = std::move(premise_ids);
    return id;
  }
};

}  // namespace detail

// Replays a checked circular proof with its root sequent split into
// two zones; the result is a split circular proof of the same shape,
// unfolded where back-links would join unequal splittings.
inline SplitCircularProof split_propagate(const CircularProof& p,
                                          const SplitSequent& root_split) {
  CheckResult chk = check_circular(p);
  if (!chk.accepted)
    throw std::invalid_argument(
        "split_propagate needs a valid circular proof: " + chk.message);
  const ProofNode* root = nullptr;
  for (const auto& n : p.nodes)
    if (n.id == p.root) root = &n;
  if (root->sequent != root_split.flatten())
    throw std::invalid_argument(
        "split_propagate: splitting does not flatten to the root sequent");
  detail::SplitWalk walk(p);
  walk.out.root = walk.build(p.root, root_split);
  return walk.out;
}

namespace detail {

struct Extractor {
  const SplitCircularProof& proof;
  const ProverOptions& opts;
  std::unordered_map<std::string, const SplitProofNode*> by_id;
  std::map<std::string, std::vector<std::string>> leaves_of_target;
  std::map<std::string, std::string> unknown_of_leaf;
  std::set<std::string> unknowns;

  Extractor(const SplitCircularProof& p, const ProverOptions& o)
      : proof(p), opts(o) {
    for (const auto& n : p.nodes) by_id[n.id] = &n;
    std::set<std::string> used;
    for (const auto& n : p.nodes) {
      for (const auto& f : n.sequent.left.items()) collect_atom_names(f, used);
      for (const auto& f : n.sequent.right.items())
        collect_atom_names(f, used);
    }
    int next = 0;
    for (const auto& [leaf, target] : p.backlinks) {
      std::string name;
      do {
        name = "ux" + std::to_string(next++);
      } while (used.count(name));
      unknown_of_leaf[leaf] = name;
      unknowns.insert(name);
      leaves_of_target[target].push_back(leaf);
    }
  }

  Formula interp(const std::string& id) {
    const SplitProofNode& n = *by_id.at(id);
    Formula c;
    switch (n.rule) {
      case SplitRule::Leaf:
        return atom(unknown_of_leaf.at(id));
      case SplitRule::AxTopRight:
      case SplitRule::AxClashRight:
        c = top();
        break;
      case SplitRule::AxTopLeft:
      case SplitRule::AxClashLeft:
        c = bottom();
        break;
      case SplitRule::AxCross:
        c = negate(*n.principal.formula);
        break;
      case SplitRule::AndLeft:
        c = disj(interp(n.premises[0]), interp(n.premises[1]));
        break;
      case SplitRule::AndRight:
        c = conj(interp(n.premises[0]), interp(n.premises[1]));
        break;
      case SplitRule::OrLeft:
      case SplitRule::OrRight:
        c = interp(n.premises[0]);
        break;
      case SplitRule::BoxLeft:
        c = diamond(interp(n.premises[0]));
        break;
      case SplitRule::BoxRight:
        c = box(interp(n.premises[0]));
        break;
    }
    auto tit = leaves_of_target.find(id);
    if (tit != leaves_of_target.end()) {
      for (const auto& leaf : tit->second) {
        const std::string& x = unknown_of_leaf.at(leaf);
        if (occurs(c, x) &&
            (occurs_outside_modal(c, x) || occurs_complemented(c, x)))
          throw SoundnessError(
              "unknown '" + x + "' at node " + id +
              " must occur only under modal operators and uncomplemented");
        Formula f = fixpoint(x, c, opts);
        c = fold_constants(substitute(c, x, f));
      }
    }
    return c;
  }
};

}  // namespace detail

// Computes the interpolant of a checked split circular proof: the
// rule-wise construction with a fresh unknown per back-linked leaf,
// eliminated innermost first via the fixed point construction.
inline Formula extract_interpolant(const SplitCircularProof& p,
                                   const ProverOptions& opts = {}) {
  CheckResult chk = check_split_circular(p);
  if (!chk.accepted)
    throw std::invalid_argument(
        "extract_interpolant needs a valid split circular proof: " +
        chk.message);
  detail::Extractor ex(p, opts);
  Formula c = ex.interp(p.root);
  std::set<std::string> atoms;
  collect_atom_names(c, atoms);
  for (const auto& x : ex.unknowns)
    if (atoms.count(x))
      throw SoundnessError("interpolant still contains unknown '" + x + "'");
  return c;
}

struct InterpolantCheck {
  bool left_provable = false;
  bool right_provable = false;
  bool vocab_ok = false;
  VocabularySet extra;  // literals of C outside w(A) intersect w(B)

  bool accepted() const { return left_provable && right_provable && vocab_ok; }

  std::string describe() const {
    if (accepted()) return "accepted";
    std::string out = "rejected:";
    if (!left_provable) out += " A->C not provable;";
    if (!right_provable) out += " C->B not provable;";
    if (!vocab_ok) {
      out += " vocabulary escape:";
      for (const auto& l : extra) out += " " + render(l);
    }
    return out;
  }
};

// Checks the two implications (by proof search) and the sharpened
// vocabulary condition w(C) within w(A) intersect w(B).
inline InterpolantCheck check_interpolant(const Formula& a, const Formula& b,
                                          const Formula& c,
                                          const ProverOptions& opts = {}) {
  InterpolantCheck out;
  out.left_provable = provable_formula(impl(a, c), opts);
  out.right_provable = provable_formula(impl(c, b), opts);
  VocabularySet allowed = intersect(vocab(a).w, vocab(b).w);
  out.extra = difference(vocab(c).w, allowed);
  out.vocab_ok = out.extra.empty();
  return out;
}

enum class InterpolateStatus { Interpolant, NotProvable, Aborted };

struct InterpolateResult {
  InterpolateStatus status = InterpolateStatus::NotProvable;
  Formula interpolant;
  CircularProof left_proof;   // proof of A -> C
  CircularProof right_proof;  // proof of C -> B
  SplitCircularProof split_proof;
  VocabularySet vocab_a, vocab_b, vocab_c;
  InterpolantCheck check;
  SearchStats stats;
};

// Full pipeline: prove ~A, B circularly, split it A-side | B-side,
// extract the interpolant, and verify it before returning.
inline InterpolateResult interpolate(const Formula& a, const Formula& b,
                                     const ProverOptions& opts = {}) {
  InterpolateResult out;
  Formula na = negate(a);
  ProveResult pr = prove_circ(Sequent({na, b}), opts);
  out.stats = pr.stats;
  if (pr.verdict == ProveVerdict::Aborted) {
    out.status = InterpolateStatus::Aborted;
    return out;
  }
  if (pr.verdict == ProveVerdict::NotProvable) {
    out.status = InterpolateStatus::NotProvable;
    return out;
  }
  try {
    SplitSequent root_split{Sequent({na}), Sequent({b})};
    out.split_proof = split_propagate(*pr.certificate, root_split);
    CheckResult schk = check_split_circular(out.split_proof);
    if (!schk.accepted)
      throw SoundnessError("propagated split proof rejected at node " +
                           schk.node + ": " + schk.message);
    out.interpolant = extract_interpolant(out.split_proof, opts);
    out.check = check_interpolant(a, b, out.interpolant, opts);
    if (!out.check.accepted())
      throw SoundnessError("extracted interpolant failed verification: " +
                           out.check.describe());
    ProveResult left = prove_circ(Sequent({impl(a, out.interpolant)}), opts);
    ProveResult right = prove_circ(Sequent({impl(out.interpolant, b)}), opts);
    if (left.verdict != ProveVerdict::Provable ||
        right.verdict != ProveVerdict::Provable)
      throw SoundnessError("implication proofs for the interpolant failed");
    out.left_proof = std::move(*left.certificate);
    out.right_proof = std::move(*right.certificate);
    out.vocab_a = vocab(a).w;
    out.vocab_b = vocab(b).w;
    out.vocab_c = vocab(out.interpolant).w;
    out.status = InterpolateStatus::Interpolant;
    return out;
  } catch (const BudgetExceeded&) {
    out.status = InterpolateStatus::Aborted;
    return out;
  }
}

}  // namespace glc
