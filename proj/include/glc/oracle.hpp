#pragma once

// Finite Kripke semantics over transitive irreflexive frames, with an
// exhaustive bounded countermodel search.  This is the semantic ground
// truth the proof machinery is tested against.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glc/formula.hpp"

namespace glc {

class KripkeModel {
 public:
  // relation pairs are (source, target); valuation maps an atom name to
  // the set of worlds where it holds.
  KripkeModel(int worlds, std::vector<std::pair<int, int>> relation,
              std::map<std::string, std::set<int>> valuation)
      : worlds_(worlds),
        relation_(std::move(relation)),
        valuation_(std::move(valuation)) {
    if (worlds_ <= 0) throw std::invalid_argument("model needs a world");
    succ_.assign(static_cast<std::size_t>(worlds_), 0);
    for (auto [a, b] : relation_) {
      check_world(a);
      check_world(b);
      if (a == b) throw std::invalid_argument("relation must be irreflexive");
      succ_[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
    }
    for (int a = 0; a < worlds_; ++a)
      for (int b = 0; b < worlds_; ++b)
        if (edge(a, b))
          for (int c = 0; c < worlds_; ++c)
            if (edge(b, c) && !edge(a, c))
              throw std::invalid_argument("relation must be transitive");
    for (const auto& [name, ws] : valuation_)
      for (int w : ws) check_world(w);
  }

  int worlds() const { return worlds_; }
  const std::vector<std::pair<int, int>>& relation() const {
    return relation_;
  }
  const std::map<std::string, std::set<int>>& valuation() const {
    return valuation_;
  }

  bool edge(int a, int b) const {
    return (succ_[static_cast<std::size_t>(a)] >> b) & 1;
  }

  std::uint64_t successors(int w) const {
    return succ_[static_cast<std::size_t>(w)];
  }

  bool atom_true(const std::string& name, int w) const {
    auto it = valuation_.find(name);
    return it != valuation_.end() && it->second.count(w) > 0;
  }

 private:
  void check_world(int w) const {
    if (w < 0 || w >= worlds_) throw std::invalid_argument("bad world index");
  }

  int worlds_;
  std::vector<std::pair<int, int>> relation_;
  std::map<std::string, std::set<int>> valuation_;
  std::vector<std::uint64_t> succ_;
};

inline bool forces(const KripkeModel& m, int world, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return m.atom_true(f.name(), world);
    case Kind::NegAtom:
      return !m.atom_true(f.name(), world);
    case Kind::Top:
      return true;
    case Kind::Bottom:
      return false;
    case Kind::And:
      return forces(m, world, f.left()) && forces(m, world, f.right());
    case Kind::Or:
      return forces(m, world, f.left()) || forces(m, world, f.right());
    case Kind::Box: {
      for (int v = 0; v < m.worlds(); ++v)
        if (m.edge(world, v) && !forces(m, v, f.child())) return false;
      return true;
    }
    case Kind::Diamond: {
      for (int v = 0; v < m.worlds(); ++v)
        if (m.edge(world, v) && forces(m, v, f.child())) return true;
      return false;
    }
  }
  throw std::logic_error("forces: bad kind");
}

struct Countermodel {
  KripkeModel model;
  int fail_world;
};

namespace detail {

// Post-order listing of distinct subformulas; children precede parents.
inline void eval_order(const Formula& f, std::vector<Formula>& order,
                       FormulaSet& seen) {
  if (!seen.insert(f).second) return;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
      eval_order(f.left(), order, seen);
      eval_order(f.right(), order, seen);
      break;
    case Kind::Box:
    case Kind::Diamond:
      eval_order(f.child(), order, seen);
      break;
    default:
      break;
  }
  order.push_back(f);
}

}  // namespace detail

// Exhaustive search for a countermodel with at most max_worlds worlds
// (capped at 6).  Frames are enumerated as transitive closures of DAG
// edge sets over the natural world order, deduplicated by the closed
// relation; valuations range over the atoms of f only.  The first
// failing (model, world) in enumeration order is returned.
inline std::optional<Countermodel> find_countermodel(const Formula& f,
                                                     int max_worlds) {
  if (max_worlds < 1 || max_worlds > 6)
    throw std::invalid_argument("max_worlds must be between 1 and 6");

  std::set<std::string> atom_set;
  collect_atom_names(f, atom_set);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());

  std::vector<Formula> order;
  FormulaSet seen;
  detail::eval_order(f, order, seen);
  std::map<Formula, int, FormulaLess> index;
  for (std::size_t i = 0; i < order.size(); ++i)
    index[order[i]] = static_cast<int>(i);

  for (int n = 1; n <= max_worlds; ++n) {
    // Candidate edges (i, j) with i < j, indexed in lexicographic order.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    std::set<std::vector<std::uint64_t>> seen_frames;

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size());
         ++mask) {
      std::vector<std::uint64_t> succ(static_cast<std::size_t>(n), 0);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if ((mask >> e) & 1)
          succ[static_cast<std::size_t>(edges[e].first)] |=
              std::uint64_t{1} << edges[e].second;
      // Transitive closure; edges already respect the natural order, so
      // one backward sweep suffices.
      for (int i = n - 1; i >= 0; --i)
        for (int j = i + 1; j < n; ++j)
          if ((succ[static_cast<std::size_t>(i)] >> j) & 1)
            succ[static_cast<std::size_t>(i)] |=
                succ[static_cast<std::size_t>(j)];
      if (!seen_frames.insert(succ).second) continue;

      std::size_t val_bits = atoms.size() * static_cast<std::size_t>(n);
      for (std::uint64_t val = 0; val < (std::uint64_t{1} << val_bits);
           ++val) {
        // Bit a * n + w: atom a true at world w.
        std::vector<std::uint64_t> truth(order.size(), 0);
        const std::uint64_t all = (n == 64)
                                      ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << n) - 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
          const Formula& g = order[i];
          switch (g.kind()) {
            case Kind::Atom: {
              std::size_t a = static_cast<std::size_t>(
                  std::lower_bound(atoms.begin(), atoms.end(), g.name()) -
                  atoms.begin());
              truth[i] = (val >> (a * static_cast<std::size_t>(n))) & all;
              break;
            }
            case Kind::NegAtom: {
              std::size_t a = static_cast<std::size_t>(
                  std::lower_bound(atoms.begin(), atoms.end(), g.name()) -
                  atoms.begin());
              truth[i] =
                  ~((val >> (a * static_cast<std::size_t>(n))) & all) & all;
              break;
            }
            case Kind::Top:
              truth[i] = all;
              break;
            case Kind::Bottom:
              truth[i] = 0;
              break;
            case Kind::And:
              truth[i] = truth[static_cast<std::size_t>(index[g.left()])] &
                         truth[static_cast<std::size_t>(index[g.right()])];
              break;
            case Kind::Or:
              truth[i] = truth[static_cast<std::size_t>(index[g.left()])] |
                         truth[static_cast<std::size_t>(index[g.right()])];
              break;
            case Kind::Box: {
              std::uint64_t child =
                  truth[static_cast<std::size_t>(index[g.child()])];
              std::uint64_t out = 0;
              for (int w = 0; w < n; ++w)
                if ((succ[static_cast<std::size_t>(w)] & ~child) == 0)
                  out |= std::uint64_t{1} << w;
              truth[i] = out;
              break;
            }
            case Kind::Diamond: {
              std::uint64_t child =
                  truth[static_cast<std::size_t>(index[g.child()])];
              std::uint64_t out = 0;
              for (int w = 0; w < n; ++w)
                if (succ[static_cast<std::size_t>(w)] & child)
                  out |= std::uint64_t{1} << w;
              truth[i] = out;
              break;
            }
          }
        }
        std::uint64_t root = truth.back();
        if ((root & all) == all) continue;
        int fail = 0;
        while ((root >> fail) & 1) ++fail;

        std::vector<std::pair<int, int>> relation;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if ((succ[static_cast<std::size_t>(i)] >> j) & 1)
              relation.emplace_back(i, j);
        std::map<std::string, std::set<int>> valuation;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          std::set<int> ws;
          for (int w = 0; w < n; ++w)
            if ((val >> (a * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(w))) &
                1)
              ws.insert(w);
          valuation[atoms[a]] = std::move(ws);
        }
        return Countermodel{
            KripkeModel(n, std::move(relation), std::move(valuation)), fail};
      }
    }
  }
  return std::nullopt;
}

}  // namespace glc
