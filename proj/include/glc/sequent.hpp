#pragma once

// One-sided sequents: finite multisets of formulas read disjunctively.
// Members are kept sorted in the canonical formula order, so equality
// and hashing are representation independent while multiplicities are
// preserved.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glc/formula.hpp"

namespace glc {

class Sequent {
 public:
  Sequent() = default;

  explicit Sequent(std::vector<Formula> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end(), FormulaLess{});
    rehash();
  }

  const std::vector<Formula>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::uint64_t hash() const { return hash_; }

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.hash_ == b.hash_ && a.items_ == b.items_;
  }
  friend bool operator!=(const Sequent& a, const Sequent& b) {
    return !(a == b);
  }

  bool contains(const Formula& f) const { return count(f) > 0; }

  std::size_t count(const Formula& f) const {
    auto [lo, hi] =
        std::equal_range(items_.begin(), items_.end(), f, FormulaLess{});
    return static_cast<std::size_t>(hi - lo);
  }

  Sequent plus(const Formula& f) const {
    std::vector<Formula> out = items_;
    out.insert(std::upper_bound(out.begin(), out.end(), f, FormulaLess{}), f);
    return Sequent(Sorted{}, std::move(out));
  }

  Sequent plus(const Sequent& other) const {
    std::vector<Formula> out;
    out.reserve(items_.size() + other.items_.size());
    std::merge(items_.begin(), items_.end(), other.items_.begin(),
               other.items_.end(), std::back_inserter(out), FormulaLess{});
    return Sequent(Sorted{}, std::move(out));
  }

  // Removes one occurrence; nullopt if absent.
  std::optional<Sequent> minus_one(const Formula& f) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), f, FormulaLess{});
    if (it == items_.end() || *it != f) return std::nullopt;
    std::vector<Formula> out;
    out.reserve(items_.size() - 1);
    out.insert(out.end(), items_.begin(), it);
    out.insert(out.end(), it + 1, items_.end());
    return Sequent(Sorted{}, std::move(out));
  }

  // Multiset difference; nullopt if other is not contained.
  std::optional<Sequent> minus(const Sequent& other) const {
    std::vector<Formula> out;
    auto it = items_.begin();
    auto jt = other.items_.begin();
    while (jt != other.items_.end()) {
      if (it == items_.end()) return std::nullopt;
      auto c = compare(*it, *jt);
      if (c < 0) {
        out.push_back(*it++);
      } else if (c == 0) {
        ++it;
        ++jt;
      } else {
        return std::nullopt;
      }
    }
    out.insert(out.end(), it, items_.end());
    return Sequent(Sorted{}, std::move(out));
  }

  bool is_set() const {
    return std::adjacent_find(items_.begin(), items_.end()) == items_.end();
  }

 private:
  struct Sorted {};
  Sequent(Sorted, std::vector<Formula> sorted) : items_(std::move(sorted)) {
    rehash();
  }

  void rehash() {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (const auto& f : items_) h = detail::mix(h, f.hash());
    hash_ = h;
  }

  std::vector<Formula> items_;
  std::uint64_t hash_ = 0x2545f4914f6cdd1dULL;  // recompute() of no items
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    return static_cast<std::size_t>(s.hash());
  }
};

// Single-formula reading of a sequent: F for the empty sequent,
// otherwise the left-associated disjunction of members in canonical
// order.
inline Formula sharp(const Sequent& s) {
  if (s.empty()) return bottom();
  Formula out = s.items().front();
  for (std::size_t i = 1; i < s.items().size(); ++i)
    out = disj(std::move(out), s.items()[i]);
  return out;
}

// Pointwise diamond prefixing.
inline Sequent diamonds(const Sequent& s) {
  std::vector<Formula> out;
  out.reserve(s.size());
  for (const auto& f : s.items()) out.push_back(diamond(f));
  return Sequent(std::move(out));
}

// Multiplicities collapsed to one.
inline Sequent underlying_set(const Sequent& s) {
  std::vector<Formula> out;
  for (const auto& f : s.items())
    if (out.empty() || out.back() != f) out.push_back(f);
  return Sequent(std::move(out));
}

inline std::string render(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.items().size(); ++i) {
    if (i) out += ", ";
    out += render(s.items()[i]);
  }
  return out;
}

inline Sequent parse_sequent(std::string_view text) {
  return Sequent(detail::Parser(text).parse_comma_list());
}

// A sequent with each member occurrence assigned to one of two zones.
struct SplitSequent {
  Sequent left;
  Sequent right;

  Sequent flatten() const { return left.plus(right); }

  friend bool operator==(const SplitSequent& a, const SplitSequent& b) {
    return a.left == b.left && a.right == b.right;
  }
  friend bool operator!=(const SplitSequent& a, const SplitSequent& b) {
    return !(a == b);
  }

  std::uint64_t hash() const {
    return detail::mix(left.hash(), right.hash());
  }
};

}  // namespace glc
