#pragma once

// Formulas of Godel-Lob provability logic, kept in negation normal form.
// Negation exists only on atoms; implication and equivalence are input
// sugar that the parser lowers immediately.  Values are immutable and
// share structure through shared_ptr, so copies are cheap and safe to
// pass between threads.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace glc {

enum class Kind : std::uint8_t {
  Atom,
  NegAtom,
  Top,
  Bottom,
  And,
  Or,
  Box,
  Diamond,
};

inline bool is_binary(Kind k) { return k == Kind::And || k == Kind::Or; }
inline bool is_modal(Kind k) { return k == Kind::Box || k == Kind::Diamond; }

class Formula {
 public:
  struct Node {
    Kind kind;
    std::string name;            // atoms only
    std::vector<Formula> kids;   // 2 for And/Or, 1 for Box/Diamond
    int size = 1;                // node count, cached
    std::uint64_t hash = 0;      // structural hash, cached
  };

  Formula() = default;  // empty handle; only factories produce real values

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }
  const Formula& child() const { return node_->kids[0]; }
  int size() const { return node_->size; }
  std::uint64_t hash() const { return node_->hash; }
  bool valid() const { return node_ != nullptr; }

  bool is_literal() const {
    return kind() == Kind::Atom || kind() == Kind::NegAtom;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return structurally_equal(a, b);
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

  static Formula make(Kind k, std::string name, std::vector<Formula> kids);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return false;
    if (a.kind() == Kind::Atom || a.kind() == Kind::NegAtom)
      return a.name() == b.name();
    const auto& ka = a.node_->kids;
    const auto& kb = b.node_->kids;
    for (std::size_t i = 0; i < ka.size(); ++i)
      if (ka[i] != kb[i]) return false;
    return true;
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

inline std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline bool valid_atom_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s.substr(1))
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

}  // namespace detail

inline Formula Formula::make(Kind k, std::string name,
                             std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->kids = std::move(kids);
  n->size = 1;
  std::uint64_t h = detail::mix(0, static_cast<std::uint64_t>(k));
  h = detail::mix(h, detail::hash_string(n->name));
  for (const auto& c : n->kids) {
    n->size += c.size();
    h = detail::mix(h, c.hash());
  }
  n->hash = h;
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

inline Formula atom(std::string name) {
  if (!detail::valid_atom_name(name))
    throw std::invalid_argument("bad atom name: '" + name + "'");
  return Formula::make(Kind::Atom, std::move(name), {});
}

inline Formula neg_atom(std::string name) {
  if (!detail::valid_atom_name(name))
    throw std::invalid_argument("bad atom name: '" + name + "'");
  return Formula::make(Kind::NegAtom, std::move(name), {});
}

inline Formula top() { return Formula::make(Kind::Top, {}, {}); }
inline Formula bottom() { return Formula::make(Kind::Bottom, {}, {}); }

inline Formula conj(Formula a, Formula b) {
  return Formula::make(Kind::And, {}, {std::move(a), std::move(b)});
}

inline Formula disj(Formula a, Formula b) {
  return Formula::make(Kind::Or, {}, {std::move(a), std::move(b)});
}

inline Formula box(Formula a) {
  return Formula::make(Kind::Box, {}, {std::move(a)});
}

inline Formula diamond(Formula a) {
  return Formula::make(Kind::Diamond, {}, {std::move(a)});
}

// Duality-based negation: involutive, preserves negation normal form.
inline Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return neg_atom(f.name());
    case Kind::NegAtom:
      return atom(f.name());
    case Kind::Top:
      return bottom();
    case Kind::Bottom:
      return top();
    case Kind::And:
      return disj(negate(f.left()), negate(f.right()));
    case Kind::Or:
      return conj(negate(f.left()), negate(f.right()));
    case Kind::Box:
      return diamond(negate(f.child()));
    case Kind::Diamond:
      return box(negate(f.child()));
  }
  throw std::logic_error("negate: bad kind");
}

inline Formula impl(const Formula& a, Formula b) {
  return disj(negate(a), std::move(b));
}

inline Formula iff(const Formula& a, const Formula& b) {
  return conj(impl(a, b), impl(b, a));
}

// A and box A; written as a dot-boxed formula in modal logic notation.
inline Formula boxdot(const Formula& a) { return conj(a, box(a)); }

// Total order used everywhere a canonical arrangement is needed:
// smaller formulas first, then by kind, name, and children.
inline std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
  switch (a.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
      return a.name().compare(b.name()) <=> 0;
    case Kind::Top:
    case Kind::Bottom:
      return std::strong_ordering::equal;
    case Kind::Box:
    case Kind::Diamond:
      return compare(a.child(), b.child());
    case Kind::And:
    case Kind::Or: {
      auto c = compare(a.left(), b.left());
      if (c != 0) return c;
      return compare(a.right(), b.right());
    }
  }
  throw std::logic_error("compare: bad kind");
}

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return compare(a, b) < 0;
  }
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const {
    return static_cast<std::size_t>(f.hash());
  }
};

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   formula = impl { "<->" impl }            right associative
//   impl    = disj [ "->" impl ]             right associative
//   disj    = conj { "|" conj }
//   conj    = unary { "&" unary }
//   unary   = "~" unary | "[]" unary | "<>" unary | primary
//   primary = "T" | "F" | ident | "(" formula ")"
//   ident   = [a-z][a-zA-Z0-9_]*
//
// "~" on compound arguments, "->" and "<->" are lowered at parse time,
// so parsed values are always in negation normal form.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at offset " + std::to_string(pos) +
                           ": " + msg),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Formula parse_formula() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError(pos_, "unexpected trailing input");
    return f;
  }

  std::vector<Formula> parse_comma_list() {
    std::vector<Formula> out;
    skip_ws();
    if (pos_ == src_.size()) return out;  // empty sequent
    out.push_back(parse_iff());
    skip_ws();
    while (pos_ < src_.size() && src_[pos_] == ',') {
      ++pos_;
      out.push_back(parse_iff());
      skip_ws();
    }
    if (pos_ != src_.size())
      throw ParseError(pos_, "unexpected trailing input");
    return out;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_impl();
    skip_ws();
    if (lookahead("<->")) {
      pos_ += 3;
      Formula rhs = parse_iff();
      return iff(lhs, rhs);
    }
    return lhs;
  }

  Formula parse_impl() {
    Formula lhs = parse_disj();
    skip_ws();
    if (lookahead("->")) {
      pos_ += 2;
      Formula rhs = parse_impl();
      return impl(lhs, std::move(rhs));
    }
    return lhs;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    skip_ws();
    while (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      f = disj(std::move(f), parse_conj());
      skip_ws();
    }
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    skip_ws();
    while (pos_ < src_.size() && src_[pos_] == '&') {
      ++pos_;
      f = conj(std::move(f), parse_unary());
      skip_ws();
    }
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "expected a formula");
    char c = src_[pos_];
    if (c == '~') {
      ++pos_;
      return negate(parse_unary());
    }
    if (c == '[') {
      if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != ']')
        throw ParseError(pos_, "expected \"[]\"");
      pos_ += 2;
      return box(parse_unary());
    }
    if (c == '<') {
      if (lookahead("<->")) throw ParseError(pos_, "expected a formula");
      if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != '>')
        throw ParseError(pos_, "expected \"<>\"");
      pos_ += 2;
      return diamond(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "expected a formula");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_iff();
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != ')')
        throw ParseError(pos_, "expected \")\"");
      ++pos_;
      return f;
    }
    if (c == 'T' || c == 'F') {
      if (pos_ + 1 < src_.size() && ident_char(src_[pos_ + 1]))
        throw ParseError(pos_, "unexpected character");
      ++pos_;
      return c == 'T' ? top() : bottom();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      return atom(std::string(src_.substr(start, pos_ - start)));
    }
    throw ParseError(pos_, "expected a formula");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  bool lookahead(std::string_view tok) const {
    return src_.substr(pos_, tok.size()) == tok;
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline int precedence(Kind k) {
  switch (k) {
    case Kind::Or:
      return 2;
    case Kind::And:
      return 3;
    default:
      return 4;  // literals, constants, prefix operators
  }
}

inline void render_into(const Formula& f, std::string& out);

inline void render_child(const Formula& f, int parent_prec, bool right_side,
                         std::string& out) {
  int p = precedence(f.kind());
  bool parens = p < parent_prec || (p == parent_prec && right_side);
  if (parens) out += '(';
  render_into(f, out);
  if (parens) out += ')';
}

inline void render_prefix_child(const Formula& f, std::string& out) {
  bool parens = precedence(f.kind()) < 4;
  if (parens) out += '(';
  render_into(f, out);
  if (parens) out += ')';
}

inline void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out += f.name();
      return;
    case Kind::NegAtom:
      out += '~';
      out += f.name();
      return;
    case Kind::Top:
      out += 'T';
      return;
    case Kind::Bottom:
      out += 'F';
      return;
    case Kind::And:
      render_child(f.left(), 3, false, out);
      out += " & ";
      render_child(f.right(), 3, true, out);
      return;
    case Kind::Or:
      render_child(f.left(), 2, false, out);
      out += " | ";
      render_child(f.right(), 2, true, out);
      return;
    case Kind::Box:
      out += "[]";
      render_prefix_child(f.child(), out);
      return;
    case Kind::Diamond:
      out += "<>";
      render_prefix_child(f.child(), out);
      return;
  }
}

}  // namespace detail

inline Formula parse(std::string_view text) {
  return detail::Parser(text).parse_formula();
}

// Minimal parenthesization; parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Vocabulary.  A marked literal records polarity and whether the
// occurrence sits under at least one modal operator.

struct MarkedLiteral {
  std::string name;
  bool complemented = false;
  bool marked = false;

  friend auto operator<=>(const MarkedLiteral&, const MarkedLiteral&) = default;
};

inline std::string render(const MarkedLiteral& l) {
  std::string out;
  if (l.complemented) out += '~';
  out += l.name;
  if (l.marked) out += '*';
  return out;
}

using VocabularySet = std::set<MarkedLiteral>;

struct Vocab {
  VocabularySet u;  // literal occurrences outside every modal operator
  VocabularySet v;  // marked literals occurring under some modal operator
  VocabularySet w;  // union of the two
};

namespace detail {

inline void collect_vocab(const Formula& f, bool under_modal, VocabularySet& u,
                          VocabularySet& v) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom: {
      MarkedLiteral l{f.name(), f.kind() == Kind::NegAtom, under_modal};
      (under_modal ? v : u).insert(std::move(l));
      return;
    }
    case Kind::Top:
    case Kind::Bottom:
      return;
    case Kind::And:
    case Kind::Or:
      collect_vocab(f.left(), under_modal, u, v);
      collect_vocab(f.right(), under_modal, u, v);
      return;
    case Kind::Box:
    case Kind::Diamond:
      collect_vocab(f.child(), true, u, v);
      return;
  }
}

}  // namespace detail

inline Vocab vocab(const Formula& f) {
  Vocab out;
  detail::collect_vocab(f, false, out.u, out.v);
  out.w = out.u;
  out.w.insert(out.v.begin(), out.v.end());
  return out;
}

// Same set of literals with every entry marked.
inline VocabularySet mark_closure(const VocabularySet& s) {
  VocabularySet out;
  for (const auto& l : s) out.insert({l.name, l.complemented, true});
  return out;
}

// w(f) together with its marked closure.
inline VocabularySet vocab_star(const Formula& f) {
  VocabularySet w = vocab(f).w;
  VocabularySet out = w;
  for (const auto& l : mark_closure(w)) out.insert(l);
  return out;
}

inline bool subset(const VocabularySet& a, const VocabularySet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VocabularySet intersect(const VocabularySet& a, const VocabularySet& b) {
  VocabularySet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

inline VocabularySet difference(const VocabularySet& a,
                                const VocabularySet& b) {
  VocabularySet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

// ---------------------------------------------------------------------------
// Structural helpers.

using FormulaSet = std::set<Formula, FormulaLess>;

namespace detail {

inline void add_subformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
      add_subformulas(f.left(), out);
      add_subformulas(f.right(), out);
      return;
    case Kind::Box:
    case Kind::Diamond:
      add_subformulas(f.child(), out);
      return;
    default:
      return;
  }
}

}  // namespace detail

// Subformula closure of a set of formulas.
inline FormulaSet closure(const FormulaSet& fs) {
  FormulaSet out;
  for (const auto& f : fs) detail::add_subformulas(f, out);
  return out;
}

inline FormulaSet closure(const Formula& f) {
  FormulaSet out;
  detail::add_subformulas(f, out);
  return out;
}

// Replaces x by g and ~x by the negation of g.
inline Formula substitute(const Formula& f, const std::string& x,
                          const Formula& g) {
  switch (f.kind()) {
    case Kind::Atom:
      return f.name() == x ? g : f;
    case Kind::NegAtom:
      return f.name() == x ? negate(g) : f;
    case Kind::Top:
    case Kind::Bottom:
      return f;
    case Kind::And:
      return conj(substitute(f.left(), x, g), substitute(f.right(), x, g));
    case Kind::Or:
      return disj(substitute(f.left(), x, g), substitute(f.right(), x, g));
    case Kind::Box:
      return box(substitute(f.child(), x, g));
    case Kind::Diamond:
      return diamond(substitute(f.child(), x, g));
  }
  throw std::logic_error("substitute: bad kind");
}

// Boolean constant folding only: T/F absorption in And/Or nodes.
inline Formula fold_constants(const Formula& f) {
  switch (f.kind()) {
    case Kind::And: {
      Formula a = fold_constants(f.left());
      Formula b = fold_constants(f.right());
      if (a.kind() == Kind::Bottom || b.kind() == Kind::Bottom)
        return bottom();
      if (a.kind() == Kind::Top) return b;
      if (b.kind() == Kind::Top) return a;
      return conj(std::move(a), std::move(b));
    }
    case Kind::Or: {
      Formula a = fold_constants(f.left());
      Formula b = fold_constants(f.right());
      if (a.kind() == Kind::Top || b.kind() == Kind::Top) return top();
      if (a.kind() == Kind::Bottom) return b;
      if (b.kind() == Kind::Bottom) return a;
      return disj(std::move(a), std::move(b));
    }
    case Kind::Box:
      return box(fold_constants(f.child()));
    case Kind::Diamond:
      return diamond(fold_constants(f.child()));
    default:
      return f;
  }
}

inline bool occurs(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
      return f.name() == x;
    case Kind::And:
    case Kind::Or:
      return occurs(f.left(), x) || occurs(f.right(), x);
    case Kind::Box:
    case Kind::Diamond:
      return occurs(f.child(), x);
    default:
      return false;
  }
}

inline bool occurs_outside_modal(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
      return f.name() == x;
    case Kind::And:
    case Kind::Or:
      return occurs_outside_modal(f.left(), x) ||
             occurs_outside_modal(f.right(), x);
    default:
      return false;
  }
}

inline bool occurs_complemented(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Kind::NegAtom:
      return f.name() == x;
    case Kind::And:
    case Kind::Or:
      return occurs_complemented(f.left(), x) ||
             occurs_complemented(f.right(), x);
    case Kind::Box:
    case Kind::Diamond:
      return occurs_complemented(f.child(), x);
    default:
      return false;
  }
}

inline int count_occurrences(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
      return f.name() == x ? 1 : 0;
    case Kind::And:
    case Kind::Or:
      return count_occurrences(f.left(), x) + count_occurrences(f.right(), x);
    case Kind::Box:
    case Kind::Diamond:
      return count_occurrences(f.child(), x);
    default:
      return 0;
  }
}

inline void collect_atom_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
      out.insert(f.name());
      return;
    case Kind::And:
    case Kind::Or:
      collect_atom_names(f.left(), out);
      collect_atom_names(f.right(), out);
      return;
    case Kind::Box:
    case Kind::Diamond:
      collect_atom_names(f.child(), out);
      return;
    default:
      return;
  }
}

}  // namespace glc
