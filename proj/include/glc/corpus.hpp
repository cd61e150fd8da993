#pragma once

// Deterministic random formula generation for tests and benchmarks.
// The same spec yields the same formula list on every platform: the
// engine is the exactly specified mt19937_64 and all bounded draws use
// plain modulo, never distribution adapters.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "glc/formula.hpp"

namespace glc {

struct CorpusWeights {
  int atom = 3;
  int neg_atom = 3;
  int top = 1;
  int bottom = 1;
  int conj = 4;
  int disj = 4;
  int box = 3;
  int diamond = 3;
};

struct CorpusSpec {
  std::uint64_t seed = 42;
  int count = 500;
  int max_atoms = 2;
  int max_depth = 3;
  int max_modal_depth = 2;
  CorpusWeights weights{};
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

inline std::string corpus_atom_name(int i) {
  static const char* pool[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  if (i < 8) return pool[i];
  return "a" + std::to_string(i);
}

inline Formula gen_formula(std::mt19937_64& rng, const CorpusSpec& spec,
                           int depth, int modal_depth) {
  enum Tag { TAtom, TNeg, TTop, TBot, TAnd, TOr, TBox, TDia };
  struct Entry {
    Tag tag;
    int weight;
  };
  const CorpusWeights& w = spec.weights;
  std::vector<Entry> entries = {{TAtom, w.atom},
                                {TNeg, w.neg_atom},
                                {TTop, w.top},
                                {TBot, w.bottom}};
  if (depth > 1) {
    entries.push_back({TAnd, w.conj});
    entries.push_back({TOr, w.disj});
    if (modal_depth > 0) {
      entries.push_back({TBox, w.box});
      entries.push_back({TDia, w.diamond});
    }
  }
  int total = 0;
  for (const auto& e : entries) total += e.weight;
  auto pick = static_cast<int>(draw(rng, static_cast<std::uint64_t>(total)));
  Tag tag = entries.back().tag;
  for (const auto& e : entries) {
    if (pick < e.weight) {
      tag = e.tag;
      break;
    }
    pick -= e.weight;
  }
  switch (tag) {
    case TAtom:
      return atom(corpus_atom_name(static_cast<int>(
          draw(rng, static_cast<std::uint64_t>(spec.max_atoms)))));
    case TNeg:
      return neg_atom(corpus_atom_name(static_cast<int>(
          draw(rng, static_cast<std::uint64_t>(spec.max_atoms)))));
    case TTop:
      return top();
    case TBot:
      return bottom();
    case TAnd:
      return conj(gen_formula(rng, spec, depth - 1, modal_depth),
                  gen_formula(rng, spec, depth - 1, modal_depth));
    case TOr:
      return disj(gen_formula(rng, spec, depth - 1, modal_depth),
                  gen_formula(rng, spec, depth - 1, modal_depth));
    case TBox:
      return box(gen_formula(rng, spec, depth - 1, modal_depth - 1));
    case TDia:
      return diamond(gen_formula(rng, spec, depth - 1, modal_depth - 1));
  }
  return top();
}

}  // namespace detail

inline std::vector<Formula> generate_corpus(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<Formula> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i)
    out.push_back(
        detail::gen_formula(rng, spec, spec.max_depth, spec.max_modal_depth));
  return out;
}

}  // namespace glc
