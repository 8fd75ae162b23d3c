#pragma once

// Bar-construction reference for A∞ data: structure maps and functor
// components are moved to the shifted module sA, where the coderivation
// identity D ∘ D = 0 and the morphism identity f ∘ D = D ∘ f carry only
// plain Koszul signs. Written independently of the library's relation code.

#include "kzero/ainf.hpp"

#include <functional>

namespace kzero::oracle {

inline int parity(const AInfCategory& C, int i) {
  return ((C.basis[static_cast<std::size_t>(i)].degree % 2) + 2) % 2;
}

inline int shift_sign(const AInfCategory& C, const Word& w) {
  int e = 0;
  const int k = static_cast<int>(w.size());
  for (int i = 0; i < k; ++i) e += (k - 1 - i) * parity(C, w[static_cast<std::size_t>(i)]);
  return e % 2 == 0 ? 1 : -1;
}

inline Combination bar_m(const AInfCategory& C, const Word& w) {
  Combination out;
  add_scaled(out, C.apply(static_cast<int>(w.size()), w), shift_sign(C, w));
  return out;
}

inline Combination bar_f(const AInfFunctor& F, const Word& w) {
  Combination out;
  add_scaled(out, F.apply(static_cast<int>(w.size()), w), shift_sign(*F.source, w));
  return out;
}

inline Integer modulus_of(const AInfCategory& C) {
  return C.ring.kind == GroundRing::Kind::PrimeField ? C.ring.p : Integer(0);
}

/// Component of D ∘ D on the word sx_1 ⊗ … ⊗ sx_k, projected to sA.
inline Combination bar_square(const AInfCategory& C, const Word& x) {
  const int k = static_cast<int>(x.size());
  Combination res;
  for (int s = 1; s <= k; ++s)
    for (int r = 0; r + s <= k; ++r) {
      const Combination inner = bar_m(C, Word(x.begin() + r, x.begin() + r + s));
      int koszul = 0;
      for (int i = 0; i < r; ++i) koszul += parity(C, x[static_cast<std::size_t>(i)]) + 1;
      for (const auto& [y, c] : inner) {
        Word outer(x.begin(), x.begin() + r);
        outer.push_back(y);
        outer.insert(outer.end(), x.begin() + r + s, x.end());
        add_scaled(res, bar_m(C, outer), koszul % 2 == 0 ? c : Integer(-c));
      }
    }
  reduce_coefficients(res, modulus_of(C));
  return res;
}

/// Component of f ∘ D − D ∘ f on sx_1 ⊗ … ⊗ sx_k, projected to sB.
inline Combination bar_morphism_defect(const AInfFunctor& F, const Word& x) {
  const AInfCategory& S = *F.source;
  const AInfCategory& T = *F.target;
  const int k = static_cast<int>(x.size());
  Combination res;
  for (int s = 1; s <= k; ++s)
    for (int r = 0; r + s <= k; ++r) {
      const Combination inner = bar_m(S, Word(x.begin() + r, x.begin() + r + s));
      int koszul = 0;
      for (int i = 0; i < r; ++i) koszul += parity(S, x[static_cast<std::size_t>(i)]) + 1;
      for (const auto& [y, c] : inner) {
        Word outer(x.begin(), x.begin() + r);
        outer.push_back(y);
        outer.insert(outer.end(), x.begin() + r + s, x.end());
        add_scaled(res, bar_f(F, outer), koszul % 2 == 0 ? c : Integer(-c));
      }
    }
  std::vector<int> cuts;
  std::function<void(int)> split = [&](int used) {
    if (used == k) {
      std::vector<Combination> blocks;
      int at = 0;
      for (int len : cuts) {
        blocks.push_back(bar_f(F, Word(x.begin() + at, x.begin() + at + len)));
        at += len;
      }
      Word w(blocks.size());
      std::function<void(std::size_t, Integer)> expand = [&](std::size_t u, Integer coeff) {
        if (u == blocks.size()) {
          add_scaled(res, bar_m(T, w), -coeff);
          return;
        }
        for (const auto& [y, c] : blocks[u]) {
          w[u] = y;
          expand(u + 1, coeff * c);
        }
      };
      expand(0, 1);
      return;
    }
    for (int len = 1; used + len <= k; ++len) {
      cuts.push_back(len);
      split(used + len);
      cuts.pop_back();
    }
  };
  split(0);
  reduce_coefficients(res, modulus_of(T));
  return res;
}

/// All composable words of length k.
inline std::vector<Word> composable_words(const AInfCategory& C, int k) {
  std::vector<Word> out;
  Word w;
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == k) {
      out.push_back(w);
      return;
    }
    for (int b = 0; b < C.size(); ++b) {
      if (!w.empty() && C.basis[static_cast<std::size_t>(b)].target != C.basis[static_cast<std::size_t>(w.back())].source)
        continue;
      w.push_back(b);
      rec();
      w.pop_back();
    }
  };
  rec();
  return out;
}

/// Whether the bar identities hold on every composable word up to arity k.
inline bool bar_valid(const AInfCategory& C, int max_arity) {
  for (int k = 1; k <= max_arity; ++k)
    for (const Word& w : composable_words(C, k))
      if (!bar_square(C, w).empty()) return false;
  return true;
}

}  // namespace kzero::oracle
