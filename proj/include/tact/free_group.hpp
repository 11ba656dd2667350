#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tact/automorphism.hpp"
#include "tact/rng.hpp"
#include "tact/word.hpp"

namespace tact {

struct RootDecomposition {
  ReducedWord root;      // not a proper power
  std::int64_t exponent; // w = root^exponent, exponent maximal
};

/// Maximal root of an infinite-order element. Throws on the identity and on
/// torsion input.
inline RootDecomposition root(const GroupPresentation& pres, const ReducedWord& w) {
  CyclicDecomposition cd = cyclic_reduce(pres, w);
  if (cd.core.empty()) throw std::invalid_argument("root: identity input");
  if (cd.core.size() == 1 && pres.is_finite_factor(cd.core[0].factor))
    throw std::invalid_argument("root: finite-order input");
  std::size_t n = cd.core.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + d < n && periodic; ++i)
      periodic = cd.core[i] == cd.core[i + d];
    if (!periodic) continue;
    ReducedWord r;
    r.letters.assign(cd.core.letters.begin(), cd.core.letters.begin() + d);
    return RootDecomposition{conj(pres, cd.conjugator, r), std::int64_t(n / d)};
  }
  throw std::logic_error("root: unreachable");
}

struct ElementaryClosure {
  ReducedWord root;
  /// In a free product with torsion E(g) may be a finite extension of
  /// <root>; the extension is detected by membership queries, not enumerated.
  bool may_have_finite_extension;
};

inline ElementaryClosure elementary_closure(const GroupPresentation& pres, const ReducedWord& g) {
  return ElementaryClosure{root(pres, g).root, pres.num_finite() > 0};
}

/// h in E(g) = { h | h g^n h^{-1} = g^m for some n, m != 0 }.
///
/// With trivial edge stabilisers (all tree models here), h qualifies exactly
/// when conjugation by h sends root(g) to root(g)^{+1} or root(g)^{-1}: any
/// such h preserves the axis of g, translating or reflecting it, and the
/// reflection/translation dichotomy pins the conjugate of the root.
inline bool in_elementary_closure(const GroupPresentation& pres, const ReducedWord& h,
                                  const ReducedWord& g) {
  ReducedWord r = root(pres, g).root;  // throws on identity / torsion g
  ReducedWord c = conj(pres, h, r);
  return c == r || c == inv(pres, r);
}

/// Bounded brute-force semi-decision: exists n, m with 0 < |n|, |m| <= bound
/// and h g^n h^{-1} = g^m. Used as an independent oracle for the exact test.
inline bool in_elementary_closure_bounded(const GroupPresentation& pres, const ReducedWord& h,
                                          const ReducedWord& g, int bound) {
  if (g.empty()) throw std::invalid_argument("in_elementary_closure_bounded: identity g");
  std::vector<ReducedWord> pos(bound + 1), neg(bound + 1);
  pos[0] = neg[0] = identity_word();
  for (int k = 1; k <= bound; ++k) {
    pos[k] = mul(pres, pos[k - 1], g);
    neg[k] = mul(pres, neg[k - 1], inv(pres, g));
  }
  for (int n = 1; n <= bound; ++n) {
    for (const ReducedWord* gn : {&pos[n], &neg[n]}) {
      ReducedWord lhs = conj(pres, h, *gn);
      for (int m = 1; m <= bound; ++m)
        if (lhs == pos[m] || lhs == neg[m]) return true;
    }
  }
  return false;
}

struct WhiteheadResult {
  ReducedWord minimal;              // cyclically reduced, minimal cyclic length
  std::vector<Automorphism> moves;  // greedy witness, applied in order
};

/// Greedy steepest descent over Whitehead moves of the second kind on the
/// cyclic word; first-kind moves are length-preserving and omitted. By
/// Whitehead's peak reduction the terminal length is the minimum over the
/// whole Aut-orbit, so |minimal| == 1 certifies primitivity.
inline WhiteheadResult whitehead_minimize(const GroupPresentation& pres, const ReducedWord& w) {
  if (pres.num_finite() != 0)
    throw std::invalid_argument("whitehead_minimize: finite factors unsupported");
  static thread_local std::vector<Automorphism> cached;
  static thread_local int cached_rank = -1;
  if (cached_rank != pres.free_rank) {
    cached = all_whitehead_moves(pres);
    cached_rank = pres.free_rank;
  }
  WhiteheadResult res;
  res.minimal = cyclic_reduce(pres, w).core;
  for (;;) {
    ReducedWord best = res.minimal;
    const Automorphism* best_move = nullptr;
    for (const Automorphism& a : cached) {
      ReducedWord img = cyclic_reduce(pres, apply(pres, a, res.minimal)).core;
      if (img.size() < best.size() ||
          (best_move != nullptr && img.size() == best.size() && word_less(pres, img, best))) {
        best = img;
        best_move = &a;
      }
    }
    if (best_move == nullptr) break;
    res.moves.push_back(*best_move);
    res.minimal = best;
  }
  return res;
}

inline bool is_primitive(const GroupPresentation& pres, const ReducedWord& w) {
  if (w.empty()) return false;
  return whitehead_minimize(pres, w).minimal.size() == 1;
}

/// Random cyclically reduced word of exactly the given length (pure free
/// groups).
inline ReducedWord random_cyclic_word(const GroupPresentation& pres, std::mt19937_64& rng,
                                      int length) {
  if (pres.num_finite() != 0)
    throw std::invalid_argument("random_cyclic_word: finite factors unsupported");
  int n = pres.free_rank;
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) {
    for (int tries = 0; tries < 64; ++tries) {
      int pick = int(uniform_int(rng, 0, 2 * n - 1));
      Letter l{pick / 2, pick % 2 == 0 ? 1 : -1};
      if (!letters.empty() && letters.back().factor == l.factor &&
          letters.back().exp == -l.exp)
        continue;
      if (i == length - 1 && !letters.empty() && letters.front().factor == l.factor &&
          letters.front().exp == -l.exp)
        continue;
      letters.push_back(l);
      break;
    }
    if (int(letters.size()) != i + 1) return ReducedWord{};  // retry upstream
  }
  ReducedWord w{letters};
  return w;
}

/// Draws a cyclically reduced word of the given length that passes three
/// genericity filters: it is not a proper power, not primitive, and uses every
/// generator and every inverse. No certificate beyond the filters is implied.
inline ReducedWord sample_candidate_generic(const GroupPresentation& pres, std::uint64_t seed,
                                            int length_budget) {
  if (pres.num_finite() != 0)
    throw std::invalid_argument("sample_candidate_generic: finite factors unsupported");
  if (length_budget < 8)
    throw std::invalid_argument("sample_candidate_generic: length budget must be >= 8");
  if (length_budget < 2 * 2 * pres.free_rank)
    throw std::invalid_argument("sample_candidate_generic: budget too small to use all letters");
  auto rng = make_rng(seed);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    ReducedWord w = random_cyclic_word(pres, rng, length_budget);
    if (w.empty()) continue;
    std::set<std::pair<int, int>> used;
    for (const Letter& l : w.letters) used.insert({l.factor, l.exp});
    if (int(used.size()) != 2 * pres.free_rank) continue;
    if (root(pres, w).exponent != 1) continue;
    if (is_primitive(pres, w)) continue;
    return w;
  }
  throw std::runtime_error("sample_candidate_generic: no candidate within attempt budget");
}

}  // namespace tact
