#pragma once

// Test-only oracles: brute-force reference computations kept independent of
// the implementation paths they check.

#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "tact/free_group.hpp"
#include "tact/tree_model.hpp"

namespace tact::oracle {

/// All reduced words of length exactly n in a pure free group.
inline void enumerate_words(const GroupPresentation& pres, int n,
                            const std::function<void(const ReducedWord&)>& fn) {
  std::vector<Letter> letters;
  std::function<void()> rec = [&]() {
    if (int(letters.size()) == n) {
      ReducedWord w{letters};
      fn(w);
      return;
    }
    for (int f = 0; f < pres.free_rank; ++f)
      for (int s : {+1, -1}) {
        if (!letters.empty() && letters.back().factor == f && letters.back().exp == -s) continue;
        letters.push_back(Letter{f, s});
        rec();
        letters.pop_back();
      }
  };
  rec();
}

/// All reduced words of length 1..n.
inline std::vector<ReducedWord> all_words_up_to(const GroupPresentation& pres, int n) {
  std::vector<ReducedWord> out;
  for (int k = 1; k <= n; ++k)
    enumerate_words(pres, k, [&](const ReducedWord& w) { out.push_back(w); });
  return out;
}

/// Brute-force cyclic reduction: minimum of |u^{-1} w u| over all prefixes u.
inline std::size_t min_conjugate_length_over_prefixes(const GroupPresentation& pres,
                                                      const ReducedWord& w) {
  std::size_t best = w.size();
  for (std::size_t k = 0; k <= w.size(); ++k) {
    ReducedWord u;
    u.letters.assign(w.letters.begin(), w.letters.begin() + k);
    best = std::min(best, conj(pres, inv(pres, u), w).size());
  }
  return best;
}

/// Ball of the tree model around a vertex, by breadth-first search over
/// neighbors(); includes exact distances.
struct Ball {
  std::vector<Vertex> order;
  std::map<std::string, std::int64_t> distance;  // key = vertex_str
  std::map<std::string, std::string> parent;
};

inline std::string key_of(const TreeModel& m, const Vertex& v) { return vertex_str(m, v); }

inline Ball bfs_ball(const TreeModel& m, const Vertex& center, int radius) {
  Ball ball;
  std::queue<Vertex> q;
  q.push(center);
  ball.distance[key_of(m, center)] = 0;
  ball.order.push_back(center);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    std::int64_t d = ball.distance[key_of(m, v)];
    if (d == radius) continue;
    for (const Vertex& w : neighbors(m, v)) {
      auto k = key_of(m, w);
      if (ball.distance.count(k)) continue;
      ball.distance[k] = d + 1;
      ball.parent[k] = key_of(m, v);
      ball.order.push_back(w);
      q.push(w);
    }
  }
  return ball;
}

/// BFS distance between two vertices (must be within 2*radius of center).
inline std::int64_t bfs_distance(const TreeModel& m, const Vertex& a, const Vertex& b,
                                 int radius) {
  Ball ball = bfs_ball(m, a, radius);
  auto it = ball.distance.find(key_of(m, b));
  if (it == ball.distance.end()) return -1;
  return it->second;
}

/// Random reduced word (not necessarily cyclically reduced) in a pure free
/// group or a free product.
inline ReducedWord random_word(const GroupPresentation& pres, std::mt19937_64& rng, int length) {
  std::vector<Letter> raw;
  for (int i = 0; i < length; ++i) {
    int f = int(uniform_int(rng, 0, pres.num_factors() - 1));
    int e;
    if (pres.is_free_factor(f)) e = uniform_int(rng, 0, 1) ? 1 : -1;
    else e = int(uniform_int(rng, 1, pres.order_of(f) - 1));
    raw.push_back(Letter{f, e});
  }
  return reduce(pres, raw);
}

}  // namespace tact::oracle
