#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tact/free_group.hpp"
#include "tact/marked_graph.hpp"
#include "tact/rng.hpp"

namespace tact {

/// Equivariant PL map between the universal covers, presented on the marked
/// graphs: vertices to vertices, each oriented edge to a tightened edge path
/// (empty path = the image vertex), constant speed on edges.
struct GraphMorphism {
  MarkedGraph source;
  MarkedGraph target;
  std::vector<int> vertex_map;             // size V(source)
  std::vector<std::vector<int>> edge_map;  // size 2m(source), inverse-consistent
};

inline void validate_morphism(const GraphMorphism& f, const GroupPresentation& pres) {
  validate_marked_graph(f.source, pres);
  validate_marked_graph(f.target, pres);
  if (int(f.vertex_map.size()) != f.source.num_vertices)
    throw std::invalid_argument("morphism: vertex map size mismatch");
  if (int(f.edge_map.size()) != f.source.num_oriented())
    throw std::invalid_argument("morphism: edge map size mismatch");
  if (f.vertex_map[std::size_t(f.source.basepoint)] != f.target.basepoint)
    throw std::invalid_argument("morphism: basepoint not preserved");
  for (int e = 0; e < f.source.num_oriented(); ++e) {
    const auto& p = f.edge_map[std::size_t(e)];
    if (tightened(p) != p) throw std::invalid_argument("morphism: edge image not tightened");
    int a = f.vertex_map[std::size_t(f.source.from(e))];
    if (!path_connected_at(f.target, p, a))
      throw std::invalid_argument("morphism: edge image broken");
    if (path_endpoint(f.target, p, a) != f.vertex_map[std::size_t(f.source.to(e))])
      throw std::invalid_argument("morphism: edge image endpoint mismatch");
    if (f.edge_map[std::size_t(MarkedGraph::inv(e))] != inverse_path(p))
      throw std::invalid_argument("morphism: edge map not inverse-consistent");
  }
  for (std::size_t i = 0; i < f.source.marking.size(); ++i) {
    std::vector<int> image;
    for (int e : f.source.marking[i]) {
      const auto& p = f.edge_map[std::size_t(e)];
      image.insert(image.end(), p.begin(), p.end());
    }
    tighten_path(image);
    if (image != f.target.marking[i])
      throw std::invalid_argument("morphism: marking not respected");
  }
}

inline std::vector<int> map_path(const GraphMorphism& f, const std::vector<int>& path) {
  std::vector<int> out;
  for (int e : path) {
    const auto& p = f.edge_map[std::size_t(e)];
    out.insert(out.end(), p.begin(), p.end());
  }
  tighten_path(out);
  return out;
}

/// max over edges of image length / edge length; point images contribute 0.
inline Rational lipschitz_constant(const GraphMorphism& f) {
  Rational best(0);
  for (int k = 0; k < f.source.num_edges(); ++k) {
    Rational il = path_length(f.target, f.edge_map[std::size_t(2 * k)]);
    Rational ratio = il / f.source.elen[std::size_t(k)];
    best = rational_max(best, ratio);
  }
  return best;
}

/// 2 K Lip(f) vol(source) with K = 1 (trivial stabilisers throughout).
inline Rational bbt_bound(const GraphMorphism& f) {
  return Rational(2) * lipschitz_constant(f) * volume(f.source);
}

// --- universal cover ---------------------------------------------------------
// A cover point is the tightened edge path from the basepoint lift; the point
// is the path's endpoint and two points agree iff the paths agree.

using CoverPath = std::vector<int>;

inline std::size_t cover_lcp(const CoverPath& a, const CoverPath& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

inline Rational cover_dist(const MarkedGraph& g, const CoverPath& a, const CoverPath& b) {
  std::size_t i = cover_lcp(a, b);
  Rational r;
  for (std::size_t k = i; k < a.size(); ++k) r += g.length(a[k]);
  for (std::size_t k = i; k < b.size(); ++k) r += g.length(b[k]);
  return r;
}

inline CoverPath cover_concat(const CoverPath& a, const CoverPath& b) {
  CoverPath out = a;
  out.insert(out.end(), b.begin(), b.end());
  tighten_path(out);
  return out;
}

/// Deck transformation by the group element with marking loop `loop`.
inline CoverPath cover_act(const std::vector<int>& loop, const CoverPath& p) {
  return cover_concat(loop, p);
}

/// d(z, [x, y]) via the Gromov product; exact in a tree.
inline Rational cover_dist_to_geodesic(const MarkedGraph& g, const CoverPath& z, const CoverPath& x,
                                       const CoverPath& y) {
  Rational dzx = cover_dist(g, z, x), dzy = cover_dist(g, z, y), dxy = cover_dist(g, x, y);
  return (dzx + dzy - dxy) / Rational(2);
}

/// Axis data of a loxodromic group element acting on the cover.
struct CoverAxis {
  CoverPath base;            // path to a point on the axis
  std::vector<int> period;   // cyclically immersed loop at the base endpoint
  std::vector<int> loop;     // tightened based loop of the element itself
  Rational length;           // translation length
};

inline std::optional<CoverAxis> cover_axis(const MarkedGraph& g, const ReducedWord& w) {
  CoverAxis ax;
  ax.loop = marking_loop(g, w);
  std::vector<int> core = ax.loop;
  CoverPath prefix;
  while (core.size() >= 2 && core.front() == MarkedGraph::inv(core.back())) {
    prefix.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  if (core.empty()) return std::nullopt;  // trivial element
  ax.base = prefix;
  ax.period = core;
  ax.length = path_length(g, core);
  return ax;
}

/// Point of the axis at signed edge-offset k periods + prefix steps is not
/// needed; feet are computed from ray matches instead.
struct CoverFoot {
  Rational position;  // along the axis, 0 at the base endpoint
  Rational distance;
};

namespace detail {

/// Longest match of `p` beyond `base` against the periodic ray of `period`,
/// returning (edges matched beyond base, metric length matched beyond base).
inline std::pair<std::size_t, Rational> cover_ray_match(const MarkedGraph& g, const CoverPath& p,
                                                        const CoverPath& base,
                                                        const std::vector<int>& period) {
  std::size_t i = cover_lcp(p, base);
  if (i < base.size()) return {0, Rational(0)};
  std::size_t matched = 0;
  Rational len;
  std::size_t k = base.size();
  while (k < p.size() && p[k] == period[matched % period.size()]) {
    len += g.length(p[k]);
    ++matched;
    ++k;
  }
  return {matched, len};
}

}  // namespace detail

inline CoverFoot cover_foot(const MarkedGraph& g, const CoverAxis& axis, const CoverPath& p) {
  auto plus = detail::cover_ray_match(g, p, axis.base, axis.period);
  std::vector<int> inv_period = inverse_path(axis.period);
  auto minus = detail::cover_ray_match(g, p, axis.base, inv_period);
  Rational pos = plus.first >= minus.first ? plus.second : -minus.second;
  std::size_t matched = std::max(plus.first, minus.first);
  // distance from p to its foot: remaining length of p beyond the match,
  // plus the part of `base` that p misses
  std::size_t i = cover_lcp(p, axis.base);
  Rational d;
  if (i < axis.base.size()) {
    for (std::size_t k = i; k < p.size(); ++k) d += g.length(p[k]);
    for (std::size_t k = i; k < axis.base.size(); ++k) d += g.length(axis.base[k]);
    return CoverFoot{Rational(0), d};
  }
  for (std::size_t k = axis.base.size() + matched; k < p.size(); ++k) d += g.length(p[k]);
  return CoverFoot{pos, d};
}

/// Same axis in the cover iff the group elements share a maximal root up to
/// inversion (the action is free, so this is exact).
inline bool same_axis_in_group(const GroupPresentation& pres, const ReducedWord& a,
                               const ReducedWord& b) {
  ReducedWord ra = root(pres, a).root;
  ReducedWord rb = root(pres, b).root;
  return ra == rb || ra == inv(pres, rb);
}

/// Overlap of the axes of g and h in the cover of `graph`, as an interval of
/// positions on g's axis; nullopt when the axes coincide.
struct CoverOverlap {
  Rational lo, hi;       // projection interval of Axis(h) on Axis(g)
  Rational distance;     // d(Axis(g), Axis(h)); 0 iff they meet
};

inline std::optional<CoverOverlap> cover_axis_overlap(const MarkedGraph& g,
                                                      const GroupPresentation& pres,
                                                      const ReducedWord& gw,
                                                      const ReducedWord& hw) {
  if (same_axis_in_group(pres, gw, hw)) return std::nullopt;
  auto ag = cover_axis(g, gw);
  auto ah = cover_axis(g, hw);
  if (!ag || !ah) throw std::invalid_argument("cover_axis_overlap: trivial element");
  Rational far_metric = cover_dist(g, ag->base, ah->base) + (ag->length + ah->length) * Rational(4) +
                        ah->length * Rational(2) + Rational(2);
  std::int64_t reps = (far_metric / ah->length).floor() + 2;
  CoverPath ray_plus = ah->base, ray_minus = ah->base;
  std::vector<int> inv_period = inverse_path(ah->period);
  for (std::int64_t r = 0; r < reps; ++r) {
    ray_plus.insert(ray_plus.end(), ah->period.begin(), ah->period.end());
    ray_minus.insert(ray_minus.end(), inv_period.begin(), inv_period.end());
  }
  tighten_path(ray_plus);
  tighten_path(ray_minus);
  CoverFoot fp = cover_foot(g, *ag, ray_plus);
  CoverFoot fm = cover_foot(g, *ag, ray_minus);
  CoverOverlap out;
  out.lo = rational_min(fp.position, fm.position);
  out.hi = rational_max(fp.position, fm.position);
  if (out.lo == out.hi) {
    // single projection point: its distance to Axis(h) via the displacement
    // criterion d(p, Axis(h)) = (d(p, h p) - ||h||) / 2
    CoverPath gp = ag->base;
    Rational want = out.lo;
    if (want >= Rational(0)) {
      Rational acc;
      std::size_t k = 0;
      while (acc < want) {
        gp.push_back(ag->period[k % ag->period.size()]);
        acc += g.length(ag->period[k % ag->period.size()]);
        ++k;
      }
    } else {
      std::vector<int> ip = inverse_path(ag->period);
      Rational acc;
      std::size_t k = 0;
      while (acc < -want) {
        gp.push_back(ip[k % ip.size()]);
        acc += g.length(ip[k % ip.size()]);
        ++k;
      }
    }
    tighten_path(gp);
    Rational disp = cover_dist(g, gp, cover_act(ah->loop, gp));
    out.distance = (disp - ah->length) / Rational(2);
  } else {
    out.distance = Rational(0);
  }
  return out;
}

/// floor(overlap length / ||g||) in the cover of `graph`; nullopt = same axis.
inline std::optional<std::int64_t> cover_fundamental_domains(const MarkedGraph& graph,
                                                             const GroupPresentation& pres,
                                                             const ReducedWord& gw,
                                                             const ReducedWord& hw) {
  auto ov = cover_axis_overlap(graph, pres, gw, hw);
  if (!ov) return std::nullopt;
  if (ov->distance > Rational(0)) return 0;
  auto ag = cover_axis(graph, gw);
  return ((ov->hi - ov->lo) / ag->length).floor();
}

// --- random immersed paths and the empirical BBT constant --------------------

inline CoverPath random_cover_path(const MarkedGraph& g, std::mt19937_64& rng, int max_edges) {
  CoverPath p;
  int at = g.basepoint;
  int steps = int(uniform_int(rng, 0, max_edges));
  for (int i = 0; i < steps; ++i) {
    std::vector<int> options;
    for (int e = 0; e < g.num_oriented(); ++e)
      if (g.from(e) == at && (p.empty() || e != MarkedGraph::inv(p.back()))) options.push_back(e);
    if (options.empty()) break;
    int e = options[std::size_t(uniform_int(rng, 0, std::int64_t(options.size()) - 1))];
    p.push_back(e);
    at = g.to(e);
  }
  return p;
}

/// Shortest-edge-count paths from the basepoint to every vertex.
inline std::vector<CoverPath> spanning_paths(const MarkedGraph& g) {
  std::vector<CoverPath> paths(std::size_t(g.num_vertices));
  std::vector<char> seen(std::size_t(g.num_vertices), 0);
  std::vector<int> queue{g.basepoint};
  seen[std::size_t(g.basepoint)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int e = 0; e < g.num_oriented(); ++e) {
      if (g.from(e) != v || seen[std::size_t(g.to(e))]) continue;
      seen[std::size_t(g.to(e))] = 1;
      paths[std::size_t(g.to(e))] = paths[std::size_t(v)];
      paths[std::size_t(g.to(e))].push_back(e);
      queue.push_back(g.to(e));
    }
  }
  return paths;
}

/// Max over geodesics [x, y] and every vertex z on them of
/// d(f(z), [f(x), f(y)]). Besides random endpoint pairs, every pair of edges
/// sharing an initial vertex is probed: the supremum is attained at such turn
/// points, not at uniform samples. Bounded by bbt_bound whenever the fold
/// lemma holds.
inline Rational bbt_empirical(const GraphMorphism& f, int samples, int length_budget,
                              std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("bbt_empirical: needs at least one sample");
  Rational best(0);
  auto rng = make_rng(seed);
  auto probe_pair = [&](const CoverPath& x, const CoverPath& y) {
    CoverPath fx = map_path(f, x);
    CoverPath fy = map_path(f, y);
    std::size_t i = cover_lcp(x, y);
    CoverPath z = x;
    auto consider = [&](const CoverPath& zz) {
      CoverPath fz = map_path(f, zz);
      best = rational_max(best, cover_dist_to_geodesic(f.target, fz, fx, fy));
    };
    consider(z);
    while (z.size() > i) {
      z.pop_back();
      consider(z);
    }
    for (std::size_t k = i; k < y.size(); ++k) {
      z.push_back(y[k]);
      consider(z);
    }
  };
  // fold-turn witnesses at every vertex
  auto tree = spanning_paths(f.source);
  for (int e1 = 0; e1 < f.source.num_oriented(); ++e1)
    for (int e2 = e1 + 1; e2 < f.source.num_oriented(); ++e2) {
      if (f.source.from(e1) != f.source.from(e2) || e2 == MarkedGraph::inv(e1)) continue;
      CoverPath x = tree[std::size_t(f.source.from(e1))];
      CoverPath y = x;
      x.push_back(e1);
      y.push_back(e2);
      tighten_path(x);
      tighten_path(y);
      probe_pair(x, y);
    }
  for (int s = 0; s < samples; ++s) {
    CoverPath x = random_cover_path(f.source, rng, length_budget);
    CoverPath y = random_cover_path(f.source, rng, length_budget);
    probe_pair(x, y);
  }
  return best;
}

}  // namespace tact
