#pragma once

#include <cstdint>

#include "tact/fold_sequence.hpp"

namespace tact {

inline GraphMorphism identity_morphism(const MarkedGraph& g) {
  GraphMorphism f;
  f.source = g;
  f.target = g;
  f.vertex_map.resize(std::size_t(g.num_vertices));
  for (int v = 0; v < g.num_vertices; ++v) f.vertex_map[std::size_t(v)] = v;
  f.edge_map.resize(std::size_t(g.num_oriented()));
  for (int e = 0; e < g.num_oriented(); ++e) f.edge_map[std::size_t(e)] = {e};
  return f;
}

namespace detail {

/// Tracks the evolving morphism S -> W while W is edited by fold moves.
struct MorphismBuilder {
  MarkedGraph work;
  std::vector<std::vector<int>> edge_paths;  // per oriented S-edge, path in work
  std::vector<int> vertex_refs;              // per S-vertex, vertex of work

  explicit MorphismBuilder(const MarkedGraph& s) : work(s) {
    edge_paths.resize(std::size_t(s.num_oriented()));
    for (int e = 0; e < s.num_oriented(); ++e) edge_paths[std::size_t(e)] = {e};
    vertex_refs.resize(std::size_t(s.num_vertices));
    for (int v = 0; v < s.num_vertices; ++v) vertex_refs[std::size_t(v)] = v;
  }

  void apply(const FoldMove& mv) {
    apply_fold_move(work, mv, &edge_paths, nullptr, &vertex_refs);
  }

  GraphMorphism finish(const MarkedGraph& source) const {
    GraphMorphism f;
    f.source = source;
    f.target = work;
    f.vertex_map = vertex_refs;
    f.edge_map = edge_paths;
    return f;
  }
};

}  // namespace detail

/// Morphism collapsing one non-loop geometric edge to a point.
inline GraphMorphism collapse_edge_morphism(const GroupPresentation& pres, const MarkedGraph& g,
                                            int geometric_edge) {
  if (g.from(2 * geometric_edge) == g.to(2 * geometric_edge))
    throw std::invalid_argument("collapse_edge_morphism: edge is a loop");
  detail::MorphismBuilder b(g);
  b.apply(FoldMove{FoldMove::Kind::Collapse, 2 * geometric_edge, Rational(0), 0});
  GraphMorphism f = b.finish(g);
  validate_morphism(f, pres);
  return f;
}

/// Random marked graph: a base shape (rose; for rank two also theta or
/// dumbbell) with randomised rational lengths and random subdivisions, capped
/// at `max_edges` geometric edges.
inline MarkedGraph random_marked_graph(const GroupPresentation& pres, std::mt19937_64& rng,
                                       int max_edges) {
  MarkedGraph g;
  int shape = pres.free_rank == 2 ? int(uniform_int(rng, 0, 2)) : 0;
  if (shape == 1) g = theta_graph();
  else if (shape == 2) g = dumbbell_graph();
  else {
    std::vector<Rational> lens;
    for (int i = 0; i < pres.free_rank; ++i)
      lens.push_back(Rational(uniform_int(rng, 1, 4), uniform_int(rng, 1, 3)));
    g = rose_graph(pres, lens);
  }
  for (Rational& l : g.elen) l = Rational(uniform_int(rng, 1, 4), uniform_int(rng, 1, 3));
  while (g.num_edges() < max_edges && uniform_int(rng, 0, 2) != 0) {
    int e = 2 * int(uniform_int(rng, 0, g.num_edges() - 1));
    std::int64_t q = uniform_int(rng, 2, 4);
    std::int64_t p = uniform_int(rng, 1, q - 1);
    Rational pos = g.length(e) * Rational(p, q);
    apply_fold_move(g, FoldMove{FoldMove::Kind::Subdivide, e, pos, 0});
  }
  validate_marked_graph(g, pres);
  return g;
}

/// Random marking-consistent morphism, built by composing random elementary
/// moves on a copy of the source; validity is guaranteed by construction
/// rather than by rejection.
inline GraphMorphism random_morphism(const GroupPresentation& pres, std::uint64_t seed,
                                     int max_edges = 6) {
  auto rng = make_rng(seed);
  MarkedGraph source = random_marked_graph(pres, rng, max_edges);
  detail::MorphismBuilder b(source);
  int steps = int(uniform_int(rng, 1, 5));
  for (int s = 0; s < steps; ++s) {
    MarkedGraph& w = b.work;
    int kind = int(uniform_int(rng, 0, 2));
    if (kind == 0) {
      // shrink a random edge
      int e = 2 * int(uniform_int(rng, 0, w.num_edges() - 1));
      std::int64_t q = uniform_int(rng, 2, 4);
      std::int64_t p = uniform_int(rng, 1, q - 1);
      b.apply(FoldMove{FoldMove::Kind::Collapse, e, w.length(e) * Rational(p, q), 0});
      continue;
    }
    if (kind == 1) {
      // collapse a random non-loop edge to a point
      std::vector<int> candidates;
      for (int k = 0; k < w.num_edges(); ++k)
        if (w.from(2 * k) != w.to(2 * k)) candidates.push_back(k);
      if (candidates.empty()) continue;
      int k = candidates[std::size_t(uniform_int(rng, 0, std::int64_t(candidates.size()) - 1))];
      b.apply(FoldMove{FoldMove::Kind::Collapse, 2 * k, Rational(0), 0});
      continue;
    }
    // fold a random admissible pair (far endpoints distinct so the rank is
    // preserved), subdividing the longer edge first when lengths differ
    struct Pair {
      int e1, e2;
    };
    std::vector<Pair> candidates;
    for (int e1 = 0; e1 < w.num_oriented(); ++e1)
      for (int e2 = 0; e2 < w.num_oriented(); ++e2) {
        if (e1 == e2 || e2 == MarkedGraph::inv(e1)) continue;
        if (e1 / 2 == e2 / 2) continue;
        if (w.from(e1) != w.from(e2)) continue;
        if (w.to(e1) == w.to(e2)) continue;
        candidates.push_back({e1, e2});
      }
    if (candidates.empty()) continue;
    Pair pr = candidates[std::size_t(uniform_int(rng, 0, std::int64_t(candidates.size()) - 1))];
    Rational l1 = w.length(pr.e1), l2 = w.length(pr.e2);
    if (l1 != l2) {
      int longer = l1 < l2 ? pr.e2 : pr.e1;
      Rational cut = rational_min(l1, l2);
      int even = longer - longer % 2;
      // the cut is measured from the shared vertex; orientations must agree
      Rational pos = longer % 2 == 0 ? cut : w.length(longer) - cut;
      int before = w.num_edges();
      b.apply(FoldMove{FoldMove::Kind::Subdivide, even, pos, 0});
      // after splitting, the half at the shared vertex keeps the index for the
      // positive orientation and moves to the appended edge otherwise
      if (longer % 2 != 0) {
        int appended = 2 * before;  // positive orientation of the new far half
        longer = MarkedGraph::inv(appended);
      }
      if (l1 < l2) pr.e2 = longer;
      else pr.e1 = longer;
    }
    if (b.work.to(pr.e1) == b.work.to(pr.e2)) continue;  // subdivision made them parallel
    b.apply(FoldMove{FoldMove::Kind::Fold, pr.e1, Rational(0), pr.e2});
  }
  GraphMorphism f = b.finish(source);
  validate_morphism(f, pres);
  return f;
}

}  // namespace tact
