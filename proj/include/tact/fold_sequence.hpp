#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tact/graph_morphism.hpp"

namespace tact {

/// One elementary move of a Stallings decomposition.
///  - Subdivide: split edge (positive oriented index) at a point, measured
///    from its source endpoint; appends the far half as a new geometric edge.
///  - Collapse: shrink the edge to the given shorter length; length zero
///    contracts it to a point (the paper's collapse map in both flavours).
///  - Fold: identify edge2 with edge (oriented, same initial vertex, equal
///    lengths), merging terminal vertices.
struct FoldMove {
  enum class Kind { Subdivide, Collapse, Fold };
  Kind kind;
  int edge = 0;
  Rational arg;
  int edge2 = 0;
};

/// A decomposition record: the moves apply to the source with its metric
/// scaled by `rescale` (the Lipschitz normalisation), and the final graph
/// matches the target under the recorded relabelings.
struct FoldSequence {
  Rational rescale{1};
  std::vector<FoldMove> moves;
  std::vector<int> final_edge_map;    // final work oriented edge -> target oriented edge
  std::vector<int> final_vertex_map;  // final work vertex -> target vertex
};

namespace detail {

/// Decomposition-time bookkeeping: images of the evolving work graph in a
/// fixed target.
struct DecompAux {
  const MarkedGraph* target = nullptr;
  std::vector<std::vector<int>> edge_map;  // per oriented work edge, path in target
  std::vector<int> vertex_map;             // per work vertex
};

inline void relabel_edge_in_paths(std::vector<std::vector<int>>& paths, int removed_geometric) {
  for (auto& p : paths) {
    for (int& e : p) {
      if (e / 2 > removed_geometric) e -= 2;
    }
  }
}

inline void drop_edge_in_paths(std::vector<std::vector<int>>& paths, int geometric) {
  for (auto& p : paths) {
    std::vector<int> out;
    for (int e : p)
      if (e / 2 != geometric) out.push_back(e);
    tighten_path(out);
    p = std::move(out);
  }
}

inline void substitute_edge_in_paths(std::vector<std::vector<int>>& paths, int old_oriented,
                                     int new_oriented) {
  for (auto& p : paths) {
    for (int& e : p) {
      if (e == old_oriented) e = new_oriented;
      else if (e == MarkedGraph::inv(old_oriented)) e = MarkedGraph::inv(new_oriented);
    }
    tighten_path(p);
  }
}

inline void split_edge_in_paths(std::vector<std::vector<int>>& paths, int e, int e_new) {
  for (auto& p : paths) {
    std::vector<int> out;
    out.reserve(p.size() * 2);
    for (int x : p) {
      if (x == e) {
        out.push_back(e);
        out.push_back(e_new);
      } else if (x == MarkedGraph::inv(e)) {
        out.push_back(MarkedGraph::inv(e_new));
        out.push_back(MarkedGraph::inv(e));
      } else {
        out.push_back(x);
      }
    }
    p = std::move(out);
  }
}

inline void merge_vertex(MarkedGraph& g, int hi, int lo,
                         std::vector<std::vector<int>>* extra_paths, DecompAux* decomp,
                         std::vector<int>* external_vertex_refs) {
  (void)extra_paths;
  auto fix = [&](int v) { return v == hi ? lo : (v > hi ? v - 1 : v); };
  for (int& v : g.efrom) v = fix(v);
  for (int& v : g.eto) v = fix(v);
  g.basepoint = fix(g.basepoint);
  g.num_vertices -= 1;
  if (external_vertex_refs)
    for (int& v : *external_vertex_refs) v = fix(v);
  if (decomp) {
    if (decomp->vertex_map[std::size_t(hi)] != decomp->vertex_map[std::size_t(lo)])
      throw std::logic_error("fold move: merged vertices with different images");
    decomp->vertex_map.erase(decomp->vertex_map.begin() + hi);
  }
}

inline void remove_geometric_edge(MarkedGraph& g, int k,
                                  std::vector<std::vector<int>>* extra_paths, DecompAux* decomp) {
  g.efrom.erase(g.efrom.begin() + 2 * k, g.efrom.begin() + 2 * k + 2);
  g.eto.erase(g.eto.begin() + 2 * k, g.eto.begin() + 2 * k + 2);
  g.elen.erase(g.elen.begin() + k);
  for (auto& loop : g.marking) {
    for (int& e : loop)
      if (e / 2 > k) e -= 2;
  }
  if (extra_paths) relabel_edge_in_paths(*extra_paths, k);
  if (decomp) decomp->edge_map.erase(decomp->edge_map.begin() + 2 * k,
                                     decomp->edge_map.begin() + 2 * k + 2);
}

}  // namespace detail

/// Applies one move, updating the graph, its markings, optional extra path
/// collections living in the graph, and optional decomposition bookkeeping.
inline void apply_fold_move(MarkedGraph& g, const FoldMove& mv,
                            std::vector<std::vector<int>>* extra_paths = nullptr,
                            detail::DecompAux* decomp = nullptr,
                            std::vector<int>* external_vertex_refs = nullptr) {
  using Kind = FoldMove::Kind;
  if (mv.kind == Kind::Subdivide) {
    int e = mv.edge;
    if (e % 2 != 0) throw std::invalid_argument("subdivide: use the positive orientation");
    int k = e / 2;
    if (!(Rational(0) < mv.arg && mv.arg < g.elen[std::size_t(k)]))
      throw std::invalid_argument("subdivide: position outside the edge");
    int w = g.num_vertices++;
    int b = g.to(e);
    Rational rest = g.elen[std::size_t(k)] - mv.arg;
    g.elen[std::size_t(k)] = mv.arg;
    g.eto[std::size_t(e)] = w;
    g.efrom[std::size_t(MarkedGraph::inv(e))] = w;
    int e_new = g.add_edge(w, b, rest);
    for (auto& loop : g.marking) {
      std::vector<std::vector<int>> tmp{loop};
      detail::split_edge_in_paths(tmp, e, e_new);
      loop = tmp[0];
    }
    if (extra_paths) detail::split_edge_in_paths(*extra_paths, e, e_new);
    if (decomp) {
      auto p = decomp->edge_map[std::size_t(e)];
      if (p.size() < 2) throw std::logic_error("subdivide: image has fewer than two edges");
      std::vector<int> head{p.front()};
      std::vector<int> tail(p.begin() + 1, p.end());
      decomp->edge_map[std::size_t(e)] = head;
      decomp->edge_map[std::size_t(MarkedGraph::inv(e))] = inverse_path(head);
      decomp->edge_map.push_back(tail);
      decomp->edge_map.push_back(inverse_path(tail));
      int img_from = decomp->vertex_map[std::size_t(g.from(e))];
      decomp->vertex_map.push_back(path_endpoint(*decomp->target, head, img_from));
    }
    return;
  }
  if (mv.kind == Kind::Collapse) {
    int e = mv.edge;
    if (e % 2 != 0) throw std::invalid_argument("collapse: use the positive orientation");
    int k = e / 2;
    if (mv.arg.is_negative() || !(mv.arg < g.elen[std::size_t(k)]))
      throw std::invalid_argument("collapse: new length must shrink the edge");
    if (!mv.arg.is_zero()) {
      g.elen[std::size_t(k)] = mv.arg;
      return;
    }
    int a = g.from(e), b = g.to(e);
    if (a == b) throw std::invalid_argument("collapse: contracting a loop changes the group");
    for (auto& loop : g.marking) {
      std::vector<std::vector<int>> tmp{loop};
      detail::drop_edge_in_paths(tmp, k);
      loop = tmp[0];
    }
    if (extra_paths) detail::drop_edge_in_paths(*extra_paths, k);
    detail::remove_geometric_edge(g, k, extra_paths, decomp);
    int lo = std::min(a, b), hi = std::max(a, b);
    detail::merge_vertex(g, hi, lo, extra_paths, decomp, external_vertex_refs);
    return;
  }
  // Fold
  int e1 = mv.edge, e2 = mv.edge2;
  if (e1 == e2 || e1 == MarkedGraph::inv(e2))
    throw std::invalid_argument("fold: edges must be distinct and non-inverse");
  if (g.from(e1) != g.from(e2))
    throw std::invalid_argument("fold: edges must share their initial vertex");
  if (g.length(e1) != g.length(e2)) throw std::invalid_argument("fold: edges must have equal length");
  int t1 = g.to(e1), t2 = g.to(e2);
  for (auto& loop : g.marking) {
    std::vector<std::vector<int>> tmp{loop};
    detail::substitute_edge_in_paths(tmp, e2, e1);
    loop = tmp[0];
  }
  if (extra_paths) detail::substitute_edge_in_paths(*extra_paths, e2, e1);
  if (decomp) {
    if (decomp->edge_map[std::size_t(e1)] != decomp->edge_map[std::size_t(e2)])
      throw std::logic_error("fold: folding edges with different images");
  }
  detail::remove_geometric_edge(g, e2 / 2, extra_paths, decomp);
  if (t1 != t2) {
    int lo = std::min(t1, t2), hi = std::max(t1, t2);
    detail::merge_vertex(g, hi, lo, extra_paths, decomp, external_vertex_refs);
  }
}

/// Stallings decomposition of a marking-consistent morphism into subdivisions,
/// collapses and folds, valid on the source rescaled by max(Lip(f), 1).
inline FoldSequence fold_decompose(const GraphMorphism& f, const GroupPresentation& pres) {
  validate_morphism(f, pres);
  FoldSequence seq;
  Rational lip = lipschitz_constant(f);
  seq.rescale = rational_max(lip, Rational(1));

  MarkedGraph g = f.source;
  for (Rational& l : g.elen) l *= seq.rescale;
  detail::DecompAux aux;
  aux.target = &f.target;
  aux.edge_map = f.edge_map;
  aux.vertex_map = f.vertex_map;

  auto record = [&](FoldMove mv) {
    apply_fold_move(g, mv, nullptr, &aux);
    seq.moves.push_back(std::move(mv));
  };

  // subdivide until every edge maps to at most one edge
  for (;;) {
    int found = -1;
    for (int e = 0; e < g.num_oriented(); e += 2)
      if (aux.edge_map[std::size_t(e)].size() >= 2) {
        found = e;
        break;
      }
    if (found < 0) break;
    const auto& p = aux.edge_map[std::size_t(found)];
    Rational image_total = path_length(f.target, p);
    Rational first = f.target.length(p.front());
    Rational pos = g.length(found) * first / image_total;
    record(FoldMove{FoldMove::Kind::Subdivide, found, pos, 0});
  }
  // collapse point-images
  for (;;) {
    int found = -1;
    for (int e = 0; e < g.num_oriented(); e += 2)
      if (aux.edge_map[std::size_t(e)].empty()) {
        found = e;
        break;
      }
    if (found < 0) break;
    record(FoldMove{FoldMove::Kind::Collapse, found, Rational(0), 0});
  }
  // shrink to make the map edgewise isometric
  for (int e = 0; e < g.num_oriented(); e += 2) {
    Rational want = f.target.length(aux.edge_map[std::size_t(e)].front());
    if (g.length(e) != want) {
      if (g.length(e) < want)
        throw std::logic_error("fold_decompose: rescale failed to dominate an edge");
      record(FoldMove{FoldMove::Kind::Collapse, e, want, 0});
    }
  }
  // fold until locally injective
  for (;;) {
    int f1 = -1, f2 = -1;
    for (int e1 = 0; e1 < g.num_oriented() && f1 < 0; ++e1)
      for (int e2 = e1 + 1; e2 < g.num_oriented(); ++e2) {
        if (e2 == MarkedGraph::inv(e1)) continue;
        if (g.from(e1) != g.from(e2)) continue;
        if (aux.edge_map[std::size_t(e1)] != aux.edge_map[std::size_t(e2)]) continue;
        f1 = e1;
        f2 = e2;
        break;
      }
    if (f1 < 0) break;
    record(FoldMove{FoldMove::Kind::Fold, f1, Rational(0), f2});
  }

  // the terminal map must be an isomorphism onto the target
  if (g.num_edges() != f.target.num_edges() || g.num_vertices != f.target.num_vertices)
    throw std::logic_error("fold_decompose: terminal graph is not the target");
  seq.final_edge_map.assign(std::size_t(g.num_oriented()), -1);
  std::vector<char> hit(std::size_t(f.target.num_edges()), 0);
  for (int e = 0; e < g.num_oriented(); e += 2) {
    int img = aux.edge_map[std::size_t(e)].front();
    if (hit[std::size_t(img / 2)]) throw std::logic_error("fold_decompose: terminal map not injective");
    hit[std::size_t(img / 2)] = 1;
    if (g.length(e) != f.target.length(img))
      throw std::logic_error("fold_decompose: terminal lengths differ");
    seq.final_edge_map[std::size_t(e)] = img;
    seq.final_edge_map[std::size_t(MarkedGraph::inv(e))] = MarkedGraph::inv(img);
  }
  seq.final_vertex_map = aux.vertex_map;
  for (std::size_t i = 0; i < g.marking.size(); ++i) {
    std::vector<int> mapped;
    for (int e : g.marking[i]) mapped.push_back(seq.final_edge_map[std::size_t(e)]);
    tighten_path(mapped);
    if (mapped != f.target.marking[i])
      throw std::logic_error("fold_decompose: terminal markings differ");
  }
  return seq;
}

/// Replays the sequence on a copy of the source; `observer` (if given) sees
/// the graph after the rescale and after every move.
inline MarkedGraph replay(const FoldSequence& seq, const MarkedGraph& source,
                          const std::function<void(const MarkedGraph&)>& observer = {}) {
  MarkedGraph g = source;
  for (Rational& l : g.elen) l *= seq.rescale;
  if (observer) observer(g);
  for (const FoldMove& mv : seq.moves) {
    apply_fold_move(g, mv);
    if (observer) observer(g);
  }
  return g;
}

/// Replay and compare with the morphism's target through the recorded
/// relabelings: graph shape, lengths and markings must agree exactly.
inline bool replay_reproduces_target(const FoldSequence& seq, const GraphMorphism& f) {
  MarkedGraph g = replay(seq, f.source);
  if (g.num_vertices != f.target.num_vertices || g.num_edges() != f.target.num_edges())
    return false;
  for (int e = 0; e < g.num_oriented(); ++e) {
    int img = seq.final_edge_map[std::size_t(e)];
    if (img < 0) return false;
    if (seq.final_vertex_map[std::size_t(g.from(e))] != f.target.from(img)) return false;
    if (seq.final_vertex_map[std::size_t(g.to(e))] != f.target.to(img)) return false;
    if (g.length(e) != f.target.length(img)) return false;
  }
  for (std::size_t i = 0; i < g.marking.size(); ++i) {
    std::vector<int> mapped;
    for (int e : g.marking[i]) mapped.push_back(seq.final_edge_map[std::size_t(e)]);
    tighten_path(mapped);
    if (mapped != f.target.marking[i]) return false;
  }
  return true;
}

// --- move log serialisation --------------------------------------------------

inline std::string fold_sequence_str(const FoldSequence& seq) {
  std::ostringstream os;
  os << "rescale " << seq.rescale.str() << "\n";
  for (const FoldMove& mv : seq.moves) {
    switch (mv.kind) {
      case FoldMove::Kind::Subdivide:
        os << "subdivide " << mv.edge << " " << mv.arg.str() << "\n";
        break;
      case FoldMove::Kind::Collapse:
        os << "collapse " << mv.edge << " " << mv.arg.str() << "\n";
        break;
      case FoldMove::Kind::Fold:
        os << "fold " << mv.edge << " " << mv.edge2 << "\n";
        break;
    }
  }
  for (std::size_t e = 0; e < seq.final_edge_map.size(); e += 2)
    os << "relabel-edge " << e << " " << seq.final_edge_map[e] << "\n";
  for (std::size_t v = 0; v < seq.final_vertex_map.size(); ++v)
    os << "relabel-vertex " << v << " " << seq.final_vertex_map[v] << "\n";
  return os.str();
}

}  // namespace tact
