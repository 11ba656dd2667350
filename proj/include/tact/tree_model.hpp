#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tact/word.hpp"

namespace tact {

enum class TreeKind { CayleyTree, BassSerreTree };

/// Simplicial tree with unit edges and a left action of the presented group.
///
/// CayleyTree: vertices are group elements of a pure free group, edges join
/// w and w*x for generators x.
///
/// BassSerreTree: the tree of the free-product splitting. With exactly two
/// finite factors and no free part this is the classical amalgam tree whose
/// vertices are the cosets of the two factors (edges = group elements).
/// Otherwise vertices are group elements (the "base" orbit, trivial
/// stabiliser) plus cosets g*G_i of each finite factor; an element vertex g is
/// joined to g*G_i for every finite factor and to g*a^{+-1} for every free
/// generator.
struct TreeModel {
  GroupPresentation pres;
  TreeKind kind;

  TreeModel(GroupPresentation p, TreeKind k) : pres(std::move(p)), kind(k) { validate(); }

  void validate() const {
    pres.validate();
    if (kind == TreeKind::CayleyTree) {
      if (pres.num_finite() != 0)
        throw std::invalid_argument("CayleyTree requires a pure free group");
      if (pres.free_rank < 1) throw std::invalid_argument("CayleyTree requires rank >= 1");
    } else {
      if (pres.num_factors() < 2)
        throw std::invalid_argument("BassSerreTree requires at least two free factors");
    }
  }

  /// Classical two-factor amalgam form (no base orbit).
  bool amalgam_form() const {
    return kind == TreeKind::BassSerreTree && pres.free_rank == 0 && pres.num_finite() == 2;
  }
};

inline TreeModel cayley_tree(int rank) {
  return TreeModel(GroupPresentation(rank), TreeKind::CayleyTree);
}
inline TreeModel bass_serre_tree(GroupPresentation pres) {
  return TreeModel(std::move(pres), TreeKind::BassSerreTree);
}

constexpr int kBaseClass = -1;

/// A vertex: a canonical coset representative plus its orbit class. Base
/// vertices are group elements; class c >= 0 is the coset rep*G_c of a finite
/// factor (the representative never ends with a letter of that factor).
struct Vertex {
  ReducedWord rep;
  int vclass = kBaseClass;

  bool operator==(const Vertex& o) const { return vclass == o.vclass && rep == o.rep; }
  bool operator!=(const Vertex& o) const { return !(*this == o); }
};

inline Vertex make_vertex(const TreeModel& model, ReducedWord rep, int vclass) {
  if (vclass == kBaseClass) {
    if (model.amalgam_form())
      throw std::invalid_argument("vertex: amalgam tree has no base orbit");
    return Vertex{std::move(rep), kBaseClass};
  }
  if (!model.pres.is_finite_factor(vclass))
    throw std::invalid_argument("vertex: class must be a finite factor");
  if (model.kind == TreeKind::CayleyTree)
    throw std::invalid_argument("vertex: Cayley tree has only the base orbit");
  if (!rep.empty() && rep.letters.back().factor == vclass) rep.letters.pop_back();
  return Vertex{std::move(rep), vclass};
}

inline Vertex base_vertex(const TreeModel& model) {
  if (model.amalgam_form()) return Vertex{identity_word(), model.pres.free_rank};
  return Vertex{identity_word(), kBaseClass};
}

inline Vertex act(const TreeModel& model, const ReducedWord& g, const Vertex& v) {
  ReducedWord moved = mul(model.pres, g, v.rep);
  if (v.vclass == kBaseClass) return Vertex{std::move(moved), kBaseClass};
  return make_vertex(model, std::move(moved), v.vclass);
}

inline std::string vertex_str(const TreeModel& model, const Vertex& v) {
  std::string s = word_str(model.pres, v.rep);
  if (v.vclass != kBaseClass)
    s += ":s" + std::to_string(v.vclass - model.pres.free_rank + 1);
  return s;
}

namespace detail {

/// Edge-length of the walk between element vertices reading the word:
/// a finite syllable crosses its coset vertex (2 edges), a free syllable a^n
/// contributes |n| edges. In the amalgam model every syllable costs 1.
inline std::int64_t walk_cost(const TreeModel& model, const ReducedWord& w) {
  const auto& pres = model.pres;
  if (model.kind == TreeKind::CayleyTree) return std::int64_t(w.size());
  std::int64_t c = 0;
  if (model.amalgam_form()) return std::int64_t(w.size());  // all letters are finite syllables
  for (const Syllable& s : syllables(pres, w))
    c += pres.is_free_factor(s.factor) ? std::abs(s.exp) : 2;
  return c;
}

inline bool strip_leading(const GroupPresentation&, ReducedWord& w, int factor) {
  if (!w.empty() && w.letters.front().factor == factor) {
    w.letters.erase(w.letters.begin());
    return true;
  }
  return false;
}

inline bool strip_trailing(const GroupPresentation&, ReducedWord& w, int factor) {
  if (!w.empty() && w.letters.back().factor == factor) {
    w.letters.pop_back();
    return true;
  }
  return false;
}

}  // namespace detail

inline std::int64_t dist(const TreeModel& model, const Vertex& u, const Vertex& v) {
  if (u == v) return 0;
  const auto& pres = model.pres;
  ReducedWord w = mul(pres, inv(pres, u.rep), v.rep);
  if (model.kind == TreeKind::CayleyTree) return std::int64_t(w.size());
  if (model.amalgam_form()) {
    detail::strip_leading(pres, w, u.vclass);
    detail::strip_trailing(pres, w, v.vclass);
    return std::int64_t(w.size()) + 1;
  }
  std::int64_t extra = 0;
  if (u.vclass != kBaseClass) {
    detail::strip_leading(pres, w, u.vclass);
    extra += 1;
  }
  if (v.vclass != kBaseClass) {
    detail::strip_trailing(pres, w, v.vclass);
    extra += 1;
  }
  return detail::walk_cost(model, w) + extra;
}

/// All vertices of the geodesic [u, v], in order (d+1 entries).
inline std::vector<Vertex> geodesic(const TreeModel& model, const Vertex& u, const Vertex& v) {
  const auto& pres = model.pres;
  std::vector<Vertex> path;
  if (u == v) return {u};
  ReducedWord w = mul(pres, inv(pres, u.rep), v.rep);
  if (model.kind == TreeKind::CayleyTree) {
    ReducedWord cur = u.rep;
    path.push_back(u);
    for (const Letter& l : w.letters) {
      cur = mul(pres, cur, reduce(pres, {l}));
      path.push_back(Vertex{cur, kBaseClass});
    }
    return path;
  }
  ReducedWord cur = u.rep;
  path.push_back(u);
  if (u.vclass != kBaseClass) {
    // exit the starting coset at the member where the geodesic leaves it
    if (!w.empty() && w.letters.front().factor == u.vclass) {
      cur = mul(pres, cur, reduce(pres, {w.letters.front()}));
      w.letters.erase(w.letters.begin());
    }
    if (!model.amalgam_form()) path.push_back(Vertex{cur, kBaseClass});
  }
  if (v.vclass != kBaseClass) detail::strip_trailing(pres, w, v.vclass);
  if (model.amalgam_form()) {
    for (const Letter& l : w.letters) {
      path.push_back(make_vertex(model, cur, l.factor));
      cur = mul(pres, cur, reduce(pres, {l}));
    }
    path.push_back(make_vertex(model, cur, v.vclass));
    return path;
  }
  for (const Syllable& s : syllables(pres, w)) {
    if (pres.is_free_factor(s.factor)) {
      int sign = s.exp > 0 ? 1 : -1;
      for (std::int64_t i = 0; i < std::abs(s.exp); ++i) {
        cur = mul(pres, cur, reduce(pres, {Letter{s.factor, sign}}));
        path.push_back(Vertex{cur, kBaseClass});
      }
    } else {
      path.push_back(make_vertex(model, cur, s.factor));
      cur = mul(pres, cur, reduce(pres, {Letter{s.factor, std::int32_t(s.exp)}}));
      path.push_back(Vertex{cur, kBaseClass});
    }
  }
  if (v.vclass != kBaseClass) path.push_back(make_vertex(model, cur, v.vclass));
  return path;
}

/// Vertex on [u, v] at distance t from u.
inline Vertex step(const TreeModel& model, const Vertex& u, const Vertex& v, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("step: negative distance");
  if (model.kind == TreeKind::CayleyTree) {
    ReducedWord w = mul(model.pres, inv(model.pres, u.rep), v.rep);
    if (t > std::int64_t(w.size())) throw std::invalid_argument("step: beyond geodesic");
    ReducedWord prefix;
    prefix.letters.assign(w.letters.begin(), w.letters.begin() + t);
    return Vertex{mul(model.pres, u.rep, prefix), kBaseClass};
  }
  auto path = geodesic(model, u, v);
  if (t >= std::int64_t(path.size())) throw std::invalid_argument("step: beyond geodesic");
  return path[std::size_t(t)];
}

/// The median (Fermat point) of three vertices.
inline Vertex median(const TreeModel& model, const Vertex& x, const Vertex& y, const Vertex& z) {
  std::int64_t dxy = dist(model, x, y), dxz = dist(model, x, z), dyz = dist(model, y, z);
  std::int64_t t = (dxy + dxz - dyz) / 2;
  return step(model, x, y, t);
}

// --- characteristic sets ---------------------------------------------------

inline std::int64_t translation_length(const TreeModel& model, const ReducedWord& g) {
  const auto& pres = model.pres;
  CyclicDecomposition cd = cyclic_reduce(pres, g);
  if (cd.core.empty()) return 0;
  if (model.kind == TreeKind::CayleyTree) return std::int64_t(cd.core.size());
  if (cd.core.size() == 1 && pres.is_finite_factor(cd.core[0].factor)) return 0;  // elliptic
  return detail::walk_cost(model, cd.core);
}

struct AxisDescriptor {
  ReducedWord element;
  std::int64_t length = 0;    // translation length
  Vertex base;                // a vertex on the axis (position 0)
  ReducedWord period;         // cyclic core, read along one fundamental domain
  ReducedWord conjugator;     // element = conjugator * period * conjugator^{-1}
};

struct FixedSetDescriptor {
  Vertex vertex;  // with trivial edge stabilisers an elliptic fixed set is one vertex
};

using CharSet = std::variant<AxisDescriptor, FixedSetDescriptor>;

inline bool is_loxodromic(const TreeModel& model, const ReducedWord& g) {
  return translation_length(model, g) > 0;
}

inline CharSet char_set(const TreeModel& model, const ReducedWord& g) {
  const auto& pres = model.pres;
  if (g.empty()) throw std::invalid_argument("char_set: identity input");
  CyclicDecomposition cd = cyclic_reduce(pres, g);
  std::int64_t len = translation_length(model, g);
  if (len == 0) {
    // conjugate of a finite-factor element; fixes exactly its coset vertex
    int f = cd.core[0].factor;
    return FixedSetDescriptor{make_vertex(model, cd.conjugator, f)};
  }
  AxisDescriptor axis;
  axis.element = g;
  axis.length = len;
  axis.period = cd.core;
  axis.conjugator = cd.conjugator;
  if (model.amalgam_form())
    axis.base = make_vertex(model, cd.conjugator, cd.core[0].factor);
  else
    axis.base = Vertex{cd.conjugator, kBaseClass};
  return axis;
}

inline const AxisDescriptor& require_axis(const CharSet& cs, const char* what) {
  if (!std::holds_alternative<AxisDescriptor>(cs))
    throw std::invalid_argument(std::string(what) + ": element is elliptic");
  return std::get<AxisDescriptor>(cs);
}

inline AxisDescriptor axis_of(const TreeModel& model, const ReducedWord& g) {
  CharSet cs = char_set(model, g);
  return require_axis(cs, "axis_of");
}

/// Membership by the displacement criterion d(v, gv) = ||g||.
inline bool on_axis(const TreeModel& model, const Vertex& v, const ReducedWord& g) {
  std::int64_t len = translation_length(model, g);
  if (len == 0) throw std::invalid_argument("on_axis: element is elliptic");
  return dist(model, v, act(model, g, v)) == len;
}

/// Vertex at signed position k along the axis (position 0 = base).
inline Vertex axis_point(const TreeModel& model, const AxisDescriptor& axis, std::int64_t k) {
  const auto& pres = model.pres;
  std::int64_t L = axis.length;
  std::int64_t q = k >= 0 ? k / L : -((-k + L - 1) / L);
  std::int64_t r = k - q * L;
  Vertex fd = step(model, axis.base, act(model, axis.element, axis.base), r);
  if (q == 0) return fd;
  return act(model, pow(pres, axis.element, q), fd);
}

/// Signed position of an on-axis vertex; nullopt if v is off the axis.
inline std::optional<std::int64_t> axis_position(const TreeModel& model,
                                                 const AxisDescriptor& axis, const Vertex& v) {
  std::int64_t d = dist(model, axis.base, v);
  if (d == 0) return 0;
  if (axis_point(model, axis, d) == v) return d;
  if (axis_point(model, axis, -d) == v) return -d;
  return std::nullopt;
}

struct Projection {
  Vertex foot;
  std::int64_t distance = 0;
  std::int64_t position = 0;  // of the foot along the axis
};

/// Closest-point projection of v to Axis(g); the foot is unique and
/// distance = (d(v, gv) - ||g||) / 2.
inline Projection project_to_axis(const TreeModel& model, const Vertex& v,
                                  const AxisDescriptor& axis) {
  std::int64_t reach = dist(model, v, axis.base) + axis.length + 1;
  Vertex far_neg = axis_point(model, axis, -reach);
  Vertex far_pos = axis_point(model, axis, +reach);
  Vertex foot = median(model, v, far_neg, far_pos);
  Projection p;
  p.foot = foot;
  p.distance = dist(model, v, foot);
  auto pos = axis_position(model, axis, foot);
  if (!pos)
    throw std::logic_error("project_to_axis: foot not on axis");
  p.position = *pos;
  return p;
}

inline Projection project_to_axis(const TreeModel& model, const Vertex& v, const ReducedWord& g) {
  return project_to_axis(model, v, axis_of(model, g));
}

// --- neighbourhoods (debug/oracle surface) ---------------------------------

/// DOT text of the radius-r ball around a vertex; debugging aid only, the
/// trees themselves are never materialised.
inline std::string ball_to_dot(const TreeModel& model, const Vertex& center, int radius);

inline std::vector<Vertex> neighbors(const TreeModel& model, const Vertex& v) {
  const auto& pres = model.pres;
  std::vector<Vertex> out;
  if (model.kind == TreeKind::CayleyTree) {
    for (int f = 0; f < pres.free_rank; ++f)
      for (int s : {+1, -1})
        out.push_back(Vertex{mul(pres, v.rep, reduce(pres, {Letter{f, s}})), kBaseClass});
    return out;
  }
  if (model.amalgam_form()) {
    int other = v.vclass == pres.free_rank ? pres.free_rank + 1 : pres.free_rank;
    int m = pres.order_of(v.vclass);
    for (int p = 0; p < m; ++p) {
      ReducedWord rep = p == 0 ? v.rep : mul(pres, v.rep, reduce(pres, {Letter{v.vclass, p}}));
      out.push_back(make_vertex(model, rep, other));
    }
    return out;
  }
  if (v.vclass == kBaseClass) {
    for (int f = 0; f < pres.free_rank; ++f)
      for (int s : {+1, -1})
        out.push_back(Vertex{mul(pres, v.rep, reduce(pres, {Letter{f, s}})), kBaseClass});
    for (int f = pres.free_rank; f < pres.num_factors(); ++f)
      out.push_back(make_vertex(model, v.rep, f));
    return out;
  }
  int m = pres.order_of(v.vclass);
  for (int p = 0; p < m; ++p) {
    ReducedWord rep = p == 0 ? v.rep : mul(pres, v.rep, reduce(pres, {Letter{v.vclass, p}}));
    out.push_back(Vertex{std::move(rep), kBaseClass});
  }
  return out;
}


inline std::string ball_to_dot(const TreeModel& model, const Vertex& center, int radius) {
  std::string out = "graph ball {\n";
  std::vector<Vertex> frontier{center};
  std::vector<std::string> seen{vertex_str(model, center)};
  auto known = [&](const std::string& k) {
    for (const auto& s : seen)
      if (s == k) return true;
    return false;
  };
  for (int depth = 0; depth < radius; ++depth) {
    std::vector<Vertex> next;
    for (const Vertex& v : frontier) {
      std::string vk = vertex_str(model, v);
      for (const Vertex& w : neighbors(model, v)) {
        std::string wk = vertex_str(model, w);
        if (known(wk)) continue;
        seen.push_back(wk);
        next.push_back(w);
        out += "  \"" + vk + "\" -- \"" + wk + "\";\n";
      }
    }
    frontier = std::move(next);
  }
  out += "}\n";
  return out;
}

}  // namespace tact
