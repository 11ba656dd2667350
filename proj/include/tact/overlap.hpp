#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>

#include "tact/free_group.hpp"
#include "tact/tree_model.hpp"

namespace tact {

/// Segment of an axis in edge units relative to the descriptor's base vertex.
struct AxisSegment {
  AxisDescriptor axis;
  std::int64_t start_offset = 0;
  std::int64_t end_offset = 0;  // start <= end

  std::int64_t length() const { return end_offset - start_offset; }
};

/// Two loxodromic elements have equal axes iff their maximal roots agree up to
/// inversion; with trivial edge stabilisers this is exact in both tree models.
inline bool same_axis(const GroupPresentation& pres, const ReducedWord& g, const ReducedWord& h) {
  ReducedWord rg = root(pres, g).root;
  ReducedWord rh = root(pres, h).root;
  return rg == rh || rg == inv(pres, rh);
}

namespace cayley {

/// Axis of g in the Cayley tree as two periodic rays from base: vertex words
/// are base * (prefix of period^inf) and base * (prefix of period^{-inf}).
struct LineFoot {
  std::int64_t position;  // signed, along the axis
  std::int64_t distance;  // d(x, axis)
};

/// Length of the longest common prefix of y with the periodic ray of `period`.
inline std::int64_t ray_match(const ReducedWord& y, const ReducedWord& period) {
  std::int64_t n = std::int64_t(y.size()), p = std::int64_t(period.size());
  std::int64_t i = 0;
  while (i < n && y.letters[std::size_t(i)] == period.letters[std::size_t(i % p)]) ++i;
  return i;
}

/// Exact closest-point projection of the vertex with word x onto the line
/// (base, period). O(|x| + |base|).
inline LineFoot foot(const GroupPresentation& pres, const ReducedWord& base,
                     const ReducedWord& period, const ReducedWord& x) {
  ReducedWord y = mul(pres, inv(pres, base), x);
  std::int64_t plus = ray_match(y, period);
  std::int64_t minus = ray_match(y, inv(pres, period));
  if (plus >= minus) return LineFoot{plus, std::int64_t(y.size()) - plus};
  return LineFoot{-minus, std::int64_t(y.size()) - minus};
}

}  // namespace cayley

/// Projection of a whole characteristic set onto Axis(g), as a position
/// interval on Axis(g). For distinct axes the interval is finite; feet of the
/// two ends of Char(h) are computed beyond the interaction window.
struct ProjectionInterval {
  std::int64_t lo = 0, hi = 0;
  std::int64_t distance = 0;  // d(Axis(g), Char(h)); 0 when they meet
};

namespace detail {

inline std::int64_t far_parameter(const TreeModel& model, const AxisDescriptor& ag,
                                  const AxisDescriptor& ah) {
  std::int64_t cap = 4 * (ag.length + ah.length);
  return dist(model, ag.base, ah.base) + cap + 2 * ah.length + 2;
}

}  // namespace detail

/// Feet of Char(h) on Axis(g). Requires distinct axes when h is loxodromic.
inline ProjectionInterval project_charset(const TreeModel& model, const AxisDescriptor& ag,
                                          const CharSet& ch) {
  if (std::holds_alternative<FixedSetDescriptor>(ch)) {
    const Vertex& v = std::get<FixedSetDescriptor>(ch).vertex;
    Projection p = project_to_axis(model, v, ag);
    return ProjectionInterval{p.position, p.position, p.distance};
  }
  const AxisDescriptor& ah = std::get<AxisDescriptor>(ch);
  std::int64_t far = detail::far_parameter(model, ag, ah);
  std::int64_t p_minus, p_plus;
  if (model.kind == TreeKind::CayleyTree) {
    const auto& pres = model.pres;
    std::int64_t k = (far + ah.length - 1) / ah.length;
    ReducedWord x_plus = mul(pres, ah.conjugator, pow(pres, ah.period, k));
    ReducedWord x_minus = mul(pres, ah.conjugator, pow(pres, ah.period, -k));
    p_plus = cayley::foot(pres, ag.conjugator, ag.period, x_plus).position;
    p_minus = cayley::foot(pres, ag.conjugator, ag.period, x_minus).position;
  } else {
    p_plus = project_to_axis(model, axis_point(model, ah, far), ag).position;
    p_minus = project_to_axis(model, axis_point(model, ah, -far), ag).position;
  }
  ProjectionInterval out;
  out.lo = std::min(p_minus, p_plus);
  out.hi = std::max(p_minus, p_plus);
  if (out.hi - out.lo > 4 * (ag.length + ah.length))
    throw std::logic_error("project_charset: axes coincide (use same_axis first)");
  if (out.lo == out.hi) {
    Vertex f = axis_point(model, ag, out.lo);
    Projection back = project_to_axis(model, f, ah);
    out.distance = back.distance;
  } else {
    out.distance = 0;
  }
  return out;
}

enum class OverlapKind { Disjoint, Overlap, SameAxis };

struct OverlapResult {
  OverlapKind kind;
  // Overlap: shared segment of Axis(g) and Char(h), positions on Axis(g).
  std::int64_t seg_lo = 0, seg_hi = 0;
  // Disjoint: bridge endpoints, bridge_g on Axis(g), bridge_h on Char(h).
  Vertex bridge_g, bridge_h;
  std::int64_t bridge_length = 0;

  std::int64_t overlap_length() const { return seg_hi - seg_lo; }
  bool meets() const { return kind != OverlapKind::Disjoint; }
};

/// Classification of Axis(g) against Char(h). SameAxis is decided by root
/// comparison; a nondegenerate shared segment is returned with exact
/// endpoints; disjoint characteristic sets come with their bridge.
inline OverlapResult axis_overlap(const TreeModel& model, const ReducedWord& g,
                                  const ReducedWord& h) {
  if (g.empty() || h.empty()) throw std::invalid_argument("axis_overlap: identity input");
  AxisDescriptor ag = axis_of(model, g);
  CharSet ch = char_set(model, h);
  OverlapResult out{};
  if (std::holds_alternative<AxisDescriptor>(ch) && same_axis(model.pres, g, h)) {
    out.kind = OverlapKind::SameAxis;
    return out;
  }
  ProjectionInterval pi = project_charset(model, ag, ch);
  if (pi.distance == 0) {
    out.kind = OverlapKind::Overlap;
    out.seg_lo = pi.lo;
    out.seg_hi = pi.hi;
    return out;
  }
  out.kind = OverlapKind::Disjoint;
  out.bridge_g = axis_point(model, ag, pi.lo);
  if (std::holds_alternative<FixedSetDescriptor>(ch)) {
    out.bridge_h = std::get<FixedSetDescriptor>(ch).vertex;
  } else {
    out.bridge_h = project_to_axis(model, out.bridge_g, std::get<AxisDescriptor>(ch)).foot;
  }
  out.bridge_length = pi.distance;
  return out;
}

struct FundamentalDomainCount {
  bool unbounded = false;  // same axis
  std::int64_t count = 0;
};

/// floor(overlap(Axis(g), Char(h)) / ||g||); flagged unbounded on SameAxis.
inline FundamentalDomainCount count_fundamental_domains(const TreeModel& model,
                                                        const ReducedWord& g,
                                                        const ReducedWord& h) {
  std::int64_t len = translation_length(model, g);
  if (len == 0) throw std::invalid_argument("count_fundamental_domains: g must be loxodromic");
  OverlapResult ov = axis_overlap(model, g, h);
  if (ov.kind == OverlapKind::SameAxis) return FundamentalDomainCount{true, 0};
  if (ov.kind == OverlapKind::Disjoint) return FundamentalDomainCount{false, 0};
  return FundamentalDomainCount{false, ov.overlap_length() / len};
}

// --- characteristic-set predicates used by the tree lemmas -----------------

inline bool charset_contains(const TreeModel& model, const CharSet& cs, const Vertex& v) {
  if (std::holds_alternative<FixedSetDescriptor>(cs))
    return std::get<FixedSetDescriptor>(cs).vertex == v;
  const AxisDescriptor& a = std::get<AxisDescriptor>(cs);
  return dist(model, v, act(model, a.element, v)) == a.length;
}

inline Projection project_to_charset(const TreeModel& model, const Vertex& v, const CharSet& cs) {
  if (std::holds_alternative<AxisDescriptor>(cs))
    return project_to_axis(model, v, std::get<AxisDescriptor>(cs));
  const Vertex& w = std::get<FixedSetDescriptor>(cs).vertex;
  return Projection{w, dist(model, v, w), 0};
}

inline bool char_sets_meet(const TreeModel& model, const ReducedWord& g, const ReducedWord& h) {
  CharSet cg = char_set(model, g);
  CharSet ch = char_set(model, h);
  if (std::holds_alternative<FixedSetDescriptor>(cg)) {
    const Vertex& v = std::get<FixedSetDescriptor>(cg).vertex;
    return project_to_charset(model, v, ch).distance == 0;
  }
  if (std::holds_alternative<FixedSetDescriptor>(ch)) {
    const Vertex& v = std::get<FixedSetDescriptor>(ch).vertex;
    return project_to_charset(model, v, cg).distance == 0;
  }
  if (same_axis(model.pres, g, h)) return true;
  return project_charset(model, std::get<AxisDescriptor>(cg), ch).distance == 0;
}

struct Bridge {
  Vertex a, b;  // a in the first set, b in the second
  std::int64_t length = 0;
};

/// Shortest segment joining two characteristic sets with degenerate
/// intersection. All points of one set project to a single point of the other.
inline Bridge bridge_between(const TreeModel& model, const CharSet& cs_a, const CharSet& cs_b) {
  if (std::holds_alternative<AxisDescriptor>(cs_a)) {
    // feet of the whole set, not of one sample point
    ProjectionInterval pi = project_charset(model, std::get<AxisDescriptor>(cs_a), cs_b);
    Vertex a = axis_point(model, std::get<AxisDescriptor>(cs_a), pi.lo);
    Projection back = project_to_charset(model, a, cs_b);
    return Bridge{a, back.foot, back.distance};
  }
  const Vertex& a = std::get<FixedSetDescriptor>(cs_a).vertex;
  Projection p = project_to_charset(model, a, cs_b);
  return Bridge{a, p.foot, p.distance};
}

// --- exact intersections of convex pieces ----------------------------------

struct SegmentPiece {
  Vertex a, b;
};

/// Empty, a segment/point, or a whole axis.
using ConvexPiece = std::variant<std::monostate, SegmentPiece, AxisDescriptor>;

inline bool on_segment(const TreeModel& model, const Vertex& p, const Vertex& a, const Vertex& b) {
  return dist(model, a, p) + dist(model, p, b) == dist(model, a, b);
}

inline ConvexPiece intersect_segment_with_segment(const TreeModel& model, const SegmentPiece& s,
                                                  const SegmentPiece& t) {
  Vertex u = median(model, s.a, s.b, t.a);
  Vertex v = median(model, s.a, s.b, t.b);
  if (on_segment(model, u, t.a, t.b) && on_segment(model, v, t.a, t.b))
    return SegmentPiece{u, v};
  return std::monostate{};
}

inline ConvexPiece intersect_segment_with_charset(const TreeModel& model, const SegmentPiece& s,
                                                  const CharSet& cs) {
  if (std::holds_alternative<FixedSetDescriptor>(cs)) {
    const Vertex& v = std::get<FixedSetDescriptor>(cs).vertex;
    if (on_segment(model, v, s.a, s.b)) return SegmentPiece{v, v};
    return std::monostate{};
  }
  const AxisDescriptor& axis = std::get<AxisDescriptor>(cs);
  Vertex u = median(model, s.a, s.b, project_to_axis(model, s.a, axis).foot);
  Vertex v = median(model, s.a, s.b, project_to_axis(model, s.b, axis).foot);
  if (charset_contains(model, cs, u) && charset_contains(model, cs, v)) return SegmentPiece{u, v};
  return std::monostate{};
}

/// Intersection of a running convex piece with Char(w); used to accumulate
/// intersections over families of elements.
inline ConvexPiece intersect_piece_with_charset(const TreeModel& model, const ConvexPiece& piece,
                                                const ReducedWord& w) {
  if (std::holds_alternative<std::monostate>(piece)) return piece;
  CharSet cs = char_set(model, w);
  if (std::holds_alternative<SegmentPiece>(piece))
    return intersect_segment_with_charset(model, std::get<SegmentPiece>(piece), cs);
  const AxisDescriptor& axis = std::get<AxisDescriptor>(piece);
  if (std::holds_alternative<AxisDescriptor>(cs)) {
    if (same_axis(model.pres, axis.element, w)) return piece;
    ProjectionInterval pi = project_charset(model, axis, cs);
    if (pi.distance != 0) return std::monostate{};
    return SegmentPiece{axis_point(model, axis, pi.lo), axis_point(model, axis, pi.hi)};
  }
  const Vertex& v = std::get<FixedSetDescriptor>(cs).vertex;
  if (charset_contains(model, CharSet(axis), v)) return SegmentPiece{v, v};
  return std::monostate{};
}

}  // namespace tact
