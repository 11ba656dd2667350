#pragma once

#include <json.hpp>
#include <string>

#include "tact/overlap.hpp"

namespace tact {

using json = nlohmann::json;

/// Uniform CLI-facing result of one lemma instance.
struct CheckReport {
  std::string lemma_id;
  json inputs = json::object();
  json computed = json::object();
  std::string verdict;  // "pass" | "fail" | "skipped"
  json witness = json::object();
  std::string reason;  // non-empty for "skipped"

  bool passed() const { return verdict == "pass"; }
  bool failed() const { return verdict == "fail"; }
};

inline void to_json(json& j, const CheckReport& r) {
  j = json{{"lemma_id", r.lemma_id},
           {"inputs", r.inputs},
           {"computed", r.computed},
           {"verdict", r.verdict},
           {"witness", r.witness}};
  if (!r.reason.empty()) j["reason"] = r.reason;
}

inline json vertex_json(const TreeModel& model, const Vertex& v) {
  return vertex_str(model, v);
}

/// Product of elements with disjoint characteristic sets: gh is loxodromic and
/// the bridge between Char(g) and Char(h) lies on Axis(gh).
inline CheckReport bridge_product_check(const TreeModel& model, const ReducedWord& g,
                                        const ReducedWord& h) {
  const auto& pres = model.pres;
  if (g.empty() || h.empty())
    throw std::invalid_argument("bridge_product_check: identity input");
  CheckReport r;
  r.lemma_id = "bridge-product";
  r.inputs = {{"g", word_str(pres, g)}, {"h", word_str(pres, h)}};
  if (char_sets_meet(model, g, h))
    throw std::invalid_argument("bridge_product_check: characteristic sets not disjoint");
  Bridge br = bridge_between(model, char_set(model, g), char_set(model, h));
  ReducedWord gh = mul(pres, g, h);
  std::int64_t len = translation_length(model, gh);
  bool ok = len > 0;
  if (ok) {
    for (const Vertex& v : geodesic(model, br.a, br.b))
      if (!on_axis(model, v, gh)) {
        ok = false;
        break;
      }
  }
  r.computed = {{"gh_translation_length", len}, {"bridge_length", br.length}};
  r.witness = {{"bridge", {vertex_json(model, br.a), vertex_json(model, br.b)}},
               {"gh", word_str(pres, gh)}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

/// When the projections of Axis(h) and Axis(h') onto Axis(g) are more than
/// ||g|| apart, Char(gh) misses Axis(h').
inline CheckReport far_projections_check(const TreeModel& model, const ReducedWord& g,
                                         const ReducedWord& h, const ReducedWord& h2) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "far-projections";
  r.inputs = {{"g", word_str(pres, g)}, {"h", word_str(pres, h)}, {"h2", word_str(pres, h2)}};
  if (!is_loxodromic(model, g) || !is_loxodromic(model, h) || !is_loxodromic(model, h2)) {
    r.verdict = "skipped";
    r.reason = "inputs must all be loxodromic";
    return r;
  }
  AxisDescriptor ag = axis_of(model, g);
  if (same_axis(pres, g, h) || same_axis(pres, g, h2)) {
    r.verdict = "skipped";
    r.reason = "projection interval unbounded (shared axis with g)";
    return r;
  }
  ProjectionInterval ph = project_charset(model, ag, char_set(model, h));
  ProjectionInterval ph2 = project_charset(model, ag, char_set(model, h2));
  std::int64_t gap = std::max<std::int64_t>(
      0, std::max(ph2.lo - ph.hi, ph.lo - ph2.hi));
  r.computed = {{"projection_gap", gap}, {"g_translation_length", ag.length}};
  if (gap <= ag.length) {
    r.verdict = "skipped";
    r.reason = "projection gap not greater than ||g||";
    return r;
  }
  ReducedWord gh = mul(pres, g, h);
  bool meet = char_sets_meet(model, gh, h2);
  r.computed["gh"] = word_str(pres, gh);
  r.verdict = meet ? "fail" : "pass";
  r.witness = {{"char_sets_disjoint", !meet}};
  return r;
}

/// A direction at x is encoded by the adjacent vertex that spans it.
struct Direction {
  Vertex at;
  Vertex toward;
};

inline bool direction_contains_vertex(const TreeModel& model, const Direction& d, const Vertex& v) {
  if (v == d.at) return false;
  return step(model, d.at, v, 1) == d.toward;
}

/// Strict containment g(d) < d of directions, decided by the tree's coset
/// combinatorics.
inline bool direction_strictly_contains_image(const TreeModel& model, const Direction& d,
                                              const ReducedWord& g) {
  Direction gd{act(model, g, d.at), act(model, g, d.toward)};
  if (gd.at == d.at) return false;  // directions at one point are equal or disjoint
  return direction_contains_vertex(model, d, gd.at) &&
         !direction_contains_vertex(model, gd, d.at);
}

/// If g maps the direction d strictly inside itself then g is loxodromic and
/// [x, gx] lies on Axis(g).
inline CheckReport direction_lemma_check(const TreeModel& model, const Direction& d,
                                         const ReducedWord& g) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "direction";
  r.inputs = {{"x", vertex_json(model, d.at)},
              {"toward", vertex_json(model, d.toward)},
              {"g", word_str(pres, g)}};
  if (dist(model, d.at, d.toward) != 1)
    throw std::invalid_argument("direction_lemma_check: descriptor is not an edge");
  if (g.empty()) throw std::invalid_argument("direction_lemma_check: identity input");
  if (!direction_strictly_contains_image(model, d, g)) {
    r.verdict = "skipped";
    r.reason = "g d is not strictly contained in d";
    return r;
  }
  std::int64_t len = translation_length(model, g);
  bool ok = len > 0;
  Vertex gx = act(model, g, d.at);
  if (ok) {
    for (const Vertex& v : geodesic(model, d.at, gx))
      if (!on_axis(model, v, g)) {
        ok = false;
        break;
      }
  }
  r.computed = {{"translation_length", len}};
  r.witness = {{"gx", vertex_json(model, gx)}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

/// The intersection of Char(g^n h^m) over 0 < |n|, |m| <= bound: empty when
/// the axes share a nondegenerate segment, and exactly the bridge when they
/// are disjoint or touch in one point.
inline CheckReport axis_intersection_lemma_check(const TreeModel& model, const ReducedWord& g,
                                                 const ReducedWord& h, int exponent_bound) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "axis-intersection";
  r.inputs = {{"g", word_str(pres, g)},
              {"h", word_str(pres, h)},
              {"exponent_bound", exponent_bound}};
  if (!is_loxodromic(model, g) || !is_loxodromic(model, h))
    throw std::invalid_argument("axis_intersection_lemma_check: inputs must be loxodromic");
  if (same_axis(pres, g, h))
    throw std::invalid_argument("axis_intersection_lemma_check: axes coincide");
  OverlapResult ov = axis_overlap(model, g, h);
  bool nondegenerate = ov.kind == OverlapKind::Overlap && ov.overlap_length() > 0;

  ConvexPiece piece;
  bool first = true;
  json first_empty_witness = nullptr;
  for (int n = -exponent_bound; n <= exponent_bound; ++n) {
    for (int m = -exponent_bound; m <= exponent_bound; ++m) {
      if (n == 0 || m == 0) continue;
      ReducedWord w = mul(pres, pow(pres, g, n), pow(pres, h, m));
      if (w.empty())
        throw std::logic_error("axis_intersection_lemma_check: g^n h^m trivial");
      if (first) {
        CharSet cs = char_set(model, w);
        if (std::holds_alternative<AxisDescriptor>(cs))
          piece = std::get<AxisDescriptor>(cs);
        else {
          const Vertex& v = std::get<FixedSetDescriptor>(cs).vertex;
          piece = SegmentPiece{v, v};
        }
        first = false;
        continue;
      }
      bool was_nonempty = !std::holds_alternative<std::monostate>(piece);
      piece = intersect_piece_with_charset(model, piece, w);
      if (was_nonempty && std::holds_alternative<std::monostate>(piece) &&
          first_empty_witness.is_null())
        first_empty_witness = {{"n", n}, {"m", m}};
    }
  }

  bool ok;
  json piece_json;
  if (std::holds_alternative<std::monostate>(piece)) {
    piece_json = "empty";
    ok = nondegenerate;
  } else if (std::holds_alternative<SegmentPiece>(piece)) {
    const auto& s = std::get<SegmentPiece>(piece);
    piece_json = {vertex_json(model, s.a), vertex_json(model, s.b)};
    if (nondegenerate) {
      ok = false;
    } else {
      Bridge br = bridge_between(model, char_set(model, g), char_set(model, h));
      bool matches = (s.a == br.a && s.b == br.b) || (s.a == br.b && s.b == br.a);
      ok = matches;
    }
  } else {
    piece_json = "line";
    ok = false;
  }
  r.computed = {{"branch", nondegenerate ? "nondegenerate-overlap"
                                         : (ov.kind == OverlapKind::Disjoint ? "disjoint"
                                                                             : "touching")},
                {"intersection", piece_json}};
  r.witness = {{"first_emptying_pair", first_empty_witness}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

/// WPD overlap criterion at (L, N): an overlap of Axis(g) with Char(h) of
/// length >= (N+2) L max(||g||, ||h||) forces h into E(g).
inline CheckReport overlap_lemma_check(const TreeModel& model, const ReducedWord& g,
                                       const ReducedWord& h, std::int64_t L, std::int64_t N) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "wpd-overlap";
  r.inputs = {{"g", word_str(pres, g)}, {"h", word_str(pres, h)}, {"L", L}, {"N", N}};
  if (!is_loxodromic(model, g))
    throw std::invalid_argument("overlap_lemma_check: g must be loxodromic");
  if (h.empty()) throw std::invalid_argument("overlap_lemma_check: identity h");
  std::int64_t lg = translation_length(model, g);
  std::int64_t lh = translation_length(model, h);
  std::int64_t threshold = (N + 2) * L * std::max(lg, lh);
  OverlapResult ov = axis_overlap(model, g, h);
  bool infinite = ov.kind == OverlapKind::SameAxis;
  std::int64_t len = infinite ? -1 : (ov.kind == OverlapKind::Overlap ? ov.overlap_length() : 0);
  bool applicable = infinite || len >= threshold;
  r.computed = {{"overlap_length", infinite ? json("infinite") : json(len)},
                {"threshold", threshold},
                {"claim_applicable", applicable}};
  if (!applicable) {
    r.verdict = "pass";  // vacuous
    return r;
  }
  bool member = in_elementary_closure(pres, h, g);
  r.computed["in_elementary_closure"] = member;
  r.verdict = member ? "pass" : "fail";
  return r;
}

}  // namespace tact
