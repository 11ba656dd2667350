#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tact/lemma_checks.hpp"
#include "tact/overlap.hpp"

namespace tact {

/// One axis class Y: the first automorphism of the pool landing on this axis,
/// the image element and its axis.
struct FamilyMember {
  std::size_t aut_index;
  ReducedWord image;  // phi(g)
  AxisDescriptor axis;
};

/// Deduplicated family of axes {Axis(phi(g))} over a pool of automorphisms.
/// Two automorphisms fall in one class iff phi1^{-1} phi2 (g) lies in E(g),
/// equivalently iff the axes coincide (checked via maximal roots).
struct ProjectionFamily {
  ReducedWord base_element;
  std::vector<Automorphism> pool;
  std::vector<FamilyMember> representatives;
  std::vector<std::size_t> class_of;               // per pool index
  std::vector<std::vector<std::size_t>> classes;   // partition of pool indices

  std::size_t size() const { return representatives.size(); }
};

inline ProjectionFamily build_family(const TreeModel& model, const ReducedWord& g,
                                     std::vector<Automorphism> pool) {
  if (g.empty()) throw std::invalid_argument("build_family: identity base element");
  if (!is_loxodromic(model, g))
    throw std::invalid_argument("build_family: base element must be loxodromic");
  const auto& pres = model.pres;
  ProjectionFamily fam;
  fam.base_element = g;
  fam.pool = std::move(pool);
  std::map<std::string, std::size_t> class_by_key;
  for (std::size_t i = 0; i < fam.pool.size(); ++i) {
    ReducedWord image = apply(pres, fam.pool[i], g);
    if (!is_loxodromic(model, image))
      throw std::invalid_argument("build_family: an image is not loxodromic");
    ReducedWord r = root(pres, image).root;
    ReducedWord ri = inv(pres, r);
    std::string key = word_str(pres, word_less(pres, r, ri) ? r : ri);
    auto it = class_by_key.find(key);
    if (it == class_by_key.end()) {
      std::size_t cls = fam.representatives.size();
      class_by_key.emplace(key, cls);
      fam.representatives.push_back(FamilyMember{i, image, axis_of(model, image)});
      fam.classes.push_back({i});
      fam.class_of.push_back(cls);
    } else {
      fam.classes[it->second].push_back(i);
      fam.class_of.push_back(it->second);
    }
  }
  return fam;
}

/// Geometric axis-equality test: feet of far points of one axis on the other
/// span more than the WPD overlap threshold 3 max(||.||, ||.||) iff the axes
/// coincide. Kept free of the root-comparison shortcut so the two sides of
/// the Y-equality claim stay independent.
inline bool axes_equal_geometric(const TreeModel& model, const ReducedWord& a,
                                 const ReducedWord& b) {
  AxisDescriptor aa = axis_of(model, a);
  AxisDescriptor ab = axis_of(model, b);
  std::int64_t span;
  std::int64_t far = dist(model, aa.base, ab.base) + 4 * (aa.length + ab.length) +
                     2 * ab.length + 2;
  if (model.kind == TreeKind::CayleyTree) {
    const auto& pres = model.pres;
    std::int64_t k = (far + ab.length - 1) / ab.length;
    auto fp = cayley::foot(pres, aa.conjugator, aa.period,
                           mul(pres, ab.conjugator, pow(pres, ab.period, k)));
    auto fm = cayley::foot(pres, aa.conjugator, aa.period,
                           mul(pres, ab.conjugator, pow(pres, ab.period, -k)));
    span = std::abs(fp.position - fm.position);
  } else {
    Projection fp = project_to_axis(model, axis_point(model, ab, far), aa);
    Projection fm = project_to_axis(model, axis_point(model, ab, -far), aa);
    span = std::abs(fp.position - fm.position);
  }
  return span >= 3 * std::max(aa.length, ab.length);
}

/// The Y-equality claim: phi1^{-1} phi2 (g) in E(g) iff Axis(phi1(g)) equals
/// Axis(phi2(g)); both sides computed by independent routes.
inline CheckReport y_equality_check(const TreeModel& model, const Automorphism& phi1,
                                    const Automorphism& phi2, const ReducedWord& g) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "y-equality";
  ReducedWord img1 = apply(pres, phi1, g);
  ReducedWord img2 = apply(pres, phi2, g);
  ReducedWord w = apply(pres, inverse(pres, phi1), img2);
  bool algebraic = in_elementary_closure(pres, w, g);
  bool geometric = axes_equal_geometric(model, img1, img2);
  r.inputs = {{"g", word_str(pres, g)},
              {"phi1_of_g", word_str(pres, img1)},
              {"phi2_of_g", word_str(pres, img2)}};
  r.computed = {{"closure_membership", algebraic}, {"axes_equal", geometric}};
  r.verdict = algebraic == geometric ? "pass" : "fail";
  return r;
}

/// Pairwise pullback projections of the family onto the base axis: entry
/// (Y, X) is proj_{Axis(g)} Axis(phi_Y^{-1} phi_X (g)) as a position interval
/// on Axis(g), the intrinsic coordinates of the abstract copy Y.
struct ProjectionTable {
  std::size_t n = 0;
  std::vector<std::int64_t> lo, hi;  // flattened n*n; diagonal unused

  std::int64_t lo_at(std::size_t y, std::size_t x) const { return lo[y * n + x]; }
  std::int64_t hi_at(std::size_t y, std::size_t x) const { return hi[y * n + x]; }

  /// d_Y(X, Z) = diam of the union of the two intervals on Y.
  std::int64_t d(std::size_t y, std::size_t x, std::size_t z) const {
    return std::max(hi_at(y, x), hi_at(y, z)) - std::min(lo_at(y, x), lo_at(y, z));
  }
  std::int64_t diam(std::size_t y, std::size_t x) const { return hi_at(y, x) - lo_at(y, x); }
};

inline ProjectionTable build_projection_table(const TreeModel& model,
                                              const ProjectionFamily& fam) {
  const auto& pres = model.pres;
  ProjectionTable t;
  t.n = fam.size();
  t.lo.assign(t.n * t.n, 0);
  t.hi.assign(t.n * t.n, 0);
  AxisDescriptor base_axis = axis_of(model, fam.base_element);
  for (std::size_t y = 0; y < t.n; ++y) {
    Automorphism inv_y = inverse(pres, fam.pool[fam.representatives[y].aut_index]);
    for (std::size_t x = 0; x < t.n; ++x) {
      if (x == y) continue;
      ReducedWord w = apply(pres, inv_y, fam.representatives[x].image);
      ProjectionInterval pi = project_charset(model, base_axis, char_set(model, w));
      t.lo[y * t.n + x] = pi.lo;
      t.hi[y * t.n + x] = pi.hi;
    }
  }
  return t;
}

/// Direct closest-point projection of X's axis onto Y's axis in the tree,
/// as a segment of Y's axis.
inline AxisSegment projection(const TreeModel& model, const ProjectionFamily& fam, std::size_t x,
                              std::size_t y) {
  if (x == y) throw std::invalid_argument("projection: classes must differ");
  const AxisDescriptor& ay = fam.representatives[y].axis;
  ProjectionInterval pi =
      project_charset(model, ay, CharSet(fam.representatives[x].axis));
  return AxisSegment{ay, pi.lo, pi.hi};
}

struct AxiomOptions {
  std::int64_t theta = -1;  // < 0: evaluate at theta_empirical
  std::int64_t n_2d1 = 1;   // persistence estimate n(2D+1)
  std::int64_t n_k = 1;     // persistence estimate n(K), K = (N+2)L
};

struct AxiomReport {
  std::int64_t theta_checked = 0;
  std::int64_t theta_empirical = 0;
  std::int64_t theta_formula = 0;
  std::int64_t d_empirical = 0;
  bool p0_pass = false;
  bool p1_pass = false;
  std::int64_t p2_max_count = 0;
  std::vector<std::int64_t> p2_counts;  // per unordered pair (x < z), flattened
  std::vector<std::string> caveats;
};

inline void to_json(json& j, const AxiomReport& r) {
  j = json{{"theta_checked", r.theta_checked},
           {"theta_empirical", r.theta_empirical},
           {"theta_formula", r.theta_formula},
           {"D_empirical", r.d_empirical},
           {"P0_pass", r.p0_pass},
           {"P1_pass", r.p1_pass},
           {"P2_max_count", r.p2_max_count},
           {"caveats", r.caveats}};
}

/// Exhaustive verification of the projection axioms over the family.
/// theta_empirical is the smallest theta passing (P0) and (P1), located by
/// binary search; (P2) is reported as exact witness counts per pair.
inline AxiomReport verify_axioms(const TreeModel& model, const ProjectionFamily& fam,
                                 const ProjectionTable& t, const AxiomOptions& opt = {}) {
  if (fam.size() < 3) throw std::invalid_argument("verify_axioms: need at least 3 classes");
  AxiomReport rep;
  std::size_t n = t.n;
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (x != y) rep.d_empirical = std::max(rep.d_empirical, t.diam(y, x));

  auto p0_p1_hold = [&](std::int64_t theta) {
    if (rep.d_empirical > theta) return false;  // (P0): d_Y(X, X) = diam
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x) {
        if (x == y) continue;
        for (std::size_t z = x + 1; z < n; ++z) {
          if (z == y) continue;
          if (t.d(y, x, z) > theta && t.d(x, y, z) > theta) return false;
        }
      }
    return true;
  };

  std::int64_t hi_bound = rep.d_empirical;
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (x != y)
        for (std::size_t z = x + 1; z < n; ++z)
          if (z != y) hi_bound = std::max(hi_bound, t.d(y, x, z));
  std::int64_t lo = 0, hi = hi_bound;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (p0_p1_hold(mid)) hi = mid;
    else lo = mid + 1;
  }
  rep.theta_empirical = lo;

  std::int64_t gl = translation_length(model, fam.base_element);
  rep.theta_formula =
      (2 * rep.d_empirical + std::max<std::int64_t>({1, opt.n_2d1, opt.n_k})) * gl;
  rep.caveats.push_back("theta_formula uses estimated persistence constants");
  rep.caveats.push_back("raw closest-point projections (no BBFS modification)");

  rep.theta_checked = opt.theta >= 0 ? opt.theta : rep.theta_empirical;
  rep.p0_pass = rep.d_empirical <= rep.theta_checked;
  rep.p1_pass = p0_p1_hold(rep.theta_checked);

  rep.p2_counts.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = x + 1; z < n; ++z) {
      std::int64_t count = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (u == x || u == z) continue;
        if (t.d(u, x, z) > rep.theta_checked) ++count;
      }
      rep.p2_counts[x * n + z] = count;
      rep.p2_max_count = std::max(rep.p2_max_count, count);
    }
  return rep;
}

/// Searches the pool for automorphisms whose formal action stabilises two
/// distinct classes at once. For a pure free group with root(g) = g the
/// stabiliser-intersection claim forces any such automorphism to fix the
/// translated base element up to inversion; violations are failures.
inline CheckReport stabilizer_intersection_probe(const TreeModel& model,
                                                 const ProjectionFamily& fam,
                                                 const ReducedWord& g,
                                                 const std::vector<Automorphism>& probe_pool) {
  const auto& pres = model.pres;
  if (fam.size() < 2)
    throw std::invalid_argument("stabilizer_intersection_probe: need at least 2 classes");
  if (g != fam.base_element)
    throw std::invalid_argument("stabilizer_intersection_probe: base element mismatch");
  CheckReport r;
  r.lemma_id = "stabilizer-intersection";
  bool strict = pres.num_finite() == 0 && root(pres, g).exponent == 1;
  json witnesses = json::array();
  bool ok = true;
  std::int64_t max_stabilized = 0;
  for (std::size_t pi = 0; pi < probe_pool.size(); ++pi) {
    const Automorphism& phi = probe_pool[pi];
    std::vector<std::size_t> stabilized;
    std::vector<ReducedWord> translated;
    for (std::size_t c = 0; c < fam.size(); ++c) {
      const Automorphism& psi = fam.pool[fam.representatives[c].aut_index];
      ReducedWord w = apply(pres, inverse(pres, psi),
                            apply(pres, phi, fam.representatives[c].image));
      if (in_elementary_closure(pres, w, g)) {
        stabilized.push_back(c);
        translated.push_back(w);
      }
    }
    max_stabilized = std::max<std::int64_t>(max_stabilized, std::int64_t(stabilized.size()));
    if (stabilized.size() >= 2) {
      bool consistent = true;
      if (strict)
        for (const ReducedWord& w : translated)
          if (w != g && w != inv(pres, g)) consistent = false;
      witnesses.push_back({{"probe_index", pi},
                           {"stabilized_classes", stabilized},
                           {"consistent", consistent}});
      if (!consistent) ok = false;
    }
  }
  r.computed = {{"max_classes_stabilized", max_stabilized},
                {"witness_count", witnesses.size()},
                {"strict_mode", strict}};
  r.witness = {{"witnesses", witnesses}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

}  // namespace tact
