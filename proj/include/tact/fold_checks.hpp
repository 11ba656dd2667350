#pragma once

#include "tact/lemma_checks.hpp"
#include "tact/morphism_gen.hpp"

namespace tact {

/// Decomposes f, replays the move log and compares with the target; the move
/// count is bounded by three moves per edgelet of the subdivided source.
inline CheckReport fold_decompose_check(const GroupPresentation& pres, const GraphMorphism& f) {
  CheckReport r;
  r.lemma_id = "fold-decomposition";
  std::int64_t edgelets = 0;
  for (int k = 0; k < f.source.num_edges(); ++k)
    edgelets += std::max<std::int64_t>(1, std::int64_t(f.edge_map[std::size_t(2 * k)].size()));
  std::int64_t budget = 3 * edgelets;
  FoldSequence seq = fold_decompose(f, pres);
  bool reproduced = replay_reproduces_target(seq, f);
  bool within_budget = std::int64_t(seq.moves.size()) <= budget;
  r.computed = {{"moves", seq.moves.size()},
                {"move_budget", budget},
                {"rescale", seq.rescale.str()},
                {"reproduced_markings", reproduced}};
  r.verdict = (reproduced && within_budget) ? "pass" : "fail";
  return r;
}

/// Monotone complexity along the replay: after the subdivision prefix,
/// (edge count, total length) never increases lexicographically.
inline bool fold_complexity_monotone(const FoldSequence& seq, const MarkedGraph& source) {
  bool ok = true;
  bool past_subdivisions = false;
  int prev_edges = -1;
  Rational prev_len;
  MarkedGraph g = source;
  for (Rational& l : g.elen) l *= seq.rescale;
  auto snapshot = [&]() {
    int edges = g.num_edges();
    Rational len = volume(g);
    if (past_subdivisions && prev_edges >= 0) {
      if (edges > prev_edges) ok = false;
      else if (edges == prev_edges && len > prev_len) ok = false;
    }
    prev_edges = edges;
    prev_len = len;
  };
  snapshot();
  for (const FoldMove& mv : seq.moves) {
    if (mv.kind != FoldMove::Kind::Subdivide) past_subdivisions = true;
    apply_fold_move(g, mv);
    snapshot();
  }
  return ok;
}

/// bbt_empirical <= bbt_bound for the given morphism.
inline CheckReport bbt_soundness_check(const GroupPresentation& pres, const GraphMorphism& f,
                                       int samples, int length_budget, std::uint64_t seed) {
  (void)pres;
  CheckReport r;
  r.lemma_id = "bbt-bound";
  Rational bound = bbt_bound(f);
  Rational emp = bbt_empirical(f, samples, length_budget, seed);
  r.computed = {{"bbt_empirical", emp.str()},
                {"bbt_bound", bound.str()},
                {"lipschitz", lipschitz_constant(f).str()},
                {"volume", volume(f.source).str()}};
  r.verdict = emp <= bound ? "pass" : "fail";
  return r;
}

/// Fundamental-domain counts across a single-edge collapse: n_S <= n_T <= n_S + 2.
inline CheckReport collapse_counting_check(const GroupPresentation& pres, const GraphMorphism& f,
                                           const ReducedWord& g, const ReducedWord& h) {
  CheckReport r;
  r.lemma_id = "collapse-counting";
  r.inputs = {{"g", word_str(pres, g)}, {"h", word_str(pres, h)}};
  if (g.empty() || h.empty())
    throw std::invalid_argument("collapse_counting_check: identity input");
  auto ax_s = cover_axis(f.source, g);
  auto ax_t = cover_axis(f.target, g);
  if (!ax_s || !ax_t || ax_t->length.is_zero()) {
    r.verdict = "skipped";
    r.reason = "g not loxodromic in both covers";
    return r;
  }
  if (same_axis_in_group(pres, g, h)) {
    r.verdict = "skipped";
    r.reason = "g and h share an axis; counts unbounded";
    r.computed = {{"unbounded", true}};
    return r;
  }
  auto n_s = cover_fundamental_domains(f.source, pres, g, h);
  auto n_t = cover_fundamental_domains(f.target, pres, g, h);
  if (!n_s || !n_t) {
    r.verdict = "skipped";
    r.reason = "axis coincidence during counting";
    return r;
  }
  r.computed = {{"n_source", *n_s}, {"n_target", *n_t}};
  r.verdict = (*n_s <= *n_t && *n_t <= *n_s + 2) ? "pass" : "fail";
  return r;
}

}  // namespace tact
