#pragma once

#include <array>
#include <atomic>
#include <cstring>

#include "tact/fold_checks.hpp"
#include "tact/persistence.hpp"
#include "tact/report.hpp"

namespace tact {

// --- compact F2 machinery for the exhaustive sweeps --------------------------
// Letters packed as int8: a=0, A=1, b=2, B=3; inverse flips the low bit.

namespace f2sweep {

using PackedWord = std::vector<std::int8_t>;

inline std::int8_t pack_letter(const Letter& l) {
  return std::int8_t(l.factor * 2 + (l.exp < 0 ? 1 : 0));
}
inline std::int8_t inv_letter(std::int8_t c) { return c ^ 1; }

inline PackedWord pack(const ReducedWord& w) {
  PackedWord out;
  out.reserve(w.size());
  for (const Letter& l : w.letters) out.push_back(pack_letter(l));
  return out;
}

struct WordData {
  PackedWord word;
  PackedWord core;      // cyclic core
  PackedWord inv_core;  // core^{-1}
  PackedWord conj;      // word = conj core conj^{-1}
  std::int32_t root_id = 0;
  std::int64_t len = 0;  // translation length = |core|
};

/// All nonidentity reduced words of length <= max_len in F2, with cyclic data
/// and interned root identifiers (equal ids <=> equal axes).
inline std::vector<WordData> enumerate_f2(const GroupPresentation& pres, int max_len) {
  std::vector<WordData> out;
  std::map<std::string, std::int32_t> root_ids;
  std::vector<Letter> letters;
  std::function<void()> rec = [&]() {
    if (!letters.empty()) {
      ReducedWord w{letters};
      WordData d;
      d.word = pack(w);
      auto cd = cyclic_reduce(pres, w);
      d.core = pack(cd.core);
      d.inv_core = pack(inv(pres, cd.core));
      d.conj = pack(cd.conjugator);
      d.len = std::int64_t(cd.core.size());
      ReducedWord r = root(pres, w).root;
      ReducedWord ri = inv(pres, r);
      std::string key = word_str(pres, word_less(pres, r, ri) ? r : ri);
      auto [it, fresh] = root_ids.emplace(key, std::int32_t(root_ids.size()));
      (void)fresh;
      d.root_id = it->second;
      out.push_back(std::move(d));
    }
    if (int(letters.size()) == max_len) return;
    for (int f = 0; f < 2; ++f)
      for (int s : {1, -1}) {
        if (!letters.empty() && letters.back().factor == f && letters.back().exp == -s) continue;
        letters.push_back(Letter{f, s});
        rec();
        letters.pop_back();
      }
  };
  rec();
  return out;
}

/// Scratch buffers reused across a sweep; one per worker.
struct Scratch {
  std::vector<std::int8_t> w;    // conj_g^{-1} conj_h
  std::vector<std::int8_t> ray;  // w * core_h^{+-K}
};

inline void append_cancel(std::vector<std::int8_t>& buf, std::int8_t c) {
  if (!buf.empty() && buf.back() == inv_letter(c)) buf.pop_back();
  else buf.push_back(c);
}

/// Longest prefix of `y` matching the periodic ray of `period`.
inline std::int64_t ray_match(const std::vector<std::int8_t>& y, const PackedWord& period) {
  std::size_t n = y.size(), p = period.size();
  std::size_t i = 0;
  while (i < n && y[i] == period[i % p]) ++i;
  return std::int64_t(i);
}

/// Exact overlap length of Axis(g) with Axis(h) for distinct axes; feet of
/// far points of the h-line measured on the g-line. Allocation-free after
/// warmup.
inline std::int64_t overlap_length(const WordData& g, const WordData& h, Scratch& s) {
  s.w.clear();
  for (auto it = g.conj.rbegin(); it != g.conj.rend(); ++it) s.w.push_back(inv_letter(*it));
  for (std::int8_t c : h.conj) append_cancel(s.w, c);
  std::int64_t cap = 4 * (g.len + h.len);
  std::int64_t far = std::int64_t(s.w.size()) + cap + 2 * h.len + 2;
  std::int64_t reps = (far + h.len - 1) / h.len;
  std::int64_t p_pos[2];
  for (int dir = 0; dir < 2; ++dir) {
    const PackedWord& period = dir == 0 ? h.core : h.inv_core;
    s.ray = s.w;
    for (std::int64_t r = 0; r < reps; ++r)
      for (std::int8_t c : period) append_cancel(s.ray, c);
    std::int64_t plus = ray_match(s.ray, g.core);
    std::int64_t minus = ray_match(s.ray, g.inv_core);
    p_pos[dir] = plus >= minus ? plus : -minus;
  }
  return std::abs(p_pos[0] - p_pos[1]);
}

}  // namespace f2sweep

namespace oracle_free {

inline std::vector<ReducedWord> all_f2_words(int max_len) {
  GroupPresentation pres(2);
  std::vector<ReducedWord> out;
  std::vector<Letter> letters;
  std::function<void()> rec = [&]() {
    if (!letters.empty()) out.push_back(ReducedWord{letters});
    if (int(letters.size()) == max_len) return;
    for (int f = 0; f < 2; ++f)
      for (int s : {1, -1}) {
        if (!letters.empty() && letters.back().factor == f && letters.back().exp == -s) continue;
        letters.push_back(Letter{f, s});
        rec();
        letters.pop_back();
      }
  };
  rec();
  return out;
}

/// Nonidentity words of the free product with syllable length <= max_syl.
inline std::vector<ReducedWord> all_product_words(const GroupPresentation& pres, int max_syl) {
  std::vector<ReducedWord> out;
  std::vector<Letter> letters;
  std::function<void(int)> rec = [&](int syl) {
    if (!letters.empty()) out.push_back(ReducedWord{letters});
    if (syl == max_syl) return;
    for (int f = 0; f < pres.num_factors(); ++f) {
      if (!letters.empty() && letters.back().factor == f) continue;
      if (pres.is_free_factor(f)) continue;  // factors here are finite cyclic
      for (int e = 1; e < pres.order_of(f); ++e) {
        letters.push_back(Letter{f, e});
        rec(syl + 1);
        letters.pop_back();
      }
    }
  };
  rec(0);
  return out;
}


inline ReducedWord random_reduced(const GroupPresentation& pres, std::mt19937_64& rng,
                                  int length) {
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

}  // namespace oracle_free

// --- exhaustive acceptance sweeps --------------------------------------------

/// WPD overlap criterion at (L, N) = (1, 1), exhaustive over nonidentity F2
/// words of length <= max_len: whenever the axes of g and h share at least
/// 3 max(||g||, ||h||) edges (or coincide), h must lie in E(g).
inline CheckReport overlap_lemma_sweep_f2(int max_len, int workers) {
  GroupPresentation pres(2);
  auto words = f2sweep::enumerate_f2(pres, max_len);
  std::int64_t n = std::int64_t(words.size());
  std::atomic<std::int64_t> applicable{0}, members{0}, failures{0}, checked{0};
  parallel_for(n, workers, [&](std::int64_t begin, std::int64_t end) {
    f2sweep::Scratch scratch;
    scratch.w.reserve(64);
    scratch.ray.reserve(256);
    std::int64_t local_app = 0, local_mem = 0, local_fail = 0, local_checked = 0;
    GroupPresentation local_pres(2);
    for (std::int64_t i = begin; i < end; ++i) {
      const auto& g = words[std::size_t(i)];
      for (std::int64_t j = 0; j < n; ++j) {
        const auto& h = words[std::size_t(j)];
        ++local_checked;
        std::int64_t threshold = 3 * std::max(g.len, h.len);
        bool member_needed;
        if (g.root_id == h.root_id) {
          member_needed = true;  // shared axis: infinite overlap
        } else {
          std::int64_t ov = f2sweep::overlap_length(g, h, scratch);
          if (ov < threshold) continue;
          member_needed = true;
        }
        if (member_needed) {
          ++local_app;
          // exact membership: h root(g) h^{-1} = root(g)^{+-1}
          ReducedWord gw, hw;
          for (std::int8_t c : g.word)
            gw.letters.push_back(Letter{c / 2, (c & 1) ? -1 : 1});
          for (std::int8_t c : h.word)
            hw.letters.push_back(Letter{c / 2, (c & 1) ? -1 : 1});
          if (in_elementary_closure(local_pres, hw, gw)) ++local_mem;
          else ++local_fail;
        }
      }
    }
    applicable += local_app;
    members += local_mem;
    failures += local_fail;
    checked += local_checked;
  });
  CheckReport r;
  r.lemma_id = "wpd-overlap-exhaustive-f2";
  r.inputs = {{"max_len", max_len}, {"L", 1}, {"N", 1}};
  r.computed = {{"pairs", checked.load()},
                {"applicable", applicable.load()},
                {"members", members.load()},
                {"exceptions", failures.load()}};
  r.verdict = failures.load() == 0 ? "pass" : "fail";
  return r;
}

/// Paulin's bridge lemma, exhaustive over F2 words of length <= max_len with
/// disjoint characteristic sets.
inline CheckReport paulin_sweep_f2(int max_len, int workers) {
  TreeModel model = cayley_tree(2);
  auto words = oracle_free::all_f2_words(max_len);
  std::int64_t n = std::int64_t(words.size());
  std::atomic<std::int64_t> disjoint_pairs{0}, failures{0};
  parallel_for(n, workers, [&](std::int64_t begin, std::int64_t end) {
    TreeModel local = cayley_tree(2);
    std::int64_t local_dis = 0, local_fail = 0;
    for (std::int64_t i = begin; i < end; ++i)
      for (std::int64_t j = 0; j < n; ++j) {
        const ReducedWord& g = words[std::size_t(i)];
        const ReducedWord& h = words[std::size_t(j)];
        if (char_sets_meet(local, g, h)) continue;
        ++local_dis;
        if (bridge_product_check(local, g, h).verdict != "pass") ++local_fail;
      }
    disjoint_pairs += local_dis;
    failures += local_fail;
  });
  CheckReport r;
  r.lemma_id = "paulin-exhaustive-f2";
  r.inputs = {{"max_len", max_len}};
  r.computed = {{"disjoint_pairs", disjoint_pairs.load()}, {"failures", failures.load()}};
  r.verdict = failures.load() == 0 ? "pass" : "fail";
  return r;
}

/// Paulin's bridge lemma over a free product, exhaustive in syllable length.
inline CheckReport paulin_sweep_product(const GroupPresentation& pres, int max_syl) {
  TreeModel model = bass_serre_tree(pres);
  auto words = oracle_free::all_product_words(pres, max_syl);
  std::int64_t disjoint_pairs = 0, failures = 0;
  for (const auto& g : words)
    for (const auto& h : words) {
      if (char_sets_meet(model, g, h)) continue;
      ++disjoint_pairs;
      if (bridge_product_check(model, g, h).verdict != "pass") ++failures;
    }
  CheckReport r;
  r.lemma_id = "paulin-exhaustive-product";
  r.inputs = {{"presentation", pres.describe()}, {"max_syllables", max_syl}};
  r.computed = {{"disjoint_pairs", disjoint_pairs}, {"failures", failures}};
  r.verdict = failures == 0 ? "pass" : "fail";
  return r;
}

// --- randomized instance suites ----------------------------------------------

/// Random instances of the axis-intersection lemma, per branch.
inline CheckReport axis_intersection_suite(const TreeModel& model, int per_branch, int bound,
                                           std::uint64_t seed) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "axis-intersection-suite";
  r.inputs = {{"per_branch", per_branch}, {"exponent_bound", bound}};
  std::int64_t done_disjoint = 0, done_touching = 0, done_overlap = 0, failures = 0;
  auto rng = make_rng(seed);
  std::int64_t guard = 0;
  while ((done_disjoint < per_branch || done_touching < per_branch ||
          done_overlap < per_branch) &&
         ++guard < per_branch * 400) {
    ReducedWord g = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 5)));
    ReducedWord h = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 5)));
    if (g.empty() || h.empty()) continue;
    if (translation_length(model, g) == 0 || translation_length(model, h) == 0) continue;
    if (same_axis(pres, g, h)) continue;
    auto ov = axis_overlap(model, g, h);
    std::int64_t* slot;
    if (ov.kind == OverlapKind::Disjoint) slot = &done_disjoint;
    else if (ov.overlap_length() == 0) slot = &done_touching;
    else slot = &done_overlap;
    if (*slot >= per_branch) continue;
    ++*slot;
    if (axis_intersection_lemma_check(model, g, h, bound).verdict != "pass") ++failures;
  }
  r.computed = {{"disjoint", done_disjoint},
                {"touching", done_touching},
                {"nondegenerate", done_overlap},
                {"failures", failures}};
  bool filled = done_disjoint >= per_branch && done_touching >= per_branch &&
                done_overlap >= per_branch;
  r.verdict = (failures == 0 && filled) ? "pass" : "fail";
  return r;
}

/// Far-projection instances constructed to satisfy the gap condition.
inline CheckReport far_projection_suite(const TreeModel& model, int samples, std::uint64_t seed) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "far-projections-suite";
  r.inputs = {{"samples", samples}};
  auto rng = make_rng(seed);
  std::int64_t done = 0, failures = 0, skipped = 0;
  std::int64_t guard = 0;
  while (done < samples && ++guard < samples * 200) {
    ReducedWord g = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 4)));
    if (g.empty() || translation_length(model, g) == 0) continue;
    std::int64_t k = uniform_int(rng, 3, 6);
    ReducedWord c1 = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 3)));
    ReducedWord c2 = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 3)));
    if (c1.empty() || c2.empty()) continue;
    ReducedWord h = conj(pres, mul(pres, pow(pres, g, -k), oracle_free::random_reduced(pres, rng, 2)), c1);
    ReducedWord h2 = conj(pres, mul(pres, pow(pres, g, k), oracle_free::random_reduced(pres, rng, 2)), c2);
    if (h.empty() || h2.empty()) continue;
    if (translation_length(model, h) == 0 || translation_length(model, h2) == 0) continue;
    if (same_axis(pres, g, h) || same_axis(pres, g, h2)) continue;
    auto rr = far_projections_check(model, g, h, h2);
    if (rr.verdict == "skipped") {
      ++skipped;
      continue;
    }
    ++done;
    if (rr.verdict != "pass") ++failures;
  }
  r.computed = {{"instances", done}, {"skipped", skipped}, {"failures", failures}};
  r.verdict = (failures == 0 && done >= samples) ? "pass" : "fail";
  return r;
}

/// Direction-lemma instances: biased toward strict containments.
inline CheckReport direction_suite(const TreeModel& model, int samples, std::uint64_t seed) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "direction-suite";
  r.inputs = {{"samples", samples}};
  auto rng = make_rng(seed);
  std::int64_t done = 0, failures = 0;
  std::int64_t guard = 0;
  while (done < samples && ++guard < samples * 100) {
    ReducedWord g = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 5)));
    if (g.empty() || translation_length(model, g) == 0) continue;
    AxisDescriptor ax = axis_of(model, g);
    Vertex x = axis_point(model, ax, uniform_int(rng, -3, 3));
    Vertex y = step(model, x, act(model, g, x), 1);
    auto rr = direction_lemma_check(model, Direction{x, y}, g);
    if (rr.verdict == "skipped") continue;
    ++done;
    if (rr.verdict != "pass") ++failures;
  }
  r.computed = {{"instances", done}, {"failures", failures}};
  r.verdict = (failures == 0 && done >= samples) ? "pass" : "fail";
  return r;
}

/// Random fold decompositions and the BBT bound.
inline CheckReport folds_suite(const GroupPresentation& pres, int samples, int bbt_triples,
                               std::uint64_t seed) {
  CheckReport r;
  r.lemma_id = "folds-suite";
  r.inputs = {{"samples", samples}, {"bbt_triples", bbt_triples}};
  std::int64_t fail_decompose = 0, fail_bbt = 0;
  for (int i = 0; i < samples; ++i) {
    GraphMorphism f = random_morphism(pres, derive_seed(seed, std::uint64_t(i)));
    if (fold_decompose_check(pres, f).verdict != "pass") ++fail_decompose;
    if (bbt_soundness_check(pres, f, bbt_triples, 8, derive_seed(seed ^ 0xbb7, std::uint64_t(i)))
            .verdict != "pass")
      ++fail_bbt;
  }
  r.computed = {{"decomposition_failures", fail_decompose}, {"bbt_failures", fail_bbt}};
  r.verdict = (fail_decompose == 0 && fail_bbt == 0) ? "pass" : "fail";
  return r;
}

/// Collapse-counting inequalities across random single-edge collapses.
inline CheckReport collapse_counting_suite(const GroupPresentation& pres, int morphisms,
                                           int pairs, std::uint64_t seed) {
  CheckReport r;
  r.lemma_id = "collapse-counting-suite";
  r.inputs = {{"morphisms", morphisms}, {"pairs", pairs}};
  std::int64_t done = 0, failures = 0, skipped = 0;
  auto rng = make_rng(seed);
  for (int mi = 0; mi < morphisms; ++mi) {
    MarkedGraph s;
    switch (mi % 3) {
      case 0: s = theta_graph(); break;
      case 1: s = dumbbell_graph(); break;
      default: {
        auto r2 = make_rng(derive_seed(seed, std::uint64_t(900 + mi)));
        s = random_marked_graph(pres, r2, 6);
        break;
      }
    }
    std::vector<int> non_loops;
    for (int k = 0; k < s.num_edges(); ++k)
      if (s.from(2 * k) != s.to(2 * k)) non_loops.push_back(k);
    if (non_loops.empty()) continue;
    int k = non_loops[std::size_t(uniform_int(rng, 0, std::int64_t(non_loops.size()) - 1))];
    GraphMorphism f = collapse_edge_morphism(pres, s, k);
    int per = pairs / morphisms + 1;
    int quota = 0;
    for (int guard = 0; quota < per && guard < per * 50; ++guard) {
      ReducedWord g = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 6)));
      ReducedWord h = oracle_free::random_reduced(pres, rng, int(uniform_int(rng, 1, 6)));
      if (g.empty() || h.empty()) continue;
      auto rep = collapse_counting_check(pres, f, g, h);
      if (rep.verdict == "skipped") {
        ++skipped;
        continue;
      }
      ++done;
      ++quota;
      if (rep.verdict != "pass") ++failures;
    }
  }
  r.computed = {{"pairs_checked", done}, {"skipped", skipped}, {"failures", failures}};
  r.verdict = (failures == 0 && done >= pairs) ? "pass" : "fail";
  return r;
}

}  // namespace tact
