#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tact/lemma_checks.hpp"
#include "tact/overlap.hpp"

namespace tact {

/// Builds a loxodromic partner h = g^m t whose axis shares at least m
/// fundamental domains with Axis(g) and which stays outside E(g). The tail is
/// chosen so the product neither cancels into the g^m prefix nor wraps.
inline ReducedWord generate_partner(const TreeModel& model, const ReducedWord& g, std::int64_t m,
                                    std::uint64_t seed) {
  const auto& pres = model.pres;
  if (m < 1) throw std::invalid_argument("generate_partner: m must be positive");
  if (!is_cyclically_reduced(pres, g) || !is_loxodromic(model, g))
    throw std::invalid_argument("generate_partner: g must be cyclically reduced and loxodromic");
  std::int64_t len = translation_length(model, g);
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto rng = make_rng(derive_seed(seed, std::uint64_t(attempt)));
    int tail_len = int(uniform_int(rng, 2, 2 * int(g.size()) + 2));
    std::vector<Letter> tail;
    for (int i = 0; i < tail_len; ++i) {
      for (int tries = 0; tries < 64; ++tries) {
        int f = int(uniform_int(rng, 0, pres.num_factors() - 1));
        Letter l;
        if (pres.is_free_factor(f)) l = Letter{f, uniform_int(rng, 0, 1) ? 1 : -1};
        else l = Letter{f, int(uniform_int(rng, 1, pres.order_of(f) - 1))};
        const Letter* prev = tail.empty() ? &g.letters.back() : &tail.back();
        if (prev->factor == l.factor &&
            (!pres.is_free_factor(l.factor) || prev->exp == -l.exp))
          continue;
        if (i == tail_len - 1) {
          const Letter& first = g.letters.front();
          if (first.factor == l.factor &&
              (!pres.is_free_factor(l.factor) || first.exp == -l.exp))
            continue;
        }
        tail.push_back(l);
        break;
      }
      if (int(tail.size()) != i + 1) break;
    }
    if (int(tail.size()) != tail_len) continue;
    ReducedWord t{tail};
    ReducedWord h = mul(pres, pow(pres, g, m), t);
    if (h.size() != g.size() * std::size_t(m) + t.size()) continue;  // cancellation
    if (!is_cyclically_reduced(pres, h) || !is_loxodromic(model, h)) continue;
    if (in_elementary_closure(pres, h, g)) continue;
    auto ov = axis_overlap(model, g, h);
    if (ov.kind != OverlapKind::Overlap || ov.overlap_length() < m * len) continue;
    return h;
  }
  throw std::runtime_error("generate_partner: tail construction failed");
}

struct PersistenceExperiment {
  ReducedWord g;
  std::vector<std::int64_t> c_values{1, 2, 3};
  std::vector<Automorphism> pool;
  int trials_per_m = 4;
  std::int64_t m_max = 6;
  std::uint64_t seed = 1;
};

struct PersistenceFailure {
  std::size_t pool_index;
  ReducedWord h;
  std::int64_t m_bucket;
  std::int64_t c;
  std::int64_t overlap_in;
  std::int64_t overlap_out;
  std::int64_t required;
};

struct PersistenceTrialRow {
  std::size_t pool_index;
  std::int64_t m_bucket;
  std::int64_t overlap_in;
  std::int64_t overlap_out;
  std::int64_t image_length;
};

struct PersistenceEstimate {
  std::map<std::int64_t, std::int64_t> n_hat;  // C -> smallest adequate m; -1 if none
  std::vector<PersistenceFailure> failures;
  std::vector<PersistenceTrialRow> rows;
  std::vector<std::string> caveats;
};

/// Overlap of Axis(a) and Axis(b), with same-axis flattened to a huge value.
inline std::int64_t overlap_amount(const TreeModel& model, const ReducedWord& a,
                                   const ReducedWord& b) {
  auto ov = axis_overlap(model, a, b);
  if (ov.kind == OverlapKind::SameAxis) return INT64_MAX / 4;
  if (ov.kind == OverlapKind::Disjoint) return 0;
  return ov.overlap_length();
}

/// Estimates the persistence constants n(C): for each C, the least m such
/// that every trial with an m-fundamental-domain overlap kept an overlap of
/// at least C ||phi(g)|| under every pool automorphism. Singleton partner
/// sets and a bounded pool only; failures are data, not errors.
inline PersistenceEstimate estimate(const TreeModel& model, const PersistenceExperiment& exp) {
  const auto& pres = model.pres;
  if (exp.pool.empty()) throw std::invalid_argument("estimate: empty automorphism pool");
  std::int64_t len = translation_length(model, exp.g);
  if (len == 0) throw std::invalid_argument("estimate: base element must be loxodromic");
  PersistenceEstimate out;
  out.caveats.push_back("singleton partner sets only");
  out.caveats.push_back("pool-bounded quantifier over Aut");
  std::map<std::int64_t, std::map<std::int64_t, bool>> bucket_ok;  // m -> C -> all good
  for (std::int64_t c : exp.c_values)
    for (std::int64_t m = 1; m <= exp.m_max; ++m) bucket_ok[m][c] = true;

  for (std::int64_t m = 1; m <= exp.m_max; ++m) {
    for (int trial = 0; trial < exp.trials_per_m; ++trial) {
      ReducedWord h = generate_partner(model, exp.g, m,
                                       derive_seed(exp.seed, std::uint64_t(m * 1000 + trial)));
      std::int64_t overlap_in = overlap_amount(model, exp.g, h);
      std::int64_t m_bucket = overlap_in / len;
      for (std::size_t pi = 0; pi < exp.pool.size(); ++pi) {
        ReducedWord img_g = apply(pres, exp.pool[pi], exp.g);
        ReducedWord img_h = apply(pres, exp.pool[pi], h);
        std::int64_t img_len = translation_length(model, img_g);
        std::int64_t overlap_out = overlap_amount(model, img_g, img_h);
        out.rows.push_back(
            PersistenceTrialRow{pi, m_bucket, overlap_in, overlap_out, img_len});
        for (std::int64_t c : exp.c_values) {
          if (m_bucket > exp.m_max) continue;
          if (overlap_out >= c * img_len) continue;
          if (m_bucket >= 1 && m_bucket <= exp.m_max) bucket_ok[m_bucket][c] = false;
          out.failures.push_back(PersistenceFailure{pi, h, m_bucket, c, overlap_in, overlap_out,
                                                    c * img_len});
        }
      }
    }
  }
  for (std::int64_t c : exp.c_values) {
    std::int64_t best = -1;
    for (std::int64_t m = exp.m_max; m >= 1; --m) {
      if (!bucket_ok[m][c]) break;
      best = m;
    }
    out.n_hat[c] = best;
  }
  // failing trials below the located threshold are expected data; a failure is
  // a counterexample only when it blocks n_hat on the tested range
  std::vector<PersistenceFailure> real;
  for (const auto& f : out.failures) {
    std::int64_t nh = out.n_hat[f.c];
    if (nh < 0 || f.m_bucket >= nh) real.push_back(f);
  }
  out.failures = std::move(real);
  return out;
}

inline json estimate_to_json(const TreeModel& model, const PersistenceExperiment& exp,
                             const PersistenceEstimate& est) {
  const auto& pres = model.pres;
  json fails = json::array();
  for (const auto& f : est.failures)
    fails.push_back({{"pool_index", f.pool_index},
                     {"h", word_str(pres, f.h)},
                     {"m_bucket", f.m_bucket},
                     {"C", f.c},
                     {"overlap_in", f.overlap_in},
                     {"overlap_out", f.overlap_out},
                     {"required", f.required}});
  json nh = json::object();
  for (const auto& [c, m] : est.n_hat) nh[std::to_string(c)] = m;
  return json{{"g", word_str(pres, exp.g)},
              {"C_range", exp.c_values},
              {"pool_size", exp.pool.size()},
              {"trials_per_m", exp.trials_per_m},
              {"m_max", exp.m_max},
              {"n_hat", nh},
              {"failures", fails},
              {"restriction_caveats", est.caveats}};
}

inline std::string trials_to_csv(const PersistenceEstimate& est) {
  std::string s = "pool_index,m_bucket,overlap_in,overlap_out,image_length\n";
  for (const auto& r : est.rows)
    s += std::to_string(r.pool_index) + "," + std::to_string(r.m_bucket) + "," +
         std::to_string(r.overlap_in) + "," + std::to_string(r.overlap_out) + "," +
         std::to_string(r.image_length) + "\n";
  return s;
}

/// The negative control: g = a is a basis element, h_N = a^N b overlaps
/// Axis(a) in N fundamental domains, and the twist b -> a^{-N} b sends h_N to
/// b, collapsing the overlap to a point, for every N.
inline CheckReport basis_element_counterexample(const TreeModel& model, int N) {
  const auto& pres = model.pres;
  if (pres.free_rank < 2 || pres.num_finite() != 0)
    throw std::invalid_argument("basis_element_counterexample: needs a free group of rank >= 2");
  if (N < 1) throw std::invalid_argument("basis_element_counterexample: N must be positive");
  CheckReport r;
  r.lemma_id = "basis-dehn-twist";
  ReducedWord a = generator(pres, 0);
  ReducedWord b = generator(pres, 1);
  json rows = json::array();
  bool ok = true;
  for (int n = 1; n <= N; ++n) {
    Automorphism twist;
    for (int i = 0; i < n; ++i) twist.moves.push_back(moves::LeftMult{1, 0, -1});
    ReducedWord h = mul(pres, pow(pres, a, n), b);
    ReducedWord img_g = apply(pres, twist, a);
    ReducedWord img_h = apply(pres, twist, h);
    std::int64_t in = overlap_amount(model, a, h);
    std::int64_t outv = overlap_amount(model, img_g, img_h);
    bool row_ok = img_g == a && img_h == b && in >= n && outv == 0;
    ok = ok && row_ok;
    rows.push_back({{"N", n}, {"overlap_in", in}, {"overlap_out", outv}});
  }
  r.inputs = {{"g", "a"}, {"N_max", N}};
  r.computed = {{"rows", rows}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

/// Contrast sweep for the same twists applied to a generic base element: the
/// image overlap never drops below ||phi(g)||.
inline CheckReport generic_contrast_sweep(const TreeModel& model, const ReducedWord& g, int N,
                                          std::int64_t m, std::uint64_t seed) {
  const auto& pres = model.pres;
  CheckReport r;
  r.lemma_id = "generic-dehn-twist-contrast";
  ReducedWord h = generate_partner(model, g, m, seed);
  json rows = json::array();
  bool ok = true;
  for (int n = 1; n <= N; ++n) {
    Automorphism twist;
    for (int i = 0; i < n; ++i) twist.moves.push_back(moves::LeftMult{1, 0, -1});
    ReducedWord img_g = apply(pres, twist, g);
    ReducedWord img_h = apply(pres, twist, h);
    std::int64_t img_len = translation_length(model, img_g);
    std::int64_t outv = overlap_amount(model, img_g, img_h);
    if (outv < img_len) ok = false;
    rows.push_back({{"N", n}, {"overlap_out", outv}, {"image_length", img_len}});
  }
  r.inputs = {{"g", word_str(pres, g)}, {"m", m}, {"N_max", N}};
  r.computed = {{"rows", rows}};
  r.verdict = ok ? "pass" : "fail";
  return r;
}

}  // namespace tact
