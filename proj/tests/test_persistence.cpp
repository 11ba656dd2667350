#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tact/persistence.hpp"

using namespace tact;

namespace {
const TreeModel& f2_tree() {
  static TreeModel m = cayley_tree(2);
  return m;
}
}  // namespace

TEST_CASE("partner generation") {
  const auto& m = f2_tree();
  const auto& p = m.pres;
  ReducedWord g = parse_word(p, "ab");
  for (std::int64_t mm : {1, 3, 5}) {
    ReducedWord h = generate_partner(m, g, mm, 7);
    CHECK(is_loxodromic(m, h));
    CHECK(!in_elementary_closure(p, h, g));
    auto ov = axis_overlap(m, g, h);
    REQUIRE(ov.kind == OverlapKind::Overlap);
    CHECK(ov.overlap_length() >= mm * 2);
  }
  CHECK_THROWS_AS(generate_partner(m, g, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(generate_partner(m, parse_word(p, "abA"), 2, 7), std::invalid_argument);
  // determinism
  CHECK(generate_partner(m, g, 3, 42) == generate_partner(m, g, 3, 42));
}

TEST_CASE("estimate on a small pool") {
  const auto& m = f2_tree();
  const auto& p = m.pres;
  PersistenceExperiment exp;
  exp.g = sample_candidate_generic(p, 2024, 8);
  exp.pool = nielsen_pool(p, 2);
  exp.c_values = {1, 2, 3};
  exp.trials_per_m = 3;
  exp.m_max = 6;
  exp.seed = 5;
  auto est = estimate(m, exp);
  // n_hat total and nondecreasing in C
  std::int64_t prev = 0;
  for (std::int64_t c : exp.c_values) {
    REQUIRE(est.n_hat.count(c));
    CHECK(est.n_hat[c] >= 1);
    CHECK(est.n_hat[c] >= prev);
    prev = est.n_hat[c];
    CHECK(est.n_hat[c] >= c);  // identity automorphism forces m >= C
  }
  CHECK(est.failures.empty());

  json j = estimate_to_json(m, exp, est);
  CHECK(j["n_hat"].size() == 3);
  CHECK(j["restriction_caveats"].size() >= 2);
  std::string csv = trials_to_csv(est);
  CHECK(csv.find("pool_index") == 0);
}

TEST_CASE("identity and inner automorphisms never fail") {
  const auto& m = f2_tree();
  const auto& p = m.pres;
  ReducedWord g = sample_candidate_generic(p, 99, 8);
  std::int64_t len = translation_length(m, g);
  auto rng = make_rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::int64_t mm = uniform_int(rng, 1, 5);
    ReducedWord h = generate_partner(m, g, mm, derive_seed(11, std::uint64_t(trial)));
    std::int64_t in = overlap_amount(m, g, h);
    // identity: image overlap equals input overlap
    CHECK(overlap_amount(m, g, h) == in);
    // conjugation is a tree isometry: overlaps invariant
    ReducedWord w = oracle::random_word(p, rng, 5);
    ReducedWord cg = conj(p, w, g), ch = conj(p, w, h);
    CHECK(overlap_amount(m, cg, ch) == in);
    CHECK(in >= mm * len);
  }
}

TEST_CASE("conjugating the pool changes no measurement") {
  const auto& m = f2_tree();
  const auto& p = m.pres;
  PersistenceExperiment exp;
  exp.g = parse_word(p, "abAB");
  exp.pool = nielsen_pool(p, 1);
  exp.trials_per_m = 2;
  exp.m_max = 4;
  exp.seed = 21;
  auto base = estimate(m, exp);

  PersistenceExperiment conjugated = exp;
  ReducedWord w = parse_word(p, "ba");
  conjugated.pool.clear();
  for (const auto& phi : exp.pool) conjugated.pool.push_back(compose(phi, ad(w)));
  auto shifted = estimate(m, conjugated);
  REQUIRE(base.rows.size() == shifted.rows.size());
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    CHECK(base.rows[i].overlap_in == shifted.rows[i].overlap_in);
    CHECK(base.rows[i].overlap_out == shifted.rows[i].overlap_out);
  }
  CHECK(base.n_hat == shifted.n_hat);
}

TEST_CASE("enlarging the pool never decreases n_hat") {
  const auto& m = f2_tree();
  const auto& p = m.pres;
  PersistenceExperiment small;
  small.g = parse_word(p, "abAB");
  small.pool = nielsen_pool(p, 1);
  small.trials_per_m = 2;
  small.m_max = 5;
  small.seed = 33;
  PersistenceExperiment big = small;
  big.pool = nielsen_pool(p, 2);
  auto est_small = estimate(m, small);
  auto est_big = estimate(m, big);
  for (std::int64_t c : small.c_values) {
    if (est_small.n_hat[c] < 0 || est_big.n_hat[c] < 0) continue;
    CHECK(est_big.n_hat[c] >= est_small.n_hat[c]);
  }
  CHECK(est_big.failures.size() >= est_small.failures.size());
}

TEST_CASE("basis element counterexample") {
  const auto& m = f2_tree();
  auto r = basis_element_counterexample(m, 10);
  CHECK(r.verdict == "pass");
  auto rows = r.computed["rows"];
  REQUIRE(rows.size() == 10);
  for (const auto& row : rows) {
    CHECK(row["overlap_out"] == 0);
    CHECK(row["overlap_in"].get<std::int64_t>() >= row["N"].get<std::int64_t>());
  }
  CHECK_THROWS_AS(basis_element_counterexample(m, 0), std::invalid_argument);
  TreeModel z = bass_serre_tree(GroupPresentation(0, {2, 2}));
  CHECK_THROWS_AS(basis_element_counterexample(z, 3), std::invalid_argument);
}

TEST_CASE("generic elements resist the same twists") {
  const auto& m = f2_tree();
  ReducedWord g = sample_candidate_generic(m.pres, 2024, 8);
  auto r = generic_contrast_sweep(m, g, 12, 4, 55);
  CHECK(r.verdict == "pass");
}
