#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tact/word.hpp"

using namespace tact;

TEST_CASE("reduction cancels forced pairs") {
  GroupPresentation f2(2);
  CHECK(reduce(f2, {{0, 1}, {0, -1}, {1, 1}}) == parse_word(f2, "b"));
  CHECK(reduce(f2, {}).empty());
  // exponents add mod 3 in Z/3 * Z
  GroupPresentation zp(1, {3});
  CHECK(reduce(zp, {{1, 1}, {1, 2}}).empty());
  CHECK(word_str(zp, reduce(zp, {{1, 1}, {1, 1}})) == "s1^2");
}

TEST_CASE("reduce rejects invalid letters") {
  GroupPresentation f2(2);
  CHECK_THROWS_AS(reduce(f2, {{5, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(reduce(f2, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("reduce is idempotent") {
  GroupPresentation pres(2, {3});
  auto rng = make_rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    ReducedWord w = oracle::random_word(pres, rng, int(uniform_int(rng, 0, 18)));
    CHECK(is_reduced(pres, w));
    CHECK(reduce(pres, w.letters) == w);
  }
}

TEST_CASE("group operations") {
  GroupPresentation f2(2);
  auto rng = make_rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    ReducedWord u = oracle::random_word(f2, rng, 12);
    ReducedWord v = oracle::random_word(f2, rng, 12);
    CHECK(mul(f2, u, inv(f2, u)).empty());
    CHECK(mul(f2, mul(f2, u, v), inv(f2, v)) == u);
  }
  CHECK(pow(f2, parse_word(f2, "ab"), 3) == parse_word(f2, "ababab"));
  CHECK(pow(f2, parse_word(f2, "ab"), -2) == parse_word(f2, "BABA"));
}

TEST_CASE("cyclic reduction peels matched ends") {
  GroupPresentation f2(2);
  auto d1 = cyclic_reduce(f2, parse_word(f2, "abA"));
  CHECK(word_str(f2, d1.core) == "b");
  CHECK(word_str(f2, d1.conjugator) == "a");
  auto d2 = cyclic_reduce(f2, parse_word(f2, "ab"));
  CHECK(word_str(f2, d2.core) == "ab");
  CHECK(d2.conjugator.empty());
}

TEST_CASE("cyclic reduction matches the prefix-conjugation oracle") {
  GroupPresentation f2(2);
  ReducedWord w = parse_word(f2, "ababABA");
  auto d = cyclic_reduce(f2, w);
  CHECK(d.core.size() == oracle::min_conjugate_length_over_prefixes(f2, w));
  CHECK(conj(f2, d.conjugator, d.core) == w);
  CHECK(word_str(f2, d.core) == "b");
  CHECK(word_str(f2, d.conjugator) == "aba");

  auto rng = make_rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    ReducedWord x = oracle::random_word(f2, rng, int(uniform_int(rng, 0, 14)));
    auto dx = cyclic_reduce(f2, x);
    CHECK(dx.core.size() == oracle::min_conjugate_length_over_prefixes(f2, x));
    CHECK(conj(f2, dx.conjugator, dx.core) == x);
    CHECK(is_cyclically_reduced(f2, dx.core));
  }
}

TEST_CASE("cyclic reduction in free products") {
  GroupPresentation pres(1, {3});
  // s a s^2 conjugated: the ends merge through the finite factor
  ReducedWord w = parse_word(pres, "s1 a s1^2");
  auto d = cyclic_reduce(pres, w);
  CHECK(conj(pres, d.conjugator, d.core) == w);
  CHECK(is_cyclically_reduced(pres, d.core));
  auto rng = make_rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    ReducedWord x = oracle::random_word(pres, rng, int(uniform_int(rng, 0, 12)));
    auto dx = cyclic_reduce(pres, x);
    CHECK(conj(pres, dx.conjugator, dx.core) == x);
  }
}

TEST_CASE("core length is a conjugation invariant") {
  GroupPresentation f2(2);
  auto rng = make_rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    ReducedWord w = oracle::random_word(f2, rng, 10);
    ReducedWord u = oracle::random_word(f2, rng, 8);
    CHECK(cyclic_reduce(f2, conj(f2, u, w)).core.size() == cyclic_reduce(f2, w).core.size());
  }
}

TEST_CASE("syllables") {
  GroupPresentation pres(2, {3});
  ReducedWord w = parse_word(pres, "aab s1^2 a");
  auto syl = syllables(pres, w);
  REQUIRE(syl.size() == 4);
  CHECK(syl[0].factor == 0);
  CHECK(syl[0].exp == 2);
  CHECK(syl[1].factor == 1);
  CHECK(syl[2].factor == 2);
  CHECK(syl[2].exp == 2);
  CHECK(syl[3].exp == 1);
  CHECK(is_torsion(pres, parse_word(pres, "a s1 A")));
  CHECK(!is_torsion(pres, parse_word(pres, "a s1")));
}

TEST_CASE("serialization round trip") {
  GroupPresentation pres(2, {2, 5});
  for (const char* text : {"abAB", "a s1 b s2^4", "1", "Ab s2^2 s1 a"}) {
    ReducedWord w = parse_word(pres, text);
    CHECK(parse_word(pres, word_str(pres, w)) == w);
  }
  CHECK(word_str(pres, parse_word(pres, "1")) == "1");
  CHECK_THROWS_AS(parse_word(pres, "z"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(pres, "s7"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(pres, "a$"), std::invalid_argument);
}

TEST_CASE("word order is length-lexicographic") {
  GroupPresentation f2(2);
  CHECK(word_less(f2, parse_word(f2, "b"), parse_word(f2, "ab")));
  CHECK(word_less(f2, parse_word(f2, "a"), parse_word(f2, "A")));
  CHECK(word_less(f2, parse_word(f2, "A"), parse_word(f2, "b")));
  CHECK(!word_less(f2, parse_word(f2, "ab"), parse_word(f2, "ab")));
}
