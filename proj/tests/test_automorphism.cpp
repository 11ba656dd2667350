#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tact/automorphism.hpp"

using namespace tact;

TEST_CASE("elementary moves act as expected") {
  GroupPresentation f2(2);
  Automorphism phi{{moves::RightMult{0, 1, +1}}};  // a -> ab
  CHECK(word_str(f2, apply(f2, phi, parse_word(f2, "ab"))) == "abb");
  CHECK(word_str(f2, apply(f2, phi, parse_word(f2, "A"))) == "BA");
  Automorphism sw{{moves::Swap{0, 1}}};
  CHECK(word_str(f2, apply(f2, sw, parse_word(f2, "aB"))) == "bA");
  Automorphism iv{{moves::Invert{0}}};
  CHECK(word_str(f2, apply(f2, iv, parse_word(f2, "ab"))) == "Ab");
  Automorphism ln{{moves::LeftMult{1, 0, -1}}};  // b -> a^{-1} b
  CHECK(word_str(f2, apply(f2, ln, parse_word(f2, "b"))) == "Ab");
  CHECK(apply(f2, identity_automorphism(), parse_word(f2, "abAB")) == parse_word(f2, "abAB"));
}

TEST_CASE("inner conjugation and finite-factor moves") {
  GroupPresentation pres(1, {3, 3});
  ReducedWord w = parse_word(pres, "a s1");
  Automorphism adw = ad(parse_word(pres, "s2"));
  CHECK(apply(pres, adw, w) == conj(pres, parse_word(pres, "s2"), w));
  Automorphism cf{{moves::ConjFactor{1, parse_word(pres, "a")}}};
  CHECK(word_str(pres, apply(pres, cf, parse_word(pres, "s1^2"))) == "as1^2A");
  Automorphism sf{{moves::SwapFinite{1, 2}}};
  CHECK(word_str(pres, apply(pres, sf, parse_word(pres, "s1 s2^2"))) == "s2s1^2");
}

TEST_CASE("formal inverses undo move lists on every generator") {
  GroupPresentation pres(2, {4});
  auto rng = make_rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Automorphism phi;
    int len = int(uniform_int(rng, 1, 6));
    for (int i = 0; i < len; ++i) {
      switch (uniform_int(rng, 0, 5)) {
        case 0: phi.moves.push_back(moves::Invert{int(uniform_int(rng, 0, 1))}); break;
        case 1: phi.moves.push_back(moves::Swap{0, 1}); break;
        case 2:
          phi.moves.push_back(
              moves::RightMult{int(uniform_int(rng, 0, 1)), int(uniform_int(rng, 0, 1)), 1});
          if (std::get<moves::RightMult>(phi.moves.back()).gen ==
              std::get<moves::RightMult>(phi.moves.back()).other)
            phi.moves.pop_back();
          break;
        case 3:
          phi.moves.push_back(moves::LeftMult{int(uniform_int(rng, 0, 1)), 1, -1});
          if (std::get<moves::LeftMult>(phi.moves.back()).gen == 1) phi.moves.pop_back();
          break;
        case 4: phi.moves.push_back(moves::Inner{oracle::random_word(pres, rng, 4)}); break;
        default: {
          // conjugator over the other factors only
          GroupPresentation free_part(2);
          ReducedWord w = oracle::random_word(free_part, rng, 3);
          phi.moves.push_back(moves::ConjFactor{2, w});
          break;
        }
      }
    }
    Automorphism round = compose(phi, inverse(pres, phi));
    for (int f = 0; f < pres.num_factors(); ++f) {
      ReducedWord g = generator(pres, f);
      CHECK(apply(pres, round, g) == g);
    }
  }
}

TEST_CASE("homomorphism law and inverse law on words") {
  GroupPresentation f3(3);
  auto rng = make_rng(5);
  // spec-scale sweep: apply(phi, w) * apply(phi, w^{-1}) reduces to identity
  for (const auto& pres : {GroupPresentation(2), GroupPresentation(3)}) {
    auto pool = nielsen_pool(pres, 2);
    for (int trial = 0; trial < 5000; ++trial) {
      const Automorphism& phi = pool[std::size_t(uniform_int(rng, 0, std::int64_t(pool.size()) - 1))];
      ReducedWord w = oracle::random_word(pres, rng, int(uniform_int(rng, 0, 20)));
      CHECK(mul(pres, apply(pres, phi, w), apply(pres, phi, inv(pres, w))).empty());
      ReducedWord u = oracle::random_word(pres, rng, 8);
      CHECK(apply(pres, phi, mul(pres, u, w)) ==
            mul(pres, apply(pres, phi, u), apply(pres, phi, w)));
    }
  }
  (void)f3;
}

TEST_CASE("whitehead moves implement the subset rule") {
  GroupPresentation f2(2);
  // W(A, a) with A = {a, b}: b -> ba
  Automorphism w1 = whitehead_move(f2, {0, +1}, {{1, +1}});
  CHECK(word_str(f2, apply(f2, w1, parse_word(f2, "b"))) == "ba");
  // A = {a, b, B}: b -> a^{-1} b a
  Automorphism w2 = whitehead_move(f2, {0, +1}, {{1, +1}, {1, -1}});
  CHECK(word_str(f2, apply(f2, w2, parse_word(f2, "b"))) == "Aba");
  CHECK(word_str(f2, apply(f2, w2, parse_word(f2, "a"))) == "a");
  CHECK(all_whitehead_moves(f2).size() <= 16);
  CHECK(all_whitehead_moves(GroupPresentation(3)).size() <= 96);
}

TEST_CASE("nielsen pool is deduplicated and deterministic") {
  GroupPresentation f2(2);
  auto pool2 = nielsen_pool(f2, 2);
  auto pool2again = nielsen_pool(f2, 2);
  REQUIRE(pool2.size() == pool2again.size());
  CHECK(pool2[0].moves.empty());
  std::set<std::string> keys;
  for (const auto& a : pool2) keys.insert(images_key(f2, a));
  CHECK(keys.size() == pool2.size());
  auto pool3 = nielsen_pool(f2, 3);
  CHECK(pool3.size() > pool2.size());
}

TEST_CASE("automorphism serialization round trip") {
  GroupPresentation pres(2, {2, 2});
  Automorphism phi{{moves::RightMult{0, 1, -1}, moves::Invert{1}, moves::Swap{0, 1},
                    moves::Inner{parse_word(pres, "ab")},
                    moves::ConjFactor{2, parse_word(pres, "a")}, moves::SwapFinite{2, 3},
                    moves::LeftMult{1, 0, +1}}};
  std::string text = automorphism_str(pres, phi);
  Automorphism back = parse_automorphism(pres, text);
  CHECK(images_key(pres, back) == images_key(pres, phi));
  CHECK_THROWS_AS(parse_move(pres, "rmul a a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move(pres, "frob a"), std::invalid_argument);
}
