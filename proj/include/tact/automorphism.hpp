#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tact/word.hpp"

namespace tact {

/// Elementary moves. Every move is invertible by a single move of the same
/// alphabet, so automorphism inversion is structural (reverse + invert).
namespace moves {

struct Invert {
  int gen;  // free generator index
};
struct Swap {
  int g1, g2;  // free generator indices
};
struct RightMult {
  int gen, other;  // x_gen -> x_gen * x_other^sign, gen != other, both free
  int sign;        // +1 or -1
};
struct LeftMult {
  int gen, other;  // x_gen -> x_other^sign * x_gen
  int sign;
};
struct ConjFactor {
  int factor;  // finite factor index (absolute)
  ReducedWord w;
};
struct SwapFinite {
  int f1, f2;  // finite factor indices (absolute), equal orders
};
struct Inner {
  ReducedWord w;  // ad_w: x -> w x w^{-1}
};

}  // namespace moves

using Move = std::variant<moves::Invert, moves::Swap, moves::RightMult, moves::LeftMult,
                          moves::ConjFactor, moves::SwapFinite, moves::Inner>;

struct Automorphism {
  std::vector<Move> moves;  // applied in order: moves[0] first

  bool is_identity_composition() const { return moves.empty(); }
};

namespace detail {

inline void check_free_gen(const GroupPresentation& pres, int g, const char* what) {
  if (!pres.is_free_factor(g))
    throw std::invalid_argument(std::string(what) + ": not a free generator index");
}

inline void validate_move(const GroupPresentation& pres, const Move& m) {
  using namespace moves;
  if (auto* mv = std::get_if<Invert>(&m)) {
    check_free_gen(pres, mv->gen, "invert");
  } else if (auto* mv = std::get_if<Swap>(&m)) {
    check_free_gen(pres, mv->g1, "swap");
    check_free_gen(pres, mv->g2, "swap");
    if (mv->g1 == mv->g2) throw std::invalid_argument("swap: generators must differ");
  } else if (auto* mv = std::get_if<RightMult>(&m)) {
    check_free_gen(pres, mv->gen, "rmul");
    check_free_gen(pres, mv->other, "rmul");
    if (mv->gen == mv->other) throw std::invalid_argument("rmul: generators must differ");
  } else if (auto* mv = std::get_if<LeftMult>(&m)) {
    check_free_gen(pres, mv->gen, "lmul");
    check_free_gen(pres, mv->other, "lmul");
    if (mv->gen == mv->other) throw std::invalid_argument("lmul: generators must differ");
  } else if (auto* mv = std::get_if<ConjFactor>(&m)) {
    if (!pres.is_finite_factor(mv->factor))
      throw std::invalid_argument("conj: not a finite factor");
    // a conjugator containing letters of the conjugated factor does not give
    // an invertible map
    for (const Letter& l : mv->w.letters)
      if (l.factor == mv->factor)
        throw std::invalid_argument("conj: conjugator uses the conjugated factor");
  } else if (auto* mv = std::get_if<SwapFinite>(&m)) {
    if (!pres.is_finite_factor(mv->f1) || !pres.is_finite_factor(mv->f2))
      throw std::invalid_argument("swapfin: not finite factors");
    if (pres.order_of(mv->f1) != pres.order_of(mv->f2))
      throw std::invalid_argument("swapfin: factors must have equal order");
  }
}

inline ReducedWord apply_move(const GroupPresentation& pres, const Move& m, const ReducedWord& w) {
  using namespace moves;
  validate_move(pres, m);
  if (std::holds_alternative<Inner>(m)) {
    const auto& mv = std::get<Inner>(m);
    return conj(pres, mv.w, w);
  }
  std::vector<Letter> out;
  out.reserve(w.size() * 2);
  auto push = [&](Letter l) { push_letter(pres, out, l); };
  auto push_word = [&](const ReducedWord& u) {
    for (const Letter& l : u.letters) push(l);
  };
  for (const Letter& l : w.letters) {
    if (std::holds_alternative<Invert>(m)) {
      const auto& mv = std::get<Invert>(m);
      push(l.factor == mv.gen ? Letter{l.factor, -l.exp} : l);
    } else if (std::holds_alternative<Swap>(m)) {
      const auto& mv = std::get<Swap>(m);
      Letter x = l;
      if (x.factor == mv.g1) x.factor = mv.g2;
      else if (x.factor == mv.g2) x.factor = mv.g1;
      push(x);
    } else if (std::holds_alternative<RightMult>(m)) {
      const auto& mv = std::get<RightMult>(m);
      if (l.factor == mv.gen && l.exp > 0) {
        push(l);
        push(Letter{mv.other, mv.sign});
      } else if (l.factor == mv.gen) {
        push(Letter{mv.other, -mv.sign});
        push(l);
      } else {
        push(l);
      }
    } else if (std::holds_alternative<LeftMult>(m)) {
      const auto& mv = std::get<LeftMult>(m);
      if (l.factor == mv.gen && l.exp > 0) {
        push(Letter{mv.other, mv.sign});
        push(l);
      } else if (l.factor == mv.gen) {
        push(l);
        push(Letter{mv.other, -mv.sign});
      } else {
        push(l);
      }
    } else if (std::holds_alternative<ConjFactor>(m)) {
      const auto& mv = std::get<ConjFactor>(m);
      if (l.factor == mv.factor) {
        push_word(mv.w);
        push(l);
        push_word(inv(pres, mv.w));
      } else {
        push(l);
      }
    } else {
      const auto& mv = std::get<SwapFinite>(m);
      Letter x = l;
      if (x.factor == mv.f1) x.factor = mv.f2;
      else if (x.factor == mv.f2) x.factor = mv.f1;
      push(x);
    }
  }
  ReducedWord r;
  r.letters = std::move(out);
  return r;
}

inline Move invert_move(const GroupPresentation& pres, const Move& m) {
  using namespace moves;
  if (std::holds_alternative<RightMult>(m)) {
    auto mv = std::get<RightMult>(m);
    mv.sign = -mv.sign;
    return mv;
  }
  if (std::holds_alternative<LeftMult>(m)) {
    auto mv = std::get<LeftMult>(m);
    mv.sign = -mv.sign;
    return mv;
  }
  if (std::holds_alternative<ConjFactor>(m)) {
    auto mv = std::get<ConjFactor>(m);
    mv.w = inv(pres, mv.w);
    return mv;
  }
  if (std::holds_alternative<Inner>(m)) {
    auto mv = std::get<Inner>(m);
    mv.w = inv(pres, mv.w);
    return mv;
  }
  return m;  // Invert, Swap, SwapFinite are involutions
}

}  // namespace detail

inline ReducedWord apply(const GroupPresentation& pres, const Automorphism& a, const ReducedWord& w) {
  ReducedWord cur = w;
  for (const Move& m : a.moves) cur = detail::apply_move(pres, m, cur);
  return cur;
}

/// compose(a, b) applies a first, then b (as maps: b after a).
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism c = a;
  c.moves.insert(c.moves.end(), b.moves.begin(), b.moves.end());
  return c;
}

inline Automorphism inverse(const GroupPresentation& pres, const Automorphism& a) {
  Automorphism r;
  r.moves.reserve(a.moves.size());
  for (auto it = a.moves.rbegin(); it != a.moves.rend(); ++it)
    r.moves.push_back(detail::invert_move(pres, *it));
  return r;
}

inline Automorphism identity_automorphism() { return Automorphism{}; }

inline Automorphism ad(const ReducedWord& w) { return Automorphism{{moves::Inner{w}}}; }

/// Images of every factor generator; two automorphisms of a free product of
/// cyclic factors are equal iff these tuples agree.
inline std::vector<ReducedWord> generator_images(const GroupPresentation& pres, const Automorphism& a) {
  std::vector<ReducedWord> out;
  for (int f = 0; f < pres.num_factors(); ++f) out.push_back(apply(pres, a, generator(pres, f)));
  return out;
}

inline std::string images_key(const GroupPresentation& pres, const Automorphism& a) {
  std::string key;
  for (const auto& w : generator_images(pres, a)) {
    key += word_str(pres, w);
    key += '|';
  }
  return key;
}

// --- Whitehead automorphisms (second kind) ------------------------------

/// A signed free-part letter used to index Whitehead moves.
struct SignedGen {
  int gen;
  int sign;
  bool operator==(const SignedGen& o) const { return gen == o.gen && sign == o.sign; }
};

/// W(A, a): a -> a; for y with y in A (and y^{-1} not): y -> y a;
/// y^{-1} in A only: y -> a^{-1} y; both: y -> a^{-1} y a.
/// The subset A is given over letters other than a, a^{-1} and implicitly
/// contains a.
inline Automorphism whitehead_move(const GroupPresentation& pres, SignedGen a,
                                   const std::vector<SignedGen>& subset) {
  detail::check_free_gen(pres, a.gen, "whitehead_move");
  auto in_subset = [&](int g, int s) {
    for (const auto& x : subset)
      if (x.gen == g && x.sign == s) return true;
    return false;
  };
  Automorphism out;
  for (int y = 0; y < pres.free_rank; ++y) {
    if (y == a.gen) continue;
    bool plus = in_subset(y, +1), minus = in_subset(y, -1);
    if (plus && !minus) out.moves.push_back(moves::RightMult{y, a.gen, a.sign});
    else if (!plus && minus) out.moves.push_back(moves::LeftMult{y, a.gen, -a.sign});
    else if (plus && minus) {
      out.moves.push_back(moves::LeftMult{y, a.gen, -a.sign});
      out.moves.push_back(moves::RightMult{y, a.gen, a.sign});
    }
  }
  return out;
}

/// All Whitehead automorphisms of the second kind for a pure free group:
/// 2n multiplier choices x 2^(2n-2) subsets.
inline std::vector<Automorphism> all_whitehead_moves(const GroupPresentation& pres) {
  if (pres.num_finite() != 0)
    throw std::invalid_argument("whitehead moves: finite factors unsupported");
  int n = pres.free_rank;
  std::vector<Automorphism> out;
  std::vector<SignedGen> others;
  for (int mult_gen = 0; mult_gen < n; ++mult_gen) {
    for (int mult_sign : {+1, -1}) {
      others.clear();
      for (int y = 0; y < n; ++y) {
        if (y == mult_gen) continue;
        others.push_back({y, +1});
        others.push_back({y, -1});
      }
      int bits = int(others.size());
      for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        std::vector<SignedGen> subset;
        for (int b = 0; b < bits; ++b)
          if (mask & (1u << b)) subset.push_back(others[b]);
        Automorphism w = whitehead_move(pres, {mult_gen, mult_sign}, subset);
        if (!w.moves.empty()) out.push_back(std::move(w));
      }
    }
  }
  return out;
}

// --- Nielsen pools -------------------------------------------------------

/// The classical Nielsen alphabet on the free part: inversions, swaps and
/// x_i -> x_i x_j.
inline std::vector<Automorphism> nielsen_alphabet(const GroupPresentation& pres) {
  std::vector<Automorphism> out;
  int n = pres.free_rank;
  for (int i = 0; i < n; ++i) out.push_back(Automorphism{{moves::Invert{i}}});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(Automorphism{{moves::Swap{i, j}}});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.push_back(Automorphism{{moves::RightMult{i, j, +1}}});
  return out;
}

/// All automorphisms expressible as at most `depth` Nielsen moves,
/// deduplicated by their action on the generator tuple. Enumeration order is
/// deterministic: breadth-first, identity first.
inline std::vector<Automorphism> nielsen_pool(const GroupPresentation& pres, int depth) {
  std::vector<Automorphism> alphabet = nielsen_alphabet(pres);
  std::vector<Automorphism> pool{identity_automorphism()};
  std::set<std::string> seen{images_key(pres, pool[0])};
  std::size_t level_begin = 0;
  for (int d = 0; d < depth; ++d) {
    std::size_t level_end = pool.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const Automorphism& m : alphabet) {
        Automorphism cand = compose(pool[i], m);
        std::string key = images_key(pres, cand);
        if (seen.insert(key).second) pool.push_back(std::move(cand));
      }
    }
    level_begin = level_end;
  }
  return pool;
}

// --- serialization: one move per line ------------------------------------

namespace detail {

inline std::string gen_name(int g) { return std::string(1, char('a' + g)); }
inline std::string signed_gen_name(int g, int sign) {
  return std::string(1, char((sign > 0 ? 'a' : 'A') + g));
}

}  // namespace detail

inline std::string move_str(const GroupPresentation& pres, const Move& m) {
  using namespace moves;
  std::ostringstream os;
  if (auto* mv = std::get_if<Invert>(&m)) {
    os << "invert " << detail::gen_name(mv->gen);
  } else if (auto* mv = std::get_if<Swap>(&m)) {
    os << "swap " << detail::gen_name(mv->g1) << " " << detail::gen_name(mv->g2);
  } else if (auto* mv = std::get_if<RightMult>(&m)) {
    os << "rmul " << detail::gen_name(mv->gen) << " "
       << detail::signed_gen_name(mv->other, mv->sign);
  } else if (auto* mv = std::get_if<LeftMult>(&m)) {
    os << "lmul " << detail::gen_name(mv->gen) << " "
       << detail::signed_gen_name(mv->other, mv->sign);
  } else if (auto* mv = std::get_if<ConjFactor>(&m)) {
    os << "conj s" << (mv->factor - pres.free_rank + 1) << " " << word_str(pres, mv->w);
  } else if (auto* mv = std::get_if<SwapFinite>(&m)) {
    os << "swapfin s" << (mv->f1 - pres.free_rank + 1) << " s" << (mv->f2 - pres.free_rank + 1);
  } else if (auto* mv = std::get_if<Inner>(&m)) {
    os << "inner " << word_str(pres, mv->w);
  }
  return os.str();
}

inline std::string automorphism_str(const GroupPresentation& pres, const Automorphism& a) {
  std::string s;
  for (const Move& m : a.moves) {
    s += move_str(pres, m);
    s += '\n';
  }
  return s;
}

inline Move parse_move(const GroupPresentation& pres, const std::string& line) {
  std::istringstream is(line);
  std::string kind;
  is >> kind;
  auto gen_index = [&](const std::string& tok, bool* sign_out = nullptr) {
    if (tok.size() != 1 || !std::isalpha((unsigned char)tok[0]))
      throw std::invalid_argument("move parse: bad generator token '" + tok + "'");
    bool upper = std::isupper((unsigned char)tok[0]);
    int g = (upper ? tok[0] - 'A' : tok[0] - 'a');
    if (g >= pres.free_rank) throw std::invalid_argument("move parse: unknown generator " + tok);
    if (sign_out) *sign_out = !upper;
    return g;
  };
  auto finite_index = [&](const std::string& tok) {
    if (tok.size() < 2 || tok[0] != 's')
      throw std::invalid_argument("move parse: bad finite factor token '" + tok + "'");
    int idx = std::stoi(tok.substr(1));
    if (idx < 1 || idx > pres.num_finite())
      throw std::invalid_argument("move parse: unknown finite factor " + tok);
    return pres.free_rank + idx - 1;
  };
  std::string t1, t2;
  if (kind == "invert") {
    is >> t1;
    return moves::Invert{gen_index(t1)};
  }
  if (kind == "swap") {
    is >> t1 >> t2;
    return moves::Swap{gen_index(t1), gen_index(t2)};
  }
  if (kind == "rmul" || kind == "lmul") {
    is >> t1 >> t2;
    bool positive = true;
    int g = gen_index(t1);
    int o = gen_index(t2, &positive);
    if (g == o) throw std::invalid_argument("move parse: rmul/lmul needs distinct generators");
    if (kind == "rmul") return moves::RightMult{g, o, positive ? +1 : -1};
    return moves::LeftMult{g, o, positive ? +1 : -1};
  }
  if (kind == "conj") {
    is >> t1 >> t2;
    return moves::ConjFactor{finite_index(t1), parse_word(pres, t2)};
  }
  if (kind == "swapfin") {
    is >> t1 >> t2;
    int f1 = finite_index(t1), f2 = finite_index(t2);
    if (pres.order_of(f1) != pres.order_of(f2))
      throw std::invalid_argument("move parse: swapfin factors must have equal order");
    return moves::SwapFinite{f1, f2};
  }
  if (kind == "inner") {
    is >> t1;
    return moves::Inner{parse_word(pres, t1)};
  }
  throw std::invalid_argument("move parse: unknown move kind '" + kind + "'");
}

inline Automorphism parse_automorphism(const GroupPresentation& pres, const std::string& text) {
  Automorphism a;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::string trimmed;
    for (char c : line)
      if (!std::isspace((unsigned char)c) || !trimmed.empty()) trimmed += c;
    while (!trimmed.empty() && std::isspace((unsigned char)trimmed.back())) trimmed.pop_back();
    if (trimmed.empty() || trimmed[0] == '#') continue;
    a.moves.push_back(parse_move(pres, trimmed));
  }
  return a;
}

}  // namespace tact
