#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tact/presentation.hpp"

namespace tact {

/// A word in normal form: free-part letters are unit exponent and never cancel
/// with a neighbour; finite-factor letters pack their exponent (1..m-1) and
/// never sit next to a letter of the same factor. The empty word is the
/// identity.
struct ReducedWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  const Letter& operator[](std::size_t i) const { return letters[i]; }

  bool operator==(const ReducedWord& o) const { return letters == o.letters; }
  bool operator!=(const ReducedWord& o) const { return !(*this == o); }
};

namespace detail {

inline Letter invert_letter(const GroupPresentation& pres, const Letter& l) {
  if (pres.is_free_factor(l.factor)) return Letter{l.factor, -l.exp};
  return Letter{l.factor, pres.order_of(l.factor) - l.exp};
}

/// Appends one normalized letter, maintaining the normal form.
inline void push_letter(const GroupPresentation& pres, std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back().factor == l.factor) {
    if (pres.is_free_factor(l.factor)) {
      if (out.back().exp == -l.exp) {
        out.pop_back();
        return;
      }
    } else {
      int m = pres.order_of(l.factor);
      int e = (out.back().exp + l.exp) % m;
      out.pop_back();
      if (e != 0) out.push_back(Letter{l.factor, e});
      return;
    }
  }
  out.push_back(l);
}

}  // namespace detail

/// Normalizes a raw letter sequence. Free letters may carry any nonzero
/// exponent (expanded to units); finite exponents are taken mod the order.
/// Throws on an invalid factor index or a zero exponent.
inline ReducedWord reduce(const GroupPresentation& pres, const std::vector<Letter>& raw) {
  ReducedWord w;
  w.letters.reserve(raw.size());
  for (const Letter& l : raw) {
    if (l.factor < 0 || l.factor >= pres.num_factors())
      throw std::invalid_argument("word: letter references unknown factor");
    if (l.exp == 0) throw std::invalid_argument("word: zero exponent");
    if (pres.is_free_factor(l.factor)) {
      int sign = l.exp > 0 ? 1 : -1;
      for (int i = 0; i < std::abs(l.exp); ++i)
        detail::push_letter(pres, w.letters, Letter{l.factor, sign});
    } else {
      int m = pres.order_of(l.factor);
      int e = ((l.exp % m) + m) % m;
      if (e != 0) detail::push_letter(pres, w.letters, Letter{l.factor, e});
    }
  }
  return w;
}

inline bool is_reduced(const GroupPresentation& pres, const ReducedWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter& l = w[i];
    if (l.factor < 0 || l.factor >= pres.num_factors()) return false;
    if (pres.is_free_factor(l.factor)) {
      if (l.exp != 1 && l.exp != -1) return false;
    } else {
      if (l.exp < 1 || l.exp >= pres.order_of(l.factor)) return false;
    }
    if (i > 0 && w[i - 1].factor == l.factor) {
      if (!pres.is_free_factor(l.factor)) return false;
      if (w[i - 1].exp != l.exp) return false;
    }
  }
  return true;
}

inline ReducedWord identity_word() { return ReducedWord{}; }

inline ReducedWord mul(const GroupPresentation& pres, const ReducedWord& u, const ReducedWord& v) {
  ReducedWord w;
  w.letters = u.letters;
  w.letters.reserve(u.size() + v.size());
  for (const Letter& l : v.letters) detail::push_letter(pres, w.letters, l);
  return w;
}

inline ReducedWord inv(const GroupPresentation& pres, const ReducedWord& w) {
  ReducedWord r;
  r.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(detail::invert_letter(pres, *it));
  return r;
}

inline ReducedWord pow(const GroupPresentation& pres, const ReducedWord& w, std::int64_t n) {
  ReducedWord base = n < 0 ? inv(pres, w) : w;
  ReducedWord r;
  for (std::int64_t i = 0; i < std::abs(n); ++i) r = mul(pres, r, base);
  return r;
}

/// u w u^{-1}.
inline ReducedWord conj(const GroupPresentation& pres, const ReducedWord& u, const ReducedWord& w) {
  return mul(pres, mul(pres, u, w), inv(pres, u));
}

/// Length-then-lexicographic order; the canonical tie-break everywhere.
inline bool word_less(const GroupPresentation& pres, const ReducedWord& a, const ReducedWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ka = letter_key(pres, a[i]), kb = letter_key(pres, b[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

struct CyclicDecomposition {
  ReducedWord core;        // cyclically reduced
  ReducedWord conjugator;  // w = conjugator * core * conjugator^{-1}
};

/// Peels matched ends. The core has its first and last letters in different
/// factors, or equal-sign free letters, or length <= 1.
inline CyclicDecomposition cyclic_reduce(const GroupPresentation& pres, const ReducedWord& w) {
  std::vector<Letter> core = w.letters;
  std::vector<Letter> conj_letters;
  while (core.size() >= 2) {
    Letter f = core.front(), l = core.back();
    if (f.factor != l.factor) break;
    if (pres.is_free_factor(f.factor)) {
      if (l.exp != -f.exp) break;
      conj_letters.push_back(f);
      core.erase(core.begin());
      core.pop_back();
    } else {
      int m = pres.order_of(f.factor);
      conj_letters.push_back(f);
      core.erase(core.begin());
      int e = (core.back().exp + f.exp) % m;
      core.pop_back();
      if (e != 0) core.push_back(Letter{f.factor, e});
    }
  }
  CyclicDecomposition d;
  d.core.letters = std::move(core);
  d.conjugator = reduce(pres, conj_letters);
  return d;
}

inline bool is_cyclically_reduced(const GroupPresentation& pres, const ReducedWord& w) {
  return cyclic_reduce(pres, w).conjugator.empty();
}

struct Syllable {
  std::int32_t factor;
  std::int64_t exp;  // free: signed run length; finite: packed exponent
};

inline std::vector<Syllable> syllables(const GroupPresentation& pres, const ReducedWord& w) {
  std::vector<Syllable> out;
  for (const Letter& l : w.letters) {
    if (!out.empty() && out.back().factor == l.factor && pres.is_free_factor(l.factor)) {
      out.back().exp += l.exp;
    } else {
      out.push_back(Syllable{l.factor, l.exp});
    }
  }
  return out;
}

inline std::size_t syllable_length(const GroupPresentation& pres, const ReducedWord& w) {
  return syllables(pres, w).size();
}

/// True if w lies in a single factor (identity counts as elliptic-trivial).
inline bool is_torsion(const GroupPresentation& pres, const ReducedWord& w) {
  if (w.empty()) return false;
  auto core = cyclic_reduce(pres, w).core;
  return core.size() == 1 && pres.is_finite_factor(core[0].factor);
}

// --- serialization -----------------------------------------------------

inline std::string letter_str(const GroupPresentation& pres, const Letter& l) {
  if (pres.is_free_factor(l.factor)) {
    char c = char((l.exp > 0 ? 'a' : 'A') + l.factor);
    return std::string(1, c);
  }
  std::string s = "s" + std::to_string(l.factor - pres.free_rank + 1);
  if (l.exp != 1) s += "^" + std::to_string(l.exp);
  return s;
}

inline std::string word_str(const GroupPresentation& pres, const ReducedWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w.letters) s += letter_str(pres, l);
  return s;
}

/// Parses ASCII words: a..z free generators, A..Z their inverses, "s1", "s2^2"
/// finite-factor letters. Any token may carry "^<int>". "1" is the identity.
inline ReducedWord parse_word(const GroupPresentation& pres, const std::string& text) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  auto parse_int = [&](const char* what) {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
    if (i == start || (i == start + 1 && !std::isdigit((unsigned char)text[start])))
      throw std::invalid_argument(std::string("word parse: expected integer for ") + what);
    return std::stoi(text.substr(start, i - start));
  };
  auto maybe_exponent = [&]() {
    if (i < text.size() && text[i] == '^') {
      ++i;
      return parse_int("exponent");
    }
    return 1;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace((unsigned char)c) || c == '.' || c == '*') {
      ++i;
      continue;
    }
    if (c == '1') {
      ++i;
      continue;
    }
    if (c == 's' && i + 1 < text.size() && std::isdigit((unsigned char)text[i + 1])) {
      ++i;
      int idx = parse_int("finite factor index");
      if (idx < 1 || idx > pres.num_finite())
        throw std::invalid_argument("word parse: no finite factor s" + std::to_string(idx));
      int e = maybe_exponent();
      raw.push_back(Letter{std::int32_t(pres.free_rank + idx - 1), e});
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      int f = c - 'a';
      if (f >= pres.free_rank)
        throw std::invalid_argument(std::string("word parse: unknown generator '") + c + "'");
      ++i;
      raw.push_back(Letter{std::int32_t(f), maybe_exponent()});
      continue;
    }
    if (c >= 'A' && c <= 'Z') {
      int f = c - 'A';
      if (f >= pres.free_rank)
        throw std::invalid_argument(std::string("word parse: unknown generator '") + c + "'");
      ++i;
      raw.push_back(Letter{std::int32_t(f), -maybe_exponent()});
      continue;
    }
    throw std::invalid_argument(std::string("word parse: unexpected character '") + c + "'");
  }
  return reduce(pres, raw);
}

inline ReducedWord generator(const GroupPresentation& pres, int factor, int e = 1) {
  return reduce(pres, {Letter{std::int32_t(factor), e}});
}

}  // namespace tact
