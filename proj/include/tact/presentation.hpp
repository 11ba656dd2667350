#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tact {

/// A free product of `free_rank` copies of Z and finite cyclic factors of the
/// given orders. Factors are indexed 0..free_rank-1 (free part, generators
/// a, b, c, ...) followed by the finite cyclic factors (generators s1, s2, ...).
struct GroupPresentation {
  int free_rank = 0;
  std::vector<int> finite_orders;

  GroupPresentation() = default;
  GroupPresentation(int rank, std::vector<int> orders = {})
      : free_rank(rank), finite_orders(std::move(orders)) {
    validate();
  }

  void validate() const {
    if (free_rank < 0) throw std::invalid_argument("presentation: negative free rank");
    if (free_rank > 26) throw std::invalid_argument("presentation: free rank > 26 unsupported");
    for (int m : finite_orders)
      if (m < 2) throw std::invalid_argument("presentation: finite factor order must be >= 2");
    if (free_rank + int(finite_orders.size()) < 1)
      throw std::invalid_argument("presentation: at least one factor required");
  }

  int num_factors() const { return free_rank + int(finite_orders.size()); }
  int num_finite() const { return int(finite_orders.size()); }
  bool is_free_factor(int f) const { return f >= 0 && f < free_rank; }
  bool is_finite_factor(int f) const { return f >= free_rank && f < num_factors(); }

  /// 0 means infinite order (free factor).
  int order_of(int f) const {
    if (!is_free_factor(f) && !is_finite_factor(f))
      throw std::invalid_argument("presentation: factor index out of range");
    return is_free_factor(f) ? 0 : finite_orders[f - free_rank];
  }

  bool operator==(const GroupPresentation& o) const {
    return free_rank == o.free_rank && finite_orders == o.finite_orders;
  }
  bool operator!=(const GroupPresentation& o) const { return !(*this == o); }

  std::string describe() const {
    std::string s;
    for (int i = 0; i < free_rank; ++i) s += s.empty() ? "Z" : " * Z";
    for (int m : finite_orders) {
      if (!s.empty()) s += " * ";
      s += "Z/" + std::to_string(m);
    }
    return s;
  }
};

inline GroupPresentation free_group(int rank) { return GroupPresentation(rank); }

/// One letter of a normal-form word. Free-part letters have exponent +1/-1;
/// a letter of a finite factor of order m packs its exponent in 1..m-1.
struct Letter {
  std::int32_t factor = 0;
  std::int32_t exp = 1;

  bool operator==(const Letter& o) const { return factor == o.factor && exp == o.exp; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
};

/// Key used for length-then-lexicographic word comparisons. Free letters order
/// positive before negative (a < A); finite letters by ascending exponent.
inline std::int64_t letter_key(const GroupPresentation& pres, const Letter& l) {
  std::int64_t sub = pres.is_free_factor(l.factor) ? (l.exp > 0 ? 0 : 1) : l.exp;
  return std::int64_t(l.factor) * 1024 + sub;
}

}  // namespace tact
