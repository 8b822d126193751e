#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <ostream>
#include <vector>

#include "ct2/errors.hpp"

namespace ct2 {

/// Nonnegative integer triple indexing Bernstein-Bezier coefficients.
struct MultiIndex3 {
  int a1 = 0, a2 = 0, a3 = 0;

  constexpr int degree() const { return a1 + a2 + a3; }
  constexpr int operator[](int k) const { return k == 0 ? a1 : (k == 1 ? a2 : a3); }
  constexpr int &operator[](int k) { return k == 0 ? a1 : (k == 1 ? a2 : a3); }
  constexpr bool valid() const { return a1 >= 0 && a2 >= 0 && a3 >= 0; }

  constexpr MultiIndex3 operator+(const MultiIndex3 &o) const {
    return {a1 + o.a1, a2 + o.a2, a3 + o.a3};
  }
  constexpr MultiIndex3 operator-(const MultiIndex3 &o) const {
    return {a1 - o.a1, a2 - o.a2, a3 - o.a3};
  }
  constexpr auto operator<=>(const MultiIndex3 &) const = default;

  /// The unit multi-index e_k, k in {0,1,2}.
  static constexpr MultiIndex3 unit(int k) {
    return {k == 0 ? 1 : 0, k == 1 ? 1 : 0, k == 2 ? 1 : 0};
  }
};

inline std::ostream &operator<<(std::ostream &os, const MultiIndex3 &m) {
  return os << '(' << m.a1 << ',' << m.a2 << ',' << m.a3 << ')';
}

/// Number of multi-indices of degree d.
constexpr std::size_t index_count(int d) {
  return d < 0 ? 0 : static_cast<std::size_t>((d + 1) * (d + 2) / 2);
}

/// Position of `m` in the canonical order of its degree: descending
/// lexicographic on (a1, a2).
constexpr std::size_t canonical_position(const MultiIndex3 &m) {
  const int d = m.degree();
  const int head = d - m.a1;
  return static_cast<std::size_t>(head * (head + 1) / 2 + (head - m.a2));
}

/// All multi-indices of degree d in canonical order.
inline std::vector<MultiIndex3> enumerate_indices(int d) {
  if (d < 0)
    throw ContractViolation("enumerate_indices: negative degree");
  std::vector<MultiIndex3> out;
  out.reserve(index_count(d));
  for (int a1 = d; a1 >= 0; --a1)
    for (int a2 = d - a1; a2 >= 0; --a2)
      out.push_back({a1, a2, d - a1 - a2});
  return out;
}

/// Relabels the components: result[k] = m[perm[k]].
constexpr MultiIndex3 permuted(const MultiIndex3 &m, const std::array<int, 3> &perm) {
  return {m[perm[0]], m[perm[1]], m[perm[2]]};
}

} // namespace ct2
