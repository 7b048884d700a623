#pragma once

#include <cstddef>
#include <span>

namespace multiskew::detail {

/// Pairwise (cascade) summation. Error grows as O(log n) instead of O(n),
/// and the result depends only on the input order, not on the caller.
inline double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kBase = 16;
  if (xs.size() <= kBase) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_mean(std::span<const double> xs) {
  return xs.empty() ? 0.0 : pairwise_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace multiskew::detail
