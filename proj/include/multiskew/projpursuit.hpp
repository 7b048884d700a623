#pragma once

// Skewness-based projection pursuit: mutually uncorrelated linear projections
// of maximal sample skewness.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "multiskew/detail/random.hpp"
#include "multiskew/detail/summation.hpp"
#include "multiskew/errors.hpp"
#include "multiskew/ingest.hpp"
#include "multiskew/moments.hpp"

namespace multiskew {

/// k projections of n observations in d variables.
struct ProjectionBasis {
  Matrix directions;               ///< d x k, applied to centered data: projected = (x - mean) * directions
  Matrix standardized_directions;  ///< d x k, orthonormal columns, applied to standardized data
  Vector skewness;                 ///< k values; meaning depends on the producer
  Matrix projected;                ///< n x k projection scores

  [[nodiscard]] Index components() const noexcept { return directions.cols(); }
};

/// Signed sample skewness of the scalar projection x'c. Invariant to the
/// scale of c; negating c negates the result.
inline double skewness_of_projection(const DataMatrix& data, const Vector& c) {
  if (c.size() != data.cols())
    throw std::invalid_argument("direction length does not match the number of variables");
  const double norm2 = c.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("projection direction must be nonzero");

  const Matrix xc = centered(data);
  const Vector p = xc * c;
  std::vector<double> sq(static_cast<std::size_t>(p.size()));
  std::vector<double> cube(sq.size());
  for (Index i = 0; i < p.size(); ++i) {
    sq[static_cast<std::size_t>(i)] = p(i) * p(i);
    cube[static_cast<std::size_t>(i)] = p(i) * p(i) * p(i);
  }
  const double m2 = detail::pairwise_mean(sq);
  const double m3 = detail::pairwise_mean(cube);

  const double scale = xc.colwise().squaredNorm().maxCoeff() / static_cast<double>(xc.rows());
  if (!(m2 > kSingularityTolerance * scale * norm2))
    throw SingularityError("projection has (near) zero variance");
  return m3 / std::pow(m2, 1.5);
}

namespace detail {

inline constexpr int kRandomRestarts = 8;
inline constexpr std::uint64_t kRestartSeed = 0x5eed5eedULL;

// sum_i c_i B_i, whose quadratic form in c is the cubic form of the tensor.
inline Matrix contract_first(const Matrix& k3, const Vector& c) {
  const Index r = c.size();
  Matrix m = Matrix::Zero(r, r);
  for (Index i = 0; i < r; ++i) m += c(i) * k3.middleRows(i * r, r);
  return m;
}

inline double cubic_form(const Matrix& k3, const Vector& c) {
  return c.dot(contract_first(k3, c) * c);
}

struct CubicMaximum {
  Vector direction;
  double value = 0.0;
};

// Power iteration c <- normalize(K'(c (x) c)) from a fixed set of starting
// points, keeping the one with the largest attained cubic form. `iterations`
// caps the number of steps per start.
inline CubicMaximum maximize_cubic_form(const Matrix& k3, int iterations) {
  const Index r = k3.cols();

  std::vector<Vector> starts;
  Index dominant = 0;
  double best_norm = -1.0;
  for (Index i = 0; i < r; ++i) {
    const double nrm = k3.middleRows(i * r, r).norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      dominant = i;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(k3.middleRows(dominant * r, r));
  for (Index j = r - 1; j >= 0; --j) starts.emplace_back(es.eigenvectors().col(j));

  CounterRng rng(kRestartSeed);
  for (int s = 0; s < kRandomRestarts; ++s) {
    Vector v(r);
    do {
      for (Index j = 0; j < r; ++j) v(j) = 2.0 * rng.uniform01() - 1.0;
    } while (v.norm() < 1e-3);
    starts.emplace_back(v.normalized());
  }

  CubicMaximum best{starts.front(), -1.0};
  for (Vector c : starts) {
    for (int it = 0; it < iterations; ++it) {
      Vector g = contract_first(k3, c) * c;
      const double gn = g.norm();
      if (!(gn > 0.0)) break;
      g /= gn;
      const double step = (g - c).norm();
      c = std::move(g);
      if (step < 1e-12) break;
    }
    double value = cubic_form(k3, c);
    if (value < 0.0) {
      c = -c;
      value = -value;
    }
    if (value > best.value) best = {c, value};
  }
  return best;
}

// Orthonormal basis (r x (r-1)) of the complement of unit vector c.
inline Matrix orthogonal_complement(const Vector& c) {
  const Index r = c.size();
  Eigen::HouseholderQR<Matrix> qr{Matrix(c)};
  const Matrix q = qr.householderQ() * Matrix::Identity(r, r);
  return q.rightCols(r - 1);
}

}  // namespace detail

/// Finds `components` projections of maximal skewness, each uncorrelated with
/// the previous ones (orthogonal in the standardized metric).
///
/// Each maximization runs on the standardized third cumulant restricted to the
/// orthogonal complement of the directions already found. `skewness` holds the
/// attained (positive) skewness of each projection; `projected` has zero mean
/// and identity covariance.
inline ProjectionBasis max_skew(const DataMatrix& data, int iterations, int components) {
  const Index d = data.cols();
  if (iterations < 1) throw std::invalid_argument("iterations must be a positive integer");
  if (components < 1) throw std::invalid_argument("components must be a positive integer");
  if (components >= d)
    throw std::invalid_argument("components must be < number of variables (" + std::to_string(d) +
                                ")");

  const Matrix root = inv_sqrt(covariance(data));
  const Matrix z = centered(data) * root;

  const Index k = components;
  Matrix u(d, k);
  Vector skew(k);
  Matrix basis = Matrix::Identity(d, d);
  for (Index j = 0; j < k; ++j) {
    const Matrix k3 = third_moment_of_rows(z * basis);
    const auto best = detail::maximize_cubic_form(k3, iterations);
    u.col(j) = basis * best.direction;
    skew(j) = best.value;
    if (j + 1 < k) basis = basis * detail::orthogonal_complement(best.direction);
  }
  return {root * u, u, skew, z * u};
}

}  // namespace multiskew
