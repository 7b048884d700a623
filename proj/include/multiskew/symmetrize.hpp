#pragma once

// Least skewed linear projections.
//
// If the rows of A span the null space of K' K, where K is the third cumulant,
// the projected data A x have a null third cumulant. Working with the
// standardized cumulant, the right singular vectors with the smallest singular
// values give the projections whose third cumulant is as small as possible.

#include <Eigen/Dense>

#include <algorithm>
#include <string>
#include <vector>

#include "multiskew/ingest.hpp"
#include "multiskew/measures.hpp"
#include "multiskew/moments.hpp"
#include "multiskew/projpursuit.hpp"

namespace multiskew {

/// Projects the data onto the `dimension` least skewed standardized directions.
/// `skewness` holds the matching singular values of K3,z in ascending order.
inline ProjectionBasis min_skew(const DataMatrix& data, int dimension) {
  const Index d = data.cols();
  if (dimension < 2 || dimension > d)
    throw std::invalid_argument("dimension must be an integer between 2 and the number of variables (" +
                                std::to_string(d) + ")");

  const Matrix root = inv_sqrt(covariance(data));
  const Matrix z = centered(data) * root;
  const Matrix k3z = third_moment_of_rows(z);

  Eigen::JacobiSVD<Matrix> svd(k3z, Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();  // descending
  const Matrix& v = svd.matrixV();

  const Index k = dimension;
  Matrix u(d, k);
  Vector values(k);
  for (Index j = 0; j < k; ++j) {
    const Index src = d - 1 - j;
    Vector col = v.col(src);
    Index arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    if (col(arg) < 0.0) col = -col;
    u.col(j) = col;
    values(j) = sv(src);
  }
  return {root * u, u, values, z * u};
}

/// Labels for projection score columns: P1..Pk.
inline std::vector<std::string> projection_names(Index k) {
  std::vector<std::string> names;
  for (Index j = 0; j < k; ++j) names.push_back("P" + std::to_string(j + 1));
  return names;
}

/// Mardia skewness of the projected scores.
inline SkewnessReport residual_skewness(const ProjectionBasis& basis, const DataMatrix& data) {
  if (basis.projected.rows() != data.rows() || basis.directions.rows() != data.cols())
    throw std::invalid_argument("projection basis does not belong to this data");
  return mardia_skewness(DataMatrix(basis.projected, projection_names(basis.components())));
}

}  // namespace multiskew
