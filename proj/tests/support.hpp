#pragma once

// Shared fixtures and reference computations for the test suites. Nothing
// here calls into the routines under test except the loaders.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "multiskew/ingest.hpp"

namespace multiskew::testing {

inline std::string data_path(const std::string& file) {
  return std::string(MULTISKEW_DATA_DIR) + "/" + file;
}

inline DataMatrix iris() {
  return load_csv(data_path("iris.csv"), parse_column_list("1-4"));
}

inline DataMatrix setosa() {
  const auto rows = parse_row_list("1-50");
  return iris().select_rows(rows);
}

// ---------------------------------------------------------------------------
// Published Iris listings (16 x 4 each, 4 decimals)
// ---------------------------------------------------------------------------

inline constexpr std::array<std::array<double, 4>, 16> kIrisRawThird{{
    {211.6333, 106.0231, 145.8113, 47.7868}, {106.0231, 55.4270, 69.1059, 22.3144},
    {145.8113, 69.1059, 109.9328, 37.1797},  {47.7868, 22.3144, 37.1797, 12.9610},
    {106.0231, 55.4270, 69.1059, 22.3144},   {55.4270, 30.3345, 33.7011, 10.6390},
    {69.1059, 33.7011, 50.7745, 17.1259},    {22.3144, 10.6390, 17.1259, 5.9822},
    {145.8113, 69.1059, 109.9328, 37.1797},  {69.1059, 33.7011, 50.7745, 17.1259},
    {109.9328, 50.7745, 86.4892, 29.6938},   {37.1797, 17.1259, 29.6938, 10.4469},
    {47.7868, 22.3144, 37.1797, 12.9610},    {22.3144, 10.6390, 17.1259, 5.9822},
    {37.1797, 17.1259, 29.6938, 10.4469},    {12.9610, 5.9822, 10.4469, 3.7570},
}};

inline constexpr std::array<std::array<double, 4>, 16> kIrisCentralThird{{
    {0.1752, 0.0420, 0.1432, 0.0259},    {0.0420, -0.0373, 0.1710, 0.0770},
    {0.1432, 0.1710, -0.1920, -0.1223},  {0.0259, 0.0770, -0.1223, -0.0466},
    {0.0420, -0.0373, 0.1710, 0.0770},   {-0.0373, 0.0259, -0.1329, -0.0591},
    {0.1710, -0.1329, 0.5943, 0.2583},   {0.0770, -0.0591, 0.2583, 0.1099},
    {0.1432, 0.1710, -0.1920, -0.1223},  {0.1710, -0.1329, 0.5943, 0.2583},
    {-0.1920, 0.5943, -1.4821, -0.6292}, {-0.1223, 0.2583, -0.6292, -0.2145},
    {0.0259, 0.0770, -0.1223, -0.0466},  {0.0770, -0.0591, 0.2583, 0.1099},
    {-0.1223, 0.2583, -0.6292, -0.2145}, {-0.0466, 0.1099, -0.2145, -0.0447},
}};

inline constexpr std::array<std::array<double, 4>, 16> kIrisStandardizedThird{{
    {0.2988, -0.0484, 0.3257, 0.0034},   {-0.0484, 0.0927, -0.0358, -0.0444},
    {0.3257, -0.0358, 0.0788, -0.2221},  {0.0034, -0.0444, -0.2221, 0.0598},
    {-0.0484, 0.0927, -0.0358, -0.0444}, {0.0927, -0.0331, -0.1166, -0.0844},
    {-0.0358, -0.1166, 0.2894, 0.1572},  {-0.0444, -0.0844, 0.1572, 0.2276},
    {0.3257, -0.0358, 0.0788, -0.2221},  {-0.0358, -0.1166, 0.2894, 0.1572},
    {0.0788, 0.2894, -0.0995, -0.3317},  {-0.2221, 0.1572, -0.3317, 0.3009},
    {0.0034, -0.0444, -0.2221, 0.0598},  {-0.0444, -0.0844, 0.1572, 0.2276},
    {-0.2221, 0.1572, -0.3317, 0.3009},  {0.0598, 0.2276, 0.3009, 0.8259},
}};

/// Largest absolute difference between a 16 x 4 matrix and a listing.
inline double max_listing_error(const Matrix& m, const std::array<std::array<double, 4>, 16>& ref) {
  double worst = 0.0;
  for (Index i = 0; i < 16; ++i)
    for (Index j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(m(i, j) - ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  return worst;
}

/// Published first three rows of the two most skewed Iris projections.
inline constexpr std::array<std::array<double, 2>, 3> kIrisMaxSkewRows{{
    {-2.631244186, -0.817635353},
    {-2.620071890, -1.033692782},
    {-2.376652037, -1.311616693},
}};

// ---------------------------------------------------------------------------
// Synthetic data
// ---------------------------------------------------------------------------

/// n x d matrix of independent, mixed-shape columns (exponential, uniform,
/// gamma, normal) so that the third cumulant is generically full rank.
inline Matrix random_data(std::mt19937_64& rng, Index n, Index d) {
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  std::gamma_distribution<double> ga(2.0, 1.0);
  std::normal_distribution<double> no(0.0, 1.0);
  Matrix x(n, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < n; ++i) {
      switch (j % 4) {
        case 0: x(i, j) = ex(rng); break;
        case 1: x(i, j) = un(rng) + 0.3 * ex(rng); break;
        case 2: x(i, j) = ga(rng); break;
        default: x(i, j) = no(rng) + 0.5 * ex(rng); break;
      }
    }
  // Mix the columns so they are correlated.
  Matrix a = Matrix::Identity(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      if (i != j) a(i, j) = 0.3 * un(rng);
  return x * a.transpose();
}

/// Well-conditioned random invertible matrix.
inline Matrix random_invertible(std::mt19937_64& rng, Index d) {
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  for (;;) {
    Matrix a(d, d);
    for (Index i = 0; i < a.size(); ++i) a(i) = un(rng);
    a += 1.5 * Matrix::Identity(d, d);
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    if (s(d - 1) > 0.2 && s(0) / s(d - 1) < 20.0) return a;
  }
}

/// The sample together with its reflection through the sample mean.
inline Matrix pooled_with_reflection(const Matrix& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  Matrix out(2 * x.rows(), x.cols());
  out.topRows(x.rows()) = x;
  out.bottomRows(x.rows()) = (-x).rowwise() + 2.0 * mean;
  return out;
}

// ---------------------------------------------------------------------------
// Reference computations
// ---------------------------------------------------------------------------

/// Direct triple loop: mean of x_i x_j x_h with the (i*d + j, h) layout.
inline Matrix naive_third_moment(const Matrix& x) {
  const Index d = x.cols();
  Matrix out = Matrix::Zero(d * d, d);
  for (Index r = 0; r < x.rows(); ++r)
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index h = 0; h < d; ++h) out(i * d + j, h) += x(r, i) * x(r, j) * x(r, h);
  return out / static_cast<double>(x.rows());
}

/// Plain sample skewness of a column with 1/n moments.
inline double naive_skewness(const Vector& p) {
  const double m = p.mean();
  const Vector c = p.array() - m;
  const double m2 = c.array().square().mean();
  const double m3 = c.array().cube().mean();
  return m3 / std::pow(m2, 1.5);
}

struct GridMaximum {
  double angle_deg = 0.0;
  double squared_skewness = 0.0;
};

/// Maximizes the squared skewness of x * (cos t, sin t) over t on a 1-degree
/// grid in [0, 180). Directions are in original coordinates.
inline GridMaximum grid_directional_2d(const Matrix& x) {
  GridMaximum best;
  for (int deg = 0; deg < 180; ++deg) {
    const double t = deg * std::numbers::pi / 180.0;
    Vector c(2);
    c << std::cos(t), std::sin(t);
    const double g = naive_skewness(x * c);
    if (g * g > best.squared_skewness) best = {static_cast<double>(deg), g * g};
  }
  return best;
}

/// Angle in degrees between two lines through the origin.
inline double line_angle_deg(const Vector& a, const Vector& b) {
  const double c = std::min(1.0, std::abs(a.normalized().dot(b.normalized())));
  return std::acos(c) * 180.0 / std::numbers::pi;
}

}  // namespace multiskew::testing
