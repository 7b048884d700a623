#include <gtest/gtest.h>

#include <random>

#include "multiskew/measures.hpp"
#include "multiskew/projpursuit.hpp"
#include "support.hpp"

namespace ms = multiskew;
using ms::Matrix;
using ms::Vector;

namespace {

void expect_basis_invariants(const ms::ProjectionBasis& b, const ms::DataMatrix& data) {
  const ms::Index k = b.components();
  const Matrix gram = b.standardized_directions.transpose() * b.standardized_directions;
  EXPECT_LT((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);

  const ms::DataMatrix scores(b.projected);
  EXPECT_LT(ms::mean_vector(scores).cwiseAbs().maxCoeff(), 1e-10);
  const Matrix cov = ms::detail::cross_product_mean(ms::centered(scores));
  EXPECT_LT((cov - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8);

  // projected = centered data x directions
  EXPECT_LT((ms::centered(data) * b.directions - b.projected).cwiseAbs().maxCoeff(), 1e-9);

  for (ms::Index j = 1; j < k; ++j) EXPECT_LE(std::abs(b.skewness(j)), std::abs(b.skewness(j - 1)) + 1e-12);
}

}  // namespace

TEST(SkewnessOfProjection, CoordinateAndSign) {
  const auto iris = ms::testing::iris();
  const Vector fisher = ms::fisher_skew(iris);
  for (ms::Index j = 0; j < 4; ++j)
    EXPECT_NEAR(ms::skewness_of_projection(iris, Vector::Unit(4, j)), fisher(j), 1e-12);

  const Vector c = (Vector(4) << 0.3, -1.2, 0.7, 0.1).finished();
  const double g = ms::skewness_of_projection(iris, c);
  EXPECT_NEAR(ms::skewness_of_projection(iris, -c), -g, 1e-12);
  EXPECT_NEAR(ms::skewness_of_projection(iris, 2.0 * c), g, 1e-12);
  EXPECT_NEAR(g, ms::testing::naive_skewness(iris.values() * c), 1e-12);
}

TEST(SkewnessOfProjection, Errors) {
  const auto iris = ms::testing::iris();
  EXPECT_THROW(ms::skewness_of_projection(iris, Vector::Zero(4)), std::invalid_argument);
  EXPECT_THROW(ms::skewness_of_projection(iris, Vector::Ones(3)), std::invalid_argument);
  Matrix x(4, 2);
  x << 1, 1, 2, 2, 3, 3, 5, 5;
  EXPECT_THROW(ms::skewness_of_projection(ms::DataMatrix(x), (Vector(2) << 1, -1).finished()),
               ms::SingularityError);
}

TEST(MaxSkew, IrisInvariantsAndCubicRepresentation) {
  const auto iris = ms::testing::iris();
  const auto b = ms::max_skew(iris, 50, 2);
  ASSERT_EQ(b.projected.rows(), 150);
  ASSERT_EQ(b.projected.cols(), 2);
  expect_basis_invariants(b, iris);

  const auto kz = ms::third_moment(iris, ms::MomentKind::standardized);
  for (ms::Index j = 0; j < 2; ++j) {
    const Vector c = b.standardized_directions.col(j);
    const double cubic = (ms::kronecker(c.transpose(), c.transpose()) * kz.values() * c)(0, 0);
    EXPECT_NEAR(b.skewness(j) * b.skewness(j), cubic * cubic, 1e-10);
    EXPECT_NEAR(b.skewness(j), ms::testing::naive_skewness(b.projected.col(j)), 1e-10);
    EXPECT_GT(b.skewness(j), 0.0);
  }
}

TEST(MaxSkew, DominatesRandomDirections) {
  const auto iris = ms::testing::iris();
  const double best = ms::max_skew(iris, 50, 1).skewness(0);
  std::mt19937_64 rng(79);
  std::normal_distribution<double> no;
  for (int t = 0; t < 10000; ++t) {
    Vector c(4);
    for (auto& v : c) v = no(rng);
    EXPECT_LE(std::abs(ms::skewness_of_projection(iris, c)), best + 1e-12);
  }
}

TEST(MaxSkew, SetosaProjectionsHaveIndependentComponentPattern) {
  const auto setosa = ms::testing::setosa();
  const auto b = ms::max_skew(setosa, 50, 2);
  const auto k = ms::third_moment(ms::DataMatrix(b.projected), ms::MomentKind::standardized);
  EXPECT_NEAR(std::abs(k.values()(0, 0)), 1.2345, 5e-2);
  EXPECT_NEAR(std::abs(k.values()(3, 1)), 0.5936, 5e-2);
}

TEST(MaxSkew, TwoDimensionalGridOracle) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = ms::testing::random_data(rng, 300, 2);
    const auto grid = ms::testing::grid_directional_2d(x);
    const double t = grid.angle_deg * std::numbers::pi / 180.0;
    const Vector grid_dir = (Vector(2) << std::cos(t), std::sin(t)).finished();
    const auto b = ms::max_skew(ms::DataMatrix(x), 100, 1);
    EXPECT_LT(ms::testing::line_angle_deg(b.directions.col(0), grid_dir), 2.0) << "trial " << trial;
    EXPECT_GE(b.skewness(0) * b.skewness(0) + 1e-12, grid.squared_skewness);
  }
}

TEST(MaxSkew, AffineInvarianceOfScores) {
  std::mt19937_64 rng(89);
  const auto iris = ms::testing::iris();
  const auto base = ms::max_skew(iris, 500, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = ms::testing::random_invertible(rng, 4);
    const Eigen::RowVectorXd shift = Eigen::RowVectorXd::Random(4);
    const ms::DataMatrix y(Matrix((iris.values() * a.transpose()).rowwise() + shift));
    const auto b = ms::max_skew(y, 500, 2);
    for (ms::Index j = 0; j < 2; ++j) {
      const double sign = base.projected.col(j).dot(b.projected.col(j)) < 0 ? -1.0 : 1.0;
      EXPECT_LT((sign * b.projected.col(j) - base.projected.col(j)).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(MaxSkew, RandomDataInvariants) {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 8; ++trial) {
    const ms::Index d = 3 + trial % 4;
    const ms::DataMatrix data(ms::testing::random_data(rng, 120, d));
    expect_basis_invariants(ms::max_skew(data, 100, static_cast<int>(d - 1)), data);
  }
}

TEST(MaxSkew, Preconditions) {
  const auto iris = ms::testing::iris();
  EXPECT_THROW(ms::max_skew(iris, 50, 4), std::invalid_argument);
  EXPECT_THROW(ms::max_skew(iris, 50, 5), std::invalid_argument);
  EXPECT_THROW(ms::max_skew(iris, 0, 2), std::invalid_argument);
  EXPECT_THROW(ms::max_skew(iris, 50, 0), std::invalid_argument);
  try {
    ms::max_skew(iris, 50, 5);
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("components must be < number of variables"), std::string::npos);
  }
}
