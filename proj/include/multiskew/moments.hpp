#pragma once

// Third multivariate moments stored as d^2 x d matrices.
//
// Entry (i*d + j, h) holds the sample mean of x_i x_j x_h (0-based). The
// matrix is the vertical stack of d symmetric d x d blocks B_i = mean(x_i x x').

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "multiskew/detail/summation.hpp"
#include "multiskew/errors.hpp"
#include "multiskew/ingest.hpp"

namespace multiskew {

enum class MomentKind { raw, central, standardized };

inline std::string_view to_string(MomentKind k) {
  switch (k) {
    case MomentKind::raw: return "raw";
    case MomentKind::central: return "central";
    case MomentKind::standardized: return "standardized";
  }
  return "?";
}

inline MomentKind parse_moment_kind(std::string_view s) {
  if (s == "raw") return MomentKind::raw;
  if (s == "central") return MomentKind::central;
  if (s == "standardized") return MomentKind::standardized;
  throw std::invalid_argument("unknown moment kind '" + std::string(s) +
                              "' (expected raw, central or standardized)");
}

class ThirdMomentMatrix {
 public:
  ThirdMomentMatrix(Matrix values, MomentKind kind) : values_(std::move(values)), kind_(kind) {
    const Index d = values_.cols();
    if (d < 1 || values_.rows() != d * d)
      throw std::invalid_argument("third moment matrix must be d^2 x d");
  }

  [[nodiscard]] const Matrix& values() const noexcept { return values_; }
  [[nodiscard]] MomentKind kind() const noexcept { return kind_; }
  [[nodiscard]] Index dim() const noexcept { return values_.cols(); }

  /// mean(x_i x_j x_h), 0-based.
  [[nodiscard]] double operator()(Index i, Index j, Index h) const {
    return values_(i * dim() + j, h);
  }

  /// Largest deviation between an entry and any of its index permutations.
  [[nodiscard]] double symmetry_defect() const {
    const Index d = dim();
    double worst = 0.0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index h = 0; h < d; ++h) {
          const double v = (*this)(i, j, h);
          for (double w : {(*this)(i, h, j), (*this)(j, i, h), (*this)(j, h, i), (*this)(h, i, j),
                           (*this)(h, j, i)})
            worst = std::max(worst, std::abs(v - w));
        }
    return worst;
  }

 private:
  Matrix values_;
  MomentKind kind_;
};

/// Standard Kronecker product: out(i*r + k, j*s + l) = a(i, j) * b(k, l).
inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Mean of x_i x_j x_h over the rows of x, filled from the d(d+1)(d+2)/6
/// distinct triples so the permutation symmetry is exact.
inline Matrix third_moment_of_rows(const Matrix& x) {
  const Index d = x.cols();
  Matrix out(d * d, d);
  std::vector<double> prod(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      for (Index h = j; h < d; ++h) {
        for (Index r = 0; r < x.rows(); ++r)
          prod[static_cast<std::size_t>(r)] = x(r, i) * x(r, j) * x(r, h);
        const double m = detail::pairwise_mean(prod);
        const std::array<std::array<Index, 3>, 6> perms{{
            {i, j, h}, {i, h, j}, {j, i, h}, {j, h, i}, {h, i, j}, {h, j, i}}};
        for (const auto& p : perms) out(p[0] * d + p[1], p[2]) = m;
      }
  return out;
}

inline ThirdMomentMatrix third_moment(const DataMatrix& data, MomentKind kind) {
  switch (kind) {
    case MomentKind::raw:
      return {third_moment_of_rows(data.values()), kind};
    case MomentKind::central:
      return {third_moment_of_rows(centered(data)), kind};
    case MomentKind::standardized:
      return {third_moment_of_rows(standardize(data).values()), kind};
  }
  throw std::invalid_argument("unknown moment kind");
}

/// (1/n) sum x x'.
inline Matrix second_raw_moment(const DataMatrix& data) {
  return detail::cross_product_mean(data.values());
}

/// Central third moment from raw moments:
/// K3 = M3 - M2 (x) mu - mu (x) M2 - vec(M2) mu' + 2 mu (x) mu' (x) mu.
inline ThirdMomentMatrix cumulant_from_moments(const ThirdMomentMatrix& m3, const Matrix& m2,
                                               const Vector& mu) {
  if (m3.kind() != MomentKind::raw)
    throw std::invalid_argument("cumulant_from_moments expects a raw third moment");
  const Index d = m3.dim();
  if (m2.rows() != d || m2.cols() != d || mu.size() != d)
    throw std::invalid_argument("dimension mismatch between M3, M2 and mean");

  const Matrix mu_col = mu;
  const Matrix mu_row = mu.transpose();
  const Matrix vec_m2 = m2.reshaped(d * d, 1);
  Matrix k3 = m3.values() - kronecker(m2, mu_col) - kronecker(mu_col, m2) - vec_m2 * mu_row +
              2.0 * kronecker(kronecker(mu_col, mu_row), mu_col);
  return {std::move(k3), MomentKind::central};
}

/// Third moment of y = A x: (A (x) A) M3 A'.
///
/// Raw and central kinds carry over. A standardized moment stays standardized
/// only when A has orthonormal rows; otherwise the result is labelled central.
inline ThirdMomentMatrix transform_third(const ThirdMomentMatrix& m3, const Matrix& a) {
  if (a.cols() != m3.dim())
    throw std::invalid_argument("transform matrix has " + std::to_string(a.cols()) +
                                " columns, expected " + std::to_string(m3.dim()));
  Matrix out = kronecker(a, a) * m3.values() * a.transpose();
  MomentKind kind = m3.kind();
  if (kind == MomentKind::standardized) {
    const Matrix gram = a * a.transpose();
    if (!gram.isApprox(Matrix::Identity(a.rows(), a.rows()), 1e-10)) kind = MomentKind::central;
  }
  return {std::move(out), kind};
}

/// Block B_i (0-based), i.e. rows i*d .. i*d + d - 1.
inline Matrix block(const ThirdMomentMatrix& m3, Index i) {
  const Index d = m3.dim();
  if (i < 0 || i >= d)
    throw std::invalid_argument("block index " + std::to_string(i) + " out of range [0, " +
                                std::to_string(d) + ")");
  return m3.values().middleRows(i * d, d);
}

// ---------------------------------------------------------------------------
// CSV serialization: a "# kind=<kind>" line followed by d^2 rows of d values.
// ---------------------------------------------------------------------------

inline std::string format_number(double v, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline void write_matrix_rows(std::ostream& out, const Matrix& m, int precision) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_number(m(i, j), precision);
    out << '\n';
  }
}

inline void write_csv(std::ostream& out, const ThirdMomentMatrix& m3, int precision = 6) {
  out << "# kind=" << to_string(m3.kind()) << '\n';
  write_matrix_rows(out, m3.values(), precision);
}

inline ThirdMomentMatrix read_third_moment_csv(std::istream& in) {
  std::string line;
  std::optional<MomentKind> kind;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    auto t = detail::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      constexpr std::string_view key = "kind=";
      auto pos = t.find(key);
      if (pos != std::string_view::npos) kind = parse_moment_kind(detail::trim(t.substr(pos + key.size())));
      continue;
    }
    std::vector<double> row;
    for (auto f : detail::split(t, ',')) {
      double v = 0.0;
      if (!detail::parse_double(f, v)) throw DataError("non-numeric entry in third moment file");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!kind) throw DataError("third moment file lacks a '# kind=' line");
  if (rows.empty()) throw DataError("third moment file has no rows");
  const auto d = static_cast<Index>(rows.front().size());
  if (static_cast<Index>(rows.size()) != d * d) throw DataError("third moment file is not d^2 x d");
  Matrix m(d * d, d);
  for (Index i = 0; i < d * d; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != d)
      throw DataError("ragged row in third moment file");
    for (Index j = 0; j < d; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return {std::move(m), *kind};
}

}  // namespace multiskew
