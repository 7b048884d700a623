#pragma once

// Univariate and multivariate skewness measures with large-sample p-values
// under normality.

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "multiskew/chi2.hpp"
#include "multiskew/detail/summation.hpp"
#include "multiskew/ingest.hpp"
#include "multiskew/moments.hpp"
#include "multiskew/projpursuit.hpp"

namespace multiskew {

enum class Measure { fisher, mardia, partial, directional };

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::fisher: return "fisher";
    case Measure::mardia: return "mardia";
    case Measure::partial: return "partial";
    case Measure::directional: return "directional";
  }
  return "?";
}

inline Measure parse_measure(std::string_view s) {
  std::string lower(s);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "fisher") return Measure::fisher;
  if (lower == "mardia") return Measure::mardia;
  if (lower == "partial") return Measure::partial;
  if (lower == "directional") return Measure::directional;
  throw std::invalid_argument("unknown measure '" + std::string(s) + "'");
}

struct SkewnessReport {
  Measure measure = Measure::mardia;
  Vector value;                   ///< one entry per variable for fisher, a single entry otherwise
  std::optional<Vector> vector;   ///< skewness vector (partial only)
  std::optional<double> statistic;
  std::optional<int> dof;
  std::optional<double> pvalue;
  std::vector<std::string> names; ///< variable labels (fisher only)

  [[nodiscard]] double scalar() const { return value(0); }
};

/// Per-column third central moment over sigma^3, 1/n weights throughout.
inline Vector fisher_skew(const DataMatrix& data) {
  const Matrix xc = centered(data);
  Vector out(xc.cols());
  std::vector<double> sq(static_cast<std::size_t>(xc.rows()));
  std::vector<double> cube(sq.size());
  for (Index j = 0; j < xc.cols(); ++j) {
    for (Index i = 0; i < xc.rows(); ++i) {
      const double v = xc(i, j);
      sq[static_cast<std::size_t>(i)] = v * v;
      cube[static_cast<std::size_t>(i)] = v * v * v;
    }
    const double m2 = detail::pairwise_mean(sq);
    if (!(m2 > 0.0))
      throw std::invalid_argument("column '" + data.names()[static_cast<std::size_t>(j)] +
                                  "' has zero variance");
    out(j) = detail::pairwise_mean(cube) / std::pow(m2, 1.5);
  }
  return out;
}

inline SkewnessReport fisher_report(const DataMatrix& data) {
  SkewnessReport r;
  r.measure = Measure::fisher;
  r.value = fisher_skew(data);
  r.names = data.names();
  return r;
}

inline int mardia_dof(Index d) { return static_cast<int>(d * (d + 1) * (d + 2) / 6); }

namespace detail {

inline void require_more_rows_than(const DataMatrix& data, Index min_exclusive, const char* what) {
  if (data.rows() <= min_exclusive)
    throw std::invalid_argument(std::string(what) + " needs more than " +
                                std::to_string(min_exclusive) + " observations");
}

inline SkewnessReport mardia_from_value(double b, Index n, Index d) {
  SkewnessReport r;
  r.measure = Measure::mardia;
  r.value = Vector::Constant(1, b);
  r.statistic = static_cast<double>(n) * b / 6.0;
  r.dof = mardia_dof(d);
  r.pvalue = chi2_sf(*r.statistic, *r.dof);
  return r;
}

}  // namespace detail

/// Mardia's skewness: squared Frobenius norm of the standardized third
/// cumulant. Statistic n*b/6 is referred to chi-square with d(d+1)(d+2)/6 dof.
inline SkewnessReport mardia_skewness(const DataMatrix& data) {
  detail::require_more_rows_than(data, data.cols(), "Mardia skewness");
  const double b = third_moment(data, MomentKind::standardized).values().squaredNorm();
  return detail::mardia_from_value(b, data.rows(), data.cols());
}

/// Mardia's skewness by the double sum (1/n^2) sum_ab [(x_a - m)' S^-1 (x_b - m)]^3.
inline double mardia_double_sum(const DataMatrix& data) {
  const Matrix xc = centered(data);
  const Matrix g = xc * covariance(data).values().llt().solve(xc.transpose());
  std::vector<double> cubes(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) cubes[static_cast<std::size_t>(i)] = g(i) * g(i) * g(i);
  return detail::pairwise_mean(cubes);
}

/// Mori-Rohatgi-Szekely skewness vector: sample mean of (z'z) z over the
/// standardized rows.
inline Vector mori_vector(const DataMatrix& data) {
  const Matrix z = standardize(data).values();
  Vector out(z.cols());
  std::vector<double> terms(static_cast<std::size_t>(z.rows()));
  const Vector norms = z.rowwise().squaredNorm();
  for (Index j = 0; j < z.cols(); ++j) {
    for (Index i = 0; i < z.rows(); ++i) terms[static_cast<std::size_t>(i)] = norms(i) * z(i, j);
    out(j) = detail::pairwise_mean(terms);
  }
  return out;
}

/// Same vector as K3,z' vec(I): sums the "diagonal" blocks of the cumulant.
inline Vector mori_vector_from_cumulant(const ThirdMomentMatrix& k3z) {
  const Index d = k3z.dim();
  const Vector vec_identity = Matrix::Identity(d, d).reshaped(d * d, 1);
  return k3z.values().transpose() * vec_identity;
}

/// Partial skewness: squared norm of the Mori-Rohatgi-Szekely vector.
/// Statistic n*b/(2(d+2)) is referred to chi-square with d dof.
inline SkewnessReport partial_skewness(const DataMatrix& data) {
  const Index n = data.rows();
  const Index d = data.cols();
  detail::require_more_rows_than(data, d + 1, "partial skewness");
  SkewnessReport r;
  r.measure = Measure::partial;
  r.vector = mori_vector(data);
  const double b = r.vector->squaredNorm();
  r.value = Vector::Constant(1, b);
  r.statistic = static_cast<double>(n) * b / (2.0 * static_cast<double>(d + 2));
  r.dof = static_cast<int>(d);
  r.pvalue = chi2_sf(*r.statistic, *r.dof);
  return r;
}

/// Squared skewness of the most skewed projection. No parametric p-value.
inline SkewnessReport directional_skewness(const DataMatrix& data, int iterations) {
  if (data.cols() < 2) throw std::invalid_argument("directional skewness needs at least 2 variables");
  const auto basis = max_skew(data, iterations, 1);
  SkewnessReport r;
  r.measure = Measure::directional;
  r.value = Vector::Constant(1, basis.skewness(0) * basis.skewness(0));
  return r;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline std::string join_numbers(const Vector& v, int precision) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v(i), precision);
  }
  return out;
}

/// Flat "key=value" lines; vectors are comma separated.
inline std::string to_key_value(const SkewnessReport& r, int precision = 6) {
  std::ostringstream os;
  os << "measure=" << to_string(r.measure) << '\n';
  if (!r.names.empty()) {
    os << "names=";
    for (std::size_t i = 0; i < r.names.size(); ++i) os << (i ? "," : "") << r.names[i];
    os << '\n';
  }
  os << "value=" << join_numbers(r.value, precision) << '\n';
  if (r.vector) os << "vector=" << join_numbers(*r.vector, precision) << '\n';
  if (r.statistic) os << "statistic=" << format_number(*r.statistic, precision) << '\n';
  if (r.dof) os << "dof=" << *r.dof << '\n';
  if (r.pvalue) os << "pvalue=" << format_number(*r.pvalue, precision) << '\n';
  return os.str();
}

inline nlohmann::json to_json(const SkewnessReport& r) {
  auto as_array = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json j;
  j["measure"] = to_string(r.measure);
  if (r.measure == Measure::fisher) {
    j["value"] = as_array(r.value);
    j["names"] = r.names;
  } else {
    j["value"] = r.scalar();
  }
  j["vector"] = r.vector ? nlohmann::json(as_array(*r.vector)) : nlohmann::json(nullptr);
  j["statistic"] = r.statistic ? nlohmann::json(*r.statistic) : nlohmann::json(nullptr);
  j["dof"] = r.dof ? nlohmann::json(*r.dof) : nlohmann::json(nullptr);
  j["pvalue"] = r.pvalue ? nlohmann::json(*r.pvalue) : nlohmann::json(nullptr);
  return j;
}

}  // namespace multiskew
