#pragma once

// Rectangular numeric data: loading, selection, centering and standardization.
// All sample moments except the mean use 1/n weights.

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "multiskew/detail/summation.hpp"
#include "multiskew/errors.hpp"

namespace multiskew {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Smallest admissible eigenvalue of a covariance, relative to the largest.
inline constexpr double kSingularityTolerance = 1e-10;

/// n x d observations with one label per column.
///
/// Invariants: n >= 2, d >= 1, every entry finite, labels unique.
class DataMatrix {
 public:
  DataMatrix(Matrix values, std::vector<std::string> names)
      : values_(std::move(values)), names_(std::move(names)) {
    if (values_.rows() < 2) throw std::invalid_argument("data must have at least 2 rows");
    if (values_.cols() < 1) throw std::invalid_argument("data must have at least 1 column");
    if (static_cast<Index>(names_.size()) != values_.cols())
      throw std::invalid_argument("column label count does not match column count");
    if (!values_.allFinite()) throw DataError("data contains non-finite values");
    std::set<std::string_view> seen;
    for (const auto& n : names_)
      if (!seen.insert(n).second) throw DataError("duplicate column label '" + n + "'");
  }

  /// Columns labelled X1..Xd.
  explicit DataMatrix(Matrix values) : DataMatrix(values, default_names(values.cols())) {}

  [[nodiscard]] const Matrix& values() const noexcept { return values_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] Index rows() const noexcept { return values_.rows(); }
  [[nodiscard]] Index cols() const noexcept { return values_.cols(); }

  /// Rows in the given order (0-based, repeats allowed).
  [[nodiscard]] DataMatrix select_rows(std::span<const Index> rows) const {
    Matrix out(static_cast<Index>(rows.size()), cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r] < 0 || rows[r] >= this->rows())
        throw std::invalid_argument("row index out of range");
      out.row(static_cast<Index>(r)) = values_.row(rows[r]);
    }
    return {std::move(out), names_};
  }

  [[nodiscard]] DataMatrix select_columns(std::span<const Index> cols) const {
    if (cols.empty()) throw std::invalid_argument("empty column selection");
    Matrix out(rows(), static_cast<Index>(cols.size()));
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c] < 0 || cols[c] >= this->cols())
        throw std::invalid_argument("column index out of range");
      out.col(static_cast<Index>(c)) = values_.col(cols[c]);
      names.push_back(names_[static_cast<std::size_t>(cols[c])]);
    }
    return {std::move(out), std::move(names)};
  }

  static std::vector<std::string> default_names(Index d) {
    std::vector<std::string> names;
    for (Index j = 0; j < d; ++j) names.push_back("X" + std::to_string(j + 1));
    return names;
  }

 private:
  Matrix values_;
  std::vector<std::string> names_;
};

/// Symmetric positive-definite d x d matrix.
class SpdMatrix {
 public:
  explicit SpdMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols() || values_.rows() == 0)
      throw std::invalid_argument("SPD matrix must be square and non-empty");
    const double scale = std::max(values_.cwiseAbs().maxCoeff(), 1e-300);
    if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw std::invalid_argument("matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(values_, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0))
      throw SingularityError("matrix is not positive definite");
  }

  [[nodiscard]] const Matrix& values() const noexcept { return values_; }
  [[nodiscard]] Index dim() const noexcept { return values_.rows(); }

 private:
  Matrix values_;
};

// ---------------------------------------------------------------------------
// Column / row selection syntax
// ---------------------------------------------------------------------------

/// A column picked either by 0-based position or by label.
using ColumnRef = std::variant<Index, std::string>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::optional<long long> parse_integer(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// "a" or "a-b" (1-based, inclusive) -> 0-based indices; nullopt if not numeric.
inline std::optional<std::vector<Index>> parse_range(std::string_view token) {
  token = trim(token);
  const auto dash = token.find('-', 1);
  if (dash == std::string_view::npos) {
    auto v = parse_integer(token);
    if (!v) return std::nullopt;
    if (*v < 1) throw std::invalid_argument("indices are 1-based: " + std::string(token));
    return std::vector<Index>{static_cast<Index>(*v - 1)};
  }
  auto lo = parse_integer(trim(token.substr(0, dash)));
  auto hi = parse_integer(trim(token.substr(dash + 1)));
  if (!lo || !hi) return std::nullopt;
  if (*lo < 1 || *hi < *lo) throw std::invalid_argument("invalid range: " + std::string(token));
  std::vector<Index> out;
  for (long long i = *lo; i <= *hi; ++i) out.push_back(static_cast<Index>(i - 1));
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

// Splits one CSV record; double quotes group a field and "" escapes a quote.
inline std::vector<std::string> split_csv_record(std::string_view line, char sep) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == sep) {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  return fields;
}

}  // namespace detail

/// Parses "1-4", "1,4", "Sepal.Length,Petal.Width" or mixtures of these.
/// Numeric tokens are 1-based; anything else is taken as a label.
inline std::vector<ColumnRef> parse_column_list(std::string_view list) {
  std::vector<ColumnRef> out;
  for (auto token : detail::split(list, ',')) {
    token = detail::trim(token);
    if (token.empty()) throw std::invalid_argument("empty token in column list");
    if (auto idx = detail::parse_range(token)) {
      out.insert(out.end(), idx->begin(), idx->end());
    } else {
      out.emplace_back(std::string(token));
    }
  }
  return out;
}

/// Parses a 1-based row list such as "1-50" or "1-10,20"; returns 0-based indices.
inline std::vector<Index> parse_row_list(std::string_view list) {
  std::vector<Index> out;
  for (auto token : detail::split(list, ',')) {
    auto idx = detail::parse_range(token);
    if (!idx) throw std::invalid_argument("row selection must be numeric: " + std::string(token));
    out.insert(out.end(), idx->begin(), idx->end());
  }
  if (out.empty()) throw std::invalid_argument("empty row selection");
  return out;
}

struct CsvOptions {
  bool header = true;
  char separator = ',';
};

/// Reads the selected columns of a CSV file. Columns outside the selection
/// may hold anything (e.g. a species label); selected ones must be numeric.
inline DataMatrix load_csv(const std::string& path,
                           const std::optional<std::vector<ColumnRef>>& columns = std::nullopt,
                           const CsvOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file '" + path + "'");

  std::vector<std::vector<std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    records.push_back(detail::split_csv_record(line, options.separator));
  }
  if (records.empty()) throw DataError("file '" + path + "' is empty");

  std::vector<std::string> header;
  std::size_t first_data = 0;
  const std::size_t width = records.front().size();
  if (options.header) {
    for (const auto& h : records.front()) header.emplace_back(detail::trim(h));
    first_data = 1;
  } else {
    header = DataMatrix::default_names(static_cast<Index>(width));
  }

  std::vector<Index> selected;
  if (!columns) {
    for (std::size_t j = 0; j < width; ++j) selected.push_back(static_cast<Index>(j));
  } else {
    for (const auto& ref : *columns) {
      if (const auto* idx = std::get_if<Index>(&ref)) {
        if (*idx < 0 || *idx >= static_cast<Index>(width))
          throw DataError("column " + std::to_string(*idx + 1) + " out of range (file has " +
                          std::to_string(width) + " columns)");
        selected.push_back(*idx);
      } else {
        const auto& name = std::get<std::string>(ref);
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError("no column named '" + name + "'");
        selected.push_back(static_cast<Index>(it - header.begin()));
      }
    }
  }
  if (selected.empty()) throw DataError("empty column selection");

  const auto n = static_cast<Index>(records.size() - first_data);
  Matrix values(n, static_cast<Index>(selected.size()));
  for (Index r = 0; r < n; ++r) {
    const auto& rec = records[first_data + static_cast<std::size_t>(r)];
    if (rec.size() != width)
      throw DataError("row " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) +
                      " fields, expected " + std::to_string(width));
    for (std::size_t c = 0; c < selected.size(); ++c) {
      double v = 0.0;
      const auto j = static_cast<std::size_t>(selected[c]);
      if (!detail::parse_double(rec[j], v))
        throw DataError("non-numeric value '" + rec[j] + "' at row " + std::to_string(r + 1) +
                        ", column " + std::to_string(j + 1) + " (" + header[j] + ")");
      values(r, static_cast<Index>(c)) = v;
    }
  }

  std::vector<std::string> names;
  for (Index j : selected) names.push_back(header[static_cast<std::size_t>(j)]);
  return {std::move(values), std::move(names)};
}

// ---------------------------------------------------------------------------
// Moments of order one and two
// ---------------------------------------------------------------------------

inline Vector mean_vector(const DataMatrix& data) {
  const Matrix& x = data.values();
  Vector mu(x.cols());
  std::vector<double> col(static_cast<std::size_t>(x.rows()));
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) col[static_cast<std::size_t>(i)] = x(i, j);
    mu(j) = detail::pairwise_mean(col);
  }
  return mu;
}

/// Rows minus the column means.
inline Matrix centered(const DataMatrix& data) {
  return data.values().rowwise() - mean_vector(data).transpose();
}

namespace detail {

// (1/n) X'X with exact symmetry and pairwise summation.
inline Matrix cross_product_mean(const Matrix& x) {
  const Index d = x.cols();
  Matrix out(d, d);
  std::vector<double> prod(static_cast<std::size_t>(x.rows()));
  for (Index a = 0; a < d; ++a) {
    for (Index b = a; b < d; ++b) {
      for (Index i = 0; i < x.rows(); ++i) prod[static_cast<std::size_t>(i)] = x(i, a) * x(i, b);
      out(a, b) = out(b, a) = pairwise_mean(prod);
    }
  }
  return out;
}

inline void require_well_conditioned(const Eigen::SelfAdjointEigenSolver<Matrix>& es,
                                     const char* what) {
  const Vector& ev = es.eigenvalues();  // ascending
  const double largest = ev(ev.size() - 1);
  if (largest > 0.0 && ev(0) > kSingularityTolerance * largest) return;
  std::ostringstream msg;
  msg << what << " is singular or nearly so (eigenvalue ratio "
      << (largest > 0.0 ? ev(0) / largest : 0.0) << "); near-null direction: (";
  const Vector dir = es.eigenvectors().col(0);
  for (Index j = 0; j < dir.size(); ++j) msg << (j ? ", " : "") << dir(j);
  msg << ")";
  throw SingularityError(msg.str());
}

}  // namespace detail

/// Sample covariance with denominator n. Throws SingularityError when the
/// smallest eigenvalue is not above kSingularityTolerance times the largest.
inline SpdMatrix covariance(const DataMatrix& data) {
  Matrix s = detail::cross_product_mean(centered(data));
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  detail::require_well_conditioned(es, "covariance");
  return SpdMatrix(std::move(s));
}

/// Inverse of the symmetric (spectral) square root of s.
inline Matrix inv_sqrt(const SpdMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.values());
  detail::require_well_conditioned(es, "matrix");
  const Matrix& v = es.eigenvectors();
  Matrix r = v * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  return 0.5 * (r + r.transpose());
}

/// z = (x - mean) * cov^{-1/2}, row by row. Columns keep their labels.
inline DataMatrix standardize(const DataMatrix& data) {
  const Matrix r = inv_sqrt(covariance(data));
  return {centered(data) * r, data.names()};
}

}  // namespace multiskew
