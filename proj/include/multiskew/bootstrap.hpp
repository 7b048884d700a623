#pragma once

// Nonparametric bootstrap for multivariate skewness measures.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "multiskew/detail/random.hpp"
#include "multiskew/errors.hpp"
#include "multiskew/ingest.hpp"
#include "multiskew/measures.hpp"

namespace multiskew {

/// Power-iteration steps used for the directional measure inside the bootstrap.
inline constexpr int kBootstrapIterations = 5;
/// Resamples drawn per replicate before giving up on a singular covariance.
inline constexpr int kMaxRedraws = 100;

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

struct BootstrapResult {
  std::vector<double> replicates;
  double observed = 0.0;
  double pvalue = 1.0;
  std::vector<HistogramBin> histogram;
  Measure measure = Measure::mardia;
  std::uint64_t seed = 0;
  int units = 0;
};

/// Sturges' rule: ceil(log2 R) + 1 equal-width bins over [min, max]. The last
/// bin is closed on the right. A degenerate range gives one bin.
inline std::vector<HistogramBin> sturges_histogram(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return {{lo, hi, xs.size()}};

  const auto bins = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(xs.size())))) + 1;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lower = lo + width * static_cast<double>(b);
    out[b].upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (double x : xs) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    out[std::min(b, bins - 1)].count += 1;
  }
  return out;
}

/// The scalar a bootstrap replicate reports for `measure`.
inline double bootstrap_statistic(const DataMatrix& data, Measure measure) {
  switch (measure) {
    case Measure::mardia: return mardia_skewness(data).scalar();
    case Measure::partial: return partial_skewness(data).scalar();
    case Measure::directional: return directional_skewness(data, kBootstrapIterations).scalar();
    case Measure::fisher: break;
  }
  throw std::invalid_argument("bootstrap supports the directional, partial and mardia measures");
}

/// Draws `replicates` resamples of `units` rows (with replacement), evaluates
/// the measure on each, and reports the add-one p-value
/// (1 + #{replicate >= observed}) / (replicates + 1).
///
/// Replicate r uses the random stream (seed, r), so the result does not
/// depend on `threads`. A resample whose covariance is singular is redrawn
/// from the same stream, at most kMaxRedraws times.
inline BootstrapResult skew_boot(const DataMatrix& data, int replicates, int units, Measure measure,
                                 std::uint64_t seed, unsigned threads = 0) {
  const Index d = data.cols();
  if (measure == Measure::fisher)
    throw std::invalid_argument("bootstrap measure must be Directional, Partial or Mardia");
  if (replicates < 1) throw std::invalid_argument("replicates must be a positive integer");
  if (measure == Measure::partial) {
    if (units <= d + 1)
      throw std::invalid_argument("units must be greater than the number of variables plus one (" +
                                  std::to_string(d + 1) + ")");
  } else if (units <= d) {
    throw std::invalid_argument("units must be greater than the number of variables (" +
                                std::to_string(d) + ")");
  }
  if (measure == Measure::directional && d < 2)
    throw std::invalid_argument("directional skewness needs at least 2 variables");

  BootstrapResult result;
  result.measure = measure;
  result.seed = seed;
  result.units = units;
  result.observed = bootstrap_statistic(data, measure);
  result.replicates.assign(static_cast<std::size_t>(replicates), 0.0);

  auto run_one = [&](std::size_t r) {
    detail::CounterRng rng(seed, r);
    std::vector<Index> rows(static_cast<std::size_t>(units));
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      for (auto& row : rows) row = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(data.rows())));
      try {
        result.replicates[r] = bootstrap_statistic(data.select_rows(rows), measure);
        return;
      } catch (const SingularityError&) {
      }
    }
    throw SingularityError("bootstrap replicate " + std::to_string(r + 1) + " stayed singular after " +
                           std::to_string(kMaxRedraws) + " redraws");
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(replicates));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < result.replicates.size(); r += threads) {
          try {
            run_one(r);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  const auto exceed = std::count_if(result.replicates.begin(), result.replicates.end(),
                                    [&](double s) { return s >= result.observed; });
  result.pvalue = static_cast<double>(1 + exceed) / static_cast<double>(replicates + 1);
  result.histogram = sturges_histogram(result.replicates);
  return result;
}

}  // namespace multiskew
