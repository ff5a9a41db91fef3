#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lbsnet {

enum class BinScale { Linear, Log };

struct BinSpec {
  BinScale scale = BinScale::Log;
  std::size_t bins = 10;
  /// Range of x covered by the bins; defaults to [min x, max x].
  std::optional<std::pair<double, double>> range;
};

struct BinRow {
  double bin_center = 0.0;  // arithmetic midpoint (linear) or geometric midpoint (log)
  double mean_y = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count); 0 for a single point
  std::size_t count = 0;
};

/// Averages y within bins of x. NaN y values (undefined ratios) are dropped;
/// empty bins are omitted. Log bins reject non-positive x with Error(BadBinDomain).
std::vector<BinRow> binned_series(std::span<const double> x, std::span<const double> y, const BinSpec& spec);

struct CdfPoint {
  double value = 0.0;
  double cumulative_fraction = 0.0;
};

/// Empirical CDF with one point per distinct value; NaN values are dropped.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

}  // namespace lbsnet
