#include "lbsnet/series.hpp"

#include <algorithm>
#include <cmath>

#include "lbsnet/error.hpp"

namespace lbsnet {

std::vector<BinRow> binned_series(std::span<const double> x, std::span<const double> y, const BinSpec& spec) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidSpec, "x and y series differ in length");
  if (spec.bins == 0) throw Error(ErrorCode::InvalidSpec, "need at least one bin");
  const bool log_scale = spec.scale == BinScale::Log;

  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) continue;
    if (log_scale && !(x[i] > 0.0)) throw Error(ErrorCode::BadBinDomain, "log bins need positive x");
    points.emplace_back(x[i], y[i]);
  }
  if (points.empty()) return {};

  auto [lo, hi] = spec.range.value_or(std::pair{
      std::min_element(points.begin(), points.end())->first, std::max_element(points.begin(), points.end())->first});
  if (log_scale && !(lo > 0.0)) throw Error(ErrorCode::BadBinDomain, "log bins need a positive range");
  if (hi < lo) throw Error(ErrorCode::InvalidSpec, "bin range is reversed");
  const double a = log_scale ? std::log(lo) : lo;
  const double b = log_scale ? std::log(hi) : hi;
  const double width = (b - a) / static_cast<double>(spec.bins);

  std::vector<std::vector<double>> members(spec.bins);
  for (const auto& [xi, yi] : points) {
    const double t = log_scale ? std::log(xi) : xi;
    if (t < a || t > b) continue;
    auto idx = width > 0.0 ? static_cast<std::size_t>((t - a) / width) : 0;
    members[std::min(idx, spec.bins - 1)].push_back(yi);
  }

  std::vector<BinRow> rows;
  for (std::size_t i = 0; i < spec.bins; ++i) {
    const auto& ys = members[i];
    if (ys.empty()) continue;
    BinRow row;
    const double mid = a + (static_cast<double>(i) + 0.5) * width;
    row.bin_center = log_scale ? std::exp(mid) : mid;
    row.count = ys.size();
    double sum = 0.0;
    for (double v : ys) sum += v;
    row.mean_y = sum / static_cast<double>(ys.size());
    if (ys.size() > 1) {
      double ss = 0.0;
      for (double v : ys) ss += (v - row.mean_y) * (v - row.mean_y);
      row.std_error = std::sqrt(ss / static_cast<double>(ys.size() - 1) / static_cast<double>(ys.size()));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
  std::erase_if(values, [](double v) { return std::isnan(v); });
  std::sort(values.begin(), values.end());
  std::vector<CdfPoint> out;
  const auto n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

}  // namespace lbsnet
