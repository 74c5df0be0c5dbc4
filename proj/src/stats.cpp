#include "knotperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <gmpxx.h>

namespace knotperc {

MeanEstimate estimate_mean(std::span<const double> values) {
  MeanEstimate out;
  out.count = values.size();
  if (values.empty()) return out;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  out.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  if (sorted.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

double h_repartition(double x, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (!(x >= 0.0)) throw DomainError("h is defined for x >= 0");
  const double base = (1.0 - alpha) * x / (2.0 - alpha);
  return 1.0 - std::min(1.0, std::pow(base, 1.0 - alpha));
}

double RepartitionModel::density(double x) const {
  if (x <= 0.0 || x >= cutoff()) return 0.0;
  // -d/dx of the survival function
  const double scale = (1.0 - alpha) / (2.0 - alpha);
  return (1.0 - alpha) * scale * std::pow(scale * x, -alpha);
}

EcdfTable::EcdfTable(std::vector<double> values, bool normalize)
    : values_(std::move(values)), normalized_(normalize) {
  if (values_.empty()) throw DomainError("empty sample");
  std::sort(values_.begin(), values_.end());
  // Summing in sorted order keeps the mean independent of the input order.
  mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
  if (normalize) {
    if (!(mean_ > 0.0)) throw DomainError("normalization needs a positive mean");
    for (double& v : values_) v /= mean_;
  }
}

double EcdfTable::survival(double x) const {
  const auto above = values_.end() - std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(above) / static_cast<double>(values_.size());
}

double ecdf_distance(const EcdfTable& ecdf, const std::function<double(double)>& reference) {
  const auto& v = ecdf.values();
  const double n = static_cast<double>(v.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double ref = reference(v[i]);
    const double left = (n - static_cast<double>(i)) / n;  // P(X >= v)
    const double right = (n - static_cast<double>(j)) / n;  // P(X > v)
    worst = std::max({worst, std::fabs(left - ref), std::fabs(right - ref)});
    i = j;
  }
  return worst;
}

double length_law_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 2.0) return 0.0;
  return 1.0 - x / 2.0;
}

AlphaFit fit_alpha(const EcdfTable& ecdf) {
  AlphaFit best{0.0, std::numeric_limits<double>::infinity()};
  for (int k = 1; k <= 99; ++k) {
    const double alpha = k / 100.0;
    const double d = ecdf_distance(ecdf, [alpha](double x) { return h_repartition(std::max(x, 0.0), alpha); });
    if (d < best.distance) best = {alpha, d};
  }
  return best;
}

ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points) {
  std::vector<double> sizes;
  for (const auto& [n, mean] : points) {
    if (!(n > 0.0) || !(mean > 0.0)) throw DomainError("scaling fit needs positive sizes and means");
    sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end());
  if (std::unique(sizes.begin(), sizes.end()) - sizes.begin() < 3)
    throw DomainError("scaling fit needs at least three distinct sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(points.size());
  for (const auto& [n, mean] : points) {
    const double x = std::log(n), y = std::log(mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  return {slope, std::exp(intercept)};
}

FractionEstimate estimate_fraction(std::size_t hits, std::size_t total) {
  FractionEstimate out{hits, total, 0.0, 0.0};
  if (total == 0) return out;
  out.fraction = static_cast<double>(hits) / static_cast<double>(total);
  out.std_error = std::sqrt(out.fraction * (1.0 - out.fraction) / static_cast<double>(total));
  return out;
}

bool has_unit_determinant(const SampleRecord& r, double tolerance) {
  if (r.exact_minus1) return *r.exact_minus1 == "1";
  return std::fabs(r.log_abs_minus1) < tolerance;
}

bool is_unknot_candidate(const SampleRecord& r, double tolerance) {
  if (r.exact_minus1 && r.exact_i_norm) return *r.exact_minus1 == "1" && *r.exact_i_norm == "1";
  return std::fabs(r.log_abs_minus1) < tolerance && std::fabs(r.log_abs_i) < tolerance;
}

FractionEstimate unknot_candidate_fraction(std::span<const SampleRecord> records, double tolerance) {
  std::size_t hits = 0;
  for (const auto& r : records) hits += is_unknot_candidate(r, tolerance) ? 1 : 0;
  return estimate_fraction(hits, records.size());
}

const std::vector<long>& default_divisors() {
  static const std::vector<long> divisors{3,   5,   9,   15,  25,  27,  45,   75,   125, 81,
                                          135, 225, 375, 625, 243, 405, 675, 1875, 3125};
  return divisors;
}

std::vector<DivisibilityRow> divisibility_table(std::span<const SampleRecord> records,
                                                std::span<const long> divisors) {
  std::vector<mpz_class> values;
  values.reserve(records.size());
  for (const auto& r : records) {
    if (!r.exact_minus1) throw DomainError("divisibility table needs exact determinants");
    values.emplace_back(*r.exact_minus1);
  }
  std::vector<DivisibilityRow> out;
  for (long d : divisors) {
    if (d <= 0) throw DomainError("divisors must be positive");
    DivisibilityRow row;
    row.divisor = d;
    for (const auto& v : values)
      if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) ++row.hits;
    row.frequency = values.empty() ? 0.0 : static_cast<double>(row.hits) / static_cast<double>(values.size());
    row.excess = row.frequency * static_cast<double>(d);
    out.push_back(row);
  }
  return out;
}

std::vector<DivisibilityRow> divisibility_table(std::span<const SampleRecord> records) {
  return divisibility_table(records, default_divisors());
}

}  // namespace knotperc
