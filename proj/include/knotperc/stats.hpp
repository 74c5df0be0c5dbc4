#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotperc {

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// One Monte Carlo observation. Exact values are kept as decimal strings.
struct SampleRecord {
  int size = 0;
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  std::size_t crossings_raw = 0;
  std::size_t crossings_simplified = 0;
  double log_abs_minus1 = 0.0;
  double log_abs_i = 0.0;
  std::optional<std::string> exact_minus1;
  std::optional<std::string> exact_i_norm;  // |det(i)|^2
  int retries = 0;
  double elapsed_ms = 0.0;

  bool operator==(const SampleRecord&) const = default;
};

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // s / sqrt(count)
  std::size_t count = 0;
};

MeanEstimate estimate_mean(std::span<const double> values);

/// 1 - min(1, ((1-alpha) x / (2-alpha))^(1-alpha)); the survival function of
/// the density proportional to x^-alpha on (0, (2-alpha)/(1-alpha)), which has mean 1.
double h_repartition(double x, double alpha);

struct RepartitionModel {
  double alpha = 0.44;

  double cutoff() const { return (2.0 - alpha) / (1.0 - alpha); }
  double survival(double x) const { return h_repartition(x, alpha); }
  double density(double x) const;
};

/// Survival function G(x) = P(X > x) of a sample.
class EcdfTable {
public:
  /// With `normalize`, values are divided by their mean (which must be positive).
  explicit EcdfTable(std::vector<double> values, bool normalize = false);

  const std::vector<double>& values() const noexcept { return values_; }
  double mean() const noexcept { return mean_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t size() const noexcept { return values_.size(); }

  double survival(double x) const;

private:
  std::vector<double> values_;
  double mean_ = 0.0;
  bool normalized_ = false;
};

/// Sup over the sample points (both one-sided limits) of |G_empirical - reference|.
double ecdf_distance(const EcdfTable& ecdf, const std::function<double(double)>& reference);

/// Survival function of the reference normalized length law: (1 - x/2) on (0,2).
double length_law_survival(double x);

struct AlphaFit {
  double alpha = 0.0;
  double distance = 0.0;
};

/// Grid search alpha in {0.01, ..., 0.99} minimizing the sup distance to h(., alpha).
AlphaFit fit_alpha(const EcdfTable& ecdf);

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
};

/// Least squares on (ln N, ln mean) over at least three distinct sizes.
ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points);

struct FractionEstimate {
  std::size_t hits = 0;
  std::size_t total = 0;
  double fraction = 0.0;
  double std_error = 0.0;  // sqrt(p (1-p) / total)
};

FractionEstimate estimate_fraction(std::size_t hits, std::size_t total);

/// Whether a record has the invariants of the unknot: exact values equal to 1
/// when present, otherwise both logs within `tolerance` of 0.
bool is_unknot_candidate(const SampleRecord& record, double tolerance = 1e-6);
/// Only |det(-1)| = 1.
bool has_unit_determinant(const SampleRecord& record, double tolerance = 1e-6);

FractionEstimate unknot_candidate_fraction(std::span<const SampleRecord> records,
                                           double tolerance = 1e-6);

struct DivisibilityRow {
  long divisor = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
  double excess = 0.0;  // frequency * divisor
};

const std::vector<long>& default_divisors();

/// Fraction of exact |det(-1)| values divisible by each divisor. Records
/// without exact values are rejected.
std::vector<DivisibilityRow> divisibility_table(std::span<const SampleRecord> records,
                                                std::span<const long> divisors);
std::vector<DivisibilityRow> divisibility_table(std::span<const SampleRecord> records);

}  // namespace knotperc
