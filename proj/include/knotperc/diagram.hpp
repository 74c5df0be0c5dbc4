#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotperc/interface.hpp"

namespace knotperc {

using Vec2 = std::array<double, 2>;

/// Projection is not in general position (tangential contact, equal heights,
/// coincident crossings on a segment). The caller resamples the perturbation.
class DegeneracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Self-crossing of the xy-projection; segments are indexed along the curve.
struct Crossing {
  Vec2 position{};
  std::size_t over_segment = 0;
  std::size_t under_segment = 0;
  double over_param = 0.0;  // position along the over segment, in (0,1)
  double under_param = 0.0;
  double over_z = 0.0;
  double under_z = 0.0;
  Vec2 over_direction{};  // projected direction of travel
  Vec2 under_direction{};
};

struct CrossingScan {
  std::size_t buckets = 0;
  std::size_t pairs_tested = 0;
};

/// Crossings among the segments points[i] -> points[i+1]. Segment i belongs to
/// column columns[i]; only segments of the same column are compared, and
/// consecutive segments are never compared (nor the first and last when the
/// last point repeats the first).
std::vector<Crossing> detect_crossings(std::span<const Vec3> points,
                                       std::span<const std::uint32_t> columns,
                                       double z_tolerance = 1e-9, CrossingScan* scan = nullptr);

/// Crossings of the open tricolour curve, bucketed by unit column. The closure
/// is never tested (it adds no crossing by construction).
std::vector<Crossing> detect_crossings(const TricolourCurve& curve, double z_tolerance = 1e-9,
                                       CrossingScan* scan = nullptr);

// ---------------------------------------------------------------------------
// Half-edge encoding

/// Raw permutation table; the literal form of the encoding and of the dump format.
struct CodeTable {
  std::vector<int> sigma;
  std::vector<int> alpha;
  std::vector<int> phi;
  std::vector<int> tau;
};

class ValidationError : public std::runtime_error {
public:
  /// `item` is 1..6 for the six conditions of the encoding, 0 for shape errors.
  ValidationError(int item, const std::string& what) : std::runtime_error(what), item_(item) {}
  int item() const noexcept { return item_; }

private:
  int item_;
};

/// Knot diagram as half-edges H = {0..4n-1}. Crossing c owns 4c..4c+3 in
/// counterclockwise order, so sigma is implicit. A code with n = 0 is the
/// crossing-free diagram of the unknot.
class KnotCode {
public:
  KnotCode() = default;
  KnotCode(std::vector<std::int32_t> alpha, std::vector<std::int8_t> tau);

  /// Relabels sigma-cycles onto the canonical layout; validates.
  static KnotCode from_table(const CodeTable& table);

  std::size_t crossing_count() const noexcept { return alpha_.size() / 4; }
  std::size_t half_edge_count() const noexcept { return alpha_.size(); }
  bool empty() const noexcept { return alpha_.empty(); }

  static constexpr int crossing_of(int u) noexcept { return u >> 2; }
  static constexpr int sigma(int u) noexcept { return (u & ~3) | ((u + 1) & 3); }
  static constexpr int sigma_inv(int u) noexcept { return (u & ~3) | ((u + 3) & 3); }
  static constexpr int opposite(int u) noexcept { return u ^ 2; }

  int alpha(int u) const noexcept { return alpha_[static_cast<std::size_t>(u)]; }
  int phi(int u) const noexcept { return sigma_inv(alpha(u)); }
  int tau(int u) const noexcept { return tau_[static_cast<std::size_t>(u)]; }

  const std::vector<std::int32_t>& alpha_data() const noexcept { return alpha_; }
  const std::vector<std::int8_t>& tau_data() const noexcept { return tau_; }
  std::vector<std::int32_t>& alpha_data() noexcept { return alpha_; }
  std::vector<std::int8_t>& tau_data() noexcept { return tau_; }

  CodeTable table() const;

  bool operator==(const KnotCode&) const = default;

private:
  std::vector<std::int32_t> alpha_;
  std::vector<std::int8_t> tau_;
};

/// Checks the six conditions literally and throws on the first violation:
/// (i) phi.alpha.sigma = id, (ii) transitivity, (iii) alpha fixed-point-free
/// involution, (iv) sigma cycles of length 4, (v) sigma^2.alpha cycles of
/// length 2n, (vi) tau(sigma(u)) = -tau(u).
void validate(const CodeTable& table);
void validate(const KnotCode& code);

/// Number of phi-cycles (regions). A planar knot diagram has n + 2.
std::size_t face_count(const KnotCode& code);

/// Region id of every half-edge (phi-cycles numbered by smallest member).
std::vector<int> face_labels(const KnotCode& code, std::size_t* count = nullptr);

/// Walks the closed curve once; crossings are numbered by first traversal.
KnotCode build_code(std::span<const Crossing> crossings);
KnotCode build_code(const TricolourCurve& curve, std::span<const Crossing> crossings);

/// One line per half-edge: `u sigma(u) alpha(u) phi(u) tau(u)`, 0-based labels.
void write_code(std::ostream& out, const KnotCode& code);
CodeTable read_code(std::istream& in);

}  // namespace knotperc
