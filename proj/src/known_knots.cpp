#include "knotperc/known_knots.hpp"

#include <cmath>
#include <vector>

namespace knotperc {

CodeTable trefoil_table() {
  CodeTable t;
  t.sigma = {1, 2, 3, 0, 5, 6, 7, 4, 9, 10, 11, 8};
  t.alpha = {4, 7, 11, 10, 0, 9, 8, 1, 6, 5, 3, 2};
  t.phi = {7, 6, 10, 9, 3, 8, 11, 0, 5, 4, 2, 1};
  t.tau = {1, -1, 1, -1, -1, 1, -1, 1, 1, -1, 1, -1};
  return t;
}

KnotCode trefoil_code() { return KnotCode::from_table(trefoil_table()); }

KnotCode code_from_polygon(std::span<const Vec3> points) {
  if (points.size() < 3) throw std::invalid_argument("a closed polygon needs three points");
  std::vector<Vec3> closed(points.begin(), points.end());
  closed.push_back(points.front());
  const std::vector<std::uint32_t> columns(closed.size() - 1, 0);
  const auto crossings = detect_crossings(closed, columns);
  return build_code(crossings);
}

KnotCode code_from_parametric(const std::function<Vec3(double)>& curve, int samples) {
  std::vector<Vec3> points;
  for (int k = 0; k < samples; ++k) points.push_back(curve(2.0 * M_PI * k / samples));
  return code_from_polygon(points);
}

KnotCode figure_eight_code() {
  return code_from_parametric([](double t) {
    const double r = 2.0 + std::cos(2.0 * t);
    return Vec3{r * std::cos(3.0 * t), r * std::sin(3.0 * t), std::sin(4.0 * t)};
  });
}

KnotCode connected_sum(const KnotCode& a, const KnotCode& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const int shift = static_cast<int>(a.half_edge_count());
  std::vector<std::int32_t> alpha(a.alpha_data());
  std::vector<std::int8_t> tau(a.tau_data());
  for (auto v : b.alpha_data()) alpha.push_back(v + shift);
  tau.insert(tau.end(), b.tau_data().begin(), b.tau_data().end());

  const int u = 0, au = a.alpha(0);
  const int v = shift, av = b.alpha(0) + shift;
  const std::array<std::array<int, 4>, 2> options{{{u, v, au, av}, {u, av, au, v}}};
  for (const auto& o : options) {
    auto trial = alpha;
    trial[static_cast<std::size_t>(o[0])] = o[1];
    trial[static_cast<std::size_t>(o[1])] = o[0];
    trial[static_cast<std::size_t>(o[2])] = o[3];
    trial[static_cast<std::size_t>(o[3])] = o[2];
    KnotCode code(trial, tau);
    try {
      validate(code);
    } catch (const ValidationError&) {
      continue;
    }
    if (face_count(code) == code.crossing_count() + 2) return code;
  }
  throw std::logic_error("no planar reconnection for the connected sum");
}

}  // namespace knotperc
