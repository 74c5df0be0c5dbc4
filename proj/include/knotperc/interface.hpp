#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "knotperc/percolation.hpp"

namespace knotperc {

using Vec3 = std::array<double, 3>;

/// The walk left the set of tricolour tetrahedra or hit the boundary away
/// from the target face. Indicates a bug, never a property of the sample.
class TopologyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class TetraPattern { Mono, Bi31, Bi22, Tri };

TetraPattern classify_tetra(const std::array<Colour, 4>& colours);

struct TricolourFace {
  TetrahedronId tetra;
  int face = -1;  // index of the omitted vertex
  std::array<LatticePoint, 3> vertices{};
};

/// The tricolour faces of `t`: two for a Tri tetrahedron, none otherwise.
std::vector<TricolourFace> tricolour_faces(const TetrahedronId& t, const ColouringGrid& grid);

/// Random strictly positive barycentre of a triangular face.
///
/// The weights are a hash of (seed, sorted vertex triple), so a face shared by
/// two tetrahedra always maps to the same point. Weights are uniform on the
/// simplex shrunk so that every weight is at least `margin`.
class FacePerturbation {
public:
  explicit FacePerturbation(std::uint64_t seed, double margin = 0.05);

  /// Exact centroid for every face.
  static FacePerturbation centroid();

  std::array<double, 3> weights(std::array<LatticePoint, 3> face) const;
  Vec3 point(std::array<LatticePoint, 3> face) const;

  std::uint64_t seed() const noexcept { return seed_; }
  double margin() const noexcept { return margin_; }

private:
  FacePerturbation(std::uint64_t seed, double margin, bool centroid_only);

  std::uint64_t seed_;
  double margin_;
  bool centroid_only_ = false;
};

/// The spanning tricolour line from face f (plane y = 0) to face f' (plane x = N).
struct TricolourCurve {
  std::vector<Vec3> points;              // one per tricolour face crossed
  std::vector<TetrahedronId> tetrahedra; // tetrahedra[i] contains segment i
  std::vector<Vec3> closure;             // exterior path from points.back() to points.front()

  std::size_t length() const noexcept { return tetrahedra.size(); }
  std::size_t segment_count() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

/// Boundary faces carrying three colours under Dobrushin conditions.
std::array<LatticePoint, 3> start_face_vertices();
std::array<LatticePoint, 3> end_face_vertices(CubeSize size);

/// Follows the tricolour tetrahedra from f to f'. The closure is filled in
/// with closure_path(..., ClosureRoute::Below).
TricolourCurve trace_curve(const ColouringGrid& grid, const FacePerturbation& perturbation);

enum class ClosureRoute { Below, Above };

/// Polyline from the f'-endpoint to the f-endpoint lying outside the open cube.
/// Its vertical pieces project to single points and its horizontal pieces stay
/// outside the projected cube, so it adds no crossing to the xy-projection.
std::vector<Vec3> closure_path(const TricolourCurve& curve, CubeSize size,
                               ClosureRoute route = ClosureRoute::Below);

/// `x,y,z` rows of the open curve, header first.
void write_curve_csv(std::ostream& out, const TricolourCurve& curve);

}  // namespace knotperc
