#include "knotperc/interface.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "knotperc/random.hpp"

namespace knotperc {

TetraPattern classify_tetra(const std::array<Colour, 4>& colours) {
  int count[3] = {0, 0, 0};
  for (Colour c : colours) ++count[c];
  int distinct = 0, largest = 0;
  for (int k : count) {
    distinct += k > 0 ? 1 : 0;
    largest = std::max(largest, k);
  }
  if (distinct == 1) return TetraPattern::Mono;
  if (distinct == 3) return TetraPattern::Tri;
  return largest == 3 ? TetraPattern::Bi31 : TetraPattern::Bi22;
}

std::vector<TricolourFace> tricolour_faces(const TetrahedronId& t, const ColouringGrid& grid) {
  const auto v = tetra_vertices(t);
  std::array<Colour, 4> c{};
  for (int i = 0; i < 4; ++i) c[i] = grid.at(v[i]);
  std::vector<TricolourFace> out;
  if (classify_tetra(c) != TetraPattern::Tri) return out;
  for (int face = 0; face < 4; ++face) {
    const auto idx = face_vertex_indices(face);
    const Colour a = c[idx[0]], b = c[idx[1]], d = c[idx[2]];
    if (a != b && b != d && a != d) out.push_back({t, face, {v[idx[0]], v[idx[1]], v[idx[2]]}});
  }
  return out;
}

FacePerturbation::FacePerturbation(std::uint64_t seed, double margin)
    : FacePerturbation(seed, margin, false) {
  if (!(margin >= 0.0 && margin < 1.0 / 3.0))
    throw std::invalid_argument("perturbation margin must lie in [0, 1/3)");
}

FacePerturbation::FacePerturbation(std::uint64_t seed, double margin, bool centroid_only)
    : seed_(seed), margin_(margin), centroid_only_(centroid_only) {}

FacePerturbation FacePerturbation::centroid() { return FacePerturbation(0, 1.0 / 3.0, true); }

namespace {

std::uint64_t pack(const LatticePoint& p) {
  constexpr std::uint64_t mask = (1ULL << 21) - 1;
  return (static_cast<std::uint64_t>(p[0]) & mask) << 42 |
         (static_cast<std::uint64_t>(p[1]) & mask) << 21 | (static_cast<std::uint64_t>(p[2]) & mask);
}

}  // namespace

std::array<double, 3> FacePerturbation::weights(std::array<LatticePoint, 3> face) const {
  if (centroid_only_) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::sort(face.begin(), face.end());
  std::uint64_t h = avalanche(seed_);
  for (const auto& p : face) h = avalanche(h ^ pack(p));
  double u1 = unit_interval(h);
  double u2 = unit_interval(avalanche(h ^ 0xd1b54a32d192ed03ULL));
  if (u1 > u2) std::swap(u1, u2);
  const double scale = 1.0 - 3.0 * margin_;
  return {margin_ + scale * u1, margin_ + scale * (u2 - u1), margin_ + scale * (1.0 - u2)};
}

Vec3 FacePerturbation::point(std::array<LatticePoint, 3> face) const {
  std::sort(face.begin(), face.end());
  const auto w = weights(face);
  Vec3 out{0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out[k] += w[i] * face[i][k];
  return out;
}

std::array<LatticePoint, 3> start_face_vertices() {
  return {LatticePoint{0, 0, 0}, LatticePoint{1, 0, 0}, LatticePoint{1, 0, 1}};
}

std::array<LatticePoint, 3> end_face_vertices(CubeSize size) {
  const int n = size.n();
  return {LatticePoint{n, n, n}, LatticePoint{n, n - 1, n}, LatticePoint{n, n - 1, n - 1}};
}

namespace {

bool same_face(std::array<LatticePoint, 3> a, std::array<LatticePoint, 3> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

TricolourCurve trace_curve(const ColouringGrid& grid, const FacePerturbation& perturbation) {
  if (grid.boundary() != Boundary::Dobrushin)
    throw std::invalid_argument("trace_curve requires Dobrushin boundary conditions");
  const CubeSize size = grid.size();
  const auto target = end_face_vertices(size);

  // f lies in cube (0,0,0) on the tetrahedron with rho = (y, z, x), opposite (1,1,1).
  TetrahedronId current{{0, 0, 0}, {1, 2, 0}};
  int entry = 3;

  TricolourCurve curve;
  curve.points.push_back(perturbation.point(start_face_vertices()));

  const std::size_t max_steps = 6 * static_cast<std::size_t>(size.n()) * size.n() * size.n();
  for (;;) {
    if (curve.tetrahedra.size() >= max_steps) throw TopologyError("tricolour walk does not terminate");
    const auto faces = tricolour_faces(current, grid);
    if (faces.size() != 2) throw TopologyError("entered a tetrahedron that is not tricolour");
    const TricolourFace* exit = nullptr;
    if (faces[0].face == entry)
      exit = &faces[1];
    else if (faces[1].face == entry)
      exit = &faces[0];
    else
      throw TopologyError("entry face is not tricolour");

    curve.tetrahedra.push_back(current);
    curve.points.push_back(perturbation.point(exit->vertices));

    const Adjacency adj = adjacent_tetrahedron(current, exit->face, size);
    if (adj.boundary) {
      if (!same_face(exit->vertices, target))
        throw TopologyError("tricolour walk reached the boundary away from f'");
      break;
    }
    current = adj.neighbour;
    entry = adj.neighbour_face;
  }
  curve.closure = closure_path(curve, size);
  return curve;
}

std::vector<Vec3> closure_path(const TricolourCurve& curve, CubeSize size, ClosureRoute route) {
  if (curve.points.size() < 2) throw std::invalid_argument("curve has no segments");
  const double n = size.n();
  const Vec3 start = curve.points.front();
  const Vec3 end = curve.points.back();
  if (route == ClosureRoute::Below) {
    return {end,
            {n + 1, end[1], end[2]},
            {n + 1, end[1], -1.0},
            {n + 1, -1.0, -1.0},
            {start[0], -1.0, -1.0},
            {start[0], start[1], -1.0},
            start};
  }
  return {end,
          {n + 1, end[1], end[2]},
          {n + 1, end[1], n + 1},
          {n + 1, -1.0, n + 1},
          {start[0], -1.0, n + 1},
          {start[0], -1.0, start[2]},
          start};
}

void write_curve_csv(std::ostream& out, const TricolourCurve& curve) {
  out << "x,y,z\n" << std::setprecision(17);
  for (const auto& p : curve.points) out << p[0] << ',' << p[1] << ',' << p[2] << '\n';
}

}  // namespace knotperc
