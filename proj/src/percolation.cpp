#include "knotperc/percolation.hpp"

#include <ostream>

#include "knotperc/random.hpp"

namespace knotperc {
namespace {

// Colours of the strict edges E^{(i,j)}_{k,l}; i < j are the two fixed axes,
// (k,l) in {0,N}^2 encoded as (k==N, l==N).
constexpr int kEdgeColour[3][2][2] = {
    // axes (x,y): E^{(1,2)}
    {{0, 0}, {2, 0}},
    // axes (x,z): E^{(1,3)}
    {{2, 0}, {2, 1}},
    // axes (y,z): E^{(2,3)}
    {{2, 1}, {0, 0}},
};

// Colours of the strict faces F^{(i)}_k, k encoded as (k==N).
constexpr int kFaceColour[3][2] = {
    {0, 2},  // x = 0, x = N
    {1, 0},  // y = 0, y = N
    {2, 1},  // z = 0, z = N
};

int edge_slot(int a, int b) { return a == 0 ? (b == 1 ? 0 : 1) : 2; }

}  // namespace

std::optional<Colour> classify_boundary_point(const LatticePoint& p, CubeSize size) {
  const int n = size.n();
  bool on[3];
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    on[i] = p[i] == 0 || p[i] == n;
    count += on[i] ? 1 : 0;
  }
  switch (count) {
    case 0:
      return std::nullopt;
    case 3: {
      const bool hx = p[0] == n, hy = p[1] == n, hz = p[2] == n;
      if (hx && !hy && hz) return Colour{1};
      if (hx && !hy && !hz) return Colour{2};
      return Colour{0};
    }
    case 2: {
      int fixed[2];
      int f = 0;
      for (int i = 0; i < 3; ++i)
        if (on[i]) fixed[f++] = i;
      const int c = kEdgeColour[edge_slot(fixed[0], fixed[1])][p[fixed[0]] == n][p[fixed[1]] == n];
      return static_cast<Colour>(c);
    }
    default: {
      for (int i = 0; i < 3; ++i)
        if (on[i]) return static_cast<Colour>(kFaceColour[i][p[i] == n]);
      return std::nullopt;
    }
  }
}

ColouringGrid::ColouringGrid(CubeSize size, Boundary boundary, std::uint64_t seed,
                             std::vector<Colour> colours)
    : size_(size), boundary_(boundary), seed_(seed), colours_(std::move(colours)) {
  if (colours_.size() != size_.point_count())
    throw std::invalid_argument("colour vector does not match cube size");
  for (Colour c : colours_)
    if (c > 2) throw std::invalid_argument("colour out of range");
}

ColouringGrid sample_colouring(CubeSize size, Boundary boundary, std::uint64_t seed) {
  const int m = size.points_per_side();
  std::vector<Colour> colours(size.point_count());
  TernarySource source(seed);
  std::size_t idx = 0;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z, ++idx) {
        if (boundary == Boundary::Dobrushin) {
          if (auto forced = classify_boundary_point({x, y, z}, size)) {
            colours[idx] = *forced;
            continue;
          }
        }
        colours[idx] = source.next();
      }
  return ColouringGrid(size, boundary, seed, std::move(colours));
}

void write_grid(std::ostream& out, const ColouringGrid& grid) {
  const int m = grid.size().points_per_side();
  out << grid.size().n() << '\n';
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        out << x << ' ' << y << ' ' << z << ' ' << int(grid.at(x, y, z)) << '\n';
}

const std::array<std::array<std::uint8_t, 3>, 6>& all_rhos() {
  static constexpr std::array<std::array<std::uint8_t, 3>, 6> rhos{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return rhos;
}

std::array<LatticePoint, 4> tetra_vertices(const TetrahedronId& t) {
  std::array<LatticePoint, 4> v{t.cube, t.cube, t.cube, t.cube};
  v[1][t.rho[2]] += 1;
  v[2] = v[1];
  v[2][t.rho[1]] += 1;
  v[3] = {t.cube[0] + 1, t.cube[1] + 1, t.cube[2] + 1};
  return v;
}

std::array<int, 3> face_vertex_indices(int face) {
  switch (face) {
    case 0: return {1, 2, 3};
    case 1: return {0, 2, 3};
    case 2: return {0, 1, 3};
    default: return {0, 1, 2};
  }
}

Adjacency adjacent_tetrahedron(const TetrahedronId& t, int face, CubeSize size) {
  const auto [r1, r2, r3] = t.rho;
  Adjacency adj;
  adj.neighbour = t;
  switch (face) {
    case 0:
      // Face in the plane x_{rho3} = k_{rho3} + 1.
      if (t.cube[r3] + 1 == size.n()) {
        adj.boundary = true;
        return adj;
      }
      adj.neighbour.cube[r3] += 1;
      adj.neighbour.rho = {r3, r1, r2};
      adj.neighbour_face = 3;
      return adj;
    case 3:
      // Face in the plane x_{rho1} = k_{rho1}.
      if (t.cube[r1] == 0) {
        adj.boundary = true;
        return adj;
      }
      adj.neighbour.cube[r1] -= 1;
      adj.neighbour.rho = {r2, r3, r1};
      adj.neighbour_face = 0;
      return adj;
    case 1:
      adj.neighbour.rho = {r1, r3, r2};
      adj.neighbour_face = 1;
      return adj;
    case 2:
      adj.neighbour.rho = {r2, r1, r3};
      adj.neighbour_face = 2;
      return adj;
    default:
      throw std::invalid_argument("face index must be in 0..3");
  }
}

}  // namespace knotperc
