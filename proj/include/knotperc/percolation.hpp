#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace knotperc {

using Colour = std::uint8_t;
using LatticePoint = std::array<int, 3>;

/// Side length N of the discrete cube {0..N}^3.
class CubeSize {
public:
  explicit CubeSize(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("cube size must be at least 2");
  }
  int n() const noexcept { return n_; }
  int points_per_side() const noexcept { return n_ + 1; }
  std::size_t point_count() const noexcept {
    const auto m = static_cast<std::size_t>(n_ + 1);
    return m * m * m;
  }
  bool operator==(const CubeSize&) const = default;

private:
  int n_;
};

enum class Boundary { Free, Dobrushin };

/// Forced colour of a boundary point, or nullopt for a strict interior point.
///
/// Corners are checked first, then the strict edges E^{(i,j)}_{k,l}, then the
/// strict faces F^{(i)}_k. The three lists are disjoint and together cover the
/// whole boundary.
std::optional<Colour> classify_boundary_point(const LatticePoint& p, CubeSize size);

/// Vertex colouring of the discrete cube. Immutable once sampled.
class ColouringGrid {
public:
  ColouringGrid(CubeSize size, Boundary boundary, std::uint64_t seed, std::vector<Colour> colours);

  CubeSize size() const noexcept { return size_; }
  Boundary boundary() const noexcept { return boundary_; }
  std::uint64_t seed() const noexcept { return seed_; }

  Colour at(const LatticePoint& p) const noexcept { return colours_[index(p)]; }
  Colour at(int x, int y, int z) const noexcept { return at(LatticePoint{x, y, z}); }
  const std::vector<Colour>& colours() const noexcept { return colours_; }

  std::size_t index(const LatticePoint& p) const noexcept {
    const auto m = static_cast<std::size_t>(size_.points_per_side());
    return (static_cast<std::size_t>(p[0]) * m + static_cast<std::size_t>(p[1])) * m +
           static_cast<std::size_t>(p[2]);
  }

  bool operator==(const ColouringGrid& other) const {
    return size_ == other.size_ && boundary_ == other.boundary_ && colours_ == other.colours_;
  }

private:
  CubeSize size_;
  Boundary boundary_;
  std::uint64_t seed_;
  std::vector<Colour> colours_;
};

/// Interior points are i.i.d. uniform on {0,1,2}; boundary points are forced
/// under Dobrushin conditions and uniform under free conditions.
ColouringGrid sample_colouring(CubeSize size, Boundary boundary, std::uint64_t seed);

/// Debug dump: `N` on the first line, then `k1 k2 k3 c` per point.
void write_grid(std::ostream& out, const ColouringGrid& grid);

// ---------------------------------------------------------------------------
// Tetrahedral decomposition

/// Tetrahedron t_rho(k) = { k + x : 0 <= x_{rho1} <= x_{rho2} <= x_{rho3} <= 1 }.
/// `rho` holds 0-based axes (0 = x, 1 = y, 2 = z).
struct TetrahedronId {
  LatticePoint cube{};
  std::array<std::uint8_t, 3> rho{0, 1, 2};

  bool operator==(const TetrahedronId&) const = default;
};

/// All six axis orders, in lexicographic order.
const std::array<std::array<std::uint8_t, 3>, 6>& all_rhos();

/// Vertices in canonical order: k, k + e_{rho3}, k + e_{rho3} + e_{rho2}, k + (1,1,1).
std::array<LatticePoint, 4> tetra_vertices(const TetrahedronId& t);

/// Result of crossing face `face` (the face omitting vertex `face`).
struct Adjacency {
  bool boundary = false;
  TetrahedronId neighbour{};
  int neighbour_face = -1;
};

Adjacency adjacent_tetrahedron(const TetrahedronId& t, int face, CubeSize size);

/// Vertex indices of face `face` (the three indices other than `face`).
std::array<int, 3> face_vertex_indices(int face);

}  // namespace knotperc
