#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "knotperc/alexander.hpp"
#include "knotperc/diagram.hpp"
#include "knotperc/interface.hpp"
#include "knotperc/random.hpp"

using namespace knotperc;

namespace {

std::vector<TetrahedronId> all_tetrahedra(CubeSize size) {
  std::vector<TetrahedronId> out;
  const int n = size.n();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (const auto& rho : all_rhos()) out.push_back({{x, y, z}, rho});
  return out;
}

std::set<LatticePoint> sorted_face(const std::array<LatticePoint, 3>& f) { return {f.begin(), f.end()}; }

bool inside_tetrahedron(const TetrahedronId& t, const Vec3& p, double tol = 1e-12) {
  // p = sum w_i v_i with the vertex chain k, +e_r3, +e_r2, +e_r1.
  const auto& k = t.cube;
  double c[3];
  for (int a = 0; a < 3; ++a) c[a] = p[static_cast<std::size_t>(a)] - k[static_cast<std::size_t>(a)];
  const double x1 = c[t.rho[0]], x2 = c[t.rho[1]], x3 = c[t.rho[2]];
  return -tol <= x1 && x1 <= x2 + tol && x2 <= x3 + tol && x3 <= 1.0 + tol;
}

// Ordered tetrahedra of the tricolour path starting at face f, found by
// matching face vertex sets over all tricolour tetrahedra.
std::vector<TetrahedronId> flood_path(const ColouringGrid& g) {
  const CubeSize s = g.size();
  std::map<std::set<LatticePoint>, std::vector<TetrahedronId>> by_face;
  for (const auto& t : all_tetrahedra(s))
    for (const auto& f : tricolour_faces(t, g)) by_face[sorted_face(f.vertices)].push_back(t);
  std::vector<TetrahedronId> path;
  auto face = sorted_face(start_face_vertices());
  const auto target = sorted_face(end_face_vertices(s));
  TetrahedronId prev{{-1, -1, -1}, {0, 1, 2}};
  for (;;) {
    const auto& holders = by_face.at(face);
    const TetrahedronId* next = nullptr;
    for (const auto& t : holders)
      if (!(t == prev)) next = &t;
    REQUIRE(next != nullptr);
    path.push_back(*next);
    const auto faces = tricolour_faces(*next, g);
    REQUIRE(faces.size() == 2);
    face = sorted_face(faces[0].vertices) == face ? sorted_face(faces[1].vertices) : sorted_face(faces[0].vertices);
    if (face == target) break;
    prev = *next;
  }
  return path;
}

// Curve followed by its closure, without the closure corners that sit directly
// above the next corner: vertical pieces project to single points.
std::vector<Vec3> closed_polygon(const std::vector<Vec3>& points, const std::vector<Vec3>& closure) {
  std::vector<Vec3> out = points;
  for (std::size_t i = 1; i < closure.size(); ++i) {
    const bool vertical = i + 1 < closure.size() && closure[i][0] == closure[i + 1][0] &&
                          closure[i][1] == closure[i + 1][1];
    if (!vertical) out.push_back(closure[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("tetrahedron patterns") {
  const Colour a = 0, b = 1, c = 2;
  CHECK(classify_tetra({b, a, b, b}) == TetraPattern::Bi31);
  CHECK(classify_tetra({b, a, a, c}) == TetraPattern::Tri);
  CHECK(classify_tetra({a, a, a, a}) == TetraPattern::Mono);
  CHECK(classify_tetra({b, a, a, b}) == TetraPattern::Bi22);
}

TEST_CASE("every colouring of a tetrahedron has zero or two tricolour faces") {
  const TetrahedronId t{{0, 0, 0}, {0, 1, 2}};
  const auto v = tetra_vertices(t);
  int tri = 0;
  for (int code = 0; code < 81; ++code) {
    std::vector<Colour> colours(27, 0);
    std::array<Colour, 4> c{};
    int rest = code;
    for (int i = 0; i < 4; ++i, rest /= 3) c[static_cast<std::size_t>(i)] = static_cast<Colour>(rest % 3);
    ColouringGrid probe(CubeSize(2), Boundary::Free, 0, colours);
    // Build a grid carrying c on the four vertices.
    for (int i = 0; i < 4; ++i) colours[probe.index(v[static_cast<std::size_t>(i)])] = c[static_cast<std::size_t>(i)];
    const ColouringGrid g(CubeSize(2), Boundary::Free, 0, colours);
    const auto faces = tricolour_faces(t, g);
    const bool is_tri = classify_tetra(c) == TetraPattern::Tri;
    CHECK(faces.size() == (is_tri ? 2U : 0U));
    tri += is_tri ? 1 : 0;
    for (const auto& f : faces) {
      std::set<Colour> seen;
      for (const auto& p : f.vertices) seen.insert(g.at(p));
      CHECK(seen.size() == 3);
    }
  }
  CHECK(tri == 36);  // 3 choices of the doubled colour, 4!/2 placements
}

TEST_CASE("perturbed points are positive barycentres keyed by the face") {
  const FacePerturbation p(77);
  const std::array<LatticePoint, 3> face{LatticePoint{1, 2, 3}, LatticePoint{2, 2, 3}, LatticePoint{2, 3, 3}};
  auto w = p.weights(face);
  double sum = 0;
  for (double x : w) {
    CHECK(x >= 0.05 - 1e-15);
    CHECK(x < 1.0);
    sum += x;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  auto shuffled = face;
  std::swap(shuffled[0], shuffled[2]);
  CHECK(p.point(face) == p.point(shuffled));
  const std::array<LatticePoint, 3> other{LatticePoint{1, 2, 3}, LatticePoint{1, 3, 3}, LatticePoint{2, 3, 3}};
  CHECK(p.point(face) != p.point(other));
  CHECK(FacePerturbation(78).point(face) != p.point(face));

  const auto c = FacePerturbation::centroid().point(face);
  CHECK(c[0] == doctest::Approx(5.0 / 3.0));
  CHECK(c[1] == doctest::Approx(7.0 / 3.0));
  CHECK(c[2] == doctest::Approx(3.0));
  CHECK_THROWS_AS(FacePerturbation(1, 0.5), std::invalid_argument);
}

TEST_CASE("traced curves follow the tricolour tetrahedra") {
  for (int n : {2, 3, 4, 6}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = sample_colouring(CubeSize(n), Boundary::Dobrushin, mix_seed(n, seed));
      const auto curve = trace_curve(g, FacePerturbation(seed));
      CHECK(curve.points.size() == curve.tetrahedra.size() + 1);
      CHECK(curve.tetrahedra == flood_path(g));

      std::set<std::array<int, 6>> seen;
      for (std::size_t i = 0; i < curve.tetrahedra.size(); ++i) {
        const auto& t = curve.tetrahedra[i];
        CHECK(seen.insert({t.cube[0], t.cube[1], t.cube[2], t.rho[0], t.rho[1], t.rho[2]}).second);
        CHECK(inside_tetrahedron(t, curve.points[i]));
        CHECK(inside_tetrahedron(t, curve.points[i + 1]));
      }
      CHECK(curve.points.front()[1] == 0.0);
      CHECK(curve.points.back()[0] == doctest::Approx(double(n)).epsilon(1e-14));
      std::set<Vec3> distinct(curve.points.begin(), curve.points.end());
      CHECK(distinct.size() == curve.points.size());
    }
  }
}

TEST_CASE("trace rejects free boundary grids") {
  const auto g = sample_colouring(CubeSize(3), Boundary::Free, 1);
  CHECK_THROWS_AS(trace_curve(g, FacePerturbation(1)), std::invalid_argument);
}

TEST_CASE("a corrupted colouring is reported as a topology error") {
  const CubeSize s(3);
  const auto g = sample_colouring(s, Boundary::Dobrushin, 3);
  std::vector<Colour> colours = g.colours();
  colours[g.index({1, 0, 1})] = 2;  // start face loses its third colour
  const ColouringGrid broken(s, Boundary::Dobrushin, 3, colours);
  CHECK_THROWS_AS(trace_curve(broken, FacePerturbation(1)), TopologyError);
}

TEST_CASE("closure stays outside the cube and adds no crossing") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 10;
    const auto g = sample_colouring(CubeSize(n), Boundary::Dobrushin, mix_seed(10, seed));
    const auto curve = trace_curve(g, FacePerturbation(seed));
    const auto& cl = curve.closure;
    REQUIRE(cl.size() >= 2);
    CHECK(cl.front() == curve.points.back());
    CHECK(cl.back() == curve.points.front());
    for (const auto& p : cl) {
      CHECK(p[2] >= -1.0);
      CHECK(p[2] <= double(n));
      CHECK(p[0] >= -1.0);
      CHECK(p[0] <= n + 1.0);
      CHECK(p[1] >= -1.0);
      CHECK(p[1] <= n + 1.0);
    }
    // Brute force over the closed polygon: one column for every segment.
    const auto closed = closed_polygon(curve.points, cl);
    const std::vector<std::uint32_t> one_column(closed.size() - 1, 0);
    const auto all = detect_crossings(closed, one_column);
    const auto bucketed = detect_crossings(curve);
    CHECK(all.size() == bucketed.size());
  }
}

TEST_CASE("knot invariants do not depend on the closure route") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 10;
    const auto g = sample_colouring(CubeSize(n), Boundary::Dobrushin, mix_seed(11, seed));
    const auto curve = trace_curve(g, FacePerturbation(seed));
    std::vector<mpz_class> dets;
    for (auto route : {ClosureRoute::Below, ClosureRoute::Above}) {
      const auto cl = closure_path(curve, CubeSize(n), route);
      const auto closed = closed_polygon(curve.points, cl);
      const std::vector<std::uint32_t> one_column(closed.size() - 1, 0);
      const auto code = build_code(detect_crossings(closed, one_column));
      dets.push_back(*compute_invariants(code, {false, true}).exact_minus1);
    }
    CHECK(dets[0] == dets[1]);
  }
}

TEST_CASE("curve dump") {
  const auto g = sample_colouring(CubeSize(3), Boundary::Dobrushin, 5);
  const auto curve = trace_curve(g, FacePerturbation(5));
  std::ostringstream out;
  write_curve_csv(out, curve);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,z");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double x, y, z;
    char c1, c2;
    std::istringstream row(line);
    REQUIRE(static_cast<bool>(row >> x >> c1 >> y >> c2 >> z));
    CHECK(x == curve.points[rows][0]);
    CHECK(z == curve.points[rows][2]);
    ++rows;
  }
  CHECK(rows == curve.points.size());
}
