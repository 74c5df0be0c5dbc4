#include "knotperc/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace knotperc {
namespace {

double orient(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

int sign(double v) { return (v > 0) - (v < 0); }

void test_pair(std::span<const Vec3> pts, std::size_t i, std::size_t j, double z_tolerance,
               std::vector<Crossing>& out) {
  const Vec3& p1 = pts[i];
  const Vec3& p2 = pts[i + 1];
  const Vec3& q1 = pts[j];
  const Vec3& q2 = pts[j + 1];

  // Cheap rejection on projected bounding boxes.
  if (std::max(p1[0], p2[0]) < std::min(q1[0], q2[0]) || std::max(q1[0], q2[0]) < std::min(p1[0], p2[0]) ||
      std::max(p1[1], p2[1]) < std::min(q1[1], q2[1]) || std::max(q1[1], q2[1]) < std::min(p1[1], p2[1]))
    return;

  const double d1 = orient(q1[0], q1[1], q2[0], q2[1], p1[0], p1[1]);
  const double d2 = orient(q1[0], q1[1], q2[0], q2[1], p2[0], p2[1]);
  const double d3 = orient(p1[0], p1[1], p2[0], p2[1], q1[0], q1[1]);
  const double d4 = orient(p1[0], p1[1], p2[0], p2[1], q2[0], q2[1]);
  const int s1 = sign(d1), s2 = sign(d2), s3 = sign(d3), s4 = sign(d4);
  if (s1 * s2 > 0 || s3 * s4 > 0) return;
  if (s1 == 0 || s2 == 0 || s3 == 0 || s4 == 0)
    throw DegeneracyError("projected segments touch without crossing transversally");

  const double s = d1 / (d1 - d2);
  const double t = d3 / (d3 - d4);
  const double zp = p1[2] + s * (p2[2] - p1[2]);
  const double zq = q1[2] + t * (q2[2] - q1[2]);
  if (std::abs(zp - zq) < z_tolerance) throw DegeneracyError("crossing strands at equal height");

  Crossing c;
  c.position = {p1[0] + s * (p2[0] - p1[0]), p1[1] + s * (p2[1] - p1[1])};
  const Vec2 dp{p2[0] - p1[0], p2[1] - p1[1]};
  const Vec2 dq{q2[0] - q1[0], q2[1] - q1[1]};
  if (zp > zq) {
    c.over_segment = i, c.over_param = s, c.over_z = zp, c.over_direction = dp;
    c.under_segment = j, c.under_param = t, c.under_z = zq, c.under_direction = dq;
  } else {
    c.over_segment = j, c.over_param = t, c.over_z = zq, c.over_direction = dq;
    c.under_segment = i, c.under_param = s, c.under_z = zp, c.under_direction = dp;
  }
  out.push_back(c);
}

}  // namespace

std::vector<Crossing> detect_crossings(std::span<const Vec3> points,
                                       std::span<const std::uint32_t> columns, double z_tolerance,
                                       CrossingScan* scan) {
  const std::size_t segments = points.size() < 2 ? 0 : points.size() - 1;
  if (columns.size() != segments) throw std::invalid_argument("one column id per segment required");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> order(segments);
  for (std::size_t i = 0; i < segments; ++i) order[i] = {columns[i], static_cast<std::uint32_t>(i)};
  std::sort(order.begin(), order.end());

  // A closed polygon repeats its first point; its first and last segments then meet.
  const bool closed = segments > 2 && points.front() == points.back();

  std::vector<Crossing> out;
  CrossingScan local;
  std::size_t begin = 0;
  while (begin < segments) {
    std::size_t end = begin + 1;
    while (end < segments && order[end].first == order[begin].first) ++end;
    ++local.buckets;
    for (std::size_t a = begin; a < end; ++a)
      for (std::size_t b = a + 1; b < end; ++b) {
        const std::size_t i = order[a].second, j = order[b].second;  // i < j
        if (j == i + 1 || (closed && i == 0 && j == segments - 1)) continue;
        ++local.pairs_tested;
        test_pair(points, i, j, z_tolerance, out);
      }
    begin = end;
  }
  if (scan) *scan = local;
  return out;
}

std::vector<Crossing> detect_crossings(const TricolourCurve& curve, double z_tolerance,
                                       CrossingScan* scan) {
  std::vector<std::uint32_t> columns(curve.segment_count());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& k = curve.tetrahedra[i].cube;
    columns[i] = static_cast<std::uint32_t>(k[0]) << 16 | static_cast<std::uint32_t>(k[1]);
  }
  return detect_crossings(curve.points, columns, z_tolerance, scan);
}

// ---------------------------------------------------------------------------

KnotCode::KnotCode(std::vector<std::int32_t> alpha, std::vector<std::int8_t> tau)
    : alpha_(std::move(alpha)), tau_(std::move(tau)) {
  if (alpha_.size() % 4 != 0 || tau_.size() != alpha_.size())
    throw std::invalid_argument("half-edge arrays must have equal length divisible by 4");
}

CodeTable KnotCode::table() const {
  const int h = static_cast<int>(alpha_.size());
  CodeTable t;
  t.sigma.resize(h), t.alpha.resize(h), t.phi.resize(h), t.tau.resize(h);
  for (int u = 0; u < h; ++u) {
    t.sigma[u] = sigma(u);
    t.alpha[u] = alpha(u);
    t.phi[u] = phi(u);
    t.tau[u] = tau(u);
  }
  return t;
}

KnotCode KnotCode::from_table(const CodeTable& table) {
  validate(table);
  const std::size_t h = table.sigma.size();
  std::vector<int> relabel(h, -1);
  int next = 0;
  for (std::size_t u = 0; u < h; ++u) {
    if (relabel[u] >= 0) continue;
    int v = static_cast<int>(u);
    for (int k = 0; k < 4; ++k) {
      relabel[v] = next++;
      v = table.sigma[v];
    }
  }
  std::vector<std::int32_t> alpha(h);
  std::vector<std::int8_t> tau(h);
  for (std::size_t u = 0; u < h; ++u) {
    alpha[relabel[u]] = relabel[table.alpha[u]];
    tau[relabel[u]] = static_cast<std::int8_t>(table.tau[u]);
  }
  return KnotCode(std::move(alpha), std::move(tau));
}

namespace {

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

int find_root(std::vector<int>& parent, int u) {
  while (parent[u] != u) u = parent[u] = parent[parent[u]];
  return u;
}

}  // namespace

void validate(const CodeTable& t) {
  const std::size_t h = t.sigma.size();
  if (t.alpha.size() != h || t.phi.size() != h || t.tau.size() != h)
    throw ValidationError(0, "permutation tables differ in length");
  if (h % 4 != 0) throw ValidationError(0, "half-edge count is not a multiple of 4");
  if (!is_permutation(t.sigma) || !is_permutation(t.alpha) || !is_permutation(t.phi))
    throw ValidationError(0, "sigma, alpha and phi must be permutations");
  const std::size_t n = h / 4;

  for (std::size_t u = 0; u < h; ++u)
    if (static_cast<std::size_t>(t.phi[t.alpha[t.sigma[u]]]) != u)
      throw ValidationError(1, "phi o alpha o sigma is not the identity");

  if (h > 0) {
    std::vector<int> parent(h);
    std::iota(parent.begin(), parent.end(), 0);
    std::size_t components = h;
    auto unite = [&](int a, int b) {
      a = find_root(parent, a), b = find_root(parent, b);
      if (a != b) parent[a] = b, --components;
    };
    for (std::size_t u = 0; u < h; ++u) {
      unite(static_cast<int>(u), t.sigma[u]);
      unite(static_cast<int>(u), t.alpha[u]);
    }
    if (components != 1) throw ValidationError(2, "the permutation group is not transitive");
  }

  for (std::size_t u = 0; u < h; ++u)
    if (static_cast<std::size_t>(t.alpha[u]) == u || static_cast<std::size_t>(t.alpha[t.alpha[u]]) != u)
      throw ValidationError(3, "alpha is not a fixed-point-free involution");

  for (std::size_t u = 0; u < h; ++u) {
    int v = static_cast<int>(u), len = 0;
    do {
      v = t.sigma[v];
      ++len;
    } while (static_cast<std::size_t>(v) != u && len <= 4);
    if (len != 4) throw ValidationError(4, "a sigma cycle does not have length 4");
  }

  std::vector<char> seen(h, 0);
  for (std::size_t u = 0; u < h; ++u) {
    if (seen[u]) continue;
    std::size_t len = 0;
    int v = static_cast<int>(u);
    do {
      seen[v] = 1;
      v = t.sigma[t.sigma[t.alpha[v]]];
      ++len;
    } while (static_cast<std::size_t>(v) != u && len <= h);
    if (len != 2 * n) throw ValidationError(5, "a sigma^2 o alpha cycle does not have length 2n");
  }

  for (std::size_t u = 0; u < h; ++u) {
    if (t.tau[u] != 1 && t.tau[u] != -1) throw ValidationError(6, "tau takes values outside {-1,1}");
    if (t.tau[t.sigma[u]] != -t.tau[u]) throw ValidationError(6, "tau(sigma(u)) != -tau(u)");
  }
}

void validate(const KnotCode& code) { validate(code.table()); }

std::vector<int> face_labels(const KnotCode& code, std::size_t* count) {
  const int h = static_cast<int>(code.half_edge_count());
  std::vector<int> label(h, -1);
  int faces = 0;
  for (int u = 0; u < h; ++u) {
    if (label[u] >= 0) continue;
    int v = u;
    do {
      label[v] = faces;
      v = code.phi(v);
    } while (v != u);
    ++faces;
  }
  if (count) *count = static_cast<std::size_t>(faces);
  return label;
}

std::size_t face_count(const KnotCode& code) {
  std::size_t count = 0;
  face_labels(code, &count);
  return count;
}

// ---------------------------------------------------------------------------

namespace {

struct Passage {
  std::size_t segment;
  double param;
  std::uint32_t crossing;
  bool over;
};

double angle_of(const Vec2& d) {
  const double a = std::atan2(d[1], d[0]);
  return a < 0 ? a + 2.0 * M_PI : a;
}

enum Role { OverFwd = 0, OverBwd = 1, UnderFwd = 2, UnderBwd = 3 };

}  // namespace

KnotCode build_code(std::span<const Crossing> crossings) {
  const std::size_t n = crossings.size();
  if (n == 0) return {};

  std::vector<Passage> passages;
  passages.reserve(2 * n);
  for (std::size_t c = 0; c < n; ++c) {
    passages.push_back({crossings[c].over_segment, crossings[c].over_param, static_cast<std::uint32_t>(c), true});
    passages.push_back({crossings[c].under_segment, crossings[c].under_param, static_cast<std::uint32_t>(c), false});
  }
  std::sort(passages.begin(), passages.end(), [](const Passage& a, const Passage& b) {
    return a.segment != b.segment ? a.segment < b.segment : a.param < b.param;
  });
  for (std::size_t k = 1; k < passages.size(); ++k)
    if (passages[k].segment == passages[k - 1].segment && passages[k].param == passages[k - 1].param)
      throw DegeneracyError("two crossings at the same point of a segment");

  // Crossing ids in order of first traversal.
  std::vector<int> id(n, -1);
  int next = 0;
  for (const auto& p : passages)
    if (id[p.crossing] < 0) id[p.crossing] = next++;

  // role -> half-edge label, per crossing id.
  std::vector<std::array<int, 4>> label(n);
  std::vector<std::int8_t> tau(4 * n);
  for (std::size_t c = 0; c < n; ++c) {
    const Crossing& x = crossings[c];
    const Vec2 o = x.over_direction, u = x.under_direction;
    const Vec2 dirs[4] = {o, {-o[0], -o[1]}, u, {-u[0], -u[1]}};
    // Counterclockwise cycle of roles starting at the forward over direction.
    const double cross = o[0] * u[1] - o[1] * u[0];
    if (cross == 0.0) throw DegeneracyError("parallel strands at a crossing");
    const std::array<int, 4> ccw = cross > 0 ? std::array<int, 4>{OverFwd, UnderFwd, OverBwd, UnderBwd}
                                             : std::array<int, 4>{OverFwd, UnderBwd, OverBwd, UnderFwd};
    int start = 0;
    for (int k = 1; k < 4; ++k)
      if (angle_of(dirs[ccw[k]]) < angle_of(dirs[ccw[start]])) start = k;
    const int base = 4 * id[c];
    for (int k = 0; k < 4; ++k) {
      const int role = ccw[(start + k) % 4];
      label[id[c]][role] = base + k;
      tau[base + k] = (role == OverFwd || role == OverBwd) ? 1 : -1;
    }
  }

  std::vector<std::int32_t> alpha(4 * n, -1);
  const std::size_t m = passages.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Passage& a = passages[k];
    const Passage& b = passages[(k + 1) % m];
    const int out = label[id[a.crossing]][a.over ? OverFwd : UnderFwd];
    const int in = label[id[b.crossing]][b.over ? OverBwd : UnderBwd];
    alpha[out] = in;
    alpha[in] = out;
  }
  return KnotCode(std::move(alpha), std::move(tau));
}

KnotCode build_code(const TricolourCurve& curve, std::span<const Crossing> crossings) {
  for (const auto& c : crossings)
    if (c.over_segment >= curve.segment_count() || c.under_segment >= curve.segment_count())
      throw std::invalid_argument("crossing refers to a segment outside the curve");
  return build_code(crossings);
}

void write_code(std::ostream& out, const KnotCode& code) {
  const int h = static_cast<int>(code.half_edge_count());
  for (int u = 0; u < h; ++u)
    out << u << ' ' << KnotCode::sigma(u) << ' ' << code.alpha(u) << ' ' << code.phi(u) << ' '
        << code.tau(u) << '\n';
}

CodeTable read_code(std::istream& in) {
  CodeTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int u, s, a, p, x;
    if (!(row >> u >> s >> a >> p >> x)) throw std::runtime_error("malformed code line: " + line);
    if (u != static_cast<int>(t.sigma.size())) throw std::runtime_error("code lines out of order");
    t.sigma.push_back(s), t.alpha.push_back(a), t.phi.push_back(p), t.tau.push_back(x);
  }
  return t;
}

}  // namespace knotperc
