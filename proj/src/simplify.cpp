#include "knotperc/simplify.hpp"

#include <algorithm>
#include <array>

#include "knotperc/random.hpp"

namespace knotperc {
namespace {

using K = KnotCode;

/// Moves the last crossing into `slot` and drops the last four labels.
/// Returns the crossing index that was moved (or -1).
int drop_crossing(KnotCode& code, int slot) {
  auto& alpha = code.alpha_data();
  auto& tau = code.tau_data();
  const int last = static_cast<int>(code.crossing_count()) - 1;
  if (slot != last) {
    for (int k = 0; k < 4; ++k) {
      alpha[4 * slot + k] = alpha[4 * last + k];
      tau[4 * slot + k] = tau[4 * last + k];
    }
    for (int k = 0; k < 4; ++k) {
      const int dst = 4 * slot + k;
      int partner = alpha[dst];
      if (K::crossing_of(partner) == last) {
        alpha[dst] = 4 * slot + (partner & 3);
      } else {
        alpha[partner] = dst;
      }
    }
  }
  alpha.resize(alpha.size() - 4);
  tau.resize(tau.size() - 4);
  return slot != last ? last : -1;
}

/// Joins the strands running through `crossings` and deletes those crossings.
/// Returns the half-edges (final labels) at crossings whose faces changed.
std::vector<int> excise(KnotCode& code, std::vector<int> crossings) {
  auto& alpha = code.alpha_data();
  auto removed = [&](int u) {
    return std::find(crossings.begin(), crossings.end(), K::crossing_of(u)) != crossings.end();
  };

  std::vector<std::pair<int, int>> joins;
  std::vector<int> touched;
  for (int c : crossings)
    for (int k = 0; k < 4; ++k) {
      const int x = alpha[4 * c + k];
      if (removed(x)) continue;
      // x is outside; follow the strand through the removed crossings.
      int y = 4 * c + k;
      int z = alpha[K::opposite(y)];
      while (removed(z)) {
        y = z;
        z = alpha[K::opposite(y)];
      }
      if (x < z) joins.emplace_back(x, z);
    }
  for (auto [x, z] : joins) {
    alpha[x] = z;
    alpha[z] = x;
    touched.push_back(K::crossing_of(x));
    touched.push_back(K::crossing_of(z));
  }

  std::sort(crossings.begin(), crossings.end(), std::greater<>());
  for (int c : crossings) {
    const int moved = drop_crossing(code, c);
    if (moved < 0) continue;
    for (int& t : touched)
      if (t == moved) t = c;
    touched.push_back(c);  // relabelled, possibly still pending in a worklist
  }
  std::vector<int> out;
  const int n = static_cast<int>(code.crossing_count());
  for (int c : touched)
    if (c < n)
      for (int k = 0; k < 4; ++k) out.push_back(4 * c + k);
  return out;
}

bool distinct3(int a, int b, int c) { return a != b && b != c && a != c; }

}  // namespace

bool is_monogon(const KnotCode& code, int u) { return code.phi(u) == u; }

bool is_reducible_bigon(const KnotCode& code, int u) {
  const int v = code.phi(u);
  if (v == u || code.phi(v) != u) return false;
  if (K::crossing_of(u) == K::crossing_of(v)) return false;
  // Arc u -> alpha(u) stays on one level; the other arc then does too.
  return code.tau(u) == code.tau(code.alpha(u));
}

bool is_slidable_trigon(const KnotCode& code, int u) {
  const int b = code.phi(u);
  const int c = code.phi(b);
  if (code.phi(c) != u || b == u) return false;
  if (!distinct3(K::crossing_of(u), K::crossing_of(b), K::crossing_of(c))) return false;
  // Edges of the face: (u, sigma b), (b, sigma c), (c, sigma u). Some edge
  // staying on one level means one strand passes over both others.
  return code.tau(u) == code.tau(K::sigma(b)) || code.tau(b) == code.tau(K::sigma(c)) ||
         code.tau(c) == code.tau(K::sigma(u));
}

namespace {

template <typename Pred>
std::vector<int> collect_faces(const KnotCode& code, Pred pred) {
  std::vector<int> out;
  const int h = static_cast<int>(code.half_edge_count());
  for (int u = 0; u < h; ++u) {
    // Report each face once, by its smallest half-edge.
    bool smallest = true;
    for (int v = code.phi(u); v != u; v = code.phi(v))
      if (v < u) {
        smallest = false;
        break;
      }
    if (smallest && pred(code, u)) out.push_back(u);
  }
  return out;
}

}  // namespace

std::vector<int> find_monogons(const KnotCode& code) { return collect_faces(code, is_monogon); }
std::vector<int> find_reducible_bigons(const KnotCode& code) {
  return collect_faces(code, is_reducible_bigon);
}
std::vector<int> find_slidable_trigons(const KnotCode& code) {
  return collect_faces(code, is_slidable_trigon);
}

void apply_r1(KnotCode& code, int u) {
  if (u < 0 || static_cast<std::size_t>(u) >= code.half_edge_count() || !is_monogon(code, u))
    throw InvalidMove("type I move needs a monogon face");
  excise(code, {K::crossing_of(u)});
}

void apply_r2(KnotCode& code, int u) {
  if (u < 0 || static_cast<std::size_t>(u) >= code.half_edge_count() || !is_reducible_bigon(code, u))
    throw InvalidMove("type II move needs a bigon whose arcs each stay on one level");
  excise(code, {K::crossing_of(u), K::crossing_of(code.phi(u))});
}

void apply_r3(KnotCode& code, int u) {
  if (u < 0 || static_cast<std::size_t>(u) >= code.half_edge_count() || !is_slidable_trigon(code, u))
    throw InvalidMove("type III move needs a trigon with one strand over the other two");
  auto& alpha = code.alpha_data();
  const std::array<int, 3> corner{u, code.phi(u), code.phi(code.phi(u))};

  // Per strand: p_in, p_out at its first triangle crossing, q_in, q_out at the second.
  struct Strand {
    int p_in, p_out, q_in, q_out;
  };
  std::array<Strand, 3> strands{};
  for (int s = 0; s < 3; ++s) {
    const int p = corner[s], q = corner[(s + 1) % 3];
    strands[s] = {p, K::opposite(p), K::sigma(q), K::opposite(K::sigma(q))};
  }
  // The boundary point held by p_out moves to q_in, the one held by q_out to p_in.
  auto remap = [&](int x) {
    for (const auto& st : strands) {
      if (x == st.p_out) return st.q_in;
      if (x == st.q_out) return st.p_in;
    }
    return x;
  };
  std::array<std::pair<int, int>, 9> pairs{};
  int k = 0;
  for (const auto& st : strands) {
    pairs[k++] = {st.q_out, st.p_out};
    pairs[k++] = {st.q_in, remap(alpha[st.p_out])};
    pairs[k++] = {st.p_in, remap(alpha[st.q_out])};
  }
  for (auto [a, b] : pairs) {
    alpha[a] = b;
    alpha[b] = a;
  }
}

void reduce(KnotCode& code, SimplifyStats* stats) {
  std::vector<int> work(code.half_edge_count());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] = static_cast<int>(work.size() - 1 - i);
  while (!work.empty()) {
    const int u = work.back();
    work.pop_back();
    if (static_cast<std::size_t>(u) >= code.half_edge_count()) continue;
    std::vector<int> touched;
    if (is_monogon(code, u)) {
      touched = excise(code, {K::crossing_of(u)});
      if (stats) ++stats->r1;
    } else if (is_reducible_bigon(code, u)) {
      touched = excise(code, {K::crossing_of(u), K::crossing_of(code.phi(u))});
      if (stats) ++stats->r2;
    } else {
      continue;
    }
    work.insert(work.end(), touched.rbegin(), touched.rend());
  }
}

void shake(KnotCode& code, std::mt19937_64& rng, double probability, SimplifyStats* stats) {
  const int h = static_cast<int>(code.half_edge_count());
  for (int u = 0; u < h; ++u) {
    if (!is_slidable_trigon(code, u)) continue;
    const int b = code.phi(u), c = code.phi(b);
    if (b < u || c < u) continue;  // once per face
    if (unit_interval(rng()) < probability) {
      apply_r3(code, u);
      if (stats) ++stats->r3;
    }
  }
}

void simplify(KnotCode& code, const SimplifyConfig& config, SimplifyStats* stats) {
  if (!(config.shake_probability >= 0.0 && config.shake_probability <= 1.0))
    throw std::invalid_argument("shake probability must lie in [0,1]");
  if (config.shake_rounds < 0) throw std::invalid_argument("shake rounds must be non-negative");
  std::mt19937_64 rng(config.rng_seed);
  reduce(code, stats);
  for (int round = 0; round < config.shake_rounds; ++round) {
    shake(code, rng, config.shake_probability, stats);
    reduce(code, stats);
  }
}

}  // namespace knotperc
