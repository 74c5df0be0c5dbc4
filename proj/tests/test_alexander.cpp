#include <cmath>
#include <numeric>

#include "doctest.h"
#include "knotperc/alexander.hpp"
#include "knotperc/known_knots.hpp"
#include "knotperc/random.hpp"
#include "knotperc/simplify.hpp"

using namespace knotperc;

namespace {

// Integer polynomial in t, coefficient of t^k at index k.
using Poly = std::vector<long>;

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void add_to(Poly& acc, const Poly& p, long sign) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += sign * p[i];
}

// Strips factors of t and zero tails and fixes the sign of the lowest term.
Poly normalize(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  std::size_t lead = 0;
  while (lead < p.size() && p[lead] == 0) ++lead;
  p.erase(p.begin(), p.begin() + static_cast<long>(lead));
  if (!p.empty() && p.front() < 0)
    for (long& c : p) c = -c;
  return p;
}

// Leibniz expansion over the polynomial ring; fine for a handful of rows.
Poly symbolic_det(const AlexanderMatrix& m) {
  const std::size_t n = m.rows;
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
  for (const auto& e : m.entries)
    a[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(e.col)] = {e.value.constant, e.value.linear};
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly det;
  do {
    long sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Poly term{1};
    for (std::size_t i = 0; i < n; ++i) term = multiply(term, a[i][perm[i]]);
    add_to(det, term, sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return normalize(det);
}

KnotCode sampled_code(int n, std::uint64_t k) {
  const auto g = sample_colouring(CubeSize(n), Boundary::Dobrushin, mix_seed(3000 + n, k));
  const auto curve = trace_curve(g, FacePerturbation(k));
  return build_code(curve, detect_crossings(curve));
}

KnotCode kink_code() {
  const std::vector<Vec3> p{{0, 0, 0}, {4, 2, 1}, {4, 0, 1}, {0, 2, 2}};
  return code_from_polygon(p);
}

}  // namespace

TEST_CASE("trefoil matrix shape and entries") {
  const KnotCode t = trefoil_code();
  const AlexanderMatrix m = build_matrix(t);
  CHECK(m.rows == 3);
  CHECK(m.cols == 5);
  const AlexanderMatrix sq = delete_columns(m);
  CHECK(sq.square());
  CHECK(sq.rows == 3);
  for (const auto& e : sq.entries) {
    CHECK(e.col >= 0);
    CHECK(e.col < 3);
  }
}

TEST_CASE("symbolic determinants of the trefoil and the figure-eight") {
  CHECK(symbolic_det(delete_columns(build_matrix(trefoil_code()))) == Poly{1, -1, 1});
  CHECK(symbolic_det(delete_columns(build_matrix(figure_eight_code()))) == Poly{1, -3, 1});
}

TEST_CASE("known values in both arithmetics") {
  const InvariantOptions both{true, true};
  const auto t = compute_invariants(trefoil_code(), both);
  CHECK(*t.exact_minus1 == 3);
  CHECK(*t.exact_i_norm == 1);
  CHECK(std::abs(t.log_abs_minus1 - std::log(3.0)) < 1e-9);
  CHECK(std::abs(t.log_abs_i) < 1e-9);

  const auto e = compute_invariants(figure_eight_code(), both);
  CHECK(*e.exact_minus1 == 5);
  CHECK(*e.exact_i_norm == 9);
  CHECK(std::abs(e.log_abs_minus1 - std::log(5.0)) < 1e-9);
  CHECK(std::abs(e.log_abs_i - std::log(3.0)) < 1e-9);

  const auto u = compute_invariants(KnotCode{}, both);
  CHECK(*u.exact_minus1 == 1);
  CHECK(*u.exact_i_norm == 1);
  CHECK(u.log_abs_minus1 == 0.0);
  CHECK(u.log_abs_i == 0.0);
}

TEST_CASE("a kink gives a one by one matrix of modulus one") {
  const AlexanderMatrix sq = delete_columns(build_matrix(kink_code()));
  REQUIRE(sq.rows == 1);
  REQUIRE(sq.cols == 1);
  CHECK(eval_exact(sq, EvalPoint::MinusOne) == 1);
  CHECK(eval_exact(sq, EvalPoint::I) == 1);
}

TEST_CASE("rows sum to zero at t = 1 and touch at most four regions") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const KnotCode code = sampled_code(10, k);
    if (code.empty()) continue;
    const AlexanderMatrix m = build_matrix(code);
    CHECK(m.rows == code.crossing_count());
    CHECK(m.cols == code.crossing_count() + 2);
    std::vector<long> sum(m.rows, 0);
    std::vector<int> per_row(m.rows, 0);
    for (const auto& e : m.entries) {
      sum[static_cast<std::size_t>(e.row)] += e.value.constant + e.value.linear;
      ++per_row[static_cast<std::size_t>(e.row)];
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
      CHECK(sum[r] == 0);
      CHECK(per_row[r] <= 4);
    }
  }
}

TEST_CASE("the deleted pair may be any two regions along an arc") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const KnotCode code = sampled_code(7, k);
    if (code.empty()) continue;
    const AlexanderMatrix m = build_matrix(code);
    const mpz_class ref_m1 = eval_exact(delete_columns(m), EvalPoint::MinusOne);
    const mpz_class ref_i = eval_exact(delete_columns(m), EvalPoint::I);
    for (int u = 0; u < static_cast<int>(code.half_edge_count()); ++u) {
      const AlexanderMatrix sq = delete_columns(m, arc_faces(code, u));
      CHECK(eval_exact(sq, EvalPoint::MinusOne) == ref_m1);
      CHECK(eval_exact(sq, EvalPoint::I) == ref_i);
    }
  }
}

TEST_CASE("float and exact evaluations agree and determinants are odd") {
  for (std::uint64_t k = 0; k < 30; ++k) {
    const KnotCode code = sampled_code(12, k);
    const auto v = compute_invariants(code, {true, true});
    const double n = std::max<double>(1.0, static_cast<double>(code.crossing_count()));
    CHECK(std::abs(v.log_abs_minus1 - log_of(*v.exact_minus1)) <= 1e-9 * n);
    CHECK(std::abs(v.log_abs_i - log_of(*v.exact_i_norm) / 2) <= 1e-9 * n);
    CHECK(mpz_odd_p(v.exact_minus1->get_mpz_t()) != 0);
  }
}

TEST_CASE("sparse and dense factorizations agree") {
  int compared = 0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const KnotCode code = sampled_code(10, k);
    if (code.crossing_count() < 10) continue;
    const AlexanderMatrix sq = delete_columns(build_matrix(code));
    for (auto p : {EvalPoint::MinusOne, EvalPoint::I}) {
      const double dense = dense_log_abs(sq, p).log_abs;
      CHECK(std::abs(sparse_log_abs(sq, p) - dense) <= 1e-9 * static_cast<double>(sq.rows));
      CHECK(std::abs(eval_log_abs(sq, p) - dense) <= 1e-9 * static_cast<double>(sq.rows));
      ++compared;
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("pivot magnitudes stay moderate") {
  for (std::uint64_t k = 0; k < 5; ++k) {
    KnotCode code = sampled_code(20, k);
    reduce(code);
    if (code.empty()) continue;
    const auto report = dense_log_abs(delete_columns(build_matrix(code)), EvalPoint::MinusOne);
    CHECK_FALSE(report.singular);
    for (double p : report.pivot_magnitudes) {
      CHECK(p >= 1e-4);
      CHECK(p <= 1e4);
    }
  }
}

TEST_CASE("a singular matrix is reported") {
  AlexanderMatrix zero;
  zero.rows = zero.cols = 2;
  zero.entries = {{0, 0, {1, 1}}, {1, 0, {1, 1}}};  // (1 + t) vanishes at -1 and column 1 is empty
  CHECK(std::isinf(eval_log_abs(zero, EvalPoint::MinusOne)));
  CHECK(dense_log_abs(zero, EvalPoint::I).singular);
  CHECK(eval_exact(zero, EvalPoint::MinusOne) == 0);
  CHECK(std::isinf(log_of(mpz_class(0))));
}
