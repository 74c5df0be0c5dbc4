#include "knotperc/alexander.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace knotperc {

using K = KnotCode;

std::array<int, 2> arc_faces(const KnotCode& code, int u) {
  const auto label = face_labels(code);
  return {label[static_cast<std::size_t>(u)], label[static_cast<std::size_t>(code.alpha(u))]};
}

AlexanderMatrix build_matrix(const KnotCode& code) {
  if (code.empty()) throw std::invalid_argument("the crossing-free diagram has no Alexander matrix");
  const int n = static_cast<int>(code.crossing_count());
  const int h = 4 * n;
  std::size_t regions = 0;
  const auto face = face_labels(code, &regions);

  std::vector<char> forward(static_cast<std::size_t>(h), 0);
  int u = 0;
  do {
    forward[static_cast<std::size_t>(u)] = 1;
    u = K::opposite(code.alpha(u));
  } while (u != 0);

  AlexanderMatrix m;
  m.rows = static_cast<std::size_t>(n);
  m.cols = regions;
  m.deleted = {face[0], face[static_cast<std::size_t>(code.alpha(0))]};
  for (int c = 0; c < n; ++c) {
    int under = -1;
    for (int k = 0; k < 4; ++k) {
      const int v = 4 * c + k;
      if (code.tau(v) < 0 && forward[static_cast<std::size_t>(v)]) under = v;
    }
    if (under < 0) throw ValidationError(5, "no outgoing under half-edge at a crossing");
    constexpr std::array<LinearCoefficient, 4> corner{{{0, 1}, {0, -1}, {1, 0}, {-1, 0}}};
    std::map<int, LinearCoefficient> row;
    int v = under;
    for (int k = 0; k < 4; ++k, v = K::sigma(v)) {
      auto& cell = row[face[static_cast<std::size_t>(v)]];
      cell.constant += corner[static_cast<std::size_t>(k)].constant;
      cell.linear += corner[static_cast<std::size_t>(k)].linear;
    }
    for (const auto& [col, value] : row)
      if (value.constant != 0 || value.linear != 0) m.entries.push_back({c, col, value});
  }
  return m;
}

AlexanderMatrix delete_columns(const AlexanderMatrix& m) { return delete_columns(m, m.deleted); }

AlexanderMatrix delete_columns(const AlexanderMatrix& m, std::array<int, 2> regions) {
  if (m.cols != m.rows + 2) throw std::invalid_argument("matrix must have two more columns than rows");
  if (regions[0] == regions[1] || regions[0] < 0 || regions[1] < 0 ||
      static_cast<std::size_t>(std::max(regions[0], regions[1])) >= m.cols)
    throw std::invalid_argument("deleted regions must be two distinct columns");
  AlexanderMatrix out;
  out.rows = m.rows;
  out.cols = m.rows;
  out.deleted = regions;
  auto shift = [&](int col) {
    return col - (col > regions[0] ? 1 : 0) - (col > regions[1] ? 1 : 0);
  };
  for (const auto& e : m.entries) {
    if (e.col == regions[0] || e.col == regions[1]) continue;
    out.entries.push_back({e.row, shift(e.col), e.value});
  }
  return out;
}

namespace {

void require_square(const AlexanderMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant needs a square matrix");
}

double numeric(const LinearCoefficient& c, double t) { return c.constant + c.linear * t; }

std::complex<double> numeric(const LinearCoefficient& c, std::complex<double> t) {
  return static_cast<double>(c.constant) + static_cast<double>(c.linear) * t;
}

template <typename Scalar>
DenseLuReport dense_lu(const AlexanderMatrix& m, Scalar t) {
  const std::size_t n = m.rows;
  std::vector<Scalar> a(n * n, Scalar(0));
  for (const auto& e : m.entries)
    a[static_cast<std::size_t>(e.row) * n + static_cast<std::size_t>(e.col)] = numeric(e.value, t);
  DenseLuReport report;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    double best_abs = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > best_abs) {
        best = i;
        best_abs = std::abs(a[i * n + k]);
      }
    if (best_abs == 0.0) {
      report.singular = true;
      report.log_abs = -std::numeric_limits<double>::infinity();
      return report;
    }
    if (best != k)
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[best * n + j]);
    const Scalar pivot = a[k * n + k];
    report.pivot_magnitudes.push_back(best_abs);
    report.log_abs += std::log(best_abs);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar factor = a[i * n + k] / pivot;
      if (factor == Scalar(0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= factor * a[k * n + j];
    }
  }
  return report;
}

template <typename Scalar>
double sparse_lu(const AlexanderMatrix& m, Scalar t) {
  const auto n = static_cast<Eigen::Index>(m.rows);
  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(m.entries.size());
  for (const auto& e : m.entries) triplets.emplace_back(e.row, e.col, numeric(e.value, t));
  Eigen::SparseMatrix<Scalar> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<Scalar>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::real(lu.logAbsDeterminant()));
}

constexpr std::size_t kDenseLimit = 64;

// ---------------------------------------------------------------------------
// Fraction-free sparse elimination.

struct Gaussian {
  mpz_class re;
  mpz_class im;
};

bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
bool is_zero(const Gaussian& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }

void mul(mpz_class& out, const mpz_class& a, const mpz_class& b) { mpz_mul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }

void mul(Gaussian& out, const Gaussian& a, const Gaussian& b) {
  mpz_class re = a.re * b.re - a.im * b.im;
  mpz_class im = a.re * b.im + a.im * b.re;
  out.re.swap(re);
  out.im.swap(im);
}

void sub(mpz_class& out, const mpz_class& a, const mpz_class& b) { mpz_sub(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }

void sub(Gaussian& out, const Gaussian& a, const Gaussian& b) {
  sub(out.re, a.re, b.re);
  sub(out.im, a.im, b.im);
}

void divexact(mpz_class& a, const mpz_class& d) {
  mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
}

void divexact(Gaussian& a, const Gaussian& d) {
  // a / d = a * conj(d) / |d|^2
  const mpz_class norm = d.re * d.re + d.im * d.im;
  mpz_class re = a.re * d.re + a.im * d.im;
  mpz_class im = a.im * d.re - a.re * d.im;
  divexact(re, norm);
  divexact(im, norm);
  a.re.swap(re);
  a.im.swap(im);
}

bool is_unit_one(const mpz_class& a) { return a == 1; }
bool is_unit_one(const Gaussian& a) { return a.re == 1 && a.im == 0; }

mpz_class from_coefficient(const LinearCoefficient& c, const mpz_class*) {
  return mpz_class(c.constant - c.linear);
}

Gaussian from_coefficient(const LinearCoefficient& c, const Gaussian*) {
  return {mpz_class(c.constant), mpz_class(c.linear)};
}

template <typename E>
struct SparseBareiss {
  using Row = std::vector<std::pair<int, E>>;  // sorted by column

  std::vector<Row> rows;
  std::vector<int> row_step;          // step at which the stored row was last current
  std::vector<E> pivots;              // pivots[s] = pivot of step s, pivots[0] = 1
  std::vector<std::vector<int>> col_rows;  // may hold stale row ids
  std::vector<int> col_count;
  std::vector<char> row_active, col_active;

  explicit SparseBareiss(const AlexanderMatrix& m) {
    const std::size_t n = m.rows;
    rows.resize(n);
    row_step.assign(n, 0);
    col_rows.resize(n);
    col_count.assign(n, 0);
    row_active.assign(n, 1);
    col_active.assign(n, 1);
    for (const auto& e : m.entries) {
      E v = from_coefficient(e.value, static_cast<const E*>(nullptr));
      if (is_zero(v)) continue;
      rows[static_cast<std::size_t>(e.row)].emplace_back(e.col, std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto& r = rows[i];
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [col, v] : r) {
        col_rows[static_cast<std::size_t>(col)].push_back(static_cast<int>(i));
        ++col_count[static_cast<std::size_t>(col)];
      }
    }
    E one = from_coefficient({1, 0}, static_cast<const E*>(nullptr));
    pivots.push_back(std::move(one));
  }

  // Scales row i from its stored step to step `now`.
  void bring_current(std::size_t i, int now) {
    const int s = row_step[i];
    if (s == now) return;
    const E& target = pivots[static_cast<std::size_t>(now)];
    const E& source = pivots[static_cast<std::size_t>(s)];
    const bool trivial = is_unit_one(source);
    for (auto& [col, v] : rows[i]) {
      mul(v, v, target);
      if (!trivial) divexact(v, source);
    }
    row_step[i] = now;
  }

  static const E* find(const Row& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& entry, int c) { return entry.first < c; });
    return it != r.end() && it->first == col ? &it->second : nullptr;
  }

  // Returns the last pivot (the determinant up to sign), or zero when singular.
  E run() {
    const std::size_t n = rows.size();
    for (std::size_t step = 1; step <= n; ++step) {
      const int prev = static_cast<int>(step) - 1;
      // Markowitz-style choice: sparsest column, then shortest row within it.
      int col = -1;
      for (std::size_t j = 0; j < n; ++j)
        if (col_active[j] && (col < 0 || col_count[j] < col_count[static_cast<std::size_t>(col)]))
          col = static_cast<int>(j);
      if (col_count[static_cast<std::size_t>(col)] == 0) return from_coefficient({0, 0}, static_cast<const E*>(nullptr));

      auto& candidates = col_rows[static_cast<std::size_t>(col)];
      std::vector<int> holders;
      for (int i : candidates)
        if (row_active[static_cast<std::size_t>(i)] && find(rows[static_cast<std::size_t>(i)], col))
          holders.push_back(i);
      std::sort(holders.begin(), holders.end());
      holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
      candidates.clear();
      int pivot_row = holders.front();
      for (int i : holders)
        if (rows[static_cast<std::size_t>(i)].size() < rows[static_cast<std::size_t>(pivot_row)].size()) pivot_row = i;

      const auto pr = static_cast<std::size_t>(pivot_row);
      bring_current(pr, prev);
      const Row& prow = rows[pr];
      E pivot = *find(prow, col);

      for (int i : holders) {
        if (i == pivot_row) continue;
        const auto ir = static_cast<std::size_t>(i);
        bring_current(ir, prev);
        Row& row = rows[ir];
        const E factor = *find(row, col);
        Row merged;
        merged.reserve(row.size() + prow.size());
        std::size_t a = 0, b = 0;
        E tmp;
        while (a < row.size() || b < prow.size()) {
          const int ca = a < row.size() ? row[a].first : std::numeric_limits<int>::max();
          const int cb = b < prow.size() ? prow[b].first : std::numeric_limits<int>::max();
          if (ca == col) {
            ++a;
            if (cb == col) ++b;
            continue;
          }
          if (cb == col) {
            ++b;
            continue;
          }
          E value;
          if (ca < cb) {
            mul(value, row[a].second, pivot);
            ++a;
          } else if (cb < ca) {
            mul(tmp, factor, prow[b].second);
            E zero = from_coefficient({0, 0}, static_cast<const E*>(nullptr));
            sub(value, zero, tmp);
            // fill-in
            col_rows[static_cast<std::size_t>(cb)].push_back(i);
            ++col_count[static_cast<std::size_t>(cb)];
            ++b;
          } else {
            mul(value, row[a].second, pivot);
            mul(tmp, factor, prow[b].second);
            sub(value, value, tmp);
            ++a;
            ++b;
          }
          const int c = std::min(ca, cb);
          if (is_zero(value)) {
            --col_count[static_cast<std::size_t>(c)];
            continue;
          }
          divexact(value, pivots[static_cast<std::size_t>(prev)]);
          merged.emplace_back(c, std::move(value));
        }
        row.swap(merged);
        row_step[ir] = static_cast<int>(step);
        --col_count[static_cast<std::size_t>(col)];
      }
      row_active[pr] = 0;
      col_active[static_cast<std::size_t>(col)] = 0;
      for (const auto& [c, v] : prow) --col_count[static_cast<std::size_t>(c)];
      rows[pr].clear();
      rows[pr].shrink_to_fit();
      pivots.push_back(std::move(pivot));
    }
    return pivots.back();
  }
};

}  // namespace

DenseLuReport dense_log_abs(const AlexanderMatrix& square, EvalPoint point) {
  require_square(square);
  if (point == EvalPoint::MinusOne) return dense_lu<double>(square, -1.0);
  return dense_lu<std::complex<double>>(square, std::complex<double>(0.0, 1.0));
}

double sparse_log_abs(const AlexanderMatrix& square, EvalPoint point) {
  require_square(square);
  if (square.rows == 0) return 0.0;
  if (point == EvalPoint::MinusOne) return sparse_lu<double>(square, -1.0);
  return sparse_lu<std::complex<double>>(square, std::complex<double>(0.0, 1.0));
}

double eval_log_abs(const AlexanderMatrix& square, EvalPoint point) {
  require_square(square);
  if (square.rows <= kDenseLimit) return dense_log_abs(square, point).log_abs;
  return sparse_log_abs(square, point);
}

mpz_class eval_exact(const AlexanderMatrix& square, EvalPoint point) {
  require_square(square);
  if (square.rows == 0) return 1;
  if (point == EvalPoint::MinusOne) {
    SparseBareiss<mpz_class> elim(square);
    return abs(elim.run());
  }
  SparseBareiss<Gaussian> elim(square);
  const Gaussian det = elim.run();
  return det.re * det.re + det.im * det.im;
}

double log_of(const mpz_class& value) {
  if (sgn(value) == 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

InvariantPair compute_invariants(const KnotCode& code, const InvariantOptions& options) {
  InvariantPair out;
  if (code.empty()) {
    if (options.exact_values) {
      out.exact_minus1 = mpz_class(1);
      out.exact_i_norm = mpz_class(1);
    }
    return out;
  }
  const AlexanderMatrix square = delete_columns(build_matrix(code));
  if (options.exact_values) {
    out.exact_minus1 = eval_exact(square, EvalPoint::MinusOne);
    out.exact_i_norm = eval_exact(square, EvalPoint::I);
    if (sgn(*out.exact_minus1) == 0 || sgn(*out.exact_i_norm) == 0)
      throw SingularMatrix("Alexander determinant vanished");
    out.log_abs_minus1 = log_of(*out.exact_minus1);
    out.log_abs_i = 0.5 * log_of(*out.exact_i_norm);
  }
  if (options.float_values || !options.exact_values) {
    out.log_abs_minus1 = eval_log_abs(square, EvalPoint::MinusOne);
    out.log_abs_i = eval_log_abs(square, EvalPoint::I);
    if (!std::isfinite(out.log_abs_minus1) || !std::isfinite(out.log_abs_i))
      throw SingularMatrix("Alexander determinant vanished in floating point");
  }
  return out;
}

}  // namespace knotperc
