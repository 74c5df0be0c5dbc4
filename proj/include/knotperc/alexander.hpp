#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "knotperc/diagram.hpp"

namespace knotperc {

/// A determinant that should be odd (or at least nonzero) came out as zero.
class SingularMatrix : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// constant + linear * t
struct LinearCoefficient {
  int constant = 0;
  int linear = 0;
  bool operator==(const LinearCoefficient&) const = default;
};

struct MatrixEntry {
  int row = 0;
  int col = 0;
  LinearCoefficient value;
};

/// Crossing-by-region matrix. Before deletion cols = rows + 2; `deleted`
/// names the two regions erased by delete_columns.
struct AlexanderMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<MatrixEntry> entries;  // one entry per (row, col), duplicates merged
  std::array<int, 2> deleted{-1, -1};

  bool square() const noexcept { return rows == cols; }
};

/// Rows are crossings, columns are phi-faces (numbered by face_labels).
/// Around crossing c let u be the outgoing half-edge of the under strand with
/// respect to the traversal sigma^2.alpha through half-edge 0. The corners get
///   face(u) -> t, face(sigma u) -> -t, face(sigma^2 u) -> 1, face(sigma^3 u) -> -1,
/// i.e. t / -t on the left of the under strand (ahead / behind) and -1 / 1 on
/// its right. The deleted pair is the two faces along the arc of half-edge 0.
AlexanderMatrix build_matrix(const KnotCode& code);

/// Faces on either side of the arc leaving half-edge u: face(u), face(alpha(u)).
std::array<int, 2> arc_faces(const KnotCode& code, int u);

/// Square n x n matrix with the regions in m.deleted removed and the remaining
/// columns renumbered in increasing order.
AlexanderMatrix delete_columns(const AlexanderMatrix& m);
AlexanderMatrix delete_columns(const AlexanderMatrix& m, std::array<int, 2> regions);

enum class EvalPoint { MinusOne, I };

/// ln|det| of the square matrix at t = -1 or t = i; -infinity when singular.
/// Small matrices use the dense reference; larger ones a sparse LU.
double eval_log_abs(const AlexanderMatrix& square, EvalPoint point);

struct DenseLuReport {
  double log_abs = 0.0;
  std::vector<double> pivot_magnitudes;  // |U_kk| in elimination order
  bool singular = false;
};

/// Dense Gaussian elimination with partial pivoting.
DenseLuReport dense_log_abs(const AlexanderMatrix& square, EvalPoint point);

/// Sparse LU (column-ordered supernodal factorization).
double sparse_log_abs(const AlexanderMatrix& square, EvalPoint point);

/// Fraction-free elimination. At t = -1 returns |det|; at t = i returns
/// |det|^2, computed over the Gaussian integers.
mpz_class eval_exact(const AlexanderMatrix& square, EvalPoint point);

/// Natural log of a positive big integer (-infinity for zero).
double log_of(const mpz_class& value);

struct InvariantPair {
  double log_abs_minus1 = 0.0;
  double log_abs_i = 0.0;
  std::optional<mpz_class> exact_minus1;
  std::optional<mpz_class> exact_i_norm;  // |det(i)|^2
};

struct InvariantOptions {
  bool float_values = true;
  bool exact_values = false;
};

/// Both evaluations for a diagram; the empty code gives 1 and 1. With only
/// exact values requested the logs are derived from them. Throws
/// SingularMatrix on a zero determinant.
InvariantPair compute_invariants(const KnotCode& code, const InvariantOptions& options = {});

}  // namespace knotperc
