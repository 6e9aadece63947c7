#ifndef RBD_WORKSPACE_HPP
#define RBD_WORKSPACE_HPP

#include <vector>

#include "rbd/types.hpp"
#include "rbd/weight.hpp"

namespace rbd {

/// Precomputed quantities that make the per-column error
///   ||v - Yc||_A^2 = v'Av - 2 c'(Y'Av) + c'(Y'AY)c
/// evaluable in O(d^2) regardless of m: diag(X'AX) once, then a row of Y'AX
/// and a row/column of Y'AY per basis vector.
///
/// The workspace does not own X or the weight; init/extend take them as
/// arguments and copy out what the online phase needs.
struct ErrorWorkspace {
  WeightKind kind = WeightKind::identity;
  Index m = 0;
  Index n = 0;
  Index d = 0;

  Vector col_sq;                 // diag(X'AX), length n
  Matrix ax;                     // A*X, cached for sparse weights only
  std::vector<Vector> yax_rows;  // row k = xi_k' A X, each length n
  Matrix yay;                    // Y'AY, d x d, exactly symmetric
  Matrix a_basis;                // A*Y, kept to extend yay (non-identity only)
  Vector residual_sq;            // identity fast path: running ||x_j - Y Y'x_j||^2
};

/// Offline precomputation: col_sq = diag(X'AX) and, for sparse weights, AX.
/// For identity and diagonal weights AX is never materialized.
ErrorWorkspace workspace_init(const Matrix& x, const WeightSpec& a);

/// Account for a new basis vector xi (Euclidean-unit, orthogonal to the
/// existing basis): appends xi'AX to yax and grows yay by one row/column.
/// With the identity weight also updates the running residuals in place.
void workspace_extend(ErrorWorkspace& ws, const VectorRef& xi, const Matrix& x,
                      const WeightSpec& a);

/// ||X(:,j) - Yc||_A^2 evaluated from the workspace alone; O(d^2) per call,
/// clamped at zero. c must have length ws.d.
double error_sq(const ErrorWorkspace& ws, Index j, const VectorRef& c);

struct ScanResult {
  double e_cur = 0.0;  // max_j ||X(:,j) - Y T(:,j)||_A
  Index argmax = 0;    // smallest index attaining the max
};

/// Scan all columns with their current coefficients T(:,j). The identity
/// fast path reads the running residuals (O(n) total); the general path
/// evaluates error_sq per column.
ScanResult residual_scan(const ErrorWorkspace& ws, const MatrixRef& t);

}  // namespace rbd

#endif
