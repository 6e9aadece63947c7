#ifndef RBD_SVD_HPP
#define RBD_SVD_HPP

#include <vector>

#include "rbd/decompose.hpp"
#include "rbd/types.hpp"

namespace rbd {

/// Leading singular triplets: X ~= U * diag(s) * V'.
struct SvdTriple {
  Matrix U;  // m x k, orthonormal columns
  Vector s;  // k singular values, non-increasing
  Matrix V;  // n x k, orthonormal columns
};

enum class ErrorNorm { frobenius, max_entry };

/// Leading k singular triplets by one-sided Jacobi applied on the smaller
/// dimension's Gram side. Correctness-first reference: every call runs the
/// full decomposition and slices the top k. Signs are fixed so the first
/// nonzero entry of each left vector is nonnegative. Throws NoConvergence if
/// 50 sweeps do not reach the rotation threshold or the residual check
/// ||XV - U diag(s)||_F <= 1e-8 * s_1 fails.
SvdTriple truncated_svd(const Matrix& x, Index k);

/// Rank-d truncation errors e_S(d) for d = 1..k_max. Frobenius values come
/// from singular-value tail sums without forming reconstructions; max-entry
/// values subtract one rank-1 term at a time from a running residual.
std::vector<double> svd_error_history(const Matrix& x, Index k_max,
                                      ErrorNorm norm = ErrorNorm::frobenius);

/// Greedy-basis truncation errors e_R(d) = ||X - Y_d T_d|| for d = 1..model.d,
/// peeling one rank-1 term off a running residual per step.
std::vector<double> rbd_error_history(const Matrix& x, const RbdModel& model,
                                      ErrorNorm norm = ErrorNorm::frobenius);

}  // namespace rbd

#endif
