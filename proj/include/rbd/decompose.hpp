#ifndef RBD_DECOMPOSE_HPP
#define RBD_DECOMPOSE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rbd/types.hpp"
#include "rbd/weight.hpp"

namespace rbd {

/// How the greedy loop picks its first column.
struct StartSpec {
  enum class Kind { fixed_column, seeded_random };

  static StartSpec column(Index i) { return {Kind::fixed_column, i, 0}; }
  static StartSpec seeded(std::uint64_t s) { return {Kind::seeded_random, 0, s}; }

  Kind kind = Kind::fixed_column;
  Index column_index = 0;
  std::uint64_t seed = 0;
};

struct RbdConfig {
  Index d_max = 1;        // 1 <= d_max <= n, checked against X at decompose time
  double eps_R = 0.0;     // stop once every column is within eps_R in the A-norm
  StartSpec start{};      // default: column 0, for reproducibility
  WeightSpec weight{};    // identity unless configured
  bool reorthogonalize = false;  // second MGS sweep per basis vector

  // Norm threshold for declaring a candidate numerically dependent during
  // orthonormalization. Negative means "use eps_R", matching the stated loop;
  // set it explicitly (e.g. 1e-12) when running with eps_R = 0.
  double breakdown_tol = -1.0;
};

/// Output of the greedy decomposition: X ~= Y * T with Y'Y = I.
struct RbdModel {
  Matrix Y;                              // m x d, orthonormal columns
  Matrix T;                              // d x n, row k = xi_k' X
  std::vector<Index> selected;           // column picked for each basis vector
  std::vector<double> residual_history;  // E_cur after each accepted vector
  Index d = 0;
  WeightSpec weight{};
};

struct MgsResult {
  Vector xi;            // unit residual direction
  double residual_norm; // pre-normalization norm
};

/// One modified Gram-Schmidt pass of v against the (orthonormal) basis
/// columns, each subtraction using the updated vector. Returns nullopt when
/// the remainder norm falls below breakdown_tol (or is exactly zero), i.e.
/// v is numerically inside the span. With reorthogonalize the sweep always
/// runs twice before the norm test; without it a second sweep still triggers
/// when the first cancels more than half the norm (twice-is-enough guard,
/// needed to keep Y orthonormal to working precision on near-dependent
/// candidates).
std::optional<MgsResult> mgs_project(const VectorRef& v, const MatrixRef& basis,
                                     double breakdown_tol, bool reorthogonalize = false);

/// Greedy basis growth: repeatedly orthonormalize the currently
/// worst-approximated column of X into Y until every column is within eps_R
/// in the A-norm or d_max vectors have been accepted.
RbdModel decompose(const Matrix& x, const RbdConfig& cfg);

/// Reduced coordinates c = Y'v of an arbitrary (possibly out-of-sample)
/// vector; O(m d).
Vector project(const RbdModel& model, const VectorRef& v);

/// Back to full space: Y*c.
Vector reconstruct(const RbdModel& model, const VectorRef& c);

/// The full approximation Y*T of the original matrix.
Matrix compress_matrix(const RbdModel& model);

}  // namespace rbd

#endif
