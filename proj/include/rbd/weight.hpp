#ifndef RBD_WEIGHT_HPP
#define RBD_WEIGHT_HPP

#include <cstdint>

#include "rbd/types.hpp"

namespace rbd {

enum class WeightKind : std::uint8_t { identity = 0, diagonal = 1, sparse_spd = 2 };

/// SPD weight A defining the norm ||v||_A = sqrt(v'Av) in which compression
/// error is measured. Identity weighs all components equally, a diagonal
/// preserves selected components better, and a general sparse SPD matrix
/// couples components.
class WeightSpec {
public:
  WeightSpec() = default;  // identity

  static WeightSpec identity();
  /// Diagonal weight; every entry must be strictly positive.
  static WeightSpec diagonal(Vector d);
  /// Sparse SPD weight; must be exactly symmetric in pattern and values.
  /// Positive definiteness is not factor-checked here, it is policed at
  /// evaluation time (see a_norm_sq).
  static WeightSpec sparse_spd(SparseMatrix a);
  /// Marker for a model whose SPD weight lives outside the model file.
  /// Carries the kind only; it cannot be evaluated.
  static WeightSpec sparse_external();

  WeightKind kind() const { return kind_; }

  /// Dimension the weight applies to; 0 means any (identity or external).
  Index dim() const;
  bool compatible_with(Index m) const;
  /// False only for the sparse_external marker.
  bool evaluable() const;

  const Vector& diagonal_values() const { return diag_; }
  const SparseMatrix& sparse() const { return sparse_; }

  /// A*v without any clamping.
  Vector apply(const VectorRef& v) const;
  /// A*X, column by column.
  Matrix apply_matrix(const MatrixRef& x) const;
  /// Raw v'Av, no clamp.
  double quad(const VectorRef& v) const;

private:
  WeightKind kind_ = WeightKind::identity;
  Vector diag_;
  SparseMatrix sparse_;
  bool external_ = false;
};

/// ||v||_A^2 = v'Av. Tiny negatives from cancellation (within 1e-8 * ||v||^2)
/// are clamped to zero; anything more negative throws NotPositive since it
/// signals an indefinite weight.
double a_norm_sq(const VectorRef& v, const WeightSpec& a);

}  // namespace rbd

#endif
