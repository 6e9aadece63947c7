#include "rbd/weight.hpp"

#include <cmath>

#include "rbd/errors.hpp"

namespace rbd {

WeightSpec WeightSpec::identity() { return WeightSpec{}; }

WeightSpec WeightSpec::diagonal(Vector d) {
  if (d.size() == 0) throw InvalidArgument("diagonal weight must be non-empty");
  for (Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0) || !std::isfinite(d[i]))
      throw InvalidArgument("diagonal weight entries must be strictly positive and finite");
  }
  WeightSpec w;
  w.kind_ = WeightKind::diagonal;
  w.diag_ = std::move(d);
  return w;
}

WeightSpec WeightSpec::sparse_spd(SparseMatrix a) {
  if (a.rows() != a.cols()) throw InvalidArgument("sparse weight must be square");
  if (a.rows() == 0) throw InvalidArgument("sparse weight must be non-empty");
  a.makeCompressed();
  SparseMatrix at = SparseMatrix(a.transpose());
  at.makeCompressed();
  // Exact symmetry, pattern and values.
  bool symmetric = a.nonZeros() == at.nonZeros();
  if (symmetric) {
    for (Index k = 0; k < a.outerSize() && symmetric; ++k) {
      SparseMatrix::InnerIterator it(a, k), jt(at, k);
      for (; it && jt; ++it, ++jt) {
        if (it.row() != jt.row() || it.value() != jt.value()) {
          symmetric = false;
          break;
        }
        if (!std::isfinite(it.value()))
          throw InvalidArgument("sparse weight entries must be finite");
      }
      if (bool(it) != bool(jt)) symmetric = false;
    }
  }
  if (!symmetric) throw InvalidArgument("sparse weight must be exactly symmetric");
  WeightSpec w;
  w.kind_ = WeightKind::sparse_spd;
  w.sparse_ = std::move(a);
  return w;
}

WeightSpec WeightSpec::sparse_external() {
  WeightSpec w;
  w.kind_ = WeightKind::sparse_spd;
  w.external_ = true;
  return w;
}

Index WeightSpec::dim() const {
  switch (kind_) {
    case WeightKind::identity:
      return 0;
    case WeightKind::diagonal:
      return diag_.size();
    case WeightKind::sparse_spd:
      return external_ ? 0 : sparse_.rows();
  }
  return 0;
}

bool WeightSpec::compatible_with(Index m) const {
  if (kind_ == WeightKind::identity || external_) return true;
  return dim() == m;
}

bool WeightSpec::evaluable() const { return !external_; }

Vector WeightSpec::apply(const VectorRef& v) const {
  switch (kind_) {
    case WeightKind::identity:
      return v;
    case WeightKind::diagonal:
      if (v.size() != diag_.size()) throw DimensionMismatch("weight/vector size mismatch");
      return diag_.cwiseProduct(v);
    case WeightKind::sparse_spd:
      if (external_) throw InvalidArgument("external weight cannot be evaluated");
      if (v.size() != sparse_.rows()) throw DimensionMismatch("weight/vector size mismatch");
      return sparse_ * v;
  }
  return v;
}

Matrix WeightSpec::apply_matrix(const MatrixRef& x) const {
  switch (kind_) {
    case WeightKind::identity:
      return x;
    case WeightKind::diagonal:
      if (x.rows() != diag_.size()) throw DimensionMismatch("weight/matrix size mismatch");
      return diag_.asDiagonal() * x;
    case WeightKind::sparse_spd:
      if (external_) throw InvalidArgument("external weight cannot be evaluated");
      if (x.rows() != sparse_.rows()) throw DimensionMismatch("weight/matrix size mismatch");
      return sparse_ * x;
  }
  return x;
}

double WeightSpec::quad(const VectorRef& v) const {
  switch (kind_) {
    case WeightKind::identity:
      return v.squaredNorm();
    case WeightKind::diagonal:
      if (v.size() != diag_.size()) throw DimensionMismatch("weight/vector size mismatch");
      return diag_.cwiseProduct(v).dot(v);
    case WeightKind::sparse_spd:
      if (external_) throw InvalidArgument("external weight cannot be evaluated");
      if (v.size() != sparse_.rows()) throw DimensionMismatch("weight/vector size mismatch");
      return v.dot(sparse_ * v);
  }
  return 0.0;
}

double a_norm_sq(const VectorRef& v, const WeightSpec& a) {
  const double raw = a.quad(v);
  if (raw >= 0.0) return raw;
  const double scale = v.squaredNorm();
  if (raw < -1e-8 * scale)
    throw NotPositive("v'Av is negative beyond roundoff; weight is not positive definite");
  return 0.0;
}

}  // namespace rbd
