#include "rbd/decompose.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "rbd/errors.hpp"
#include "rbd/workspace.hpp"

namespace rbd {

std::optional<MgsResult> mgs_project(const VectorRef& v, const MatrixRef& basis,
                                     double breakdown_tol, bool reorthogonalize) {
  if (basis.cols() > 0 && basis.rows() != v.size())
    throw DimensionMismatch("mgs_project: vector length != basis row count");

  Vector w = v;
  const double entry_norm = w.norm();
  auto sweep = [&] {
    for (Index j = 0; j < basis.cols(); ++j) {
      w -= (w.dot(basis.col(j))) * basis.col(j);
    }
  };
  sweep();
  // Second sweep either on request or when the first one cancelled more than
  // half the norm; heavy cancellation means the subtracted projections lost
  // digits and the remainder may have visible components along the basis.
  if (reorthogonalize || w.norm() < 0.5 * entry_norm) sweep();
  const double norm = w.norm();
  if (norm < breakdown_tol || norm == 0.0) return std::nullopt;
  w /= norm;
  return MgsResult{std::move(w), norm};
}

namespace {

Index initial_column(const StartSpec& start, Index n) {
  switch (start.kind) {
    case StartSpec::Kind::fixed_column:
      if (start.column_index < 0 || start.column_index >= n)
        throw IndexOutOfRange("start column index out of range");
      return start.column_index;
    case StartSpec::Kind::seeded_random: {
      std::mt19937_64 rng(start.seed);
      return std::uniform_int_distribution<Index>(0, n - 1)(rng);
    }
  }
  return 0;
}

}  // namespace

RbdModel decompose(const Matrix& x, const RbdConfig& cfg) {
  const Index m = x.rows();
  const Index n = x.cols();
  if (m < 1 || n < 1) throw InvalidArgument("decompose: matrix must be non-empty");
  if (!x.allFinite()) throw InvalidArgument("decompose: matrix has non-finite entries");
  if (cfg.d_max < 1 || cfg.d_max > n)
    throw InvalidArgument("decompose: d_max must satisfy 1 <= d_max <= n");
  if (!(cfg.eps_R >= 0.0)) throw InvalidArgument("decompose: eps_R must be >= 0");
  if (!cfg.weight.compatible_with(m))
    throw IncompatibleWeight("decompose: weight dimension != m");
  if ((x.array() == 0.0).all())
    throw DegenerateInput("decompose: zero matrix, no basis can be built");

  // A candidate whose post-projection norm sits at cancellation scale holds
  // no direction, and normalizing it would break the orthonormality
  // guarantee, so the breakdown threshold is floored at machine noise
  // relative to the largest column.
  const double noise_floor = x.colwise().norm().maxCoeff() *
                             std::sqrt(static_cast<double>(m)) *
                             std::numeric_limits<double>::epsilon() * 16.0;
  const double breakdown_tol = std::max(
      cfg.breakdown_tol < 0.0 ? cfg.eps_R : cfg.breakdown_tol, noise_floor);

  RbdModel model;
  model.weight = cfg.weight;
  model.Y.resize(m, cfg.d_max);
  model.T.resize(cfg.d_max, n);

  ErrorWorkspace ws = workspace_init(x, cfg.weight);

  Index i = initial_column(cfg.start, n);
  Index d = 0;
  double e_cur = std::numeric_limits<double>::infinity();

  while (d < cfg.d_max && e_cur > cfg.eps_R) {
    auto mgs = mgs_project(x.col(i), model.Y.leftCols(d), breakdown_tol,
                           cfg.reorthogonalize);
    if (!mgs) break;  // candidate numerically in span: keep the d we have

    model.Y.col(d) = mgs->xi;
    model.T.row(d) = mgs->xi.transpose() * x;
    model.selected.push_back(i);
    workspace_extend(ws, mgs->xi, x, cfg.weight);
    ++d;

    const ScanResult scan = residual_scan(ws, model.T.topRows(d));
    model.residual_history.push_back(scan.e_cur);
    e_cur = scan.e_cur;
    i = scan.argmax;
  }

  if (d == 0)
    throw DegenerateInput("decompose: start column is numerically zero, no basis built");

  model.Y.conservativeResize(m, d);
  model.T.conservativeResize(d, n);
  model.d = d;
  return model;
}

Vector project(const RbdModel& model, const VectorRef& v) {
  if (v.size() != model.Y.rows())
    throw DimensionMismatch("project: vector length != m");
  return model.Y.transpose() * v;
}

Vector reconstruct(const RbdModel& model, const VectorRef& c) {
  if (c.size() != model.d)
    throw DimensionMismatch("reconstruct: coefficient length != d");
  return model.Y * c;
}

Matrix compress_matrix(const RbdModel& model) { return model.Y * model.T; }

}  // namespace rbd
