#include "rbd/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rbd/decompose.hpp"
#include "rbd/errors.hpp"

namespace rbd {

namespace {

constexpr int kMaxSweeps = 50;

// Full economy SVD of B with rows >= cols via Hestenes one-sided Jacobi:
// right rotations orthogonalize the columns of B, accumulating V, until the
// implicit Gram matrix B'B is diagonal to within the threshold.
void one_sided_jacobi(Matrix& b, Matrix& v, Vector& s) {
  const Index m = b.rows();
  const Index n = b.cols();
  v = Matrix::Identity(n, n);

  // Rotation threshold relative to sqrt(alpha*beta); sqrt(m)*eps tracks the
  // roundoff floor of an m-term dot product.
  const double tol =
      std::sqrt(static_cast<double>(m)) * std::numeric_limits<double>::epsilon();

  // Columns ground down to roundoff hold no direction, only cancellation
  // noise; pairs of them stay "correlated" at noise scale forever under a
  // relative threshold, so they are excluded from rotations outright.
  double scale = 0.0;
  for (Index j = 0; j < n; ++j) scale = std::max(scale, b.col(j).norm());
  const double floor_sq = scale * scale * (16.0 * static_cast<double>(m)) *
                          std::numeric_limits<double>::epsilon() *
                          std::numeric_limits<double>::epsilon();

  Vector colsq(n);
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (Index j = 0; j < n; ++j) colsq[j] = b.col(j).squaredNorm();
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double alpha = colsq[p];
        const double beta = colsq[q];
        if (alpha <= floor_sq || beta <= floor_sq) continue;
        const double gamma = b.col(p).dot(b.col(q));
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        converged = false;

        const double tau = (beta - alpha) / (2.0 * gamma);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;

        Vector bp = b.col(p);
        b.col(p) = c * bp - sn * b.col(q);
        b.col(q) = sn * bp + c * b.col(q);
        Vector vp = v.col(p);
        v.col(p) = c * vp - sn * v.col(q);
        v.col(q) = sn * vp + c * v.col(q);

        colsq[p] = std::max(0.0, alpha - t * gamma);
        colsq[q] = std::max(0.0, beta + t * gamma);
      }
    }
  }
  if (!converged)
    throw NoConvergence("one-sided Jacobi did not converge within 50 sweeps");

  s.resize(n);
  for (Index j = 0; j < n; ++j) s[j] = b.col(j).norm();

  // Sort triplets by decreasing singular value, stable for ties.
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index c) { return s[a] > s[c]; });
  Matrix b_sorted(m, n), v_sorted(v.rows(), n);
  Vector s_sorted(n);
  for (Index j = 0; j < n; ++j) {
    b_sorted.col(j) = b.col(order[static_cast<size_t>(j)]);
    v_sorted.col(j) = v.col(order[static_cast<size_t>(j)]);
    s_sorted[j] = s[order[static_cast<size_t>(j)]];
  }
  b = std::move(b_sorted);
  v = std::move(v_sorted);
  s = std::move(s_sorted);
}

// Normalize the orthogonalized columns into U. Columns whose singular value
// sits at the roundoff floor carry no reliable direction, so they are
// replaced by completing the basis from canonical vectors.
Matrix left_vectors(const Matrix& b, const Vector& s) {
  const Index m = b.rows();
  const Index n = b.cols();
  const double floor_tol = s.size() > 0
                               ? s[0] * static_cast<double>(m) *
                                     std::numeric_limits<double>::epsilon() * 16.0
                               : 0.0;
  Matrix u(m, n);
  Index next_canonical = 0;
  for (Index j = 0; j < n; ++j) {
    if (s[j] > floor_tol && s[j] > 0.0) {
      u.col(j) = b.col(j) / s[j];
      continue;
    }
    // complete with the first canonical vector not already in span(U)
    bool completed = false;
    while (next_canonical < m && !completed) {
      Vector e = Vector::Zero(m);
      e[next_canonical++] = 1.0;
      auto r = mgs_project(e, u.leftCols(j), 0.5, true);
      if (r) {
        u.col(j) = r->xi;
        completed = true;
      }
    }
    if (!completed) throw NoConvergence("failed to complete left singular basis");
  }
  return u;
}

struct FullSvd {
  Matrix u;
  Vector s;
  Matrix v;
};

FullSvd full_svd(const Matrix& x) {
  if (x.rows() < 1 || x.cols() < 1)
    throw InvalidArgument("svd: matrix must be non-empty");
  if (!x.allFinite()) throw InvalidArgument("svd: matrix has non-finite entries");

  const bool transposed = x.rows() < x.cols();
  Matrix b = transposed ? Matrix(x.transpose()) : x;
  Matrix v;
  Vector s;
  one_sided_jacobi(b, v, s);
  Matrix u = left_vectors(b, s);

  FullSvd out;
  if (transposed) {
    out.u = std::move(v);
    out.v = std::move(u);
  } else {
    out.u = std::move(u);
    out.v = std::move(v);
  }
  out.s = std::move(s);

  // Sign convention: first nonzero entry of each left vector nonnegative.
  for (Index j = 0; j < out.s.size(); ++j) {
    for (Index i = 0; i < out.u.rows(); ++i) {
      const double e = out.u(i, j);
      if (e != 0.0) {
        if (e < 0.0) {
          out.u.col(j) = -out.u.col(j);
          out.v.col(j) = -out.v.col(j);
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace

SvdTriple truncated_svd(const Matrix& x, Index k) {
  const Index p = std::min(x.rows(), x.cols());
  if (k < 1 || k > p) throw InvalidArgument("truncated_svd: need 1 <= k <= min(m,n)");

  FullSvd f = full_svd(x);
  SvdTriple out;
  out.U = f.u.leftCols(k);
  out.s = f.s.head(k);
  out.V = f.v.leftCols(k);

  const double s1 = f.s[0];
  const double resid = (x * out.V - out.U * out.s.asDiagonal()).norm();
  if (resid > 1e-8 * s1)
    throw NoConvergence("truncated_svd: residual check ||XV - Us|| failed");
  return out;
}

std::vector<double> svd_error_history(const Matrix& x, Index k_max, ErrorNorm norm) {
  const Index p = std::min(x.rows(), x.cols());
  if (k_max < 1 || k_max > p)
    throw InvalidArgument("svd_error_history: need 1 <= k_max <= min(m,n)");

  FullSvd f = full_svd(x);
  std::vector<double> history;
  history.reserve(static_cast<size_t>(k_max));

  if (norm == ErrorNorm::frobenius) {
    // e_S(d)^2 = sum_{i>d} s_i^2, accumulated from the tail for accuracy
    Vector tail(f.s.size() + 1);
    tail[f.s.size()] = 0.0;
    for (Index i = f.s.size() - 1; i >= 0; --i)
      tail[i] = tail[i + 1] + f.s[i] * f.s[i];
    for (Index d = 1; d <= k_max; ++d) history.push_back(std::sqrt(tail[d]));
  } else {
    Matrix residual = x;
    for (Index d = 1; d <= k_max; ++d) {
      residual.noalias() -= f.s[d - 1] * f.u.col(d - 1) * f.v.col(d - 1).transpose();
      history.push_back(residual.cwiseAbs().maxCoeff());
    }
  }
  return history;
}

std::vector<double> rbd_error_history(const Matrix& x, const RbdModel& model,
                                      ErrorNorm norm) {
  if (model.Y.rows() != x.rows() || model.T.cols() != x.cols())
    throw DimensionMismatch("rbd_error_history: model does not match matrix");

  std::vector<double> history;
  history.reserve(static_cast<size_t>(model.d));
  Matrix residual = x;
  for (Index d = 0; d < model.d; ++d) {
    residual.noalias() -= model.Y.col(d) * model.T.row(d);
    history.push_back(norm == ErrorNorm::frobenius ? residual.norm()
                                                   : residual.cwiseAbs().maxCoeff());
  }
  return history;
}

}  // namespace rbd
