#include "rbd/workspace.hpp"

#include <cmath>

#include "rbd/errors.hpp"

namespace rbd {

ErrorWorkspace workspace_init(const Matrix& x, const WeightSpec& a) {
  if (!a.evaluable())
    throw InvalidArgument("workspace_init: weight values are held externally");
  if (!a.compatible_with(x.rows()))
    throw IncompatibleWeight("weight dimension does not match matrix rows");

  ErrorWorkspace ws;
  ws.kind = a.kind();
  ws.m = x.rows();
  ws.n = x.cols();

  switch (a.kind()) {
    case WeightKind::identity:
      ws.col_sq = x.colwise().squaredNorm().transpose();
      break;
    case WeightKind::diagonal:
      ws.col_sq = (x.array().square().colwise() * a.diagonal_values().array())
                      .colwise()
                      .sum()
                      .transpose();
      break;
    case WeightKind::sparse_spd:
      ws.ax = a.sparse() * x;
      ws.col_sq.resize(ws.n);
      for (Index j = 0; j < ws.n; ++j) ws.col_sq[j] = x.col(j).dot(ws.ax.col(j));
      break;
  }
  // col_sq[j] = ||x_j||_A^2 >= 0 for SPD A; clamp roundoff.
  ws.col_sq = ws.col_sq.cwiseMax(0.0);
  ws.residual_sq = ws.col_sq;
  ws.yay.resize(0, 0);
  return ws;
}

void workspace_extend(ErrorWorkspace& ws, const VectorRef& xi, const Matrix& x,
                      const WeightSpec& a) {
  if (xi.size() != ws.m || x.rows() != ws.m || x.cols() != ws.n)
    throw DimensionMismatch("workspace_extend: dimensions changed since init");

  const Index d = ws.d;
  switch (ws.kind) {
    case WeightKind::identity: {
      Vector row = x.transpose() * xi;  // = xi'X = new row of T
      ws.residual_sq -= row.cwiseAbs2();
      ws.residual_sq = ws.residual_sq.cwiseMax(0.0);
      ws.yax_rows.push_back(std::move(row));
      ws.yay.conservativeResize(d + 1, d + 1);
      ws.yay.row(d).setZero();
      ws.yay.col(d).setZero();
      ws.yay(d, d) = 1.0;
      break;
    }
    case WeightKind::diagonal:
    case WeightKind::sparse_spd: {
      Vector axi = a.apply(xi);
      Vector row = ws.kind == WeightKind::sparse_spd ? Vector(ws.ax.transpose() * xi)
                                                     : Vector(x.transpose() * axi);
      ws.yax_rows.push_back(std::move(row));
      ws.yay.conservativeResize(d + 1, d + 1);
      for (Index k = 0; k < d; ++k) {
        // xi_d' A xi_k contracts the raw new vector with the stored A*xi_k
        const double v = xi.dot(ws.a_basis.col(k));
        // symmetric by assignment
        ws.yay(d, k) = v;
        ws.yay(k, d) = v;
      }
      ws.yay(d, d) = axi.dot(xi);
      ws.a_basis.conservativeResize(ws.m, d + 1);
      ws.a_basis.col(d) = axi;
      break;
    }
  }
  ws.d = d + 1;
}

double error_sq(const ErrorWorkspace& ws, Index j, const VectorRef& c) {
  if (j < 0 || j >= ws.n) throw IndexOutOfRange("error_sq: column index out of range");
  if (c.size() != ws.d) throw DimensionMismatch("error_sq: coefficient length != d");

  double cross = 0.0;
  for (Index k = 0; k < ws.d; ++k) cross += c[k] * ws.yax_rows[static_cast<size_t>(k)][j];

  double quad;
  if (ws.kind == WeightKind::identity) {
    quad = c.squaredNorm();  // Y'AY = I
  } else {
    quad = c.dot(ws.yay * c);
  }
  const double e2 = ws.col_sq[j] - 2.0 * cross + quad;
  return e2 > 0.0 ? e2 : 0.0;
}

ScanResult residual_scan(const ErrorWorkspace& ws, const MatrixRef& t) {
  if (t.rows() != ws.d || t.cols() != ws.n)
    throw DimensionMismatch("residual_scan: T shape does not match workspace");

  ScanResult r;
  double best = -1.0;
  if (ws.kind == WeightKind::identity) {
    for (Index j = 0; j < ws.n; ++j) {
      if (ws.residual_sq[j] > best) {
        best = ws.residual_sq[j];
        r.argmax = j;
      }
    }
  } else {
    for (Index j = 0; j < ws.n; ++j) {
      const double e2 = error_sq(ws, j, t.col(j));
      if (e2 > best) {
        best = e2;
        r.argmax = j;
      }
    }
  }
  r.e_cur = std::sqrt(best > 0.0 ? best : 0.0);
  return r;
}

}  // namespace rbd
