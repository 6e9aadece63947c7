#include "rbd/datasets.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rbd/errors.hpp"

namespace rbd {

namespace {

constexpr double pi = std::numbers::pi;

double composite_f1(double x, double y) {
  return std::sin(pi * (x + 2.0 * y)) * std::cos(pi * (2.0 * x - y));
}

double composite_f2(double x, double y) {
  return std::sin(10.0 * pi * (x - 3.0 * y)) * std::cos(10.0 * pi * (3.0 * x + y));
}

double composite_f3(double x, double y) {
  return std::sin(3.0 * pi * x * x * y) *
         std::cos(6.0 * pi * std::sqrt(std::abs(x)) / (y + 2.0));
}

}  // namespace

double eval_function(FunctionId f, double x, double y) {
  switch (f) {
    case FunctionId::rank1:
      return std::sin(pi * x) * std::cos(pi * y);
    case FunctionId::rank2:
      return eval_function(FunctionId::rank1, x, y) +
             0.1 * std::sin(10.0 * pi * x) * std::cos(10.0 * pi * y);
    case FunctionId::rank3:
      return eval_function(FunctionId::rank2, x, y) +
             0.01 * std::sin(100.0 * pi * x) * std::cos(100.0 * pi * y);
    case FunctionId::composite:
      return 0.6 * composite_f1(x, y) + 0.1 * composite_f2(x, y) +
             0.01 * composite_f3(x, y);
  }
  return 0.0;
}

Matrix gen_grid_matrix(FunctionId f, const GridSpec& g) {
  if (g.n_points < 2) throw InvalidArgument("grid needs at least 2 points per axis");
  if (!(g.x_range[0] < g.x_range[1]) || !(g.y_range[0] < g.y_range[1]))
    throw InvalidArgument("grid domain must have lo < hi");

  const Index n = g.n_points;
  const double hx = (g.x_range[1] - g.x_range[0]) / static_cast<double>(n - 1);
  const double hy = (g.y_range[1] - g.y_range[0]) / static_cast<double>(n - 1);

  Matrix out(n, n);
  for (Index j = 0; j < n; ++j) {
    const double y = g.y_range[0] + static_cast<double>(j) * hy;
    for (Index i = 0; i < n; ++i) {
      const double x = g.x_range[0] + static_cast<double>(i) * hx;
      out(i, j) = eval_function(f, x, y);
    }
  }
  return out;
}

LabeledBlobs gen_labeled_blobs(int n_classes, int per_class, int dim, double spread,
                               std::uint64_t seed) {
  if (n_classes < 1 || per_class < 1 || dim < 1)
    throw InvalidArgument("blob counts must be >= 1");
  if (!(spread >= 0.0)) throw InvalidArgument("spread must be >= 0");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix centers(dim, n_classes);
  for (int c = 0; c < n_classes; ++c) {
    Vector g(dim);
    for (int i = 0; i < dim; ++i) g[i] = gauss(rng);
    const double norm = g.norm();
    // a fresh draw is practically never needed, but a zero draw must not divide
    centers.col(c) = norm > 0.0 ? Vector(g / norm) : Vector(Vector::Unit(dim, 0));
  }

  LabeledBlobs out;
  out.samples.resize(dim, static_cast<Index>(n_classes) * per_class);
  out.labels.reserve(static_cast<size_t>(n_classes) * per_class);
  Index col = 0;
  for (int c = 0; c < n_classes; ++c) {
    for (int k = 0; k < per_class; ++k, ++col) {
      for (int i = 0; i < dim; ++i)
        out.samples(i, col) = centers(i, c) + spread * gauss(rng);
      out.labels.push_back(c);
    }
  }
  return out;
}

}  // namespace rbd
