#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "rbd/datasets.hpp"
#include "rbd/errors.hpp"

using namespace rbd;

namespace {

// Independent re-statement of the composite surface used as a pointwise
// oracle against the generator.
double composite_oracle(double x, double y) {
  const double pi = std::numbers::pi;
  const double f1 = std::sin(pi * (x + 2.0 * y)) * std::cos(pi * (2.0 * x - y));
  const double f2 =
      std::sin(10.0 * pi * (x - 3.0 * y)) * std::cos(10.0 * pi * (3.0 * x + y));
  const double f3 = std::sin(3.0 * pi * x * x * y) *
                    std::cos(6.0 * pi * std::sqrt(std::abs(x)) / (y + 2.0));
  return 0.6 * f1 + 0.1 * f2 + 0.01 * f3;
}

}  // namespace

TEST_CASE("grid axes hit both endpoints exactly") {
  GridSpec g;
  g.n_points = 5;
  g.x_range = {-2.0, 2.0};
  g.y_range = {0.0, 1.0};
  const Matrix m = gen_grid_matrix(FunctionId::rank1, g);
  REQUIRE(m.rows() == 5);
  REQUIRE(m.cols() == 5);

  // entry (i, j) = f(x_i, y_j) with x_0 = -2, x_4 = 2, y_0 = 0, y_4 = 1
  const double pi = std::numbers::pi;
  CHECK(m(0, 0) == doctest::Approx(std::sin(-2.0 * pi) * std::cos(0.0)).epsilon(1e-15));
  CHECK(m(4, 4) == doctest::Approx(std::sin(2.0 * pi) * std::cos(pi)).epsilon(1e-15));
  CHECK(m(2, 1) ==
        doctest::Approx(std::sin(0.0 * pi) * std::cos(0.25 * pi)).epsilon(1e-15));
}

TEST_CASE("generator entries match the scalar kernel everywhere sampled") {
  GridSpec g;
  g.n_points = 37;
  for (FunctionId f : {FunctionId::rank1, FunctionId::rank2, FunctionId::rank3,
                       FunctionId::composite}) {
    const Matrix m = gen_grid_matrix(f, g);
    const double h = 2.0 / 36.0;
    std::mt19937_64 rng(600);
    std::uniform_int_distribution<Index> pick(0, 36);
    for (int k = 0; k < 25; ++k) {
      const Index i = pick(rng);
      const Index j = pick(rng);
      const double x = -1.0 + static_cast<double>(i) * h;
      const double y = -1.0 + static_cast<double>(j) * h;
      CHECK(m(i, j) == eval_function(f, x, y));
    }
  }
}

TEST_CASE("composite kernel against an independently written oracle") {
  std::mt19937_64 rng(610);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(eval_function(FunctionId::composite, x, y) ==
          doctest::Approx(composite_oracle(x, y)).epsilon(1e-14));
  }
}

TEST_CASE("composite values stay within the weight-sum bound") {
  GridSpec g;
  g.n_points = 101;
  const Matrix m = gen_grid_matrix(FunctionId::composite, g);
  CHECK(m.cwiseAbs().maxCoeff() <= 0.6 + 0.1 + 0.01);
}

TEST_CASE("grid argument gating") {
  GridSpec g;
  g.n_points = 1;
  CHECK_THROWS_AS(gen_grid_matrix(FunctionId::rank1, g), InvalidArgument);
  g.n_points = 10;
  g.x_range = {1.0, -1.0};
  CHECK_THROWS_AS(gen_grid_matrix(FunctionId::rank1, g), InvalidArgument);
  g.x_range = {-1.0, 1.0};
  g.y_range = {2.0, 2.0};
  CHECK_THROWS_AS(gen_grid_matrix(FunctionId::rank1, g), InvalidArgument);
}

TEST_CASE("blobs: shapes, label layout and determinism") {
  const LabeledBlobs a = gen_labeled_blobs(4, 6, 15, 0.05, 700);
  REQUIRE(a.samples.rows() == 15);
  REQUIRE(a.samples.cols() == 24);
  REQUIRE(a.labels.size() == 24);
  for (int j = 0; j < 24; ++j) CHECK(a.labels[static_cast<size_t>(j)] == j / 6);

  const LabeledBlobs b = gen_labeled_blobs(4, 6, 15, 0.05, 700);
  CHECK(a.samples == b.samples);

  const LabeledBlobs c = gen_labeled_blobs(4, 6, 15, 0.05, 701);
  CHECK(a.samples != c.samples);
}

TEST_CASE("blobs cluster tightly around unit-norm centers") {
  const int per_class = 50;
  const LabeledBlobs blobs = gen_labeled_blobs(3, per_class, 40, 0.02, 710);
  for (int c = 0; c < 3; ++c) {
    const Matrix cluster = blobs.samples.middleCols(c * per_class, per_class);
    const Vector mean = cluster.rowwise().mean();
    CHECK(mean.norm() == doctest::Approx(1.0).epsilon(0.05));
    for (int j = 0; j < per_class; ++j)
      CHECK((cluster.col(j) - mean).norm() < 10.0 * 0.02 * std::sqrt(40.0));
  }
}

TEST_CASE("blob centers differ between classes") {
  const LabeledBlobs blobs = gen_labeled_blobs(5, 30, 25, 0.01, 720);
  std::vector<Vector> means;
  for (int c = 0; c < 5; ++c)
    means.push_back(blobs.samples.middleCols(c * 30, 30).rowwise().mean());
  for (size_t a = 0; a < means.size(); ++a)
    for (size_t b = a + 1; b < means.size(); ++b)
      CHECK((means[a] - means[b]).norm() > 0.1);
}

TEST_CASE("blob argument gating") {
  CHECK_THROWS_AS(gen_labeled_blobs(0, 5, 3, 0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_labeled_blobs(2, 0, 3, 0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_labeled_blobs(2, 5, 0, 0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_labeled_blobs(2, 5, 3, -0.1, 1), InvalidArgument);
}
