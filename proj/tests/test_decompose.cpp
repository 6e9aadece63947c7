#include <doctest.h>

#include <Eigen/Cholesky>
#include <cmath>

#include "helpers.hpp"
#include "rbd/decompose.hpp"
#include "rbd/errors.hpp"

using namespace rbd;

namespace {

RbdConfig basic(Index d_max, double eps = 0.0) {
  RbdConfig cfg;
  cfg.d_max = d_max;
  cfg.eps_R = eps;
  return cfg;
}

double orthonormality_defect(const Matrix& y) {
  return (y.transpose() * y - Matrix::Identity(y.cols(), y.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

TEST_CASE("a rank-1 outer product is captured by a single basis vector") {
  const Vector u = testutil::random_matrix(30, 1, 100).col(0);
  const Vector v = testutil::random_matrix(20, 1, 101).col(0);
  const Matrix x = u * v.transpose();

  const RbdModel model = decompose(x, basic(10, 1e-10));
  CHECK(model.d == 1);
  CHECK((x - compress_matrix(model)).cwiseAbs().maxCoeff() < 1e-10);
  // the basis vector is u up to sign and scale
  const double align = std::abs(model.Y.col(0).dot(u.normalized()));
  CHECK(align == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("basis columns stay orthonormal") {
  for (std::uint64_t seed : {200u, 201u, 202u}) {
    const Matrix x = testutil::random_matrix(25, 18, seed);
    const RbdModel model = decompose(x, basic(12));
    CHECK(model.d == 12);
    CHECK(orthonormality_defect(model.Y) < 1e-10);
  }
}

TEST_CASE("orthonormality survives rank-deficient input via the noise floor") {
  const Matrix x = testutil::random_low_rank(40, 30, 5, 210);
  const RbdModel model = decompose(x, basic(30));
  CHECK(model.d == 5);  // truncated at the numerical rank
  CHECK(orthonormality_defect(model.Y) < 1e-10);
  CHECK((x - compress_matrix(model)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("residual history is monotone non-increasing with one entry per step") {
  const Matrix x = testutil::random_matrix(30, 22, 220);
  const RbdModel model = decompose(x, basic(15));
  REQUIRE(model.residual_history.size() == static_cast<size_t>(model.d));
  for (size_t k = 1; k < model.residual_history.size(); ++k)
    CHECK(model.residual_history[k] <= model.residual_history[k - 1] + 1e-12);
}

TEST_CASE("rows of T are exact basis-column inner products") {
  const Matrix x = testutil::random_matrix(17, 12, 230);
  const RbdModel model = decompose(x, basic(6));
  for (Index k = 0; k < model.d; ++k) {
    const Vector expected = x.transpose() * model.Y.col(k);
    CHECK((model.T.row(k).transpose() - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("selected columns are distinct and in range") {
  const Matrix x = testutil::random_matrix(26, 14, 240);
  const RbdModel model = decompose(x, basic(10));
  REQUIRE(model.selected.size() == static_cast<size_t>(model.d));
  for (size_t a = 0; a < model.selected.size(); ++a) {
    CHECK(model.selected[a] >= 0);
    CHECK(model.selected[a] < x.cols());
    for (size_t b = a + 1; b < model.selected.size(); ++b)
      CHECK(model.selected[a] != model.selected[b]);
  }
}

TEST_CASE("certification: stopping by eps_R bounds every column residual") {
  // unit-scale data and an eps well above the cancellation floor of the
  // squared-residual bookkeeping
  const double eps = 1e-5;
  const Matrix base = testutil::random_low_rank(40, 25, 6, 250);
  const Matrix x = base / base.norm() + 1e-7 * testutil::random_matrix(40, 25, 251);

  const WeightSpec kinds[] = {
      WeightSpec::identity(),
      WeightSpec::diagonal(testutil::random_positive(40, 252)),
      WeightSpec::sparse_spd(testutil::random_spd(40, 253)),
  };
  for (const WeightSpec& a : kinds) {
    RbdConfig cfg = basic(25, eps);
    cfg.weight = a;
    const RbdModel model = decompose(x, cfg);
    REQUIRE(model.residual_history.back() <= eps);  // stopped by certification
    CHECK(model.d < 25);
    for (Index j = 0; j < x.cols(); ++j) {
      const Vector r = x.col(j) - model.Y * model.T.col(j);
      CHECK(std::sqrt(a_norm_sq(r, a)) <= eps + 1e-10);
    }
  }
}

TEST_CASE("the reported residual history matches directly computed errors") {
  const Matrix x = testutil::random_matrix(20, 15, 260);
  RbdConfig cfg = basic(8);
  cfg.weight = WeightSpec::diagonal(testutil::random_positive(20, 261));
  const RbdModel model = decompose(x, cfg);

  // rebuild E_cur after the last step: max_j ||x_j - Y T_j||_A
  double worst = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    const Vector r = x.col(j) - model.Y * model.T.col(j);
    worst = std::max(worst, std::sqrt(a_norm_sq(r, cfg.weight)));
  }
  CHECK(model.residual_history.back() == doctest::Approx(worst).epsilon(1e-7));
}

TEST_CASE("deterministic: identical configuration reproduces the model bit for bit") {
  const Matrix x = testutil::random_matrix(24, 16, 270);
  RbdConfig cfg = basic(9, 1e-8);
  const RbdModel a = decompose(x, cfg);
  const RbdModel b = decompose(x, cfg);
  CHECK(a.Y == b.Y);
  CHECK(a.T == b.T);
  CHECK(a.selected == b.selected);
  CHECK(a.residual_history == b.residual_history);
}

TEST_CASE("greedy projector equals the brute-force orthogonal projector") {
  // Y has orthonormal columns, so Y(Y'Y)^-1 Y' must collapse to YY'
  for (std::uint64_t seed : {280u, 281u}) {
    const Matrix x = testutil::random_matrix(50, 40, seed);
    const RbdModel model = decompose(x, basic(20));
    const Matrix& y = model.Y;
    const Matrix gram = y.transpose() * y;
    const Matrix brute = y * gram.ldlt().solve(y.transpose() * x);
    const Matrix fast = y * (y.transpose() * x);
    CHECK((brute - fast).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((fast - compress_matrix(model)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("start column control") {
  const Matrix x = testutil::random_matrix(15, 10, 290);

  RbdConfig cfg = basic(3);
  cfg.start = StartSpec::column(7);
  CHECK(decompose(x, cfg).selected.front() == 7);

  cfg.start = StartSpec::column(10);
  CHECK_THROWS_AS(decompose(x, cfg), IndexOutOfRange);

  cfg.start = StartSpec::seeded(42);
  const RbdModel a = decompose(x, cfg);
  const RbdModel b = decompose(x, cfg);
  CHECK(a.selected.front() == b.selected.front());
  CHECK(a.selected.front() >= 0);
  CHECK(a.selected.front() < 10);
}

TEST_CASE("the first step always takes the start column itself") {
  const Matrix x = testutil::random_matrix(12, 8, 300);
  for (Index i : {0, 3, 7}) {
    RbdConfig cfg = basic(1);
    cfg.start = StartSpec::column(i);
    const RbdModel model = decompose(x, cfg);
    const double align = std::abs(model.Y.col(0).dot(x.col(i).normalized()));
    CHECK(align == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("input and configuration gating") {
  const Matrix x = testutil::random_matrix(10, 6, 310);

  CHECK_THROWS_AS(decompose(Matrix::Zero(4, 3), basic(2)), DegenerateInput);
  CHECK_THROWS_AS(decompose(x, basic(0)), InvalidArgument);
  CHECK_THROWS_AS(decompose(x, basic(7)), InvalidArgument);  // d_max > n
  RbdConfig bad_eps = basic(2);
  bad_eps.eps_R = -1.0;
  CHECK_THROWS_AS(decompose(x, bad_eps), InvalidArgument);

  Matrix with_nan = x;
  with_nan(3, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(decompose(with_nan, basic(2)), InvalidArgument);

  RbdConfig wrong_dim = basic(2);
  wrong_dim.weight = WeightSpec::diagonal(Vector::Ones(9));
  CHECK_THROWS_AS(decompose(x, wrong_dim), IncompatibleWeight);

  // zero start column cannot seed a basis
  Matrix zero_col = x;
  zero_col.col(0).setZero();
  RbdConfig from_zero = basic(2);
  from_zero.breakdown_tol = 1e-12;
  CHECK_THROWS_AS(decompose(zero_col, from_zero), DegenerateInput);
}

TEST_CASE("a diagonal weight steers greedy selection toward weighted error") {
  // two candidate columns: col 0 is large in the heavily weighted component,
  // col 1 is large elsewhere; the weighted argmax must flip relative to the
  // Euclidean one
  Matrix x = Matrix::Zero(4, 3);
  x.col(0) << 1.0, 0.0, 0.0, 0.0;
  x.col(1) << 0.0, 2.0, 0.0, 0.0;
  x.col(2) << 0.0, 0.0, 0.5, 0.0;

  Vector w(4);
  w << 100.0, 1.0, 1.0, 1.0;  // component 0 matters most

  RbdConfig plain = basic(2);
  plain.start = StartSpec::column(2);
  const RbdModel unweighted = decompose(x, plain);
  CHECK(unweighted.selected[1] == 1);  // Euclidean picks the norm-2 column

  RbdConfig weighted = plain;
  weighted.weight = WeightSpec::diagonal(w);
  const RbdModel steered = decompose(x, weighted);
  CHECK(steered.selected[1] == 0);  // A-norm picks the weighted column
}

TEST_CASE("reorthogonalization keeps the defect at machine noise on hard input") {
  // nearly dependent columns: powers of a smooth vector (Krylov-like)
  const Index m = 60;
  Matrix x(m, 8);
  Vector t(m);
  for (Index i = 0; i < m; ++i) t[i] = static_cast<double>(i + 1) / m;
  for (Index j = 0; j < 8; ++j) x.col(j) = t.array().pow(j).matrix();

  RbdConfig cfg = basic(8);
  cfg.reorthogonalize = true;
  cfg.breakdown_tol = 1e-12;
  const RbdModel model = decompose(x, cfg);
  CHECK(orthonormality_defect(model.Y) < 1e-12);
}

TEST_CASE("project and reconstruct are mutually consistent on the span") {
  const Matrix x = testutil::random_matrix(18, 12, 320);
  const RbdModel model = decompose(x, basic(5));

  const Vector c = testutil::random_matrix(5, 1, 321).col(0);
  const Vector v = reconstruct(model, c);
  CHECK((project(model, v) - c).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(project(model, Vector::Ones(17)), DimensionMismatch);
  CHECK_THROWS_AS(reconstruct(model, Vector::Ones(4)), DimensionMismatch);
}

TEST_CASE("decomposing with an explicit identity weight matches the fast path") {
  const Matrix x = testutil::random_matrix(22, 14, 330);
  SparseMatrix eye(22, 22);
  eye.setIdentity();

  RbdConfig fast = basic(7);
  RbdConfig gen = basic(7);
  gen.weight = WeightSpec::sparse_spd(eye);

  const RbdModel a = decompose(x, fast);
  const RbdModel b = decompose(x, gen);
  CHECK(a.selected == b.selected);
  CHECK((a.Y - b.Y).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((a.T - b.T).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mgs_project reports the residual norm and breaks down in span") {
  const Matrix x = testutil::random_matrix(10, 3, 340);
  Matrix y(10, 1);
  y.col(0) = x.col(0).normalized();

  const auto r = mgs_project(x.col(1), y, 1e-12);
  REQUIRE(r.has_value());
  CHECK(r->xi.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r->xi.dot(y.col(0))) < 1e-13);
  const Vector manual = x.col(1) - y.col(0).dot(x.col(1)) * y.col(0);
  CHECK(r->residual_norm == doctest::Approx(manual.norm()).epsilon(1e-12));

  // a vector inside the span breaks down
  const Vector in_span = 3.7 * y.col(0);
  CHECK_FALSE(mgs_project(in_span, y, 1e-10).has_value());
}
