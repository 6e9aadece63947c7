#ifndef RBD_TEST_HELPERS_HPP
#define RBD_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rbd/types.hpp"
#include "rbd/weight.hpp"

namespace testutil {

inline rbd::Matrix random_matrix(rbd::Index m, rbd::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  rbd::Matrix x(m, n);
  for (rbd::Index j = 0; j < n; ++j)
    for (rbd::Index i = 0; i < m; ++i) x(i, j) = gauss(rng);
  return x;
}

inline rbd::Matrix random_low_rank(rbd::Index m, rbd::Index n, rbd::Index r,
                                   std::uint64_t seed) {
  return random_matrix(m, r, seed) * random_matrix(r, n, seed + 1);
}

inline rbd::Vector random_positive(rbd::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  rbd::Vector v(n);
  for (rbd::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// Symmetric and strictly diagonally dominant with positive diagonal, hence
// SPD by Gershgorin. Mirror triplets are pushed back to back so duplicate
// accumulation is bit-identical across the diagonal.
inline rbd::SparseMatrix random_spd(rbd::Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<rbd::Index> pick(0, m - 1);

  std::vector<Eigen::Triplet<double>> t;
  rbd::Vector rowsum = rbd::Vector::Zero(m);
  for (rbd::Index k = 0; k < 2 * m; ++k) {
    const rbd::Index i = pick(rng);
    const rbd::Index j = pick(rng);
    if (i == j) continue;
    const double v = u(rng);
    t.emplace_back(i, j, v);
    t.emplace_back(j, i, v);
    rowsum[i] += std::abs(v);
    rowsum[j] += std::abs(v);
  }
  for (rbd::Index i = 0; i < m; ++i) t.emplace_back(i, i, 0.5 + rowsum[i]);

  rbd::SparseMatrix a(m, m);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

inline rbd::Matrix dense_weight(const rbd::WeightSpec& a, rbd::Index m) {
  switch (a.kind()) {
    case rbd::WeightKind::identity:
      return rbd::Matrix::Identity(m, m);
    case rbd::WeightKind::diagonal:
      return rbd::Matrix(a.diagonal_values().asDiagonal());
    case rbd::WeightKind::sparse_spd:
      return rbd::Matrix(a.sparse());
  }
  return rbd::Matrix::Identity(m, m);
}

// Literal triple product, no linear algebra shortcuts.
inline double quad_oracle(const rbd::Vector& v, const rbd::Matrix& a_dense) {
  double total = 0.0;
  for (rbd::Index i = 0; i < a_dense.rows(); ++i)
    for (rbd::Index j = 0; j < a_dense.cols(); ++j)
      total += v[i] * a_dense(i, j) * v[j];
  return total;
}

}  // namespace testutil

#endif
