#ifndef RBD_DATASETS_HPP
#define RBD_DATASETS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "rbd/types.hpp"

namespace rbd {

/// Uniform tensorial grid, both endpoints included.
struct GridSpec {
  Index n_points = 101;  // per axis, >= 2
  std::array<double, 2> x_range{-1.0, 1.0};
  std::array<double, 2> y_range{-1.0, 1.0};
};

/// The built-in test surfaces. rank1/2/3 are sums of one, two and three
/// tensor-product terms, so their grid matrices have that exact rank
/// (provided no sine factor aliases to zero on the chosen grid). composite
/// mixes three oscillatory non-tensorial terms with weights 0.6/0.1/0.01.
enum class FunctionId { rank1, rank2, rank3, composite };

/// Entry (i, j) = f(x_i, y_j).
Matrix gen_grid_matrix(FunctionId f, const GridSpec& g);

/// Pointwise evaluation of the same surfaces (the generator's scalar kernel).
double eval_function(FunctionId f, double x, double y);

struct LabeledBlobs {
  Matrix samples;           // dim x (n_classes * per_class), one sample per column
  std::vector<int> labels;  // class id per column
};

/// Gaussian clusters around class centers drawn uniformly on the unit
/// sphere; fully deterministic per seed.
LabeledBlobs gen_labeled_blobs(int n_classes, int per_class, int dim, double spread,
                               std::uint64_t seed);

}  // namespace rbd

#endif
