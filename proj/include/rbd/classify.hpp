#ifndef RBD_CLASSIFY_HPP
#define RBD_CLASSIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rbd/decompose.hpp"
#include "rbd/types.hpp"

namespace rbd {

/// Nearest-neighbor recognition in reduced coordinates: training columns are
/// compressed once, test vectors are embedded with Y' and matched to the
/// closest training column (Euclidean, smallest index on ties).
struct Classifier {
  RbdModel model;
  Matrix train_coords;              // d x n_train, equals model.T
  std::vector<std::string> labels;  // one per training column
};

Classifier fit(const Matrix& train, const std::vector<std::string>& labels,
               const RbdConfig& cfg);

std::string predict(const Classifier& clf, const VectorRef& v);

/// Fraction of test columns misclassified, in [0, 1].
double evaluate(const Classifier& clf, const Matrix& test,
                const std::vector<std::string>& test_labels);

struct Split {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Seeded per-class split: for each class (in sorted label order) shuffle its
/// column indices and take the first train_per_class for training. Classes
/// with fewer columns than the quota contribute everything to training.
Split make_split(const std::vector<std::string>& labels, int train_per_class,
                 std::uint64_t seed);

struct SplitEvaluation {
  double mean_error = 0.0;
  std::vector<double> per_rep;
};

/// The repeated-split protocol: build reps seeded splits (seed base_seed + r),
/// fit on each training part and score the held-out part, report the mean.
SplitEvaluation evaluate_splits(const Matrix& pool,
                                const std::vector<std::string>& labels,
                                int train_per_class, const RbdConfig& cfg, int reps,
                                std::uint64_t base_seed);

}  // namespace rbd

#endif
