#include "rbd/classify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "rbd/errors.hpp"

namespace rbd {

Classifier fit(const Matrix& train, const std::vector<std::string>& labels,
               const RbdConfig& cfg) {
  if (static_cast<Index>(labels.size()) != train.cols())
    throw DimensionMismatch("fit: one label per training column required");
  Classifier clf;
  clf.model = decompose(train, cfg);
  clf.train_coords = clf.model.T;
  clf.labels = labels;
  return clf;
}

std::string predict(const Classifier& clf, const VectorRef& v) {
  const Vector c = project(clf.model, v);
  Index best = 0;
  double best_dist = (clf.train_coords.col(0) - c).squaredNorm();
  for (Index j = 1; j < clf.train_coords.cols(); ++j) {
    const double dist = (clf.train_coords.col(j) - c).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return clf.labels[static_cast<size_t>(best)];
}

double evaluate(const Classifier& clf, const Matrix& test,
                const std::vector<std::string>& test_labels) {
  if (static_cast<Index>(test_labels.size()) != test.cols())
    throw DimensionMismatch("evaluate: one label per test column required");
  if (test.rows() != clf.model.Y.rows())
    throw DimensionMismatch("evaluate: test dimension != training dimension");

  Index wrong = 0;
  for (Index j = 0; j < test.cols(); ++j) {
    if (predict(clf, test.col(j)) != test_labels[static_cast<size_t>(j)]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(test.cols());
}

Split make_split(const std::vector<std::string>& labels, int train_per_class,
                 std::uint64_t seed) {
  if (train_per_class < 1) throw InvalidArgument("train_per_class must be >= 1");

  std::map<std::string, std::vector<Index>> by_class;
  for (Index j = 0; j < static_cast<Index>(labels.size()); ++j)
    by_class[labels[static_cast<size_t>(j)]].push_back(j);

  std::mt19937_64 rng(seed);
  Split split;
  for (auto& [label, indices] : by_class) {
    std::shuffle(indices.begin(), indices.end(), rng);
    const size_t quota = std::min(indices.size(), static_cast<size_t>(train_per_class));
    split.train.insert(split.train.end(), indices.begin(),
                       indices.begin() + static_cast<long>(quota));
    split.test.insert(split.test.end(), indices.begin() + static_cast<long>(quota),
                      indices.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

SplitEvaluation evaluate_splits(const Matrix& pool,
                                const std::vector<std::string>& labels,
                                int train_per_class, const RbdConfig& cfg, int reps,
                                std::uint64_t base_seed) {
  if (static_cast<Index>(labels.size()) != pool.cols())
    throw DimensionMismatch("evaluate_splits: one label per column required");
  if (reps < 1) throw InvalidArgument("evaluate_splits: reps must be >= 1");

  SplitEvaluation out;
  out.per_rep.reserve(static_cast<size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    const Split split = make_split(labels, train_per_class, base_seed + static_cast<std::uint64_t>(r));
    if (split.test.empty())
      throw InvalidArgument("evaluate_splits: split left no test columns");

    Matrix train(pool.rows(), static_cast<Index>(split.train.size()));
    std::vector<std::string> train_labels;
    train_labels.reserve(split.train.size());
    for (size_t k = 0; k < split.train.size(); ++k) {
      train.col(static_cast<Index>(k)) = pool.col(split.train[k]);
      train_labels.push_back(labels[static_cast<size_t>(split.train[k])]);
    }
    Matrix test(pool.rows(), static_cast<Index>(split.test.size()));
    std::vector<std::string> test_labels;
    test_labels.reserve(split.test.size());
    for (size_t k = 0; k < split.test.size(); ++k) {
      test.col(static_cast<Index>(k)) = pool.col(split.test[k]);
      test_labels.push_back(labels[static_cast<size_t>(split.test[k])]);
    }

    const Classifier clf = fit(train, train_labels, cfg);
    out.per_rep.push_back(evaluate(clf, test, test_labels));
  }
  double sum = 0.0;
  for (double e : out.per_rep) sum += e;
  out.mean_error = sum / static_cast<double>(out.per_rep.size());
  return out;
}

}  // namespace rbd
