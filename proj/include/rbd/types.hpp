#ifndef RBD_TYPES_HPP
#define RBD_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace rbd {

// All dense data is column-major real; X is m x n with one sample per column.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

using MatrixRef = Eigen::Ref<const Matrix>;
using VectorRef = Eigen::Ref<const Vector>;

}  // namespace rbd

#endif
