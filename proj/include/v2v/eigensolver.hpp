// Dense symmetric eigensolver: Householder tridiagonalization followed by
// implicit QL iterations.
#pragma once

#include <Eigen/Dense>

namespace v2v {

struct SymmetricEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors; // column i pairs with values(i)
};

/// `tol` bounds the relative size of an off-diagonal element treated as zero.
/// Throws std::runtime_error when QL fails to converge.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, double tol = 1e-10);

} // namespace v2v
