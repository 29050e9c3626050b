#pragma once

#include <Eigen/Dense>
#include <functional>

namespace qcrit {

struct EighResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns; empty when not requested
};

// Dense symmetric eigensolve (divide and conquer).
EighResult dense_eigh(const Eigen::MatrixXd& a, bool want_vectors = true);

// Symmetric tridiagonal eigensolve; off has size n-1.
EighResult tridiag_eigh(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                        bool want_vectors = true);

// Lowest `count` eigenpairs of a symmetric tridiagonal matrix.
EighResult tridiag_lowest(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                          int count, bool want_vectors = true);

// Root of f on [lo, hi]; requires a sign change.
double find_root_brent(const std::function<double(double)>& f, double lo, double hi,
                       double xtol = 1e-12, int max_iter = 200);

}
