#pragma once

// Cyclic Jacobi eigensolver for complex Hermitian matrices. Kept as a
// standalone kernel so both classification and the functional calculus
// can use it without a layering cycle.

#include <Eigen/Dense>

#include "conelab/errors.hpp"

namespace conelab {

struct JacobiResult {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXcd vectors;     // unitary, columns are eigenvectors
};

// Diagonalizes (m + m*)/2. Sweeps until the off-diagonal Frobenius mass
// drops below 1e-12 times the Frobenius norm of the input; throws
// NoConvergence after max_sweeps.
JacobiResult jacobi_hermitian(const Eigen::MatrixXcd& m, int max_sweeps = 64);

}  // namespace conelab
