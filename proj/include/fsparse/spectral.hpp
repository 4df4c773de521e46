#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace fsparse {

struct NormOptions {
  double tol = 1e-10;
  std::uint64_t max_iterations = 100'000;
};

/// Largest singular value of a real symmetric matrix. Sizes up to 3 use
/// closed-form eigenvalues; larger ones use power_iteration_norm.
/// Throws Error(InvalidArgument) if m is not symmetric.
double operator_norm(const Eigen::MatrixXd& m, NormOptions options = {});

/// Power iteration on m^2 from the all-ones start vector, stopping when the
/// Rayleigh residual drops below tol. Throws Error(NonConvergence) at the
/// iteration cap.
double power_iteration_norm(const Eigen::MatrixXd& m, NormOptions options = {});

}  // namespace fsparse
