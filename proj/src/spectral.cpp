#include "fsparse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsparse/error.hpp"

namespace fsparse {

namespace {

void require_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidArgument, "matrix is not square");
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(Errc::InvalidArgument, "matrix is not symmetric");
  }
}

double norm_2x2(const Eigen::MatrixXd& m) {
  const double a = m(0, 0), b = m(0, 1), d = m(1, 1);
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return std::max(std::fabs(mean + radius), std::fabs(mean - radius));
}

// Trigonometric solution of the characteristic cubic of a symmetric 3x3.
double norm_3x3(const Eigen::MatrixXd& m) {
  const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  const double q = m.trace() / 3.0;
  if (p1 == 0.0) return m.diagonal().cwiseAbs().maxCoeff();
  const double p2 = (m(0, 0) - q) * (m(0, 0) - q) + (m(1, 1) - q) * (m(1, 1) - q) +
                    (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Eigen::Matrix3d shifted = (m - q * Eigen::MatrixXd::Identity(3, 3)) / p;
  const double r = std::clamp(shifted.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return std::max(std::fabs(e1), std::fabs(e3));
}

}  // namespace

double power_iteration_norm(const Eigen::MatrixXd& m, NormOptions options) {
  require_symmetric(m);
  const Eigen::Index n = m.rows();
  if (n == 0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  for (std::uint64_t it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXd w = m * (m * v);
    const double rayleigh = v.dot(w);
    if (rayleigh <= 0.0) {
      // m v = 0 for a nonnegative start: m^2 has no mass along v.
      if (w.norm() == 0.0) return 0.0;
    }
    const double residual = (w - rayleigh * v).norm();
    if (residual <= options.tol * std::max(1.0, rayleigh)) return std::sqrt(std::max(0.0, rayleigh));
    v = w.normalized();
  }
  throw Error(Errc::NonConvergence, "power iteration hit the iteration cap");
}

double operator_norm(const Eigen::MatrixXd& m, NormOptions options) {
  require_symmetric(m);
  switch (m.rows()) {
    case 0: return 0.0;
    case 1: return std::fabs(m(0, 0));
    case 2: return norm_2x2(m);
    case 3: return norm_3x3(m);
    default: return power_iteration_norm(m, options);
  }
}

}  // namespace fsparse
