#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lomse/dynamics.hpp"
#include "lomse/error.hpp"
#include "lomse/params.hpp"

namespace lomse {

constexpr double kSphereTolerance = 1e-9;

/// H(x) = (2(x1x3+x2x4), 2(x2x3-x1x4), x1^2+x2^2-x3^2-x4^2), the Hopf fibration S^3 -> S^2.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> hopf_map(const Eigen::Matrix<Scalar, 4, 1>& x) {
  using std::abs;
  if (abs(x.norm() - Scalar(1)) > Scalar(kSphereTolerance)) {
    throw Error(ErrorCode::NotOnSphere, "hopf_map needs a unit 4-vector");
  }
  return {2 * (x(0) * x(2) + x(1) * x(3)), 2 * (x(1) * x(2) - x(0) * x(3)),
          x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - x(3) * x(3)};
}

/// Ambient differential of the polynomial map (rows are gradients of the components).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 4> hopf_jacobian(const Eigen::Matrix<Scalar, 4, 1>& x) {
  Eigen::Matrix<Scalar, 3, 4> J;
  J << x(2), x(3), x(0), x(1),
      -x(3), x(2), x(1), -x(0),
      x(0), x(1), -x(2), -x(3);
  return Scalar(2) * J;
}

struct SphereSample {
  Eigen::Vector4d x;
  Eigen::Vector3d fx;
  Eigen::Matrix<double, 3, 4> jacobian;  // restricted to T_x S^3 via the projector I - x x^T
  Eigen::Vector3d singular_values;       // descending, from a Jacobi SVD of `jacobian`
  double gram_trace = 0.0;
};

SphereSample singular_value_sample(const Eigen::Vector4d& x);

/// sum_j 1/(cos^2 theta + sin^2 theta sigma_j^2) - 3 with sigma_j sampled at x.
double los_condition_b(const Eigen::Vector4d& x, double theta);

struct LosRoot {
  double theta = 0.0;
  int sign_changes = 0;  // on a uniform scan of (0, pi/2); 1 means the root is unique there
};

/// Root of los_condition_b in (0, pi/2) by bisection to `tol`.
LosRoot los_condition_root(const Eigen::Vector4d& x, double tol = 1e-12, int scan = 2000);

/// Left side of the general radial equation with one term per singular value.
template <typename Scalar, typename Range>
Scalar general_ode_lhs(Scalar r, Scalar rho, Scalar rho_r, Scalar rho_rr, const Range& sigmas) {
  Scalar acc = rho_rr / (1 + rho_r * rho_r);
  for (const auto& s : sigmas) {
    const Scalar l2 = Scalar(s) * Scalar(s);
    acc += (rho_r / r - l2 * rho / (r * r)) / (1 + l2 * rho * rho / (r * r));
  }
  return acc;
}

/// Radial equation for the Hopf map H^{2m-1,m}, written with m alone.
template <typename Scalar>
Scalar ode4_lhs(Scalar r, Scalar rho, Scalar rho_r, Scalar rho_rr, int m) {
  return rho_rr / (1 + rho_r * rho_r) + (m - 1) * rho_r / r +
         m * (rho_r / r - 4 * rho / (r * r)) / (1 + 4 * rho * rho / (r * r));
}

/// r times the general left side at radius r, singular values taken from the Hopf map at x.
double general_ode_residual(const Profile& profile, const Eigen::Vector4d& x, double r);

struct HarmonicComponent {
  std::string name;
  Eigen::Matrix4d form;  // H_i(x) = x^T Q x
  int degree = 2;
  double laplacian = 0.0;  // 2 trace(Q)
};

struct HarmonicReport {
  std::vector<HarmonicComponent> components;
  int degree = 2;
  long long eigenvalue = 0;       // k(k+n-1) for k = degree, n = 3
  double sampled_lambda_sq_p = 0; // sigma^2 * rank from the differential
  double max_form_mismatch = 0;   // |x^T Q x - H_i(x)| over the samples
  bool pass = false;
};

HarmonicReport harmonic_degree_check(std::uint64_t seed = 7, int samples = 100);

/// Unit 4-vectors from normalised standard Gaussians.
std::vector<Eigen::Vector4d> sample_sphere(int count, std::uint64_t seed);

struct VerificationCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct HopfReport {
  std::vector<VerificationCheck> checks;
  double los_root = 0.0;
  bool pass = false;
};

/// Every Hopf check over `samples` random points, including the profile-based equation agreement.
HopfReport hopf_verification_report(int samples = 1000, std::uint64_t seed = 7);

}  // namespace lomse
