#pragma once

#include <string>
#include <vector>

#include "lomse/dynamics.hpp"
#include "lomse/params.hpp"

namespace lomse {

/// |S^n|, the n-dimensional volume of the unit sphere in R^{n+1}.
double sphere_volume(int n);
/// Volume of the unit ball in R^d.
double ball_volume(int d);

struct JordanAngle {
  double angle = 0.0;
  int multiplicity = 0;
};

struct GeometryReport {
  double cos_alpha = 0.0;     // normal planes of the LOS make the constant angle alpha
  double volume_ratio = 0.0;  // Vol(LOS) / |S^n|
  std::vector<JordanAngle> jordan_angles;
  double slope_W = 0.0;       // sec alpha
};

double normal_angle_cos(const LomseParams& params);
double los_volume_ratio(const LomseParams& params);
/// Vol/|S^n| for a map with p singular values lambda and n-p zero ones at angle theta.
double los_volume_ratio(double theta, double lambda, int n, int p);
std::vector<JordanAngle> jordan_angles(const LomseParams& params);
double slope_function(const LomseParams& params);
GeometryReport geometry_report(const LomseParams& params);

/// |S^n| * int_0^R sqrt(1+rho_r^2) (r^2 + lambda^2 rho^2)^{p/2} r^{n-p} dr, relative tolerance 1e-8.
/// Throws Error{DomainTooShort} when R exceeds profile.r_max.
double graph_volume(const Profile& profile, const LomseParams& params, double R);

/// Vol(graph over r <= d) / (ball_volume(n+1) (d^2 + rho(d)^2)^{(n+1)/2}), evaluated without
/// forming d^{n+1} so that large radii do not overflow.
double density_at(const Profile& profile, const LomseParams& params, double d);

/// Theta(cone) - Theta(d) from the monotonicity formula,
///   |S^n|/omega_{n+1} int_{log d}^{log r_max} psi^2 (1+lambda^2 phi^2)^{p/2} / (sqrt(1+rho_r^2) (1+phi^2)^{(n+3)/2}) dt.
/// Positive integrand in psi^2 only, so it resolves deficits far below the rounding of Theta itself.
/// `error` receives the summed quadrature error estimate.
double density_deficit(const Profile& profile, const LomseParams& params, double d, double* error = nullptr);

enum class DensityVerdict { NonMinimizing, Inconclusive };
const char* to_string(DensityVerdict verdict);

struct DensityReport {
  std::vector<double> radii;      // d_i
  std::vector<double> theta_seq;  // Theta at R_i = sqrt(d_i^2 + rho(d_i)^2)
  double theta_cone = 0.0;        // closed form, equal to the LOS volume ratio
  double theta_cone_quadrature = 0.0;
  std::vector<double> deficit;        // Theta_0 - Theta_i by the monotonicity formula
  std::vector<double> deficit_error;  // its quadrature error estimate
  double tolerance = 1e-8;
  DensityVerdict verdict = DensityVerdict::Inconclusive;

  bool nondecreasing(double slack) const;
};

/// Verdict is NonMinimizing iff Theta_1 < Theta_0 - 10 * tolerance, or the deficit at the first radius
/// is positive and larger than ten times its own error estimate.
DensityReport density_report(const Profile& profile, const LomseParams& params, const std::vector<double>& radii,
                             double tolerance = 1e-8);

}  // namespace lomse
