#include "lomse/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lomse/error.hpp"

namespace lomse {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

// Width (in t = log r) of the window below log d that carries the volume; the weight
// e^{(n+1)(t - log d)} has fallen below 1e-50 at its far end for every n >= 2.
constexpr double kWindow = 40.0;

// (n-p)/(k(k+n-1)-p)
Rational jordan_cos_sq(const LomseParams& params) {
  const BigInt N(params.n), P(params.p);
  return Rational(N - P, params.exact.eigen_degree - P);
}

// int_{T-W}^{T} e^{(n+1)(t-T)} sqrt(1+rho_r^2) (1+lambda^2 phi^2)^{p/2} dt
double scaled_volume_integral(const Profile& profile, const LomseParams& params, double T) {
  const double lsq = params.lambda_sq();
  const double np1 = params.n + 1.0;
  const double half_p = 0.5 * params.p;
  const auto integrand = [&](double t) {
    const double r = std::exp(t);
    const RadialSample s = profile.at(r);
    const double phi = s.rho / r;
    return std::exp(np1 * (t - T)) * std::sqrt(1.0 + s.rho_r * s.rho_r) * std::pow(1.0 + lsq * phi * phi, half_p);
  };
  double total = 0.0;
  double hi = T;
  while (hi > T - kWindow) {
    const double lo = std::max(hi - 1.0, T - kWindow);
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 12, 1e-12);
    hi = lo;
  }
  return total;
}

void require_in_domain(const Profile& profile, double R) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidRange, "radius must be positive");
  if (R > profile.r_max * (1 + 1e-12)) {
    throw Error(ErrorCode::DomainTooShort, "radius " + std::to_string(R) + " beyond profile r_max " +
                                               std::to_string(profile.r_max));
  }
}

}  // namespace

double sphere_volume(int n) { return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1)); }

double ball_volume(int d) { return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

double normal_angle_cos(const LomseParams& params) {
  // cos^2 alpha = cos^2 theta * ((n-p)/(K-p))^p is rational.
  Rational c2 = params.exact.cos_sq_theta;
  const Rational j = jordan_cos_sq(params);
  for (int i = 0; i < params.p; ++i) c2 *= j;
  return std::sqrt(to_double(c2));
}

double los_volume_ratio(const LomseParams& params) {
  // (K/n)^p (cos^2 theta)^{n-p}, then a single square root.
  const Rational kn(params.exact.eigen_degree, BigInt(params.n));
  Rational v2 = 1;
  for (int i = 0; i < params.p; ++i) v2 *= kn;
  for (int i = 0; i < params.n - params.p; ++i) v2 *= params.exact.cos_sq_theta;
  return std::sqrt(to_double(v2));
}

double los_volume_ratio(double theta, double lambda, int n, int p) {
  const double c = std::cos(theta), s = std::sin(theta);
  return std::pow(c * c + s * s * lambda * lambda, 0.5 * p) * std::pow(c, n - p);
}

std::vector<JordanAngle> jordan_angles(const LomseParams& params) {
  return {{std::acos(std::sqrt(to_double(jordan_cos_sq(params)))), params.p},
          {params.theta, 1},
          {0.0, params.n - params.p}};
}

double slope_function(const LomseParams& params) { return 1.0 / normal_angle_cos(params); }

GeometryReport geometry_report(const LomseParams& params) {
  GeometryReport rep;
  rep.cos_alpha = normal_angle_cos(params);
  rep.volume_ratio = los_volume_ratio(params);
  rep.jordan_angles = jordan_angles(params);
  rep.slope_W = slope_function(params);
  return rep;
}

double graph_volume(const Profile& profile, const LomseParams& params, double R) {
  require_in_domain(profile, R);
  const double T = std::log(R);
  return sphere_volume(params.n) * std::exp((params.n + 1.0) * T) * scaled_volume_integral(profile, params, T);
}

double density_at(const Profile& profile, const LomseParams& params, double d) {
  require_in_domain(profile, d);
  const double phi = profile.at(d).rho / d;
  const double integral = scaled_volume_integral(profile, params, std::log(d));
  return sphere_volume(params.n) * integral /
         (ball_volume(params.n + 1) * std::pow(1.0 + phi * phi, 0.5 * (params.n + 1)));
}

double density_deficit(const Profile& profile, const LomseParams& params, double d, double* error) {
  require_in_domain(profile, d);
  const double lsq = params.lambda_sq();
  const double half_p = 0.5 * params.p;
  const double half_n3 = 0.5 * (params.n + 3);
  const auto integrand = [&](double t) {
    const double r = std::exp(t);
    const RadialSample s = profile.at(r);
    const double phi = s.rho / r;
    return s.psi * s.psi * std::pow(1.0 + lsq * phi * phi, half_p) /
           (std::sqrt(1.0 + s.rho_r * s.rho_r) * std::pow(1.0 + phi * phi, half_n3));
  };
  double total = 0.0, err_total = 0.0;
  const double t_end = std::log(profile.r_max);
  for (double lo = std::log(d); lo < t_end; lo += 1.0) {
    double err = 0.0;
    const double hi = std::min(lo + 1.0, t_end);
    const double part = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 8, 1e-10, &err);
    total += part;
    err_total += err;
    // psi^2 decays geometrically towards P1; the rest cannot move the sum
    if (part < 1e-18 * total) break;
  }
  const double scale = sphere_volume(params.n) / ball_volume(params.n + 1);
  if (error) *error = scale * err_total;
  return scale * total;
}

const char* to_string(DensityVerdict verdict) {
  return verdict == DensityVerdict::NonMinimizing ? "NonMinimizing" : "Inconclusive";
}

bool DensityReport::nondecreasing(double slack) const {
  for (std::size_t i = 1; i < theta_seq.size(); ++i) {
    if (theta_seq[i] < theta_seq[i - 1] - slack) return false;
  }
  return true;
}

DensityReport density_report(const Profile& profile, const LomseParams& params, const std::vector<double>& radii,
                             double tolerance) {
  DensityReport rep;
  rep.radii = radii;
  rep.tolerance = tolerance;
  for (double d : radii) {
    rep.theta_seq.push_back(density_at(profile, params, d));
    double err = 0.0;
    rep.deficit.push_back(density_deficit(profile, params, d, &err));
    rep.deficit_error.push_back(err);
  }
  rep.theta_cone = los_volume_ratio(params);
  rep.theta_cone_quadrature = density_at(Profile::cone(params, 10.0), params, 1.0);
  if (!rep.theta_seq.empty()) {
    const bool direct = rep.theta_seq.front() < rep.theta_cone - 10.0 * tolerance;
    const bool resolved = rep.deficit.front() > 0.0 && rep.deficit.front() > 10.0 * rep.deficit_error.front();
    if (direct || resolved) rep.verdict = DensityVerdict::NonMinimizing;
  }
  return rep;
}

}  // namespace lomse
