#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lomse/integrator.hpp"
#include "lomse/params.hpp"

namespace lomse {

// ---------------------------------------------------------------------------
// Phase-plane system for phi = rho/r, psi = phi_t, t = log r.
// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar f1(Scalar phi, Scalar n, Scalar p, Scalar lambda_sq) {
  return (lambda_sq - 1) * p / (1 + lambda_sq * phi * phi) - (n - p);
}

template <typename Scalar>
Scalar f2(Scalar phi, Scalar n, Scalar p, Scalar lambda_sq) {
  return (n - p) + p / (1 + lambda_sq * phi * phi);
}

inline double f1(double phi, const LomseParams& params) {
  return f1<double>(phi, params.n, params.p, params.lambda_sq());
}

inline double f2(double phi, const LomseParams& params) {
  return f2<double>(phi, params.n, params.p, params.lambda_sq());
}

/// X = (psi, -psi - (f2 psi - f1 phi)(1 + (phi+psi)^2)); odd under (phi,psi) -> (-phi,-psi).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> vector_field(Scalar phi, Scalar psi, Scalar n, Scalar p, Scalar lambda_sq) {
  const Scalar s = phi + psi;
  const Scalar x2 = -psi - (f2(phi, n, p, lambda_sq) * psi - f1(phi, n, p, lambda_sq) * phi) * (1 + s * s);
  return {psi, x2};
}

struct PhasePoint {
  double phi = 0.0;
  double psi = 0.0;
  double t = 0.0;
};

inline Eigen::Vector2d vector_field(const PhasePoint& point, const LomseParams& params) {
  return vector_field<double>(point.phi, point.psi, params.n, params.p, params.lambda_sq());
}

/// Left side of the radial minimal-graph equation
///   rho_rr/(1+rho_r^2) + (n-p) rho_r/r + p (rho_r/r - lambda^2 rho/r^2)/(1 + lambda^2 rho^2/r^2).
template <typename Scalar>
Scalar ode1_lhs(Scalar r, Scalar rho, Scalar rho_r, Scalar rho_rr, Scalar n, Scalar p, Scalar lambda_sq) {
  const Scalar q = rho / r;
  return rho_rr / (1 + rho_r * rho_r) + (n - p) * rho_r / r +
         p * (rho_r / r - lambda_sq * rho / (r * r)) / (1 + lambda_sq * q * q);
}

/// Seed on the linear unstable direction V1 = (1, k-1) of the saddle at the origin.
PhasePoint seed_unstable(const LomseParams& params, double epsilon = 1e-8, double t0 = 0.0);

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

enum class EventKind { PsiZero, PhiEqualsPhi0 };
enum class Terminal { ConvergedToP1, LeftDomain, MaxTimeReached };

const char* to_string(EventKind kind);
const char* to_string(Terminal terminal);

struct Event {
  EventKind kind = EventKind::PsiZero;
  double t = 0.0;
  PhasePoint point;
  double phi_dev = 0.0;  // phi - phi0 without the cancellation of forming it from point.phi
};

struct IntegrationOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double event_tol = 1e-12;  // root location accuracy in t
  double convergence_radius = 1e-9;
  int lyapunov_window = 10;
  double min_step = 1e-14;
  double max_step = 0.5;
  double domain_bound = 1e4;  // |(phi,psi)| beyond this ends the run as LeftDomain
  // Inside this distance of (phi0, 0) the state is carried as (phi - phi0, psi) with a
  // cancellation-free f1, so deviations far below machine epsilon keep full relative precision.
  double center_radius = 1e-2;
  // After classification as ConvergedToP1 the run continues until the deviation drops below this.
  double resolve_radius = 1e-60;
};

/// Tighter tolerances used for spiral (Type II) orbits where several turns must be resolved.
IntegrationOptions high_resolution_options();

using Segment2 = DenseSegment<double, 2>;

struct OrbitSegment {
  Segment2 dense;
  bool centered = false;  // dense output is in (phi - phi0, psi)
  double phi0 = 0.0;

  double t0() const { return dense.t0; }
  double t1() const { return dense.t1(); }
  double h() const { return dense.h; }
  Eigen::Vector2d eval(double t) const {
    Eigen::Vector2d y = dense.eval(t);
    if (centered) y(0) += phi0;
    return y;
  }
  Eigen::Vector2d deviation(double t) const {
    Eigen::Vector2d y = dense.eval(t);
    if (!centered) y(0) -= phi0;
    return y;
  }
  Eigen::Vector2d derivative(double t) const { return dense.derivative(t); }
};

/// X in coordinates (u, psi) = (phi - phi0, psi); f1 is written so that it vanishes exactly at u = 0.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> centered_vector_field(Scalar u, Scalar psi, Scalar phi0, Scalar n, Scalar p,
                                                  Scalar lambda_sq) {
  const Scalar phi = phi0 + u;
  const Scalar c0 = (lambda_sq - 1) * p / (n - p);  // 1 + lambda^2 phi0^2
  const Scalar f1c = -(lambda_sq - 1) * p * lambda_sq * u * (2 * phi0 + u) / ((1 + lambda_sq * phi * phi) * c0);
  const Scalar s = phi + psi;
  const Scalar x2 = -psi - (f2(phi, n, p, lambda_sq) * psi - f1c * phi) * (1 + s * s);
  return {psi, x2};
}

struct Orbit {
  int n = 0, p = 0, k = 0;
  double phi0 = 0.0;
  std::vector<PhasePoint> samples;     // strictly increasing in t
  std::vector<double> deviation;       // |(phi - phi0, psi)| at each sample, full relative precision
  std::vector<OrbitSegment> segments;  // segments[i] spans samples[i] .. samples[i+1]
  std::vector<Event> events;        // ordered by t
  Terminal terminal = Terminal::MaxTimeReached;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }

  /// Dense-output state at t in [t_begin, t_end].
  PhasePoint at(double t) const;
  /// (phi - phi0, psi) at t.
  Eigen::Vector2d deviation_at(double t) const;
  /// Dense-output time derivative (phi_t, psi_t) at t.
  Eigen::Vector2d derivative_at(double t) const;
  /// All t with phi(t) = level, located on the interpolant to `tol`.
  std::vector<double> crossings(double level, double tol = 1e-12) const;
  std::vector<Event> events_of(EventKind kind) const;
};

/// Integrates the phase-plane system from `seed` to `t_max` (backwards if t_max < seed.t).
/// Throws Error{StepSizeUnderflow, NonFiniteState}.
Orbit integrate_orbit(const LomseParams& params, const PhasePoint& seed, double t_max,
                      const IntegrationOptions& options = {});

/// Default run: seed at t = 0 on V1 and integrate to `t_max` (200 covers many spiral turns).
Orbit integrate_from_origin(const LomseParams& params, double t_max = 200.0, double epsilon = 1e-8,
                            const IntegrationOptions& options = {});

struct OscillationRecord {
  std::vector<double> T;      // psi-zero times
  std::vector<double> phiT;   // phi(T_i)
  std::vector<double> devT;   // phi(T_i) - phi0
  std::size_t resolvable = 0; // leading events with |phi_i - phi0| above the resolution floor
  double decay_ratio = 0.0;   // fitted |phi_{i+1}-phi0| / |phi_i-phi0| over resolvable events
  bool odd_decreasing = false;
  bool even_increasing = false;
  bool brackets_phi0 = false;
};

/// Throws Error{InsufficientEvents} when fewer than two psi-zero events were found.
OscillationRecord oscillation_record(const Orbit& orbit, double resolution = 1e-250);

// ---------------------------------------------------------------------------
// Radial profiles rho(r) = r phi(log r)
// ---------------------------------------------------------------------------

struct RadialSample {
  double rho = 0.0;
  double rho_r = 0.0;
  double rho_rr = 0.0;
  double psi = 0.0;  // rho_r - rho/r, taken from the orbit so it keeps full relative precision
};

struct Profile {
  std::vector<double> r;
  std::vector<double> rho;
  std::vector<double> rho_r;
  std::vector<double> rho_rr;
  std::vector<double> residual;  // r * (radial equation left side); invariant under rho -> rho(d r)/d
  double r_min = 0.0;            // first native sample; below it `eval` uses the leading asymptotics
  double r_max = 0.0;
  double small_r_slope = 0.0;    // least-squares slope of log rho against log r near the origin

  std::function<RadialSample(double)> eval;  // valid on (0, r_max]

  RadialSample at(double r) const { return eval(r); }
  double max_abs_residual() const;

  /// The cone rho = phi0 r (the LOC itself).
  static Profile cone(const LomseParams& params, double r_max = 1e6);
  /// rho = 0, the coordinate plane.
  static Profile flat(const LomseParams& params, double r_max = 1e6);
};

/// Throws Error{NotConverged} unless the orbit ended at (phi0, 0).
Profile extract_profile(const Orbit& orbit, const LomseParams& params);

/// Scale-free residual r * ode1_lhs at a single point.
double profile_residual(const LomseParams& params, double r, const RadialSample& s);

}  // namespace lomse
