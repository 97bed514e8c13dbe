#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lomse/dynamics.hpp"
#include "lomse/geometry.hpp"
#include "lomse/params.hpp"

namespace lomse {

enum class MultiplicityKind { Zero, Finite, UnboundedSequence };
const char* to_string(MultiplicityKind kind);

struct Multiplicity {
  MultiplicityKind kind = MultiplicityKind::Zero;
  std::size_t count = 0;  // analytic solutions found; for UnboundedSequence the resolved prefix
};

/// A solution that is not a crossing of the orbit, e.g. the truncated cone at phi0.
struct ExtraSolution {
  std::string kind;
  double phi = 0.0;
};

struct DirichletReport {
  double phi_boundary = 0.0;
  std::vector<double> crossing_ts;  // phi(t) = phi_boundary
  std::vector<double> d_values;     // e^{t_i}; rho_{d}(r) = rho(d r)/d has boundary value phi_boundary at r = 1
  Multiplicity multiplicity;
  double phi1 = 0.0;                   // sup of phi along the orbit
  std::optional<double> phi2;          // phi(T_2), Type II only
  std::optional<double> epsilon_window;
  std::optional<double> decay_ratio;   // fitted |phi_{i+1} - phi0| / |phi_i - phi0|
  std::vector<ExtraSolution> extra_solutions;
};

/// Distance from phi0 below which a boundary amplitude is treated as phi0 itself.
constexpr double kPhi0Tolerance = 1e-9;

/// Throws Error{NotConverged} unless the orbit reached (phi0, 0), Error{InvalidRange} for phi_boundary < 0.
DirichletReport dirichlet_multiplicity(const Orbit& orbit, const LomseParams& params, double phi_boundary,
                                       double event_tol = 1e-12);

/// phi(T_1) - phi0. Throws Error{WrongType} for Type I, Error{InsufficientEvents} without a psi-zero.
double epsilon_window(const Orbit& orbit, const LomseParams& params);

/// Density sequence at the radii d_i = e^{t_i} where phi(t_i) = phi0.
/// Throws Error{InsufficientEvents} when the orbit never crosses phi0.
DensityReport nonminimizing_verdict(const Profile& profile, const Orbit& orbit, const LomseParams& params,
                                    double tolerance = 1e-8);

/// rho_d(r) = rho(d r)/d.
Profile rescaled_profile(const Profile& profile, const LomseParams& params, double d);

}  // namespace lomse
