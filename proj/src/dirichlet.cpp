#include "lomse/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include "lomse/error.hpp"

namespace lomse {

namespace {

void require_converged(const Orbit& orbit) {
  if (orbit.terminal != Terminal::ConvergedToP1) {
    throw Error(ErrorCode::NotConverged, std::string("orbit terminal is ") + to_string(orbit.terminal));
  }
}

std::vector<double> phi0_crossings(const Orbit& orbit) {
  std::vector<double> ts;
  for (const Event& e : orbit.events_of(EventKind::PhiEqualsPhi0)) ts.push_back(e.t);
  return ts;
}

}  // namespace

const char* to_string(MultiplicityKind kind) {
  switch (kind) {
    case MultiplicityKind::Zero: return "Zero";
    case MultiplicityKind::Finite: return "Finite";
    case MultiplicityKind::UnboundedSequence: return "UnboundedSequence";
  }
  return "Unknown";
}

DirichletReport dirichlet_multiplicity(const Orbit& orbit, const LomseParams& params, double phi_boundary,
                                       double event_tol) {
  require_converged(orbit);
  if (!(phi_boundary >= 0.0) || !std::isfinite(phi_boundary)) {
    throw Error(ErrorCode::InvalidRange, "boundary amplitude must be finite and >= 0");
  }
  DirichletReport rep;
  rep.phi_boundary = phi_boundary;

  const auto psi_zeros = orbit.events_of(EventKind::PsiZero);
  const bool spiral = params.stability == Stability::TypeII;
  rep.phi1 = params.phi0;
  if (spiral && !psi_zeros.empty()) {
    rep.phi1 = psi_zeros.front().point.phi;
    rep.epsilon_window = psi_zeros.front().phi_dev;
  }
  if (spiral && psi_zeros.size() >= 2) rep.phi2 = psi_zeros[1].point.phi;
  if (spiral && psi_zeros.size() >= 2) rep.decay_ratio = oscillation_record(orbit).decay_ratio;

  const bool at_phi0 = std::abs(phi_boundary - params.phi0) < kPhi0Tolerance;
  if (at_phi0) {
    rep.crossing_ts = phi0_crossings(orbit);
    rep.extra_solutions.push_back({"singular cone solution", params.phi0});
  } else {
    rep.crossing_ts = orbit.crossings(phi_boundary, event_tol);
  }
  if (phi_boundary == 0.0) rep.extra_solutions.push_back({"flat plane", 0.0});
  for (double t : rep.crossing_ts) rep.d_values.push_back(std::exp(t));

  rep.multiplicity.count = rep.crossing_ts.size();
  if (at_phi0 && spiral) {
    rep.multiplicity.kind = MultiplicityKind::UnboundedSequence;
  } else if (phi_boundary > rep.phi1 || rep.crossing_ts.empty()) {
    rep.multiplicity.kind = MultiplicityKind::Zero;
  } else {
    rep.multiplicity.kind = MultiplicityKind::Finite;
  }
  return rep;
}

double epsilon_window(const Orbit& orbit, const LomseParams& params) {
  if (params.stability != Stability::TypeII) {
    throw Error(ErrorCode::WrongType, "the window above phi0 exists only for Type II triples");
  }
  require_converged(orbit);
  const auto psi_zeros = orbit.events_of(EventKind::PsiZero);
  if (psi_zeros.empty()) throw Error(ErrorCode::InsufficientEvents, "no psi-zero event on the orbit");
  return psi_zeros.front().phi_dev;
}

DensityReport nonminimizing_verdict(const Profile& profile, const Orbit& orbit, const LomseParams& params,
                                    double tolerance) {
  require_converged(orbit);
  const std::vector<double> ts = phi0_crossings(orbit);
  if (ts.empty()) throw Error(ErrorCode::InsufficientEvents, "orbit never crosses phi0");
  std::vector<double> radii;
  for (double t : ts) {
    const double d = std::exp(t);
    if (d <= profile.r_max) radii.push_back(d);
  }
  return density_report(profile, params, radii, tolerance);
}

Profile rescaled_profile(const Profile& profile, const LomseParams& params, double d) {
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidRange, "scale must be positive");
  Profile out;
  const auto base = profile.eval;
  out.eval = [base, d](double r) {
    const RadialSample s = base(d * r);
    return RadialSample{s.rho / d, s.rho_r, s.rho_rr * d, s.psi};
  };
  out.r_min = profile.r_min / d;
  out.r_max = profile.r_max / d;
  out.small_r_slope = profile.small_r_slope;
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const double r = profile.r[i] / d;
    const RadialSample s = out.eval(r);
    out.r.push_back(r);
    out.rho.push_back(s.rho);
    out.rho_r.push_back(s.rho_r);
    out.rho_rr.push_back(s.rho_rr);
    out.residual.push_back(profile_residual(params, r, s));
  }
  return out;
}

}  // namespace lomse
