#include "lomse/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>

#include <Eigen/LU>
#include <boost/math/tools/roots.hpp>

#include "lomse/error.hpp"

namespace lomse {

namespace {

// Sign flips of g on [seg.t0, seg.t1], scanned at a few interior points, refined by TOMS 748.
template <typename G>
void find_roots(const OrbitSegment& seg, G&& g, double tol, std::vector<double>& out) {
  constexpr int kProbes = 4;
  double ta = seg.t0();
  double ga = g(ta);
  for (int j = 1; j <= kProbes; ++j) {
    const double tb = j == kProbes ? seg.t1() : seg.t0() + seg.h() * (double(j) / kProbes);
    const double gb = g(tb);
    if ((ga > 0) != (gb > 0)) {
      double root = ta;
      if (gb == 0.0) {
        root = tb;
      } else if (ga != 0.0) {
        std::uintmax_t iters = 200;
        const auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
        const double lo = std::min(ta, tb), hi = std::max(ta, tb);
        const double glo = lo == ta ? ga : gb, ghi = lo == ta ? gb : ga;
        const auto bracket = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, done, iters);
        root = 0.5 * (bracket.first + bracket.second);
      }
      out.push_back(root);
    }
    ta = tb;
    ga = gb;
  }
}

}  // namespace

const char* to_string(EventKind kind) { return kind == EventKind::PsiZero ? "PsiZero" : "PhiEqualsPhi0"; }

const char* to_string(Terminal terminal) {
  switch (terminal) {
    case Terminal::ConvergedToP1: return "ConvergedToP1";
    case Terminal::LeftDomain: return "LeftDomain";
    case Terminal::MaxTimeReached: return "MaxTimeReached";
  }
  return "Unknown";
}

IntegrationOptions high_resolution_options() {
  IntegrationOptions o;
  o.abs_tol = 1e-14;
  o.rel_tol = 1e-13;
  o.event_tol = 1e-13;
  o.min_step = 1e-16;
  return o;
}

PhasePoint seed_unstable(const LomseParams& params, double epsilon, double t0) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidRange, "seed epsilon must be positive");
  return {epsilon, epsilon * (params.k - 1), t0};
}

// ---------------------------------------------------------------------------

PhasePoint Orbit::at(double t) const {
  if (segments.empty()) return samples.front();
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const PhasePoint& s) { return v < s.t; });
  std::size_t i = it == samples.begin() ? 0 : std::size_t(it - samples.begin()) - 1;
  i = std::min(i, segments.size() - 1);
  const Eigen::Vector2d y = segments[i].eval(t);
  return {y(0), y(1), t};
}

Eigen::Vector2d Orbit::deviation_at(double t) const {
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const PhasePoint& s) { return v < s.t; });
  std::size_t i = it == samples.begin() ? 0 : std::size_t(it - samples.begin()) - 1;
  i = std::min(i, segments.size() - 1);
  return segments[i].deviation(t);
}

Eigen::Vector2d Orbit::derivative_at(double t) const {
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const PhasePoint& s) { return v < s.t; });
  std::size_t i = it == samples.begin() ? 0 : std::size_t(it - samples.begin()) - 1;
  i = std::min(i, segments.size() - 1);
  return segments[i].derivative(t);
}

std::vector<double> Orbit::crossings(double level, double tol) const {
  std::vector<double> out;
  for (const auto& seg : segments) {
    const double shift = level - phi0;
    find_roots(seg, [&](double t) { return seg.deviation(t)(0) - shift; }, tol, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Event> Orbit::events_of(EventKind kind) const {
  std::vector<Event> out;
  std::copy_if(events.begin(), events.end(), std::back_inserter(out),
               [kind](const Event& e) { return e.kind == kind; });
  return out;
}

// ---------------------------------------------------------------------------

Orbit integrate_orbit(const LomseParams& params, const PhasePoint& seed, double t_max,
                      const IntegrationOptions& options) {
  if (!std::isfinite(seed.phi) || !std::isfinite(seed.psi) || !std::isfinite(seed.t)) {
    throw Error(ErrorCode::NonFiniteState, "seed is not finite");
  }
  if (!std::isfinite(t_max)) throw Error(ErrorCode::InvalidRange, "t_max must be finite");

  const double n = params.n, p = params.p, lsq = params.lambda_sq();
  const double phi0 = params.phi0;
  const auto rhs = [&](const Eigen::Vector2d& y) { return vector_field<double>(y(0), y(1), n, p, lsq); };
  const auto rhs_centered = [&](const Eigen::Vector2d& y) {
    return centered_vector_field<double>(y(0), y(1), phi0, n, p, lsq);
  };

  // Linearisation at (phi0, 0) contracts iff trace < 0 and det > 0.
  const SpectralData spec = spectra(params);
  const bool p1_contracting = spec.B.trace() < 0 && spec.B.determinant() > 0;

  StepControl control;
  control.abs_tol = options.abs_tol;
  control.rel_tol = options.rel_tol;
  control.min_step = options.min_step;
  control.max_step = options.max_step;
  const DormandPrince<double, 2> stepper(control);
  StepControl centered_control = control;
  centered_control.norm_relative = true;
  centered_control.abs_tol = 1e-300;
  const DormandPrince<double, 2> centered_stepper(centered_control);

  Orbit orbit;
  orbit.n = params.n;
  orbit.p = params.p;
  orbit.k = params.k;
  orbit.phi0 = phi0;

  const bool forward = t_max >= seed.t;
  double t = seed.t;
  bool centered = false;
  Eigen::Vector2d y(seed.phi, seed.psi);
  Eigen::Vector2d dy = rhs(y);
  if (!dy.allFinite()) throw Error(ErrorCode::NonFiniteState, "vector field not finite at seed");
  double h = (forward ? 1.0 : -1.0) * std::min(1e-3, std::max(std::abs(t_max - t), options.min_step * 10));

  const auto deviation = [&]() { return centered ? y.norm() : std::hypot(y(0) - phi0, y(1)); };
  orbit.samples.push_back({y(0), y(1), t});
  orbit.deviation.push_back(deviation());

  bool classified = false;
  std::vector<double> roots;
  while (forward ? t < t_max : t > t_max) {
    if (forward && !centered && p1_contracting && orbit.deviation.back() < options.center_radius) {
      y(0) -= phi0;
      dy = rhs_centered(y);
      centered = true;
    }
    const double remaining = t_max - t;
    if (std::abs(h) > std::abs(remaining)) h = remaining;
    const double h_used = h;
    OrbitSegment seg;
    seg.centered = centered;
    seg.phi0 = phi0;
    seg.dense = centered ? centered_stepper.step(rhs_centered, t, y, dy, h) : stepper.step(rhs, t, y, dy, h);
    // Land exactly on t_max when the remaining interval was the step.
    if (h_used == remaining && seg.dense.h == remaining) t = t_max;

    for (EventKind kind : {EventKind::PsiZero, EventKind::PhiEqualsPhi0}) {
      roots.clear();
      const int comp = kind == EventKind::PsiZero ? 1 : 0;
      find_roots(seg, [&](double s) { return seg.deviation(s)(comp); }, options.event_tol, roots);
      for (double tr : roots) {
        const Eigen::Vector2d yr = seg.eval(tr);
        orbit.events.push_back({kind, tr, {yr(0), yr(1), tr}, seg.deviation(tr)(0)});
      }
    }

    orbit.segments.push_back(seg);
    const Eigen::Vector2d state = seg.eval(t);
    orbit.samples.push_back({state(0), state(1), t});
    const double dev = deviation();
    orbit.deviation.push_back(dev);

    if (!centered && y.norm() > options.domain_bound) {
      orbit.terminal = Terminal::LeftDomain;
      break;
    }
    if (!classified && forward && p1_contracting && dev < options.convergence_radius) {
      const std::size_t w = std::size_t(std::max(1, options.lyapunov_window));
      const auto& hist = orbit.deviation;
      if (hist.size() > w && dev < hist[hist.size() - 1 - w]) {
        classified = true;
        orbit.terminal = Terminal::ConvergedToP1;
      }
    }
    if (classified && dev < options.resolve_radius) break;
  }

  if (!forward) {
    std::reverse(orbit.samples.begin(), orbit.samples.end());
    std::reverse(orbit.deviation.begin(), orbit.deviation.end());
    std::reverse(orbit.segments.begin(), orbit.segments.end());
  }
  std::sort(orbit.events.begin(), orbit.events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
  return orbit;
}

Orbit integrate_from_origin(const LomseParams& params, double t_max, double epsilon,
                            const IntegrationOptions& options) {
  return integrate_orbit(params, seed_unstable(params, epsilon), t_max, options);
}

// ---------------------------------------------------------------------------

OscillationRecord oscillation_record(const Orbit& orbit, double resolution) {
  OscillationRecord rec;
  for (const Event& e : orbit.events_of(EventKind::PsiZero)) {
    rec.T.push_back(e.t);
    rec.phiT.push_back(e.point.phi);
    rec.devT.push_back(e.phi_dev);
  }
  if (rec.T.size() < 2) {
    throw Error(ErrorCode::InsufficientEvents, "need at least two psi-zero events, found " +
                                                   std::to_string(rec.T.size()));
  }
  while (rec.resolvable < rec.devT.size() && std::abs(rec.devT[rec.resolvable]) > resolution) {
    ++rec.resolvable;
  }

  const std::size_t m = rec.resolvable;
  rec.odd_decreasing = true;
  rec.even_increasing = true;
  rec.brackets_phi0 = true;
  for (std::size_t i = 0; i < m; ++i) {
    // index i is event T_{i+1}: odd events sit above phi0, even ones below
    const bool odd = i % 2 == 0;
    if (odd ? !(rec.devT[i] > 0) : !(rec.devT[i] < 0)) rec.brackets_phi0 = false;
    if (i >= 2) {
      if (odd && !(rec.devT[i] < rec.devT[i - 2])) rec.odd_decreasing = false;
      if (!odd && !(rec.devT[i] > rec.devT[i - 2])) rec.even_increasing = false;
    }
  }
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = double(i), yv = std::log(std::abs(rec.devT[i]));
      sx += x; sy += yv; sxx += x * x; sxy += x * yv;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rec.decay_ratio = std::exp(slope);
  }
  return rec;
}

// ---------------------------------------------------------------------------

double profile_residual(const LomseParams& params, double r, const RadialSample& s) {
  return r * ode1_lhs<double>(r, s.rho, s.rho_r, s.rho_rr, params.n, params.p, params.lambda_sq());
}

double Profile::max_abs_residual() const {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < residual.size(); ++i) m = std::max(m, std::abs(residual[i]));
  return m;
}

namespace {

Profile sampled_profile(const LomseParams& params, std::function<RadialSample(double)> eval, double r_lo,
                        double r_max) {
  Profile prof;
  prof.eval = std::move(eval);
  prof.r_min = 0.0;
  prof.r_max = r_max;
  constexpr int kSamples = 200;
  for (int i = 0; i < kSamples; ++i) {
    const double r = r_lo * std::pow(r_max / r_lo, double(i) / (kSamples - 1));
    const RadialSample s = prof.eval(r);
    prof.r.push_back(r);
    prof.rho.push_back(s.rho);
    prof.rho_r.push_back(s.rho_r);
    prof.rho_rr.push_back(s.rho_rr);
    prof.residual.push_back(profile_residual(params, r, s));
  }
  return prof;
}

}  // namespace

Profile Profile::cone(const LomseParams& params, double r_max) {
  const double phi0 = params.phi0;
  Profile prof = sampled_profile(params, [phi0](double r) { return RadialSample{phi0 * r, phi0, 0.0}; }, 1e-3, r_max);
  prof.small_r_slope = 1.0;
  return prof;
}

Profile Profile::flat(const LomseParams& params, double r_max) {
  Profile prof = sampled_profile(params, [](double) { return RadialSample{}; }, 1e-3, r_max);
  prof.small_r_slope = 0.0;
  return prof;
}

Profile extract_profile(const Orbit& orbit, const LomseParams& params) {
  if (orbit.terminal != Terminal::ConvergedToP1) {
    throw Error(ErrorCode::NotConverged, std::string("orbit terminal is ") + to_string(orbit.terminal));
  }
  auto shared = std::make_shared<const Orbit>(orbit);
  const PhasePoint first = orbit.samples.front();
  const double mu1 = params.k - 1.0;
  const double kk = params.k;
  const double r_max = std::exp(orbit.t_end());

  Profile prof;
  prof.r_min = std::exp(first.t);
  prof.r_max = r_max;
  prof.eval = [shared, first, mu1, kk, r_max](double r) -> RadialSample {
    if (!(r > 0.0) || r > r_max * (1 + 1e-12)) {
      throw Error(ErrorCode::DomainTooShort, "radius " + std::to_string(r) + " outside (0, r_max]");
    }
    const double t = std::log(r);
    if (t < first.t) {
      // Linear regime along V1: phi ~ phi_s e^{(k-1)(t-t_s)}, psi = (k-1) phi.
      const double phi = first.phi * std::exp(mu1 * (t - first.t));
      return {r * phi, kk * phi, kk * mu1 * phi / r, mu1 * phi};
    }
    const double tc = std::min(t, shared->t_end());
    const PhasePoint pt = shared->at(tc);
    const Eigen::Vector2d d = shared->derivative_at(tc);
    return {r * pt.phi, pt.phi + pt.psi, (d(1) + pt.psi) / r, pt.psi};
  };

  auto push = [&](double t) {
    const double r = std::exp(t);
    const PhasePoint pt = orbit.at(t);
    const Eigen::Vector2d d = orbit.derivative_at(t);
    const RadialSample s{r * pt.phi, pt.phi + pt.psi, (d(1) + pt.psi) / r, pt.psi};
    prof.r.push_back(r);
    prof.rho.push_back(s.rho);
    prof.rho_r.push_back(s.rho_r);
    prof.rho_rr.push_back(s.rho_rr);
    prof.residual.push_back(profile_residual(params, r, s));
  };
  for (const OrbitSegment& seg : orbit.segments) {
    push(seg.t0());
    push(seg.t0() + 0.5 * seg.h());
  }
  push(orbit.t_end());

  // Fit on the regime where the nonlinearity is negligible.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    if (prof.rho[i] / prof.r[i] < 1e-4 * params.phi0) idx.push_back(i);
  }
  if (idx.size() < 2) {
    for (std::size_t i = 0; i < std::max<std::size_t>(2, prof.r.size() / 10); ++i) idx.push_back(i);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i : idx) {
    const double x = std::log(prof.r[i]), yv = std::log(prof.rho[i]);
    sx += x; sy += yv; sxx += x * x; sxy += x * yv;
  }
  const double m = double(idx.size());
  prof.small_r_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return prof;
}

}  // namespace lomse
