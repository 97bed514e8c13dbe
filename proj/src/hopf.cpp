#include "lomse/hopf.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <boost/math/tools/roots.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace lomse {

std::vector<Eigen::Vector4d> sample_sphere(int count, std::uint64_t seed) {
  boost::random::mt19937_64 rng(seed);
  boost::random::normal_distribution<double> normal;
  std::vector<Eigen::Vector4d> out;
  out.reserve(std::size_t(std::max(count, 0)));
  while (int(out.size()) < count) {
    Eigen::Vector4d v(normal(rng), normal(rng), normal(rng), normal(rng));
    const double len = v.norm();
    if (len < 1e-8) continue;
    out.push_back(v / len);
  }
  return out;
}

SphereSample singular_value_sample(const Eigen::Vector4d& x) {
  SphereSample s;
  s.x = x;
  s.fx = hopf_map<double>(x);
  const Eigen::Matrix4d proj = Eigen::Matrix4d::Identity() - x * x.transpose();
  s.jacobian = hopf_jacobian<double>(x) * proj;
  s.gram_trace = (s.jacobian * s.jacobian.transpose()).trace();
  // Square roots of Gram eigenvalues would leave the zero singular value at ~sqrt(eps); the
  // one-sided Jacobi SVD resolves it to ~eps.
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(s.jacobian);
  s.singular_values = svd.singularValues();
  return s;
}

namespace {

double los_from_sigmas(const Eigen::Vector3d& sigma, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  double acc = 0.0;
  for (int j = 0; j < 3; ++j) acc += 1.0 / (c2 + s2 * sigma(j) * sigma(j));
  return acc - 3.0;
}

}  // namespace

double los_condition_b(const Eigen::Vector4d& x, double theta) {
  if (!(theta > 0.0 && theta < M_PI / 2)) throw Error(ErrorCode::InvalidRange, "theta must lie in (0, pi/2)");
  return los_from_sigmas(singular_value_sample(x).singular_values, theta);
}

LosRoot los_condition_root(const Eigen::Vector4d& x, double tol, int scan) {
  const Eigen::Vector3d sigma = singular_value_sample(x).singular_values;
  const auto g = [&](double th) { return los_from_sigmas(sigma, th); };

  LosRoot out;
  const double lo = 1e-6, hi = M_PI / 2 - 1e-6;
  double a = lo, b = hi;
  double prev = g(lo);
  for (int i = 1; i <= scan; ++i) {
    const double th = lo + (hi - lo) * i / scan;
    const double v = g(th);
    if ((prev > 0) != (v > 0)) {
      ++out.sign_changes;
      if (out.sign_changes == 1) {
        a = lo + (hi - lo) * (i - 1) / scan;
        b = th;
      }
    }
    prev = v;
  }
  if (out.sign_changes == 0) throw Error(ErrorCode::NotConverged, "condition (b) has no root in (0, pi/2)");
  const auto done = [tol](double u, double v) { return std::abs(v - u) <= tol; };
  const auto bracket = boost::math::tools::bisect(g, a, b, done);
  out.theta = 0.5 * (bracket.first + bracket.second);
  return out;
}

double general_ode_residual(const Profile& profile, const Eigen::Vector4d& x, double r) {
  const SphereSample sample = singular_value_sample(x);
  const RadialSample s = profile.at(r);
  const std::vector<double> sig(sample.singular_values.data(), sample.singular_values.data() + 3);
  return r * general_ode_lhs<double>(r, s.rho, s.rho_r, s.rho_rr, sig);
}

HarmonicReport harmonic_degree_check(std::uint64_t seed, int samples) {
  HarmonicReport rep;
  Eigen::Matrix4d q1 = Eigen::Matrix4d::Zero(), q2 = Eigen::Matrix4d::Zero(), q3 = Eigen::Matrix4d::Zero();
  q1(0, 2) = q1(2, 0) = 1;
  q1(1, 3) = q1(3, 1) = 1;
  q2(1, 2) = q2(2, 1) = 1;
  q2(0, 3) = q2(3, 0) = -1;
  q3.diagonal() << 1, 1, -1, -1;
  rep.components = {{"2(x1x3+x2x4)", q1, 2, 2 * q1.trace()},
                    {"2(x2x3-x1x4)", q2, 2, 2 * q2.trace()},
                    {"x1^2+x2^2-x3^2-x4^2", q3, 2, 2 * q3.trace()}};
  rep.degree = 2;
  rep.eigenvalue = rep.degree * (rep.degree + 3 - 1);

  double lsq = 0.0;
  for (const auto& x : sample_sphere(samples, seed)) {
    const Eigen::Vector3d h = hopf_map<double>(x);
    for (int i = 0; i < 3; ++i) {
      const double form = x.dot(rep.components[std::size_t(i)].form * x);
      rep.max_form_mismatch = std::max(rep.max_form_mismatch, std::abs(form - h(i)));
    }
    const double s = singular_value_sample(x).singular_values(0);
    lsq = std::max(lsq, s * s);
  }
  // rank 2 = p
  rep.sampled_lambda_sq_p = 2.0 * lsq;
  rep.pass = rep.max_form_mismatch < 1e-12 && std::abs(rep.sampled_lambda_sq_p - double(rep.eigenvalue)) < 1e-9 &&
             std::all_of(rep.components.begin(), rep.components.end(),
                         [](const HarmonicComponent& c) { return c.laplacian == 0.0 && c.degree == 2; });
  return rep;
}

HopfReport hopf_verification_report(int samples, std::uint64_t seed) {
  HopfReport rep;
  const auto xs = sample_sphere(samples, seed);
  const auto add = [&](std::string name, double dev, double tol) {
    rep.checks.push_back({std::move(name), dev, tol, dev < tol});
  };

  double unit = 0, sv = 0, trace = 0, los = 0, los_pi4 = 0;
  const double theta_m = std::acos(2.0 / 3.0);
  for (const auto& x : xs) {
    const SphereSample s = singular_value_sample(x);
    unit = std::max(unit, std::abs(s.fx.norm() - 1.0));
    sv = std::max({sv, std::abs(s.singular_values(0) - 2), std::abs(s.singular_values(1) - 2),
                   std::abs(s.singular_values(2))});
    trace = std::max(trace, std::abs(s.gram_trace - 8.0));
    los = std::max(los, std::abs(los_from_sigmas(s.singular_values, theta_m)));
    los_pi4 = std::max(los_pi4, std::abs(los_from_sigmas(s.singular_values, M_PI / 4) + 0.2));
  }
  add("|H(x)| = 1", unit, 1e-12);
  add("singular values (2,2,0)", sv, 1e-9);
  add("Gram trace = 8", trace, 1e-9);
  add("condition (b) at arccos(2/3)", los, 1e-9);
  add("condition (b) at pi/4 = -0.2", los_pi4, 1e-9);

  const LosRoot root = los_condition_root(xs.front());
  rep.los_root = root.theta;
  add("bisection root - arccos(2/3)", std::abs(root.theta - theta_m), 1e-10);
  add("sign changes of (b) in (0, pi/2) - 1", std::abs(root.sign_changes - 1.0), 0.5);

  const HarmonicReport harm = harmonic_degree_check(seed, std::min(samples, 100));
  add("harmonic components, eigenvalue 8", harm.pass ? 0.0 : 1.0, 0.5);

  // General equation with sampled singular values against the constant-coefficient form.
  const LomseParams params = validate_params(3, 2, 2);
  const Profile prof = extract_profile(integrate_from_origin(params), params);
  const Profile cone = Profile::cone(params);
  double agree = 0, cone_res = 0;
  const auto pts = sample_sphere(20, seed + 1);
  for (const auto& x : pts) {
    for (std::size_t i = 1; i + 1 < prof.r.size(); i += 97) {
      const double r = prof.r[i];
      agree = std::max(agree, std::abs(general_ode_residual(prof, x, r) - prof.residual[i]));
    }
    for (double r : {1e-2, 1.0, 1e2, 1e4}) cone_res = std::max(cone_res, std::abs(general_ode_residual(cone, x, r)));
  }
  add("general vs constant-coefficient residual", agree, 1e-8);
  add("cone residual", cone_res, 1e-9);

  boost::random::mt19937_64 rng(seed + 2);
  boost::random::uniform_real_distribution<double> ur(0.1, 10.0), uv(-5.0, 5.0);
  double ding_yuan = 0;
  for (int i = 0; i < 100; ++i) {
    const double r = ur(rng), rho = uv(rng), rho_r = uv(rng), rho_rr = uv(rng);
    const double a = ode4_lhs<double>(r, rho, rho_r, rho_rr, 2);
    const double b = ode1_lhs<double>(r, rho, rho_r, rho_rr, 3.0, 2.0, 4.0);
    ding_yuan = std::max(ding_yuan, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  add("m = 2 Hopf form vs (3,2,lambda^2 = 4)", ding_yuan, 1e-12);

  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const VerificationCheck& c) { return c.pass; });
  return rep;
}

}  // namespace lomse
