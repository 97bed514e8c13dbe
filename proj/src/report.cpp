#include "lomse/report.hpp"

#include <cstdio>

namespace lomse {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json matrix_json(const Eigen::Matrix2d& m) {
  return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

}  // namespace

Json to_json(const LomseParams& params) {
  Json j;
  j["n"] = params.n;
  j["p"] = params.p;
  j["k"] = params.k;
  j["family"] = to_string(params.family);
  j["validation"] = params.validation == Validation::Strict ? "strict" : "relaxed";
  j["lambda"] = params.lambda;
  j["theta"] = params.theta;
  j["phi0"] = params.phi0;
  j["stability"] = to_string(params.stability);
  const ExactScalars& ex = params.exact;
  j["exact"] = {{"eigen_degree", ex.eigen_degree.str()},
                {"lambda_sq", to_fraction_string(ex.lambda_sq)},
                {"phi0_sq", to_fraction_string(ex.phi0_sq)},
                {"cos_sq_theta", to_fraction_string(ex.cos_sq_theta)},
                {"a", to_fraction_string(ex.a)},
                {"b", to_fraction_string(ex.b)},
                {"discriminant", to_fraction_string(ex.discriminant)}};
  return j;
}

Json to_json(const SpectralData& s) {
  return Json{{"A", matrix_json(s.A)},
              {"mu1", s.mu1},
              {"mu2", s.mu2},
              {"V1", Json::array({s.V1(0), s.V1(1)})},
              {"V2", Json::array({s.V2(0), s.V2(1)})},
              {"B", matrix_json(s.B)},
              {"a", s.a},
              {"b", s.b},
              {"mu3", complex_json(s.mu3)},
              {"mu4", complex_json(s.mu4)},
              {"discriminant", s.discriminant}};
}

Json to_json(const GeometryReport& geo) {
  Json angles = Json::array();
  for (const auto& a : geo.jordan_angles) angles.push_back({{"angle", a.angle}, {"multiplicity", a.multiplicity}});
  return Json{{"cos_alpha", geo.cos_alpha},
              {"volume_ratio", geo.volume_ratio},
              {"jordan_angles", angles},
              {"slope_W", geo.slope_W}};
}

Json to_json(const BarrierCertificate& cert) {
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    Json e{{"name", c.name}, {"value", c.value}, {"required_sign", c.required_sign}, {"pass", c.pass}};
    if (!c.exact.empty()) e["exact"] = c.exact;
    checks.push_back(e);
  }
  return Json{{"case_id", to_string(cert.case_id)},
              {"c", to_fraction_string(cert.c)},
              {"checks", checks},
              {"grid_resolution", cert.grid_resolution},
              {"pass", cert.pass}};
}

Json to_json(const DirichletReport& rep) {
  Json j;
  j["phi_boundary"] = rep.phi_boundary;
  j["crossing_ts"] = rep.crossing_ts;
  j["d_values"] = rep.d_values;
  j["multiplicity"] = {{"kind", to_string(rep.multiplicity.kind)}, {"count", rep.multiplicity.count}};
  j["phi1"] = rep.phi1;
  j["phi2"] = rep.phi2 ? Json(*rep.phi2) : Json(nullptr);
  j["epsilon_window"] = rep.epsilon_window ? Json(*rep.epsilon_window) : Json(nullptr);
  j["decay_ratio"] = rep.decay_ratio ? Json(*rep.decay_ratio) : Json(nullptr);
  Json extra = Json::array();
  for (const auto& e : rep.extra_solutions) extra.push_back({{"kind", e.kind}, {"phi", e.phi}});
  j["extra_solutions"] = extra;
  return j;
}

Json to_json(const DensityReport& rep) {
  return Json{{"radii", rep.radii},
              {"theta_seq", rep.theta_seq},
              {"theta_cone", rep.theta_cone},
              {"theta_cone_quadrature", rep.theta_cone_quadrature},
              {"deficit", rep.deficit},
              {"deficit_error", rep.deficit_error},
              {"tolerance", rep.tolerance},
              {"verdict", to_string(rep.verdict)}};
}

Json to_json(const OscillationRecord& rec) {
  return Json{{"T", rec.T},
              {"phiT", rec.phiT},
              {"phi_minus_phi0", rec.devT},
              {"resolvable", rec.resolvable},
              {"decay_ratio", rec.decay_ratio},
              {"odd_decreasing", rec.odd_decreasing},
              {"even_increasing", rec.even_increasing},
              {"brackets_phi0", rec.brackets_phi0}};
}

Json to_json(const HopfReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(
        {{"name", c.name}, {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return Json{{"checks", checks}, {"los_root", rep.los_root}, {"pass", rep.pass}};
}

Json orbit_summary(const Orbit& orbit) {
  Json events = Json::array();
  for (const auto& e : orbit.events) {
    events.push_back({{"kind", to_string(e.kind)},
                      {"t", e.t},
                      {"phi", e.point.phi},
                      {"psi", e.point.psi},
                      {"phi_minus_phi0", e.phi_dev}});
  }
  return Json{{"n", orbit.n},
              {"p", orbit.p},
              {"k", orbit.k},
              {"phi0", orbit.phi0},
              {"terminal", to_string(orbit.terminal)},
              {"t_begin", orbit.t_begin()},
              {"t_end", orbit.t_end()},
              {"samples", orbit.samples.size()},
              {"final_deviation", orbit.deviation.back()},
              {"events", events}};
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit) {
  os << "t,phi,psi\n";
  for (const auto& s : orbit.samples) os << g17(s.t) << ',' << g17(s.phi) << ',' << g17(s.psi) << '\n';
}

void write_profile_csv(std::ostream& os, const Profile& profile) {
  os << "r,rho,rho_r,residual\n";
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    os << g17(profile.r[i]) << ',' << g17(profile.rho[i]) << ',' << g17(profile.rho_r[i]) << ','
       << g17(profile.residual[i]) << '\n';
  }
}

}  // namespace lomse
