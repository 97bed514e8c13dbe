#include <doctest.h>

#include <sstream>

#include "lomse/report.hpp"

using namespace lomse;

TEST_SUITE("report") {
  TEST_CASE("params carry exact fractions") {
    const auto j = to_json(validate_params(3, 2, 2));
    CHECK(j["n"] == 3);
    CHECK(j["stability"] == "TypeI");
    CHECK(j["exact"]["phi0_sq"] == "5/4");
    CHECK(j["exact"]["lambda_sq"] == "4/1");
  }

  TEST_CASE("doubles round-trip") {
    const auto prm = validate_params(3, 2, 4);
    const auto j = to_json(geometry_report(prm));
    const double v = Json::parse(j.dump())["volume_ratio"].get<double>();
    CHECK(v == los_volume_ratio(prm));
  }

  TEST_CASE("barrier json") {
    const auto j = to_json(barrier_certificate_A3(validate_params(5, 4, 4)));
    CHECK(j["case_id"] == "A3Case3");
    CHECK(j["c"] == "6/7");
    bool found = false;
    for (const auto& c : j["checks"]) {
      if (c["name"] == "F(0)") {
        CHECK(c["exact"] == "0/1");
        found = true;
      }
    }
    CHECK(found);
  }

  TEST_CASE("csv headers") {
    const auto prm = validate_params(3, 2, 2);
    const auto orbit = integrate_from_origin(prm);
    std::ostringstream a, b;
    write_orbit_csv(a, orbit);
    write_profile_csv(b, extract_profile(orbit, prm));
    CHECK(a.str().substr(0, a.str().find('\n')) == "t,phi,psi");
    CHECK(b.str().substr(0, b.str().find('\n')) == "r,rho,rho_r,residual");
    std::size_t lines = 0;
    for (char ch : a.str()) lines += ch == '\n';
    CHECK(lines == orbit.samples.size() + 1);
    const auto s = orbit_summary(orbit);
    CHECK(s["terminal"] == "ConvergedToP1");
  }

  TEST_CASE("dirichlet json") {
    const auto prm = validate_params(3, 2, 4);
    const auto orbit = integrate_from_origin(prm);
    const auto j = to_json(dirichlet_multiplicity(orbit, prm, prm.phi0));
    CHECK(j["multiplicity"]["kind"] == "UnboundedSequence");
    CHECK(j["d_values"].size() >= 3);
    const auto& d0 = j["d_values"][0];
    CHECK(Json::parse(d0.dump()).get<double>() == d0.get<double>());
  }
}
