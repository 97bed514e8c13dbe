#include <doctest.h>

#include <cmath>
#include <random>

#include "lomse/error.hpp"
#include "lomse/hopf.hpp"

using namespace lomse;

TEST_SUITE("hopf") {
  TEST_CASE("map values") {
    const Eigen::Vector3d pole = hopf_map<double>(Eigen::Vector4d(1, 0, 0, 0));
    CHECK((pole - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
    const double h = std::sqrt(0.5);
    const Eigen::Vector3d e1 = hopf_map<double>(Eigen::Vector4d(h, 0, h, 0));
    CHECK((e1 - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
    try {
      hopf_map<double>(Eigen::Vector4d(1, 1, 0, 0));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotOnSphere);
    }
  }

  TEST_CASE("property: unit image and analytic jacobian") {
    for (const auto& x : sample_sphere(10000, 11)) {
      CHECK(std::abs(x.norm() - 1.0) < 1e-14);
      CHECK(std::abs(hopf_map<double>(x).norm() - 1.0) < 1e-12);
    }
    // central differences of the polynomial map off the sphere
    const auto poly = [](const Eigen::Vector4d& y) {
      return Eigen::Vector3d(2 * (y(0) * y(2) + y(1) * y(3)), 2 * (y(1) * y(2) - y(0) * y(3)),
                             y(0) * y(0) + y(1) * y(1) - y(2) * y(2) - y(3) * y(3));
    };
    for (const auto& x : sample_sphere(50, 12)) {
      Eigen::Matrix<double, 3, 4> fd;
      for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e(j) = 1e-6;
        fd.col(j) = (poly(x + e) - poly(x - e)) / 2e-6;
      }
      CHECK((fd - hopf_jacobian<double>(x)).norm() < 1e-8);
    }
  }

  TEST_CASE("singular values") {
    for (const auto& x : sample_sphere(1000, 3)) {
      const auto s = singular_value_sample(x);
      CHECK(std::abs(s.singular_values(0) - 2) < 1e-9);
      CHECK(std::abs(s.singular_values(1) - 2) < 1e-9);
      CHECK(std::abs(s.singular_values(2)) < 1e-9);
      CHECK(std::abs(s.gram_trace - 8) < 1e-9);
      // the radial direction is killed by the projection
      CHECK((s.jacobian * x).norm() < 1e-12);
    }
  }

  TEST_CASE("condition (b)") {
    const Eigen::Vector4d x = sample_sphere(1, 5).front();
    const double theta = std::acos(2.0 / 3.0);
    CHECK(std::abs(los_condition_b(x, theta)) < 1e-9);
    CHECK(los_condition_b(x, M_PI / 4) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(std::abs(los_condition_b(x, 1e-8)) < 1e-12);
    const auto root = los_condition_root(x);
    CHECK(root.sign_changes == 1);
    CHECK(std::abs(root.theta - theta) < 1e-10);
    try {
      los_condition_b(x, 0.0);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidRange);
    }
  }

  TEST_CASE("radial equations agree") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> ur(0.1, 10.0), uv(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
      const double r = ur(rng), rho = uv(rng), rr = uv(rng), rrr = uv(rng);
      const double a = ode4_lhs<double>(r, rho, rr, rrr, 2);
      const double b = ode1_lhs<double>(r, rho, rr, rrr, 3.0, 2.0, 4.0);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
      const std::vector<double> sig{2.0, 2.0, 0.0};
      CHECK(std::abs(general_ode_lhs<double>(r, rho, rr, rrr, sig) - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
    const auto prm = validate_params(3, 2, 2);
    const auto prof = extract_profile(integrate_from_origin(prm), prm);
    for (const auto& x : sample_sphere(20, 9)) {
      for (std::size_t i = 5; i + 5 < prof.r.size(); i += 41) {
        CHECK(std::abs(general_ode_residual(prof, x, prof.r[i]) - prof.residual[i]) < 1e-8);
      }
    }
  }

  TEST_CASE("harmonic components") {
    const auto rep = harmonic_degree_check();
    CHECK(rep.pass);
    CHECK(rep.eigenvalue == 8);
    CHECK(rep.sampled_lambda_sq_p == doctest::Approx(8.0).epsilon(1e-9));
    for (const auto& c : rep.components) CHECK(c.laplacian == 0.0);
  }

  TEST_CASE("full report") {
    const auto rep = hopf_verification_report();
    for (const auto& c : rep.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
    CHECK(rep.pass);
    CHECK(rep.checks.size() >= 10);
  }

  TEST_CASE("sampling is seeded") {
    const auto a = sample_sphere(5, 42), b = sample_sphere(5, 42), c = sample_sphere(5, 43);
    for (int i = 0; i < 5; ++i) CHECK(a[std::size_t(i)] == b[std::size_t(i)]);
    CHECK(a[0] != c[0]);
  }
}
