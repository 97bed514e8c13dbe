#include <doctest.h>

#include <cmath>

#include "lomse/error.hpp"
#include "lomse/geometry.hpp"
#include "support.hpp"

using namespace lomse;

namespace {

// Composite Simpson in t = log r, kept separate from the library quadrature.
double simpson_volume(const Profile& prof, const LomseParams& prm, double R) {
  const int m = 20000;
  const double a = std::log(R) - 30.0, b = std::log(R);
  const double h = (b - a) / m;
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = a + i * h;
    const double r = std::exp(t);
    const auto s = prof.at(r);
    const double f = std::sqrt(1 + s.rho_r * s.rho_r) *
                     std::pow(r * r + prm.lambda_sq() * s.rho * s.rho, 0.5 * prm.p) * std::pow(r, prm.n - prm.p) * r;
    acc += f * (i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return sphere_volume(prm.n) * acc * h / 3.0;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidRange;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("sphere and ball volumes") {
    CHECK(sphere_volume(1) == doctest::Approx(2 * M_PI));
    CHECK(sphere_volume(2) == doctest::Approx(4 * M_PI));
    CHECK(sphere_volume(3) == doctest::Approx(2 * M_PI * M_PI));
    CHECK(ball_volume(2) == doctest::Approx(M_PI));
    CHECK(ball_volume(3) == doctest::Approx(4 * M_PI / 3));
    for (int n = 1; n < 20; ++n) CHECK(sphere_volume(n) == doctest::Approx((n + 1) * ball_volume(n + 1)));
  }

  TEST_CASE("hopf cone values") {
    const auto prm = validate_params(3, 2, 2);
    const auto g = geometry_report(prm);
    CHECK(g.cos_alpha == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(g.slope_W == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(g.volume_ratio == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
    CHECK(los_volume_ratio(validate_params(3, 2, 4)) == doctest::Approx(4.824181513244218).epsilon(1e-14));
  }

  TEST_CASE("property: closed forms agree with the trigonometric ones") {
    test::TripleGenerator gen(4242);
    for (int i = 0; i < 300; ++i) {
      const auto t = gen.next();
      const auto prm = validate_params(t[0], t[1], t[2]);
      CAPTURE(t[0]);
      CAPTURE(t[2]);
      const double v = los_volume_ratio(prm);
      CHECK(v == doctest::Approx(los_volume_ratio(prm.theta, prm.lambda, prm.n, prm.p)).epsilon(1e-10));
      CHECK(v > 1.0);
      // a single angle theta on the radial direction, arctan(lambda tan theta) with multiplicity p
      const auto angles = jordan_angles(prm);
      int total = 0;
      double prod = 1.0;
      for (const auto& a : angles) {
        total += a.multiplicity;
        prod *= std::pow(std::cos(a.angle), a.multiplicity);
        CHECK(a.angle >= 0.0);
        CHECK(a.angle < M_PI / 2);
      }
      CHECK(total == prm.n + 1);
      CHECK(angles[0].angle == doctest::Approx(std::atan(prm.lambda * std::tan(prm.theta))).epsilon(1e-12));
      const double ca = normal_angle_cos(prm);
      CHECK(ca == doctest::Approx(prod).epsilon(1e-10));
      CHECK(ca > 0.0);
      CHECK(ca < 1.0);
      CHECK(slope_function(prm) * ca == doctest::Approx(1.0));
    }
  }

  TEST_CASE("flat and cone volumes") {
    const auto prm = validate_params(3, 2, 4);
    const auto flat = Profile::flat(prm);
    for (double R : {1.0, 3.0, 1e3}) {
      CHECK(graph_volume(flat, prm, R) == doctest::Approx(sphere_volume(3) * std::pow(R, 4) / 4).epsilon(1e-10));
    }
    CHECK(density_at(flat, prm, 10.0) == doctest::Approx(1.0).epsilon(1e-10));

    const auto cone = Profile::cone(prm);
    const double lsq = prm.lambda_sq(), ph = prm.phi0;
    const double closed = sphere_volume(3) * std::sqrt(1 + ph * ph) * std::pow(1 + lsq * ph * ph, 1.0) / 4;
    CHECK(graph_volume(cone, prm, 1.0) == doctest::Approx(closed).epsilon(1e-10));
    for (double d : {1e-2, 1.0, 1e5}) {
      CHECK(density_at(cone, prm, d) == doctest::Approx(los_volume_ratio(prm)).epsilon(1e-10));
    }
  }

  TEST_CASE("graph volume against an independent quadrature") {
    for (const auto& t : std::vector<std::array<int, 3>>{{3, 2, 2}, {3, 2, 4}, {7, 4, 2}}) {
      const auto prm = validate_params(t[0], t[1], t[2]);
      const auto prof = extract_profile(integrate_from_origin(prm), prm);
      for (double R : {0.5, 1.0, 4.0, 50.0}) {
        CHECK(graph_volume(prof, prm, R) == doctest::Approx(simpson_volume(prof, prm, R)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("type I density is monotone and tends to the cone") {
    const auto prm = validate_params(3, 2, 2);
    const auto prof = extract_profile(integrate_from_origin(prm), prm);
    std::vector<double> radii;
    for (int i = 0; i < 50; ++i) radii.push_back(std::exp(-5.0 + 45.0 * i / 49.0));
    const auto rep = density_report(prof, prm, radii);
    CHECK(rep.nondecreasing(1e-9));
    CHECK(rep.theta_seq.front() >= 1.0 - 1e-12);
    CHECK(rep.theta_seq.back() == doctest::Approx(rep.theta_cone).epsilon(1e-8));
    CHECK(rep.theta_cone_quadrature == doctest::Approx(rep.theta_cone).epsilon(1e-10));
    // monotonicity formula: the psi^2 integral beyond d equals Theta_0 - Theta(d)
    int compared = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double direct = rep.theta_cone - rep.theta_seq[i];
      CHECK(rep.deficit[i] >= 0.0);
      if (direct > 1e-6) {
        CHECK(rep.deficit[i] == doctest::Approx(direct).epsilon(1e-6));
        ++compared;
      }
    }
    CHECK(compared >= 5);
  }

  TEST_CASE("errors") {
    const auto prm = validate_params(3, 2, 2);
    const auto cone = Profile::cone(prm, 10.0);
    CHECK(code_of([&] { graph_volume(cone, prm, 11.0); }) == ErrorCode::DomainTooShort);
    CHECK(code_of([&] { graph_volume(cone, prm, -1.0); }) == ErrorCode::InvalidRange);
    CHECK(code_of([&] { density_at(cone, prm, 100.0); }) == ErrorCode::DomainTooShort);
  }
}
