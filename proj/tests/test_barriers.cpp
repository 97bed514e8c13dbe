#include <doctest.h>

#include <cmath>
#include <random>

#include "lomse/barriers.hpp"
#include "lomse/error.hpp"
#include "support.hpp"

using namespace lomse;

namespace {

std::string exact_of(const BarrierCertificate& cert, const std::string& name) {
  const BarrierCheck* c = cert.find(name);
  REQUIRE(c != nullptr);
  return c->exact;
}

// F(0) and the linear coefficient written out by hand, s = 0 means phi = phi0.
Rational F0_closed(const LomseParams& prm, const Rational& c) {
  const Rational n(prm.n), p(prm.p), l2 = prm.exact.lambda_sq;
  const Rational L = (l2 * p - n) / (n - p);
  const Rational I = 1;
  const Rational II = -2 * (n - p) * L / (c * (l2 - 1) * p);
  const Rational III = (n - p) * (l2 - c * (l2 - 1)) / (l2 - 1);
  const Rational IV = 1 + L / l2;
  return I + II + III * IV;
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

TEST_SUITE("barriers") {
  TEST_CASE("type I constants") {
    const auto c1 = barrier_certificate_A3(validate_params(3, 2, 2));
    CHECK(c1.case_id == BarrierCase::A3Case1);
    CHECK(c1.c == 1);
    CHECK(exact_of(c1, "F(0)") == "1/12");
    CHECK(exact_of(c1, "G(0)") == "3/4");
    CHECK(c1.pass);

    const auto c2 = barrier_certificate_A3(validate_params(5, 4, 2));
    CHECK(c2.case_id == BarrierCase::A3Case2);
    CHECK(exact_of(c2, "F(0)") == "11/12");
    CHECK(exact_of(c2, "G(0)") == "13/6");
    CHECK(c2.pass);

    const auto c3 = barrier_certificate_A3(validate_params(5, 4, 4));
    CHECK(c3.case_id == BarrierCase::A3Case3);
    CHECK(c3.c == make_rational(6, 7));
    CHECK(exact_of(c3, "F(0)") == "0/1");
    CHECK(exact_of(c3, "G(0)") == "5/7");
    CHECK(c3.pass);
    CHECK(c3.grid_resolution >= 1000);
  }

  TEST_CASE("closed forms of F(0) and the linear coefficient") {
    for (const auto& t : std::vector<std::array<int, 3>>{{3, 2, 2}, {5, 4, 2}, {5, 4, 4}, {7, 4, 2}, {15, 8, 2}}) {
      const auto prm = validate_params(t[0], t[1], t[2]);
      Rational c;
      typeI_case(prm, &c);
      const auto F = typeI_barrier_polynomial(prm, c);
      CHECK(F(0) == F0_closed(prm, c));
      CHECK(F.degree() == 3);
      // G(s) = (F(s) - F(0))/s
      const Rational s(3, 11);
      Rational G = 0;
      for (int i = F.degree(); i >= 1; --i) G = G * s + F.coeffs[std::size_t(i)];
      CHECK((F(s) - F(0)) / s == G);
      CHECK(F.derivative()(0) == F.coeffs[1]);
    }
  }

  TEST_CASE("property: polynomial matches its factors at random points") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(1, 500);
    const auto prm = validate_params(7, 4, 2);
    const Rational c(1, 2);
    const auto F = typeI_barrier_polynomial(prm, c);
    const Rational n(7), p(4), l2 = prm.exact.lambda_sq;
    const Rational L = (l2 * p - n) / (n - p);
    for (int i = 0; i < 50; ++i) {
      const Rational s(num(rng), 100);
      const Rational I = 1 + s / c;
      const Rational II = -2 * (n - p) / (c * (l2 - 1) * p) * (L - s) * (1 + s);
      const Rational III = (n - p) / (l2 - 1) * (l2 - c * (l2 - 1) + s);
      const Rational IV = 1 + (L - s) * (1 + s / c) / l2;
      CHECK(F(s) == I + II + III * IV);
    }
    RationalPolynomial a{{1, 2}}, b{{make_rational(1, 3), 0, 1}};
    CHECK((a * b).degree() == 3);
    CHECK((a + b)(2) == a(2) + b(2));
    CHECK((make_rational(3) * a)(5) == 33);
  }

  TEST_CASE("every listed type I triple certifies") {
    for (const auto& t : std::vector<std::array<int, 3>>{{3, 2, 2}, {5, 4, 2}, {5, 4, 4}, {7, 4, 2}, {15, 8, 2}}) {
      const auto cert = barrier_certificate_A3(validate_params(t[0], t[1], t[2]));
      CAPTURE(t[0]);
      CAPTURE(t[2]);
      CHECK(cert.pass);
      for (const auto& ch : cert.checks) {
        CAPTURE(ch.name);
        CHECK(ch.pass);
      }
    }
    test::TripleGenerator gen(555);
    int seen = 0;
    for (int i = 0; i < 60; ++i) {
      const auto t = gen.next(5, 12);
      if (t[0] < 7) continue;
      ++seen;
      const auto cert = barrier_certificate_A3(validate_params(t[0], t[1], t[2]), 1000);
      CHECK(cert.case_id == BarrierCase::A3Case4);
      CHECK(cert.pass);
    }
    CHECK(seen > 10);
  }

  TEST_CASE("spiral bound") {
    CHECK(spiral_bound_F(make_rational(1, 5)) == make_rational(32, 27));
    for (double s : {0.01, 0.1, 0.19, 0.21, 0.5, 2.0, 100.0}) CHECK(spiral_bound_F(s) > 32.0 / 27.0);
    CHECK(spiral_bound_F(0.2) == doctest::Approx(32.0 / 27.0).epsilon(1e-15));
    CHECK(limit_cycle_threshold(validate_params(3, 2, 4)) == doctest::Approx(std::sqrt(2.0 / 3.0)));

    for (const auto& t : std::vector<std::array<int, 3>>{{3, 2, 4}, {3, 2, 6}, {5, 4, 6}, {5, 4, 8}}) {
      const auto cert = barrier_certificate_A4(validate_params(t[0], t[1], t[2]));
      CAPTURE(t[0]);
      CAPTURE(t[2]);
      CHECK(cert.case_id == BarrierCase::A4);
      for (const auto& ch : cert.checks) {
        CAPTURE(ch.name);
        CHECK(ch.pass);
      }
      CHECK(cert.find("F(1/5) - 32/27")->exact == "0/1");
      CHECK(std::abs(cert.find("numerical min F - 32/27")->value) < 1e-10);
    }
  }

  TEST_CASE("wrong cases") {
    CHECK(code_of([] { barrier_certificate_A3(validate_params(3, 2, 4)); }) == ErrorCode::WrongCase);
    CHECK(code_of([] { barrier_certificate_A4(validate_params(3, 2, 2)); }) == ErrorCode::WrongCase);
    CHECK(code_of([] { typeI_case(validate_params(5, 4, 6)); }) == ErrorCode::WrongCase);
  }
}
