#include "lomse/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "lomse/dynamics.hpp"
#include "lomse/error.hpp"

namespace lomse {

namespace {

using Poly = RationalPolynomial;

Poly constant(const Rational& a) { return Poly{{a}}; }
Poly linear(const Rational& a0, const Rational& a1) { return Poly{{a0, a1}}; }

BarrierCheck exact_check(std::string name, const Rational& v, const std::string& sign) {
  BarrierCheck c;
  c.name = std::move(name);
  c.value = to_double(v);
  c.required_sign = sign;
  c.exact = to_fraction_string(v);
  if (sign == ">0") c.pass = v > 0;
  else if (sign == ">=0") c.pass = v >= 0;
  else if (sign == "=0") c.pass = v == 0;
  else c.pass = v < 0;
  return c;
}

// Smallest sampled value of `margin`; the check passes when every sample is positive.
template <typename M>
BarrierCheck grid_check(std::string name, const std::vector<double>& xs, M&& margin) {
  double worst = std::numeric_limits<double>::infinity();
  for (double x : xs) worst = std::min(worst, double(margin(x)));
  BarrierCheck c;
  c.name = std::move(name);
  c.value = worst;
  c.required_sign = ">0";
  c.pass = worst > 0 && std::isfinite(worst);
  return c;
}

// Uniform interior points of (0, end) plus geometric refinement towards both endpoints.
std::vector<double> interval_grid(double end, int n) {
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) xs.push_back(end * double(i) / (n + 1));
  for (int m = 3; m <= 6; ++m) {
    const double e = std::pow(10.0, -m);
    xs.push_back(end * e);
    xs.push_back(end * (1 - e));
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

struct FieldLD {
  long double n, p, lsq;
  long double f1(long double phi) const { return (lsq - 1) * p / (1 + lsq * phi * phi) - (n - p); }
  long double f1_prime(long double phi) const {
    const long double q = 1 + lsq * phi * phi;
    return -2 * (lsq - 1) * p * lsq * phi / (q * q);
  }
  long double f2(long double phi) const { return (n - p) + p / (1 + lsq * phi * phi); }
  long double x2(long double phi, long double psi) const {
    const long double s = phi + psi;
    return -psi - (f2(phi) * psi - f1(phi) * phi) * (1 + s * s);
  }
  long double y2(long double phi, long double psi) const {
    const long double s = phi - psi;
    return -psi - (f2(phi) * psi + f1(phi) * phi) * (1 + s * s);
  }
};

FieldLD field_ld(const LomseParams& params) {
  return {static_cast<long double>(params.n), static_cast<long double>(params.p),
          static_cast<long double>(to_double(params.exact.lambda_sq))};
}

void finish(BarrierCertificate& cert) {
  cert.pass = std::all_of(cert.checks.begin(), cert.checks.end(), [](const BarrierCheck& c) { return c.pass; });
}

}  // namespace

const char* to_string(BarrierCase c) {
  switch (c) {
    case BarrierCase::A3Case1: return "A3Case1";
    case BarrierCase::A3Case2: return "A3Case2";
    case BarrierCase::A3Case3: return "A3Case3";
    case BarrierCase::A3Case4: return "A3Case4";
    case BarrierCase::A4: return "A4";
  }
  return "Unknown";
}

const BarrierCheck* BarrierCertificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

Rational RationalPolynomial::operator()(const Rational& s) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

int RationalPolynomial::degree() const {
  for (int i = int(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[std::size_t(i)] != 0) return i;
  }
  return -1;
}

RationalPolynomial RationalPolynomial::derivative() const {
  Poly d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * Rational(std::int64_t(i)));
  return d;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  Poly r;
  r.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  Poly r;
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

RationalPolynomial operator*(const Rational& a, const RationalPolynomial& b) { return constant(a) * b; }

RationalPolynomial typeI_barrier_polynomial(const LomseParams& params, const Rational& c) {
  const Rational n(params.n), p(params.p);
  const Rational& lsq = params.exact.lambda_sq;
  const Rational L = (lsq * p - n) / (n - p);  // lambda^2 phi0^2

  const Poly I = linear(1, 1 / c);
  const Poly II = (-2 * (n - p) / (c * (lsq - 1) * p)) * (linear(L, -1) * linear(1, 1));
  const Poly III = ((n - p) / (lsq - 1)) * linear(lsq - c * (lsq - 1), 1);
  const Poly IV = constant(1) + (1 / lsq) * (linear(L, -1) * linear(1, 1 / c));
  return I + II + III * IV;
}

BarrierCase typeI_case(const LomseParams& params, Rational* c) {
  if (params.stability == Stability::TypeII) {
    throw Error(ErrorCode::WrongCase, "Type II triple has no Type I barrier");
  }
  BarrierCase id;
  Rational cv;
  if (params.n == 3 && params.p == 2 && params.k == 2) {
    id = BarrierCase::A3Case1;
    cv = 1;
  } else if (params.n == 5 && params.p == 4 && params.k == 2) {
    id = BarrierCase::A3Case2;
    cv = 1;
  } else if (params.n == 5 && params.p == 4 && params.k == 4) {
    id = BarrierCase::A3Case3;
    cv = Rational(6, 7);
  } else if (params.n >= 7) {
    id = BarrierCase::A3Case4;
    cv = Rational(1, 2);
  } else {
    throw Error(ErrorCode::WrongCase, "no barrier constant for this Type I triple");
  }
  if (c) *c = cv;
  return id;
}

BarrierCertificate barrier_certificate_A3(const LomseParams& params, int grid) {
  BarrierCertificate cert;
  cert.case_id = typeI_case(params, &cert.c);
  cert.grid_resolution = grid;
  const Rational& c = cert.c;
  const Rational n(params.n), p(params.p);
  const Rational& lsq = params.exact.lambda_sq;
  const Rational L = (lsq * p - n) / (n - p);

  const Poly F = typeI_barrier_polynomial(params, c);
  const Rational F0 = F(0);
  Poly G;
  G.coeffs.assign(F.coeffs.begin() + 1, F.coeffs.end());

  cert.checks.push_back(exact_check("F(0)", F0, ">=0"));
  cert.checks.push_back(exact_check("G(0)", G(0), ">0"));
  cert.checks.push_back(exact_check("G(lambda^2 phi0^2)", G(L), ">0"));
  cert.checks.push_back(exact_check("cubic coefficient of F", F.coeffs.size() > 3 ? F.coeffs[3] : Rational(0), "<0"));
  cert.checks.push_back(exact_check("III(0)", (n - p) / (lsq - 1) * (lsq - c * (lsq - 1)), ">0"));
  // h'(0) = f1(0)/(c(n-p)) must exceed mu1 so the unstable branch starts inside the region.
  cert.checks.push_back(exact_check("h'(0) - mu1", L / c - Rational(params.k - 1), ">0"));

  const FieldLD X = field_ld(params);
  const long double cnp = static_cast<long double>(to_double(c)) * (X.n - X.p);
  const std::vector<double> xs = interval_grid(params.phi0, grid);
  cert.checks.push_back(grid_check("(A) X2(phi,0)", xs, [&](long double phi) { return X.x2(phi, 0); }));
  cert.checks.push_back(grid_check("(B) h' - X2/X1 on graph of h", xs, [&](long double phi) {
    const long double h = X.f1(phi) * phi / cnp;
    const long double hp = (X.f1(phi) + X.f1_prime(phi) * phi) / cnp;
    return hp - X.x2(phi, h) / h;
  }));
  finish(cert);
  return cert;
}

// ---------------------------------------------------------------------------

Rational spiral_bound_F(const Rational& s) {
  const Rational q = (3 + 5 * s) / (1 + s);
  return Rational(4, 25) * q * q * (1 + 5 * s) / (1 + 10 * s);
}

double spiral_bound_F(double s) {
  const double q = (3 + 5 * s) / (1 + s);
  return 0.16 * q * q * (1 + 5 * s) / (1 + 10 * s);
}

double limit_cycle_threshold(const LomseParams& params) {
  const double num = 3.0 * params.p - params.n - 1.0;
  return std::sqrt(std::max(0.0, num / (3.0 * (params.n - params.p))));
}

BarrierCertificate barrier_certificate_A4(const LomseParams& params, int grid, int lemma_grid) {
  if (params.stability != Stability::TypeII) {
    throw Error(ErrorCode::WrongCase, "Type I triple has no spiral barrier");
  }
  BarrierCertificate cert;
  cert.case_id = BarrierCase::A4;
  cert.grid_resolution = grid;
  const Rational n(params.n), p(params.p);
  const Rational& lsq = params.exact.lambda_sq;
  const Rational fifth(1, 5);

  // Minimum of F over s > 0: exact value and stationarity at 1/5, then a numerical search.
  const Rational Fmin = spiral_bound_F(fifth);
  cert.checks.push_back(exact_check("F(1/5) - 32/27", Fmin - Rational(32, 27), "=0"));
  const Rational dlog = 10 / (3 + 5 * fifth) - 2 / (1 + fifth) + 5 / (1 + 5 * fifth) - 10 / (1 + 10 * fifth);
  cert.checks.push_back(exact_check("d log F/ds at 1/5", dlog, "=0"));
  std::uintmax_t iters = 200;
  const auto found = boost::math::tools::brent_find_minima([](double s) { return spiral_bound_F(s); }, 0.0, 10.0,
                                                           std::numeric_limits<double>::digits, iters);
  BarrierCheck numeric;
  numeric.name = "numerical min F - 32/27";
  numeric.value = found.second - 32.0 / 27.0;
  numeric.required_sign = "=0";
  numeric.pass = std::abs(numeric.value) < 1e-10 && std::abs(found.first - 0.2) < 1e-6;
  cert.checks.push_back(numeric);

  // g'(0) = 2 f1(0) + 1/5 with f1(0) = lambda^2 p - n.
  cert.checks.push_back(exact_check("g'(0) - mu1", 2 * (lsq * p - n) + fifth - Rational(params.k - 1), ">0"));

  // Lower bound I + III + (p/4 * 32/27 - 1) II on s in (0, lambda^2 p - n), exactly at grid points.
  if (params.n - params.p == 1) {
    const Rational top = lsq * p - n;
    const Rational coeff = p / 4 * Rational(32, 27) - 1;
    Rational worst = 0;
    bool first = true;
    for (int i = 1; i <= std::min(grid, 400); ++i) {
      const Rational s = top * Rational(i, std::min(grid, 400) + 1);
      const Rational I = Rational(6, 5) + 2 * s;
      const Rational II = 4 / ((lsq - 1) * p) * (top - s) * (1 + s);
      const Rational III = (lsq + s) / (lsq - 1) - s / (2 * s + fifth);
      const Rational v = I + III + coeff * II;
      if (first || v < worst) worst = v;
      first = false;
    }
    cert.checks.push_back(exact_check("I + III + (8p/27 - 1) II on grid", worst, ">0"));
  }

  const FieldLD X = field_ld(params);
  const std::vector<double> xs = interval_grid(params.phi0, grid);
  cert.checks.push_back(grid_check("(A) X2(phi,0)", xs, [&](long double phi) { return X.x2(phi, 0); }));
  cert.checks.push_back(grid_check("(B) g' - X2/X1 on graph of g", xs, [&](long double phi) {
    const long double g = (2 * X.f1(phi) + 0.2L) * phi;
    const long double gp = 2 * X.f1_prime(phi) * phi + 2 * X.f1(phi) + 0.2L;
    return gp - X.x2(phi, g) / g;
  }));

  // Y2 + X2 < 0 for phi >= threshold, psi > 0.
  const double thr = limit_cycle_threshold(params);
  const double phi_hi = 2.0 * params.phi0;
  const double psi_hi = 2.0 * params.phi0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < lemma_grid; ++i) {
    const long double phi = thr + (phi_hi - thr) * i / (lemma_grid - 1.0);
    for (int j = 1; j <= lemma_grid; ++j) {
      const long double psi = psi_hi * j / lemma_grid;
      worst = std::max(worst, double(X.y2(phi, psi) + X.x2(phi, psi)));
    }
  }
  BarrierCheck lemma;
  lemma.name = "Y2 + X2 over phi >= threshold, psi > 0";
  lemma.value = worst;
  lemma.required_sign = "<0";
  lemma.pass = worst < 0;
  cert.checks.push_back(lemma);

  BarrierCheck step5;
  step5.name = "4/5 phi0 - threshold";
  step5.value = 0.8 * params.phi0 - thr;
  step5.required_sign = ">0";
  step5.pass = step5.value > 0;
  cert.checks.push_back(step5);

  finish(cert);
  return cert;
}

}  // namespace lomse
