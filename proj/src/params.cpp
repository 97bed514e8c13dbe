#include "lomse/params.hpp"

#include <cmath>
#include <limits>

#include "lomse/error.hpp"

namespace lomse {

std::string to_string(const Family& family) {
  switch (family.kind) {
    case FamilyKind::ComplexProjective: return "ComplexProjective(" + std::to_string(family.l) + ")";
    case FamilyKind::QuaternionicProjective: return "QuaternionicProjective(" + std::to_string(family.l) + ")";
    case FamilyKind::OctonionicLine: return "OctonionicLine";
    case FamilyKind::Unclassified: break;
  }
  return "Unclassified";
}

Family classify_family(long long n, long long p) {
  if (p >= 2 && p % 2 == 0 && n == p + 1) return {FamilyKind::ComplexProjective, p / 2};
  if (p >= 4 && p % 4 == 0 && n == p + 3) return {FamilyKind::QuaternionicProjective, p / 4};
  if (n == 15 && p == 8) return {FamilyKind::OctonionicLine, 0};
  return {};
}

Stability stability_from_lists(int n, int p, int k) {
  if (n == 3 && p == 2 && k >= 4) return Stability::TypeII;
  if (n == 5 && p == 4 && k >= 6) return Stability::TypeII;
  return Stability::TypeI;
}

LomseParams validate_params(long long n, long long p, long long k, Validation mode) {
  constexpr long long int_max = std::numeric_limits<int>::max();
  if (n < 2 || p < 1 || p >= n || k < 1 || n > int_max || k > int_max) {
    throw Error(ErrorCode::InvalidRange, "need 1 <= p < n and k >= 1");
  }

  LomseParams params;
  params.n = static_cast<int>(n);
  params.p = static_cast<int>(p);
  params.k = static_cast<int>(k);
  params.validation = mode;
  params.family = classify_family(n, p);

  if (mode == Validation::Strict) {
    if (params.family.kind == FamilyKind::Unclassified) {
      throw Error(ErrorCode::InvalidFamily, "(n,p) must be (2l+1,2l), (4l+3,4l) or (15,8)");
    }
    if (k < 2 || k % 2 != 0) {
      throw Error(ErrorCode::InvalidDegree, "k must be an even integer >= 2");
    }
  }

  const BigInt N(n), P(p), Kd(k);
  const BigInt degree = Kd * (Kd + N - 1);
  // lambda^2 > n/p  <=>  k(k+n-1) > n
  if (degree <= N) {
    throw Error(ErrorCode::InvalidRange, "k(k+n-1) must exceed n");
  }

  ExactScalars& ex = params.exact;
  ex.eigen_degree = degree;
  ex.lambda_sq = Rational(degree, P);
  ex.phi0_sq = Rational(P * (degree - N), degree * (N - P));
  ex.cos_sq_theta = Rational((N - P) * degree, N * (degree - P));
  ex.a = Rational(2 * N) * (Rational(N, degree) - 1);
  ex.b = Rational(-(N + 1));
  ex.discriminant = ex.b * ex.b + 4 * ex.a;

  params.lambda = std::sqrt(to_double(ex.lambda_sq));
  params.theta = std::acos(std::sqrt(to_double(ex.cos_sq_theta)));
  params.phi0 = std::sqrt(to_double(ex.phi0_sq));

  if (mode == Validation::Strict) {
    params.stability = stability_from_lists(params.n, params.p, params.k);
  } else {
    params.stability = ex.discriminant < 0 ? Stability::TypeII : Stability::TypeI;
  }
  return params;
}

double singular_value(const LomseParams& params) { return params.lambda; }

double cone_angle(const LomseParams& params) { return params.theta; }

double slope_phi0(const LomseParams& params) { return params.phi0; }

SpectralData spectra(const LomseParams& params) {
  const double n = params.n;
  const double k = params.k;
  SpectralData s;
  s.A << 0.0, 1.0, to_double(params.exact.eigen_degree) - n, -n - 1.0;
  s.mu1 = k - 1.0;
  s.mu2 = -n - k;
  s.V1 << 1.0, s.mu1;
  s.V2 << 1.0, s.mu2;
  s.a = to_double(params.exact.a);
  s.b = to_double(params.exact.b);
  s.B << 0.0, 1.0, s.a, s.b;
  s.discriminant = to_double(params.exact.discriminant);
  const std::complex<double> root = std::sqrt(std::complex<double>(s.discriminant, 0.0));
  s.mu3 = (s.b + root) / 2.0;
  s.mu4 = (s.b - root) / 2.0;
  return s;
}

}  // namespace lomse
