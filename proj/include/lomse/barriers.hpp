#pragma once

#include <string>
#include <vector>

#include "lomse/params.hpp"
#include "lomse/rational.hpp"

namespace lomse {

enum class BarrierCase { A3Case1, A3Case2, A3Case3, A3Case4, A4 };
const char* to_string(BarrierCase c);

struct BarrierCheck {
  std::string name;
  double value = 0.0;
  std::string required_sign;  // ">0", ">=0", "=0" or "<0"
  bool pass = false;
  std::string exact;          // "num/den" when the value was computed in rationals, else empty
};

struct BarrierCertificate {
  BarrierCase case_id = BarrierCase::A3Case1;
  Rational c = 0;  // barrier constant of the Type I region; 0 for A4
  std::vector<BarrierCheck> checks;
  int grid_resolution = 0;
  bool pass = false;

  const BarrierCheck* find(const std::string& name) const;
};

/// Dense polynomial with exact coefficients, coeffs[i] multiplies s^i.
struct RationalPolynomial {
  std::vector<Rational> coeffs;

  Rational operator()(const Rational& s) const;
  int degree() const;
  RationalPolynomial derivative() const;
};

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator*(const Rational& a, const RationalPolynomial& b);

/// F = I + II + III*IV in the variable s = (1+lambda^2 phi0^2)/(1+lambda^2 phi^2) - 1, for barrier constant c.
RationalPolynomial typeI_barrier_polynomial(const LomseParams& params, const Rational& c);

/// Case and constant c for a Type I triple. Throws Error{WrongCase} for Type II or an unlisted triple.
BarrierCase typeI_case(const LomseParams& params, Rational* c = nullptr);

/// Invariant region under the graph of h = f1 phi / (c (n-p)). Throws Error{WrongCase} for Type II.
BarrierCertificate barrier_certificate_A3(const LomseParams& params, int grid = 2000);

/// (4/25) ((3+5s)/(1+s))^2 (1+5s)/(1+10s)
Rational spiral_bound_F(const Rational& s);
double spiral_bound_F(double s);

/// No-limit-cycle threshold sqrt((3p-n-1)/(3(n-p))).
double limit_cycle_threshold(const LomseParams& params);

/// Region under g = (2 f1 + 1/5) phi and the Y2 + X2 < 0 inequality. Throws Error{WrongCase} for Type I.
BarrierCertificate barrier_certificate_A4(const LomseParams& params, int grid = 2000, int lemma_grid = 100);

}  // namespace lomse
