#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "lomse/rational.hpp"

namespace lomse {

enum class FamilyKind { ComplexProjective, QuaternionicProjective, OctonionicLine, Unclassified };

/// Base of the Hopf fibration S^n -> P that the submersion factor must be.
struct Family {
  FamilyKind kind = FamilyKind::Unclassified;
  std::int64_t l = 0;  // CP^l or HP^l; unused for the octonionic line
};

std::string to_string(const Family& family);

enum class Stability { TypeI, TypeII };

constexpr const char* to_string(Stability s) { return s == Stability::TypeI ? "TypeI" : "TypeII"; }

enum class Validation {
  Strict,   // k even and (n,p) in the Hopf families
  Relaxed,  // only 1 <= p < n and lambda^2 > n/p; for exploratory sweeps, no LOMSE need exist
};

/// Scalars that are rational in (n,p,k), kept exact.
struct ExactScalars {
  BigInt eigen_degree;    // k(k+n-1), the sphere-Laplacian eigenvalue of the components
  Rational lambda_sq;     // k(k+n-1)/p
  Rational phi0_sq;       // (p - n/lambda^2)/(n-p)
  Rational cos_sq_theta;  // (1-p/n)/(1-p/k(k+n-1))
  Rational a;             // lower-left entry of the linearisation at (phi0, 0)
  Rational b;             // -(n+1)
  Rational discriminant;  // b^2 + 4a
};

struct LomseParams {
  int n = 0;
  int p = 0;
  int k = 0;
  Family family;
  double lambda = 0.0;
  double theta = 0.0;
  double phi0 = 0.0;
  Stability stability = Stability::TypeI;
  Validation validation = Validation::Strict;
  ExactScalars exact;

  double lambda_sq() const { return to_double(exact.lambda_sq); }
};

/// Checks (n,p,k) and fills every derived field. Throws Error{InvalidFamily, InvalidDegree, InvalidRange}.
LomseParams validate_params(long long n, long long p, long long k, Validation mode = Validation::Strict);

/// Admissibility of (n,p) alone, without the degree check.
Family classify_family(long long n, long long p);

/// Type I/II from the explicit lists; only meaningful for admissible triples.
Stability stability_from_lists(int n, int p, int k);

double singular_value(const LomseParams& params);
double cone_angle(const LomseParams& params);
double slope_phi0(const LomseParams& params);

struct SpectralData {
  Eigen::Matrix2d A;  // linearisation at the origin
  double mu1 = 0.0;   // k - 1
  double mu2 = 0.0;   // -n - k
  Eigen::Vector2d V1;
  Eigen::Vector2d V2;
  Eigen::Matrix2d B;  // linearisation at (phi0, 0)
  double a = 0.0;
  double b = 0.0;
  std::complex<double> mu3;
  std::complex<double> mu4;
  double discriminant = 0.0;
};

SpectralData spectra(const LomseParams& params);

}  // namespace lomse
