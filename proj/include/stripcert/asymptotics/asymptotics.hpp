#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stripcert/reals/exact_value.hpp"

namespace stripcert::asymptotics {

using reals::Ball;
using reals::ExactValue;

/// Pieces of the Rayleigh-quotient bound for the geodesic disk D_R, R > pi,
/// with w = sqrt(R^2 - pi^2). The sign of `numerator` decides whether
/// 4 pi / |D_R| exceeds the bound.
struct DiskBoundParts {
  ExactValue R;
  ExactValue w;
  ExactValue numerator;    // pi (12 w - pi^2 - 6) - 2 (pi^2 - 3) w atan(pi/w)
  ExactValue denominator;  // 6 (pi w^2 + w R^2 atan(pi/w))
  ExactValue c1, c2, c3;   // numerator = c1 w - c2 - c3 w atan(pi/w)
};

DiskBoundParts disk_bound_parts(const ExactValue& R);
/// Upper bound on the first Dirichlet eigenvalue of D_R (R > pi).
ExactValue disk_rayleigh_bound(const ExactValue& R);
/// |D_R| = 2 pi w + 2 R^2 atan(pi/w) for R > pi.
ExactValue disk_area(const ExactValue& R);

struct RadiusEnclosure {
  mpq_class lo;
  mpq_class hi;
  int steps = 0;
  std::vector<mpq_class> widths;  // after each bisection step
};

/// Certified bisection of the numerator from the bracket [16/5, 9/2]; the
/// bracket signs are checked before use. Returns an enclosure of width <= tol.
RadiusEnclosure disk_critical_radius(const mpq_class& tol);
RadiusEnclosure disk_critical_radius(const mpq_class& tol, const mpq_class& bracket_lo, const mpq_class& bracket_hi);

/// Gamma((n+3)/2)^2 as an exact value (a rational, or a rational times pi).
ExactValue gamma_half_integer_squared(long n);
/// Gamma(k/2) for k >= 1 as an exact value.
ExactValue gamma_half(long k);

struct Threshold {
  long n = 0;
  std::optional<ExactValue> exact;  // when the closed form stays in the kernel
  std::string expression;           // always present
  Ball enclosure = Ball::from_int(0, 64);
};

Threshold eta1(long n);
Threshold hypercube_threshold(long n);

/// pi^{n+3} 4 (sum h^-2)^{n+1} (prod h)^2 >= 4^{n+1} Gamma((n+3)/2)^2, the
/// necessary condition raised to the power 2(n+1).
bool product_necessary_condition(const std::vector<ExactValue>& heights);
/// min h <= pi^2 with at least three heights (ArityError otherwise).
bool product_sufficient_condition(const std::vector<ExactValue>& heights);

struct AreaInterval {
  ExactValue lo;
  ExactValue hi;
  bool lo_closed = false;
  bool hi_closed = false;
};

/// Areas of isoperimetric domains on the cylinder that satisfy the conjecture.
std::vector<AreaInterval> isoperimetric_ranges();

}  // namespace stripcert::asymptotics
