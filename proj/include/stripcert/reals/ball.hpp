#pragma once

#include <gmpxx.h>

#include <string>

#include "stripcert/reals/mpfr.hpp"

namespace stripcert::reals {

/// Certified enclosure of a real number.
///
/// Stored as outward-rounded endpoints [lower, upper]; center() and radius()
/// give the equivalent midpoint/radius view with the radius rounded up, so
/// [center - radius, center + radius] always contains [lower, upper].
/// Every arithmetic operation below uses directed rounding and the result
/// precision is the larger of the operand precisions.
class Ball {
 public:
  Ball(Mpfr lower, Mpfr upper);

  static Ball from_rational(const mpq_class& q, mpfr_prec_t precision);
  static Ball from_int(long v, mpfr_prec_t precision);
  static Ball pi(mpfr_prec_t precision);
  static Ball whole_line(mpfr_prec_t precision);

  const Mpfr& lower() const { return lo_; }
  const Mpfr& upper() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  Mpfr center() const;
  Mpfr radius() const;
  double center_double() const;
  double radius_double() const;  // rounded up

  bool is_finite() const;
  bool is_positive() const;  // lower > 0
  bool is_negative() const;  // upper < 0
  bool contains_zero() const;
  bool contains(const mpq_class& q) const;

  /// Significant decimal digits of the center, e.g. "3.04807286042670..."
  std::string center_string(int digits) const;

 private:
  Mpfr lo_;
  Mpfr hi_;
};

Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const Ball& b);
Ball operator/(const Ball& a, const Ball& b);
Ball operator-(const Ball& a);

Ball sqrt(const Ball& a);  // throws DomainError when a < 0 certainly
Ball atan(const Ball& a);
Ball exp(const Ball& a);
Ball log(const Ball& a);  // throws DomainError when a <= 0 certainly
Ball pow(const Ball& a, long exponent);

/// a < b for every pair of points of the two enclosures.
bool certainly_less(const Ball& a, const Ball& b);
bool overlaps(const Ball& a, const Ball& b);

}  // namespace stripcert::reals
