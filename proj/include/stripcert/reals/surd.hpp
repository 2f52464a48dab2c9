#pragma once

#include <optional>

#include "stripcert/reals/poly.hpp"

namespace stripcert::reals {

/// Normal form for the values the kernel can decide structurally: elements
/// p + q*sqrt(R) of a quadratic extension of Q(pi), with p, q rational
/// functions of pi and R a normalized radicand (integer coefficients,
/// square-free, positive at pi, not a perfect square). Because pi is
/// transcendental the representation is unique, so equality of two
/// SurdElements is equality of the real numbers they denote.
///
/// Arithmetic between elements with different radicands, nested radicals and
/// arctan leave this form; those operations return nullopt.
class SurdElement {
 public:
  SurdElement() = default;
  explicit SurdElement(RatFunc rational) : p_(std::move(rational)) {}

  static SurdElement rational(const mpq_class& q) { return SurdElement(RatFunc(q)); }
  static SurdElement pi() { return SurdElement(RatFunc(Poly::indeterminate())); }

  const RatFunc& rational_part() const { return p_; }
  const RatFunc& surd_coefficient() const { return q_; }
  const Poly& radicand() const { return r_; }  // zero polynomial when has_surd() is false
  bool has_surd() const { return !q_.is_zero(); }
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
  std::optional<mpq_class> as_rational() const;

  Ball eval(mpfr_prec_t precision) const;
  /// Certified sign at pi.
  int sign() const;

  friend bool operator==(const SurdElement& a, const SurdElement& b);

  friend std::optional<SurdElement> add(const SurdElement& a, const SurdElement& b);
  friend std::optional<SurdElement> sub(const SurdElement& a, const SurdElement& b);
  friend std::optional<SurdElement> mul(const SurdElement& a, const SurdElement& b);
  /// b must be nonzero.
  friend std::optional<SurdElement> div(const SurdElement& a, const SurdElement& b);
  friend SurdElement neg(const SurdElement& a);
  /// Requires a >= 0 with no surd part; the square root is normalized.
  friend std::optional<SurdElement> sqrt(const SurdElement& a);
  friend std::optional<SurdElement> pow(const SurdElement& a, long exponent);

 private:
  SurdElement(RatFunc p, RatFunc q, Poly r);
  static SurdElement make(RatFunc p, RatFunc q, const Poly& r);

  RatFunc p_;
  RatFunc q_;
  Poly r_;
};

}  // namespace stripcert::reals
