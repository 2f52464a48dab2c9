#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "stripcert/reals/ball.hpp"

namespace stripcert::reals {

/// Polynomial with rational coefficients in one indeterminate. Throughout the
/// kernel the indeterminate stands for pi; since pi is transcendental, two
/// such polynomials agree at pi exactly when they are identical.
class Poly {
 public:
  Poly() = default;
  explicit Poly(mpq_class constant);
  explicit Poly(std::vector<mpq_class> coefficients);  // lowest degree first

  static Poly indeterminate();
  static Poly monomial(mpq_class coefficient, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monomial() const;
  const std::vector<mpq_class>& coefficients() const { return c_; }
  mpq_class coefficient(int i) const;
  const mpq_class& leading() const { return c_.back(); }
  mpq_class constant_term() const { return coefficient(0); }

  Poly scaled(const mpq_class& s) const;
  Poly monic() const;
  Poly derivative() const;
  Ball eval(const Ball& x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a.scaled(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Exact division, b | a.
Poly exact_quotient(const Poly& a, const Poly& b);
/// Monic greatest common divisor (zero when both are zero).
Poly gcd(Poly a, Poly b);

/// Yun's square-free decomposition of a nonconstant polynomial:
/// monic(p) = prod_i factors[i]^(i+1) with each factor monic and square-free.
std::vector<Poly> squarefree_factors(const Poly& p);

/// Splits p = content * primitive where primitive has coprime integer
/// coefficients and positive leading coefficient.
std::pair<mpq_class, Poly> primitive_part(const Poly& p);

/// Sign of p at pi, certified by interval evaluation with increasing
/// precision. p must be nonzero. Throws Undecided past max_bits.
int sign_at_pi(const Poly& p, mpfr_prec_t max_bits = 1 << 15);

/// Rational function num/den in pi, kept normalized: gcd(num, den) = 1 and
/// den monic (den = 1 when num = 0).
class RatFunc {
 public:
  RatFunc() : num_(), den_(mpq_class(1)) {}
  explicit RatFunc(mpq_class constant) : num_(std::move(constant)), den_(mpq_class(1)) {}
  explicit RatFunc(Poly numerator) : num_(std::move(numerator)), den_(mpq_class(1)) {}
  RatFunc(Poly numerator, Poly denominator);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  mpq_class constant() const { return num_.constant_term(); }
  Ball eval(const Ball& x) const { return num_.eval(x) / den_.eval(x); }
  int sign_at_pi() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  Poly num_;
  Poly den_;
};

/// n = s^2 * t with t square-free as far as trial division up to 10^6 and a
/// final perfect-square test can establish.
std::pair<mpz_class, mpz_class> split_square(const mpz_class& n);

}  // namespace stripcert::reals
