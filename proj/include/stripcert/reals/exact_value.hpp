#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>

#include "stripcert/reals/ball.hpp"

namespace stripcert::reals {

enum class Ordering { Less, Equal, Greater };

namespace detail {
enum class Op : unsigned char { Rational, Pi, Add, Sub, Mul, Div, Neg, Sqrt, Atan, Pow };
struct Node {
  Op op = Op::Rational;
  mpq_class value;    // Rational
  long exponent = 0;  // Pow
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};
}  // namespace detail

/// a + b*sqrt(c + d*pi^2) with b in {-1, 0, 1}; b = 0 forces c = d = 0.
struct QuadraticPiSurd {
  mpq_class a, b, c, d;
  friend bool operator==(const QuadraticPiSurd& x, const QuadraticPiSurd& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

/// Immutable closed-form real: rationals and pi under + - * /, integer powers,
/// sqrt and arctan. Construction checks sqrt arguments for certified
/// non-negativity and divisors for certified nonzero sign.
class ExactValue {
 public:
  ExactValue();
  ExactValue(long v);              // NOLINT(google-explicit-constructor)
  ExactValue(const mpq_class& q);  // NOLINT(google-explicit-constructor)

  static ExactValue pi();
  static ExactValue from_quadratic_pi_surd(const QuadraticPiSurd& s);

  Ball eval(mpfr_prec_t precision) const;
  double approx() const;
  std::optional<mpq_class> as_rational() const;
  bool is_rational() const { return node_->op == detail::Op::Rational; }

  std::string to_prefix() const;
  std::string to_decimal(int digits = 30) const;

  const detail::Node& node() const { return *node_; }
  bool same_node(const ExactValue& o) const { return node_ == o.node_; }

  static ExactValue from_node(std::shared_ptr<const detail::Node> n) { return ExactValue(std::move(n)); }
  /// Builds a node without sign checks; callers guarantee validity.
  static ExactValue unchecked(detail::Op op, const ExactValue& lhs, const ExactValue& rhs = ExactValue(),
                              long exponent = 0);

 private:
  explicit ExactValue(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

ExactValue operator+(const ExactValue& a, const ExactValue& b);
ExactValue operator-(const ExactValue& a, const ExactValue& b);
ExactValue operator*(const ExactValue& a, const ExactValue& b);
ExactValue operator/(const ExactValue& a, const ExactValue& b);  // DomainError unless b certified nonzero
ExactValue operator-(const ExactValue& a);
ExactValue sqrt(const ExactValue& a);  // DomainError unless a certified >= 0
ExactValue atan(const ExactValue& a);  // DomainError unless a certified > 0
ExactValue pow(const ExactValue& a, long exponent);

/// Certified order. Tries enclosures first, then structural equality of the
/// canonical forms, then the precision ladder up to precision_cap().
/// Throws Undecided when nothing separates the values.
Ordering compare(const ExactValue& a, const ExactValue& b);
int sign(const ExactValue& a);
bool structurally_equal(const ExactValue& a, const ExactValue& b);

inline bool less(const ExactValue& a, const ExactValue& b) { return compare(a, b) == Ordering::Less; }
inline bool less_equal(const ExactValue& a, const ExactValue& b) { return compare(a, b) != Ordering::Greater; }
inline bool equal(const ExactValue& a, const ExactValue& b) { return compare(a, b) == Ordering::Equal; }
const ExactValue& min(const ExactValue& a, const ExactValue& b);
const ExactValue& max(const ExactValue& a, const ExactValue& b);

/// Canonical representative. Values in Q(pi)(sqrt R) are rendered from their
/// normal form (so equal values give identical trees); anything else is
/// returned with rational subexpressions folded. Idempotent.
ExactValue canonicalize(const ExactValue& a);
std::optional<QuadraticPiSurd> as_quadratic_pi_surd(const ExactValue& a);

void set_precision_cap(mpfr_prec_t bits);
mpfr_prec_t precision_cap();

}  // namespace stripcert::reals
