#include "stripcert/reals/surd.hpp"

#include "stripcert/errors.hpp"

namespace stripcert::reals {

SurdElement::SurdElement(RatFunc p, RatFunc q, Poly r) : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)) {}

SurdElement SurdElement::make(RatFunc p, RatFunc q, const Poly& r) {
  if (q.is_zero()) return SurdElement(std::move(p));
  return SurdElement(std::move(p), std::move(q), r);
}

std::optional<mpq_class> SurdElement::as_rational() const {
  if (has_surd() || !p_.is_constant()) return std::nullopt;
  return p_.constant();
}

Ball SurdElement::eval(mpfr_prec_t precision) const {
  const Ball pi = Ball::pi(precision);
  Ball v = p_.eval(pi);
  if (has_surd()) v = v + q_.eval(pi) * reals::sqrt(r_.eval(pi));
  return v;
}

int SurdElement::sign() const {
  if (!has_surd()) return p_.sign_at_pi();
  for (mpfr_prec_t bits = 64; bits <= (1 << 15); bits *= 2) {
    Ball v = eval(bits);
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
  }
  throw Undecided("sign of quadratic element not resolved");
}

bool operator==(const SurdElement& a, const SurdElement& b) {
  if (!(a.p_ == b.p_) || !(a.q_ == b.q_)) return false;
  return !a.has_surd() || a.r_ == b.r_;
}

std::optional<SurdElement> add(const SurdElement& a, const SurdElement& b) {
  if (a.has_surd() && b.has_surd() && !(a.r_ == b.r_)) return std::nullopt;
  const Poly& r = a.has_surd() ? a.r_ : b.r_;
  return SurdElement::make(a.p_ + b.p_, a.q_ + b.q_, r);
}

std::optional<SurdElement> sub(const SurdElement& a, const SurdElement& b) { return add(a, neg(b)); }

SurdElement neg(const SurdElement& a) { return SurdElement::make(-a.p_, -a.q_, a.r_); }

std::optional<SurdElement> mul(const SurdElement& a, const SurdElement& b) {
  if (!a.has_surd()) return SurdElement::make(a.p_ * b.p_, a.p_ * b.q_, b.r_);
  if (!b.has_surd()) return SurdElement::make(a.p_ * b.p_, a.q_ * b.p_, a.r_);
  if (!(a.r_ == b.r_)) return std::nullopt;
  const RatFunc r(a.r_);
  return SurdElement::make(a.p_ * b.p_ + a.q_ * b.q_ * r, a.p_ * b.q_ + a.q_ * b.p_, a.r_);
}

std::optional<SurdElement> div(const SurdElement& a, const SurdElement& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (!b.has_surd()) return SurdElement::make(a.p_ / b.p_, a.q_ / b.p_, a.r_);
  // a / (p + q sqrt R) = a (p - q sqrt R) / (p^2 - q^2 R)
  const RatFunc norm = b.p_ * b.p_ - b.q_ * b.q_ * RatFunc(b.r_);
  auto num = mul(a, SurdElement::make(b.p_, -b.q_, b.r_));
  if (!num) return std::nullopt;
  return SurdElement::make(num->p_ / norm, num->q_ / norm, num->r_);
}

std::optional<SurdElement> sqrt(const SurdElement& a) {
  if (a.has_surd()) return std::nullopt;
  if (a.is_zero()) return SurdElement();
  const int s = a.p_.sign_at_pi();
  if (s < 0) throw DomainError("sqrt of a negative value");

  // sqrt(N/D) = sqrt(N D) / |D(pi)|
  const Poly& num = a.p_.num();
  const Poly& den = a.p_.den();
  RatFunc multiplier(Poly(mpq_class(sign_at_pi(den))), den);
  const Poly radicand = num * den;

  mpq_class content;
  Poly reduced(mpq_class(1));
  if (radicand.is_constant()) {
    content = radicand.leading();
  } else {
    // radicand = lead * S^2 * T with T square-free
    const auto factors = squarefree_factors(radicand);
    Poly square(mpq_class(1));
    Poly rest(mpq_class(1));
    for (size_t i = 0; i < factors.size(); ++i) {
      const size_t mult = i + 1;
      for (size_t j = 0; j < mult / 2; ++j) square = square * factors[i];
      if (mult % 2 == 1) rest = rest * factors[i];
    }
    auto [rest_content, rest_primitive] = primitive_part(rest);
    content = radicand.leading() * rest_content;
    reduced = rest_primitive;
    if (!reduced.is_constant() && sign_at_pi(reduced) < 0) {
      reduced = -reduced;
      content = -content;
    }
    multiplier = multiplier * RatFunc(square.scaled(sign_at_pi(square)));
  }
  if (content <= 0) throw DomainError("radicand normalization produced a non-positive content");

  // sqrt(u/v) = sqrt(u v) / v = (s / v) sqrt(t) with u v = s^2 t
  const mpz_class u = content.get_num();
  const mpz_class v = content.get_den();
  auto [sq, free] = split_square(u * v);
  multiplier = multiplier * RatFunc(mpq_class(sq, v));
  const Poly r = reduced.scaled(mpq_class(free));
  if (r == Poly(mpq_class(1))) return SurdElement(multiplier);
  return SurdElement::make(RatFunc(), multiplier, r);
}

std::optional<SurdElement> pow(const SurdElement& a, long exponent) {
  if (exponent < 0) {
    auto positive = pow(a, -exponent);
    if (!positive) return std::nullopt;
    return div(SurdElement::rational(1), *positive);
  }
  SurdElement result = SurdElement::rational(1);
  SurdElement base = a;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1UL) result = *mul(result, base);
    e >>= 1;
    if (e > 0) base = *mul(base, base);
  }
  return result;
}

}  // namespace stripcert::reals
