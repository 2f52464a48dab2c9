#include "stripcert/reals/ball.hpp"

#include <algorithm>

#include "stripcert/errors.hpp"

namespace stripcert::reals {
namespace {

mpfr_prec_t joint_precision(const Ball& a, const Ball& b) {
  return std::max(a.precision(), b.precision());
}

void set_min(Mpfr& target, const Mpfr& candidate) {
  if (mpfr_less_p(candidate.get(), target.get())) mpfr_set(target.get(), candidate.get(), MPFR_RNDD);
}

void set_max(Mpfr& target, const Mpfr& candidate) {
  if (mpfr_greater_p(candidate.get(), target.get())) mpfr_set(target.get(), candidate.get(), MPFR_RNDU);
}

}  // namespace

Ball::Ball(Mpfr lower, Mpfr upper) : lo_(std::move(lower)), hi_(std::move(upper)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) {
    mpfr_set_inf(lo_.get(), -1);
    mpfr_set_inf(hi_.get(), 1);
  }
}

Ball Ball::from_rational(const mpq_class& q, mpfr_prec_t precision) {
  Mpfr lo(precision), hi(precision);
  mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball Ball::from_int(long v, mpfr_prec_t precision) {
  Mpfr lo(precision), hi(precision);
  mpfr_set_si(lo.get(), v, MPFR_RNDD);
  mpfr_set_si(hi.get(), v, MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball Ball::pi(mpfr_prec_t precision) {
  Mpfr lo(precision), hi(precision);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball Ball::whole_line(mpfr_prec_t precision) {
  Mpfr lo(precision), hi(precision);
  mpfr_set_inf(lo.get(), -1);
  mpfr_set_inf(hi.get(), 1);
  return Ball(std::move(lo), std::move(hi));
}

Mpfr Ball::center() const {
  Mpfr c(precision() + 2);
  mpfr_add(c.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(c.get(), c.get(), 1, MPFR_RNDN);
  return c;
}

Mpfr Ball::radius() const {
  Mpfr c = center();
  Mpfr r1(precision()), r2(precision());
  mpfr_sub(r1.get(), hi_.get(), c.get(), MPFR_RNDU);
  mpfr_sub(r2.get(), c.get(), lo_.get(), MPFR_RNDU);
  set_max(r1, r2);
  return r1;
}

double Ball::center_double() const { return center().to_double(); }
double Ball::radius_double() const { return radius().to_double(MPFR_RNDU); }

bool Ball::is_finite() const { return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get()); }
bool Ball::is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Ball::is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool Ball::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

bool Ball::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

std::string Ball::center_string(int digits) const {
  Mpfr c = center();
  if (mpfr_zero_p(c.get())) return "0";
  if (!mpfr_number_p(c.get())) return mpfr_inf_p(c.get()) ? (mpfr_sgn(c.get()) > 0 ? "inf" : "-inf") : "nan";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), c.get(), MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // mantissa holds `digits` digits d1 d2 ... with value 0.d1d2... * 10^exponent.
  std::string out;
  if (exponent > 0 && exponent <= digits) {
    out = mantissa.substr(0, static_cast<size_t>(exponent));
    std::string frac = mantissa.substr(static_cast<size_t>(exponent));
    if (!frac.empty()) out += "." + frac;
  } else if (exponent <= 0 && exponent > -6) {
    out = "0." + std::string(static_cast<size_t>(-exponent), '0') + mantissa;
  } else {
    out = mantissa.substr(0, 1) + "." + mantissa.substr(1) + "e" + std::to_string(exponent - 1);
  }
  return sign + out;
}

Ball operator+(const Ball& a, const Ball& b) {
  const auto p = joint_precision(a, b);
  Mpfr lo(p), hi(p);
  mpfr_add(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball operator-(const Ball& a, const Ball& b) {
  const auto p = joint_precision(a, b);
  Mpfr lo(p), hi(p);
  mpfr_sub(lo.get(), a.lower().get(), b.upper().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.upper().get(), b.lower().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball operator-(const Ball& a) {
  const auto p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_neg(lo.get(), a.upper().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lower().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball operator*(const Ball& a, const Ball& b) {
  const auto p = joint_precision(a, b);
  if (!a.is_finite() || !b.is_finite()) return Ball::whole_line(p);
  const Mpfr* xs[2] = {&a.lower(), &a.upper()};
  const Mpfr* ys[2] = {&b.lower(), &b.upper()};
  Mpfr lo(p), hi(p), t(p);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (const Mpfr* x : xs) {
    for (const Mpfr* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      set_min(lo, t);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      set_max(hi, t);
    }
  }
  return Ball(std::move(lo), std::move(hi));
}

Ball operator/(const Ball& a, const Ball& b) {
  const auto p = joint_precision(a, b);
  if (!a.is_finite() || !b.is_finite() || b.contains_zero()) return Ball::whole_line(p);
  const Mpfr* xs[2] = {&a.lower(), &a.upper()};
  const Mpfr* ys[2] = {&b.lower(), &b.upper()};
  Mpfr lo(p), hi(p), t(p);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (const Mpfr* x : xs) {
    for (const Mpfr* y : ys) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      set_min(lo, t);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      set_max(hi, t);
    }
  }
  return Ball(std::move(lo), std::move(hi));
}

Ball sqrt(const Ball& a) {
  if (a.is_negative()) throw DomainError("sqrt of a certainly negative enclosure");
  const auto p = a.precision();
  Mpfr lo(p), hi(p);
  if (mpfr_sgn(a.lower().get()) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_sqrt(lo.get(), a.lower().get(), MPFR_RNDD);
  }
  mpfr_sqrt(hi.get(), a.upper().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball atan(const Ball& a) {
  const auto p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_atan(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_atan(hi.get(), a.upper().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball exp(const Ball& a) {
  const auto p = a.precision();
  Mpfr lo(p), hi(p);
  mpfr_exp(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), a.upper().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball log(const Ball& a) {
  if (mpfr_sgn(a.upper().get()) <= 0) throw DomainError("log of a non-positive enclosure");
  const auto p = a.precision();
  Mpfr lo(p), hi(p);
  if (mpfr_sgn(a.lower().get()) <= 0) {
    mpfr_set_inf(lo.get(), -1);
  } else {
    mpfr_log(lo.get(), a.lower().get(), MPFR_RNDD);
  }
  mpfr_log(hi.get(), a.upper().get(), MPFR_RNDU);
  return Ball(std::move(lo), std::move(hi));
}

Ball pow(const Ball& a, long exponent) {
  const auto p = a.precision();
  if (exponent == 0) return Ball::from_int(1, p);
  if (exponent < 0) return Ball::from_int(1, p) / pow(a, -exponent);
  const auto e = static_cast<unsigned long>(exponent);
  Mpfr lo(p), hi(p);
  if (e % 2 == 1 || mpfr_sgn(a.lower().get()) >= 0) {
    // monotone increasing on the enclosure
    mpfr_pow_ui(lo.get(), a.lower().get(), e, MPFR_RNDD);
    mpfr_pow_ui(hi.get(), a.upper().get(), e, MPFR_RNDU);
  } else if (mpfr_sgn(a.upper().get()) <= 0) {
    mpfr_pow_ui(lo.get(), a.upper().get(), e, MPFR_RNDD);
    mpfr_pow_ui(hi.get(), a.lower().get(), e, MPFR_RNDU);
  } else {
    Mpfr mag(p);
    mpfr_neg(mag.get(), a.lower().get(), MPFR_RNDU);
    if (mpfr_less_p(mag.get(), a.upper().get())) mpfr_set(mag.get(), a.upper().get(), MPFR_RNDU);
    mpfr_set_zero(lo.get(), 1);
    mpfr_pow_ui(hi.get(), mag.get(), e, MPFR_RNDU);
  }
  return Ball(std::move(lo), std::move(hi));
}

bool certainly_less(const Ball& a, const Ball& b) { return mpfr_less_p(a.upper().get(), b.lower().get()); }

bool overlaps(const Ball& a, const Ball& b) { return !certainly_less(a, b) && !certainly_less(b, a); }

}  // namespace stripcert::reals
