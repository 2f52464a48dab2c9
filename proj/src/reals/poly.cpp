#include "stripcert/reals/poly.hpp"

#include <algorithm>

#include "stripcert/errors.hpp"

namespace stripcert::reals {

Poly::Poly(mpq_class constant) : c_{std::move(constant)} {
  c_[0].canonicalize();
  trim();
}

Poly::Poly(std::vector<mpq_class> coefficients) : c_(std::move(coefficients)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Poly Poly::indeterminate() { return Poly(std::vector<mpq_class>{0, 1}); }

Poly Poly::monomial(mpq_class coefficient, int degree) {
  std::vector<mpq_class> c(static_cast<size_t>(degree) + 1, mpq_class(0));
  c.back() = std::move(coefficient);
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool Poly::is_monomial() const {
  if (c_.empty()) return false;
  return std::count_if(c_.begin(), c_.end(), [](const mpq_class& q) { return q != 0; }) == 1;
}

mpq_class Poly::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

Poly Poly::scaled(const mpq_class& s) const {
  if (s == 0) return Poly();
  Poly out = *this;
  for (auto& q : out.c_) q *= s;
  return out;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading());
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<mpq_class> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Ball Poly::eval(const Ball& x) const {
  const auto p = x.precision();
  if (c_.empty()) return Ball::from_int(0, p);
  Ball acc = Ball::from_rational(c_.back(), p);
  for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + Ball::from_rational(c_[i], p);
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly quotient;
  Poly rem = a;
  const int db = b.degree();
  while (!rem.is_zero() && rem.degree() >= db) {
    Poly term = Poly::monomial(rem.leading() / b.leading(), rem.degree() - db);
    quotient += term;
    rem -= term * b;
  }
  return {quotient, rem};
}

Poly exact_quotient(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Poly> squarefree_factors(const Poly& p) {
  const Poly f = p.monic();
  const Poly one(mpq_class(1));
  std::vector<Poly> out;
  Poly df = f.derivative();
  Poly a0 = gcd(f, df);
  Poly b = exact_quotient(f, a0);
  Poly c = exact_quotient(df, a0);
  Poly d = c - b.derivative();
  while (b.degree() > 0) {
    Poly a = gcd(b, d);
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = c - b.derivative();
    out.push_back(std::move(a));
  }
  if (out.empty()) out.push_back(one);
  return out;
}

std::pair<mpq_class, Poly> primitive_part(const Poly& p) {
  if (p.is_zero()) return {mpq_class(0), Poly()};
  mpz_class den_lcm = 1;
  for (const auto& q : p.coefficients()) den_lcm = lcm(den_lcm, mpz_class(q.get_den()));
  mpz_class num_gcd = 0;
  std::vector<mpq_class> c;
  c.reserve(p.coefficients().size());
  for (const auto& q : p.coefficients()) {
    mpq_class scaled = q * den_lcm;
    num_gcd = gcd(num_gcd, mpz_class(scaled.get_num()));
    c.push_back(scaled);
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading() < 0) content = -content;
  for (auto& q : c) q /= content * den_lcm;
  return {content, Poly(std::move(c))};
}

int sign_at_pi(const Poly& p, mpfr_prec_t max_bits) {
  if (p.is_zero()) return 0;
  if (p.is_constant()) return sgn(p.leading());
  for (mpfr_prec_t bits = 64; bits <= max_bits; bits *= 2) {
    Ball v = p.eval(Ball::pi(bits));
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
  }
  throw Undecided("sign of polynomial at pi not resolved");
}

RatFunc::RatFunc(Poly numerator, Poly denominator) {
  if (denominator.is_zero()) throw DomainError("rational function with zero denominator");
  if (numerator.is_zero()) {
    num_ = Poly();
    den_ = Poly(mpq_class(1));
    return;
  }
  Poly g = gcd(numerator, denominator);
  if (g.degree() > 0) {
    numerator = exact_quotient(numerator, g);
    denominator = exact_quotient(denominator, g);
  }
  const mpq_class lead = denominator.leading();
  num_ = numerator.scaled(1 / lead);
  den_ = denominator.scaled(1 / lead);
}

int RatFunc::sign_at_pi() const { return reals::sign_at_pi(num_) * reals::sign_at_pi(den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::pair<mpz_class, mpz_class> split_square(const mpz_class& n) {
  if (n <= 0) throw DomainError("split_square expects a positive integer");
  mpz_class rest = n, s = 1, t = 1;
  auto take = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) t *= p;
  };
  take(2);
  for (unsigned long p = 3; p <= 1000000; p += 2) {
    if (mpz_class(p) * p > rest) break;
    take(p);
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      s *= sqrt(rest);
    } else {
      t *= rest;
    }
  }
  return {s, t};
}

}  // namespace stripcert::reals
