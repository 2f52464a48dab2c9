#include "stripcert/asymptotics/asymptotics.hpp"

#include <algorithm>

#include "stripcert/errors.hpp"
#include "stripcert/polya/polya.hpp"

namespace stripcert::asymptotics {

using reals::compare;
using reals::Ordering;

namespace {

constexpr mpfr_prec_t kBits = 256;

const ExactValue& pi() {
  static const ExactValue v = ExactValue::pi();
  return v;
}

ExactValue pi_pow(long j) { return reals::pow(pi(), j); }

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// Gamma(k/2)^2 = r * pi^e exactly.
std::pair<mpq_class, long> gamma_half_squared_parts(long k) {
  if (k % 2 == 0) {
    const mpz_class f = factorial(k / 2 - 1);
    return {mpq_class(f * f), 0};
  }
  // Gamma(j + 1/2) = (2j)! / (4^j j!) sqrt(pi), j = (k - 1)/2
  const long j = (k - 1) / 2;
  mpz_class four_j;
  mpz_ui_pow_ui(four_j.get_mpz_t(), 4, static_cast<unsigned long>(j));
  mpq_class r(factorial(2 * j), four_j * factorial(j));
  r.canonicalize();
  return {r * r, 1};
}

Ball nth_root(const Ball& x, long n) {
  return reals::exp(reals::log(x) / Ball::from_int(n, x.precision()));
}

}  // namespace

DiskBoundParts disk_bound_parts(const ExactValue& R) {
  if (compare(R, pi()) != Ordering::Greater) throw DomainError("disk bound needs R > pi");
  const ExactValue pi2 = pi_pow(2);
  const ExactValue R2 = reals::pow(R, 2);
  const ExactValue w = reals::sqrt(R2 - pi2);
  const ExactValue at = reals::atan(pi() / w);
  const ExactValue c1 = 12 * pi();
  const ExactValue c2 = pi() * (pi2 + 6);
  const ExactValue c3 = 2 * (pi2 - 3);
  const ExactValue numerator = pi() * (12 * w - pi2 - 6) - c3 * w * at;
  const ExactValue denominator = 6 * (pi() * (R2 - pi2) + w * R2 * at);
  return {R, w, numerator, denominator, c1, c2, c3};
}

ExactValue disk_rayleigh_bound(const ExactValue& R) {
  if (compare(R, pi()) != Ordering::Greater) throw DomainError("disk bound needs R > pi");
  const ExactValue pi2 = pi_pow(2);
  const ExactValue w = reals::sqrt(reals::pow(R, 2) - pi2);
  const ExactValue at = reals::atan(pi() / w);
  return (pi() * (6 + pi2) / w + 2 * (pi2 - 3) * at) / (6 * (pi() * w + reals::pow(R, 2) * at));
}

ExactValue disk_area(const ExactValue& R) {
  if (compare(R, pi()) != Ordering::Greater) throw DomainError("disk area formula needs R > pi");
  const ExactValue w = reals::sqrt(reals::pow(R, 2) - pi_pow(2));
  return 2 * pi() * w + 2 * reals::pow(R, 2) * reals::atan(pi() / w);
}

RadiusEnclosure disk_critical_radius(const mpq_class& tol) {
  return disk_critical_radius(tol, mpq_class(16, 5), mpq_class(9, 2));
}

RadiusEnclosure disk_critical_radius(const mpq_class& tol, const mpq_class& bracket_lo, const mpq_class& bracket_hi) {
  if (tol <= 0) throw InvalidArgument("tolerance must be positive");
  if (bracket_lo >= bracket_hi) throw InvalidArgument("bracket must satisfy lo < hi");
  auto numerator_sign = [](const mpq_class& r) { return reals::sign(disk_bound_parts(ExactValue(r)).numerator); };
  RadiusEnclosure out{bracket_lo, bracket_hi, 0, {}};
  const int s_lo = numerator_sign(out.lo);
  const int s_hi = numerator_sign(out.hi);
  if (!(s_lo < 0 && s_hi > 0))
    throw BracketError("numerator signs at the bracket ends do not oppose: " + std::to_string(s_lo) + ", " +
                       std::to_string(s_hi));
  while (out.hi - out.lo > tol) {
    const mpq_class mid = (out.lo + out.hi) / 2;
    const int s = numerator_sign(mid);
    if (s == 0) {
      out.lo = out.hi = mid;
    } else if (s < 0) {
      out.lo = mid;
    } else {
      out.hi = mid;
    }
    ++out.steps;
    out.widths.push_back(out.hi - out.lo);
  }
  return out;
}

ExactValue gamma_half(long k) {
  if (k < 1) throw InvalidArgument("gamma_half needs k >= 1");
  if (k % 2 == 0) return ExactValue(mpq_class(factorial(k / 2 - 1)));
  const long j = (k - 1) / 2;
  mpz_class four_j;
  mpz_ui_pow_ui(four_j.get_mpz_t(), 4, static_cast<unsigned long>(j));
  mpq_class r(factorial(2 * j), four_j * factorial(j));
  r.canonicalize();
  return ExactValue(r) * reals::sqrt(pi());
}

ExactValue gamma_half_integer_squared(long n) {
  const auto [r, e] = gamma_half_squared_parts(n + 3);
  return ExactValue(r) * pi_pow(e);
}

Threshold eta1(long n) {
  if (n < 1) throw InvalidArgument("eta1 needs n >= 1");
  // X = pi (n+1) / (2 Gamma((n+3)/2)^2) = r * pi^e, e in {0, 1}
  const auto [g, ge] = gamma_half_squared_parts(n + 3);
  const mpq_class r = mpq_class(n + 1) / (2 * g);
  const long e = 1 - ge;
  const ExactValue X = ExactValue(r) * pi_pow(e);
  Threshold t;
  t.n = n;
  t.expression = "(* (/ pi 2) (root " + X.to_prefix() + " " + std::to_string(n) + "))";
  if (n == 1) t.exact = reals::canonicalize(pi() / 2 * X);
  if (n == 2) t.exact = reals::canonicalize(pi() / 2 * reals::sqrt(X));
  t.enclosure = t.exact ? t.exact->eval(kBits) : Ball::pi(kBits) / Ball::from_int(2, kBits) * nth_root(X.eval(kBits), n);
  if (t.exact) t.expression = t.exact->to_prefix();
  return t;
}

Threshold hypercube_threshold(long n) {
  if (n < 1) throw InvalidArgument("hypercube_threshold needs n >= 1");
  // n^{(n+1)/2} pi^{(n+3)/2} / (2^n Gamma((n+3)/2))
  mpz_class two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  ExactValue value;
  if (n % 2 == 1) {
    mpz_class np;
    mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>((n + 1) / 2));
    const mpq_class gamma(factorial((n + 3) / 2 - 1));
    value = ExactValue(mpq_class(np) / (mpq_class(two_n) * gamma)) * pi_pow((n + 3) / 2);
  } else {
    // sqrt(pi) cancels: pi^{(n+2)/2} sqrt(pi) / (r sqrt(pi))
    mpz_class np;
    mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n / 2));
    const long j = (n + 2) / 2;  // Gamma(j + 1/2) = r sqrt(pi)
    mpz_class four_j;
    mpz_ui_pow_ui(four_j.get_mpz_t(), 4, static_cast<unsigned long>(j));
    mpq_class r(factorial(2 * j), four_j * factorial(j));
    r.canonicalize();
    value = ExactValue(mpq_class(np) / (mpq_class(two_n) * r)) * reals::sqrt(ExactValue(n)) * pi_pow((n + 2) / 2);
  }
  Threshold t;
  t.n = n;
  t.exact = reals::canonicalize(value);
  value = *t.exact;
  t.expression = value.to_prefix();
  t.enclosure = value.eval(kBits);
  return t;
}

bool product_necessary_condition(const std::vector<ExactValue>& heights) {
  if (heights.empty()) throw ArityError("at least one height is required");
  for (const auto& h : heights)
    if (reals::sign(h) <= 0) throw InvalidHeight("heights must be positive: " + h.to_prefix());
  const long n = static_cast<long>(heights.size());
  ExactValue inv_sq(0L), prod(1L);
  for (const auto& h : heights) {
    inv_sq = inv_sq + 1 / reals::pow(h, 2);
    prod = prod * h;
  }
  mpz_class four;
  mpz_ui_pow_ui(four.get_mpz_t(), 4, static_cast<unsigned long>(n + 1));
  const ExactValue lhs = 4 * pi_pow(n + 3) * reals::pow(inv_sq, n + 1) * reals::pow(prod, 2);
  const ExactValue rhs = ExactValue(mpq_class(four)) * gamma_half_integer_squared(n);
  return compare(lhs, rhs) != Ordering::Less;
}

bool product_sufficient_condition(const std::vector<ExactValue>& heights) {
  if (heights.size() < 3) throw ArityError("the product condition needs at least three heights");
  for (const auto& h : heights)
    if (reals::sign(h) <= 0) throw InvalidHeight("heights must be positive: " + h.to_prefix());
  const ExactValue pi2 = pi_pow(2);
  return std::any_of(heights.begin(), heights.end(),
                     [&](const ExactValue& h) { return compare(h, pi2) != Ordering::Greater; });
}

std::vector<AreaInterval> isoperimetric_ranges() {
  const ExactValue two_pi = 2 * pi();
  auto lo_of = [](long k, long m, long n) { return polya::k_interval(k, {m, n})->lo; };
  auto hi_of = [](long k, long m, long n) { return *polya::k_interval(k, {m, n})->hi; };
  return {
      {ExactValue(0L), two_pi * lo_of(8, 1, 2), false, true},
      {two_pi * hi_of(8, 2, 1), two_pi * lo_of(13, 1, 3), true, true},
      {two_pi * hi_of(13, 2, 2), pi_pow(3), true, true},
  };
}

}  // namespace stripcert::asymptotics
