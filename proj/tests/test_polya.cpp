#include "doctest.h"

#include <cmath>
#include <random>

#include "stripcert/errors.hpp"
#include "stripcert/polya/polya.hpp"

using namespace stripcert;
using namespace stripcert::polya;
using reals::compare;
using reals::ExactValue;
using reals::Ordering;

namespace {
const ExactValue PI = ExactValue::pi();
const ExactValue PI2 = reals::pow(PI, 2);
ExactValue q(long p, long d = 1) { return ExactValue(mpq_class(p, d)); }

bool same(const ExactValue& a, const ExactValue& b) {
  return reals::structurally_equal(reals::canonicalize(a), reals::canonicalize(b));
}

bool inside(const ExactValue& h, const FailureReport& r) {
  for (const auto& iv : r.intervals)
    if (compare(iv.lo, h) == Ordering::Less && compare(h, iv.hi) == Ordering::Less) return true;
  return false;
}

// Rationals spread over (lo, hi) with a fixed seed.
std::vector<ExactValue> random_heights(double lo, double hi, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(static_cast<long>(lo * 100000) + 1, static_cast<long>(hi * 100000) - 1);
  std::vector<ExactValue> out;
  for (int i = 0; i < count; ++i) out.push_back(q(pick(rng), 100000));
  return out;
}

// Endpoints in the rescaled variable h/(2 pi), built independently.
ExactValue rescaled_lo(long k, long m, long n) {
  if (m == 0) return q(n * n) * PI / (4 * k);
  const ExactValue kp = q(k) / PI;
  return (kp - reals::sqrt(reals::pow(kp, 2) - q(m * m * n * n))) / (2 * m * m);
}
ExactValue rescaled_hi(long k, long m, long n) {
  const ExactValue kp = q(k) / PI;
  return (kp + reals::sqrt(reals::pow(kp, 2) - q(m * m * n * n))) / (2 * m * m);
}

const double H_LO = (1 - 2 * std::sqrt(6.0) / 9) * M_PI;
const double H_HI = M_PI * M_PI / 2;
}  // namespace

TEST_CASE("k-interval examples") {
  const auto a = k_interval(8, {1, 2});
  REQUIRE(a);
  CHECK(a->weight == 2);
  CHECK(a->k == 8);
  CHECK(a->lo.to_prefix() == "(- 8 (sqrt (- 64 (* 4 (pow pi 2)))))");
  REQUIRE(a->hi);
  CHECK(compare(*a->hi, 8 + reals::sqrt(64 - 4 * PI2)) == Ordering::Equal);

  const auto b = k_interval(8, {2, 1});
  REQUIRE(b);
  CHECK(b->weight == 2);
  CHECK(compare(b->lo, 2 - reals::sqrt(4 - PI2 / 4)) == Ordering::Equal);
  CHECK(compare(*b->hi, 2 + reals::sqrt(4 - PI2 / 4)) == Ordering::Equal);

  CHECK_FALSE(k_interval(1, {1, 1}));

  const auto c = k_interval(3, {0, 2});
  REQUIRE(c);
  CHECK(c->weight == 1);
  CHECK_FALSE(c->hi);
  CHECK(compare(c->lo, 4 * PI2 / 6) == Ordering::Equal);
}

TEST_CASE("k-interval membership matches the defining inequality") {
  for (long k = 1; k <= 12; ++k)
    for (long m = 0; m <= 4; ++m)
      for (long n = 1; n <= 4; ++n) {
        const auto iv = k_interval(k, {m, n});
        for (long i = 1; i <= 40; ++i) {
          const double h = i * 0.25;
          const double rhs = m * m * h / 2 + n * n * M_PI * M_PI / (2 * h);
          if (std::abs(k - rhs) < 1e-9) continue;
          const bool member = iv && iv->lo.approx() < h && (!iv->hi || h < iv->hi->approx());
          CHECK(member == (k > rhs));
        }
      }
}

TEST_CASE("rescaled endpoints times 2 pi equal natural endpoints") {
  for (long k : {3L, 8L, 13L, 40L})
    for (long m = 0; m <= 3; ++m)
      for (long n = 1; n <= 3; ++n) {
        const auto iv = k_interval(k, {m, n});
        if (!iv) continue;
        CHECK(same(2 * PI * rescaled_lo(k, m, n), iv->lo));
        if (m > 0) CHECK(same(2 * PI * rescaled_hi(k, m, n), *iv->hi));
      }
}

TEST_CASE("failure sets for the two orders") {
  const auto r8 = failure_set_for_k(8, analytic_height(), lambda1_height());
  REQUIRE(r8.intervals.size() == 1);
  CHECK(compare(r8.intervals[0].lo, 8 - reals::sqrt(64 - 4 * PI2)) == Ordering::Equal);
  CHECK(compare(r8.intervals[0].hi, 2 + reals::sqrt(4 - PI2 / 4)) == Ordering::Equal);
  CHECK(r8.intervals[0].lo.approx() == doctest::Approx(3.0481).epsilon(1e-4));
  CHECK(r8.intervals[0].hi.approx() == doctest::Approx(3.2380).epsilon(1e-4));

  const auto r13 = failure_set_for_k(13, analytic_height(), lambda1_height());
  REQUIRE(r13.intervals.size() == 1);
  CHECK(compare(r13.intervals[0].lo, 13 - reals::sqrt(169 - 9 * PI2)) == Ordering::Equal);
  CHECK(compare(r13.intervals[0].hi, q(13, 4) + reals::sqrt(q(169, 16) - PI2)) == Ordering::Equal);
  CHECK(r13.intervals[0].lo.approx() == doctest::Approx(4.0460).epsilon(1e-4));
  CHECK(r13.intervals[0].hi.approx() == doctest::Approx(4.0824).epsilon(1e-4));

  CHECK(failure_set_for_k(5, analytic_height(), lambda1_height()).intervals.empty());
}

TEST_CASE("only orders 8 and 13 fail below the lambda1 height") {
  const auto reports = failure_sets(kSearchOrderCap, analytic_height(), lambda1_height());
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].k == 8);
  CHECK(reports[1].k == 13);
}

TEST_CASE("endpoint sharpness") {
  const ExactValue h = 8 - reals::sqrt(64 - 4 * PI2);
  const ExactValue lam = spectrum::kth_eigenvalue(h, 8);
  CHECK(same(lam * h / 2, q(8)));
  CHECK(same(lam, 1 + 4 * PI2 / reals::pow(h, 2)));
}

TEST_CASE("sweep agrees with the eigenvalue oracle") {
  std::vector<FailureReport> reports;
  for (long k = 1; k <= 30; ++k) reports.push_back(failure_set_for_k(k, analytic_height(), lambda1_height()));
  auto heights = random_heights(H_LO, H_HI, 180, 7);
  // points inside the two windows so both sides of the equivalence are hit
  for (long i = 1; i <= 10; ++i) heights.push_back(q(30481 + 189 * i, 10000));
  for (long i = 1; i <= 10; ++i) heights.push_back(q(40460 + 33 * i, 10000));
  long failing = 0;
  for (const auto& h : heights) {
    for (long k = 1; k <= 30; ++k) {
      const ExactValue lam = spectrum::kth_eigenvalue(h, k);
      const bool oracle = compare(lam, 2 * q(k) / h) == Ordering::Less;
      CHECK(inside(h, reports[static_cast<size_t>(k - 1)]) == oracle);
      failing += oracle;
    }
  }
  CHECK(failing >= 20);
}

TEST_CASE("interval weights count eigenvalues below the level") {
  for (const auto& h : random_heights(0.5, 9.5, 25, 11)) {
    for (long k : {1L, 4L, 9L, 17L}) {
      long weight = 0;
      for (long m = 0; m <= k; ++m)
        for (long n = 1; n <= k; ++n) {
          const auto iv = k_interval(k, {m, n});
          if (iv && compare(iv->lo, h) == Ordering::Less && (!iv->hi || compare(h, *iv->hi) == Ordering::Less))
            weight += iv->weight;
        }
      const ExactValue level = 2 * q(k) / h;
      long below = 0;
      for (const auto& e : spectrum::enumerate_up_to(h, level).entries)
        if (compare(e.lambda, level) == Ordering::Less) below += e.multiplicity;
      CHECK(weight == below);
    }
  }
}

TEST_CASE("estimate bounds") {
  const ExactValue lam = q(50);
  const ExactValue at_pi = reals::sqrt(reals::pow(q(2, 3), 3)) * reals::sqrt(reals::sqrt(lam));
  CHECK((r_bound_first(PI, lam) - at_pi).eval(2048).contains_zero());
  CHECK(reals::sign(r_bound_first(PI, lam)) > 0);
  // sampled soundness
  CHECK(compare(q(spectrum::counting_function(q(2), q(61)) - 61), r_bound_first(q(2), q(61))) != Ordering::Greater);
  CHECK(compare(q(spectrum::counting_function(q(3), q(50)) - 75), r_bound_second(q(3), q(50))) != Ordering::Greater);
  CHECK(compare(second_estimate_threshold(lambda1_height()), q(20)) == Ordering::Less);
  CHECK(second_estimate_threshold(lambda1_height()).approx() == doctest::Approx(19.591).epsilon(1e-4));
  CHECK_THROWS_AS(first_estimate_threshold(PI), InvalidArgument);
}

TEST_CASE("threshold identities") {
  for (long hn : {5L, 10L, 20L, 28L}) {
    const ExactValue h = q(hn, 10);
    const ExactValue t1 = first_estimate_threshold(h);
    for (long f : {9L, 11L}) {
      const ExactValue lam = reals::pow(t1 * q(f, 10), 2);
      CHECK((reals::sign(r_bound_first(h, lam)) <= 0) == (f > 10));
    }
    // exactly zero at the threshold
    CHECK(r_bound_first(h, reals::pow(t1, 2)).eval(2048).contains_zero());
  }
  for (long hn : {5L, 14L, 30L, 49L}) {
    const ExactValue h = q(hn, 10);
    const ExactValue t2 = second_estimate_threshold(h);
    for (long f : {9L, 11L}) {
      const ExactValue lam = reals::pow(t2 * q(f, 10), 2);
      CHECK((reals::sign(r_bound_second(h, lam)) <= 0) == (f > 10));
    }
    CHECK(r_bound_second(h, reals::pow(t2, 2)).eval(2048).contains_zero());
  }
}

TEST_CASE("bound soundness on a grid") {
  for (long hn = 2; hn <= 49; hn += 3) {
    const ExactValue h = q(hn, 10);
    for (long l = 5; l <= 400; l += 15) {
      const ExactValue lam = q(l);
      const long N = spectrum::counting_function(h, lam);
      const ExactValue R = q(N) - lam * h / 2;
      CHECK(compare(R, r_bound_second(h, lam)) != Ordering::Greater);
      if (compare(h, PI) == Ordering::Less) CHECK(compare(R, r_bound_first(h, lam)) != Ordering::Greater);
    }
  }
}

TEST_CASE("verdicts") {
  auto v = polya_verdict(q(31, 10));
  CHECK(v.kind == VerdictKind::Fails);
  CHECK(v.failing_orders == std::vector<long>{8});
  CHECK(polya_verdict(q(1)).kind == VerdictKind::SatisfiedAnalytic);
  v = polya_verdict(q(5));
  CHECK(v.kind == VerdictKind::Fails);
  CHECK(v.failing_orders == std::vector<long>{1});
  v = polya_verdict(q(407, 100));
  CHECK(v.kind == VerdictKind::Fails);
  CHECK(v.failing_orders == std::vector<long>{13});
  CHECK(polya_verdict(q(4)).kind == VerdictKind::SatisfiedSearched);
  CHECK(polya_verdict(lambda1_height()).kind == VerdictKind::SatisfiedSearched);
  CHECK(polya_verdict(8 - reals::sqrt(64 - 4 * PI2)).kind == VerdictKind::SatisfiedSearched);
  CHECK_THROWS_AS(polya_verdict(q(0)), InvalidHeight);
  CHECK(analytic_height().approx() == doctest::Approx(1.431526213373974).epsilon(1e-14));
}

TEST_CASE("gate certificates hold") {
  const auto certs = polya_gate_certificates();
  CHECK(!certs.empty());
  for (const auto& c : certs) CHECK_MESSAGE(c.holds, c.name);
}
