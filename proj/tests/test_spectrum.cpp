#include "doctest.h"

#include <cmath>
#include <random>

#include "stripcert/errors.hpp"
#include "stripcert/spectrum/spectrum.hpp"

using namespace stripcert;
using namespace stripcert::spectrum;
using reals::compare;
using reals::ExactValue;
using reals::Ordering;

namespace {
const ExactValue PI = ExactValue::pi();
const ExactValue PI2 = reals::pow(PI, 2);
ExactValue q(long p, long d = 1) { return ExactValue(mpq_class(p, d)); }

// Independent double-precision lattice count, used only where no point sits
// near the ellipse boundary.
long naive_count(double h, double lambda) {
  long c = 0;
  for (long m = -200; m <= 200; ++m)
    for (long n = 1; n <= 2000; ++n)
      if (m * m + n * n * M_PI * M_PI / (h * h) <= lambda) ++c;
  return c;
}
}  // namespace

TEST_CASE("eigenvalue formula") {
  ExactValue h = PI + 1;
  CHECK(compare(eigenvalue({0, 1}, h), PI2 / reals::pow(h, 2)) == Ordering::Equal);
  CHECK(compare(eigenvalue({1, 2}, h), 1 + 4 * PI2 / reals::pow(h, 2)) == Ordering::Equal);
  CHECK(compare(eigenvalue({0, 1}, PI), q(1)) == Ordering::Equal);
  CHECK_THROWS_AS(eigenvalue({0, 1}, q(-1)), InvalidHeight);
  CHECK_THROWS_AS(eigenvalue({0, 1}, PI - PI), InvalidHeight);
}

TEST_CASE("lattice count at h = 3, lambda = 50") {
  // Oracle: double loop over |m| <= 7, 1 <= n <= 6, frozen below.
  long oracle = 0;
  for (long m = -7; m <= 7; ++m)
    for (long n = 1; n <= 6; ++n)
      if (m * m + n * n * M_PI * M_PI / 9.0 <= 50.0) ++oracle;
  CHECK(oracle == 66);
  CHECK(counting_function(q(3), q(50)) == 66);
  SpectrumSlice s = enumerate_up_to(q(3), q(50));
  CHECK(s.k_max == 66);
  for (size_t i = 0; i + 1 < s.entries.size(); ++i)
    CHECK(compare(s.entries[i].lambda, s.entries[i + 1].lambda) != Ordering::Greater);
}

TEST_CASE("empty and singleton slices") {
  for (const ExactValue& h : {q(1, 2), q(3), PI, q(7)}) {
    ExactValue below = PI2 / reals::pow(h, 2) - q(1, 1000000);
    CHECK(enumerate_up_to(h, below).entries.empty());
    CHECK(counting_function(h, PI2 / reals::pow(h, 2)) == 1);
  }
  SpectrumSlice s = enumerate_up_to(PI, q(1));
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries[0].index == EigenIndex{0, 1});
  CHECK(s.k_max == 1);
}

TEST_CASE("kth eigenvalue examples") {
  ExactValue h = q(31, 10);
  CHECK(compare(kth_eigenvalue(h, 1), PI2 / reals::pow(h, 2)) == Ordering::Equal);
  CHECK(compare(kth_eigenvalue(h, 8), 1 + 4 * PI2 / reals::pow(h, 2)) == Ordering::Equal);
  // The branch 1 + 9 pi^2/h^2 ends at pi sqrt(5/3) = 4.0557..., so 4.05 is on
  // it and 4.06 is on the next one.
  ExactValue h2 = q(405, 100);
  CHECK(compare(kth_eigenvalue(h2, 13), 1 + 9 * PI2 / reals::pow(h2, 2)) == Ordering::Equal);
  ExactValue h3 = q(406, 100);
  CHECK(compare(kth_eigenvalue(h3, 13), 4 + 4 * PI2 / reals::pow(h3, 2)) == Ordering::Equal);
}

TEST_CASE("lambda_1 violation above pi^2/2") {
  ExactValue h = PI2 / 2 + q(1, 10);
  CHECK(counting_function(h, 2 / h) >= 1);
}

TEST_CASE("Weyl sanity at lambda = 1e4") {
  for (long h : {1L, 3L, 9L}) {
    const double ratio = counting_function(q(h), q(10000)) * 2.0 / (h * 1e4);
    CHECK(std::fabs(ratio - 1.0) < 0.1);
  }
}

TEST_CASE("counting agrees with a naive loop on random rationals") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> hd(5, 90), ld(1, 400);
  for (int t = 0; t < 30; ++t) {
    const long hn = hd(rng), ln = ld(rng);
    const double h = hn / 10.0, lam = ln + 0.5;
    CHECK(counting_function(q(hn, 10), q(2 * ln + 1, 2)) == naive_count(h, lam));
  }
}

TEST_CASE("monotonicity in lambda and h") {
  long prev = 0;
  for (long l = 1; l <= 200; l += 7) {
    const long c = counting_function(q(2), q(l));
    CHECK(c >= prev);
    prev = c;
  }
  for (long l : {20L, 80L, 300L}) {
    long prev_h = 0;
    for (long h = 5; h <= 45; h += 4) {
      const long c = counting_function(q(h, 10), q(l));
      CHECK(c >= prev_h);
      prev_h = c;
    }
  }
}

TEST_CASE("kth eigenvalue is nondecreasing and consistent with counting") {
  for (const ExactValue& h : {q(3, 2), q(31, 10), q(6)}) {
    SpectrumSlice s = enumerate_up_to(h, q(120));
    ExactValue prev(0L);
    for (long k = 1; k <= 40; ++k) {
      ExactValue lk = kth_eigenvalue(h, k);
      CHECK(compare(prev, lk) != Ordering::Greater);
      CHECK(counting_function(h, lk) >= k);
      CHECK(counting_function(h, lk - q(1, 1000000)) < k);
      prev = lk;
    }
  }
}

TEST_CASE("crossover points") {
  ExactValue lo = PI2 / 2, hi = PI2;
  auto xs = crossover_points(9, 28, lo, hi);
  bool has_sqrt3 = false;
  for (size_t i = 0; i < xs.size(); ++i) {
    CHECK(compare(xs[i], lo) == Ordering::Greater);
    CHECK(compare(xs[i], hi) == Ordering::Less);
    if (i + 1 < xs.size()) CHECK(compare(xs[i], xs[i + 1]) == Ordering::Less);
    if (reals::structurally_equal(xs[i], PI * reals::sqrt(q(3)))) has_sqrt3 = true;
    CHECK(!reals::structurally_equal(xs[i], PI));
  }
  CHECK(has_sqrt3);
  // Oracle: distinct q over the same caps with pi*sqrt(q) in range, in doubles.
  std::vector<double> qs;
  for (long m1 = 0; m1 <= 9; ++m1)
    for (long m2 = 0; m2 < m1; ++m2)
      for (long n1 = 1; n1 <= 28; ++n1)
        for (long n2 = n1 + 1; n2 <= 28; ++n2) {
          double v = double(n2 * n2 - n1 * n1) / double(m1 * m1 - m2 * m2);
          double h = M_PI * std::sqrt(v);
          if (h > M_PI * M_PI / 2 && h < M_PI * M_PI) qs.push_back(v);
        }
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end(), [](double a, double b) { return std::fabs(a - b) < 1e-12; }), qs.end());
  CHECK(xs.size() == qs.size());
  auto all = crossover_points(2, 2, q(1), q(10));
  bool has_pi = false;
  for (auto& x : all) has_pi |= reals::structurally_equal(x, PI);
  CHECK(has_pi);
}

TEST_CASE("json lines") {
  SpectrumSlice s = enumerate_up_to(PI, q(1));
  CHECK(to_json_lines(s) ==
        "{\"m\":0,\"n\":1,\"multiplicity\":1,\"lambda_exact\":\"1\",\"lambda_decimal30\":\"1.00000000000000000000000000000\"}\n");
}
