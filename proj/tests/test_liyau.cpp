#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "stripcert/errors.hpp"
#include "stripcert/liyau/liyau.hpp"

using namespace stripcert;
using namespace stripcert::liyau;
using reals::compare;
using reals::ExactValue;
using reals::Ordering;

namespace {
const ExactValue PI = ExactValue::pi();
const ExactValue PI2 = reals::pow(PI, 2);
ExactValue q(long p, long d = 1) { return ExactValue(mpq_class(p, d)); }

const std::vector<PartitionCell>& partition() {
  static const std::vector<PartitionCell> cells = build_partition(86);
  return cells;
}

ExactValue lambda_of(const EigenIndex& idx, const ExactValue& h) {
  return q(idx.m * idx.m) + q(idx.n * idx.n) * PI2 / reals::pow(h, 2);
}

// Sum of the first k eigenvalues with multiplicity, from the spectrum oracle.
ExactValue oracle_sum(const ExactValue& h, long k) {
  const auto slice = spectrum::enumerate_up_to(h, spectrum::kth_eigenvalue(h, k));
  ExactValue s(0L);
  long taken = 0;
  for (const auto& e : slice.entries) {
    const long take = std::min<long>(e.multiplicity, k - taken);
    s = s + take * e.lambda;
    taken += take;
    if (taken == k) break;
  }
  return s;
}

std::vector<EigenIndex> expanded(const PartitionCell& c) {
  std::vector<EigenIndex> out;
  for (const auto& idx : c.ordered)
    for (int i = 0; i < idx.multiplicity(); ++i) out.push_back(idx);
  return out;
}

bool relaxed_holds(const ExactValue& h, long k) {
  return compare(spectrum::kth_eigenvalue(h, k), (2 * k - 1) / h) != Ordering::Less;
}
}  // namespace

TEST_CASE("relaxed intervals") {
  const auto a = relaxed_interval(1, {0, 1});
  REQUIRE(a);
  CHECK(compare(a->lo, PI2) == Ordering::Equal);
  CHECK_FALSE(a->hi);
  CHECK(a->weight == 1);
  CHECK_FALSE(relaxed_interval(2, {1, 1}));
  const ExactValue h = PI2 / 2 + q(1, 100);
  const auto seventh = ordering_at(h, 7).back();
  CHECK(relaxed_interval(7, seventh));
  const auto b = relaxed_interval(4, {1, 1});
  REQUIRE(b);
  CHECK(compare(b->lo, q(7, 2) - reals::sqrt(q(49, 4) - PI2)) == Ordering::Equal);
  CHECK(compare(*b->hi, q(7, 2) + reals::sqrt(q(49, 4) - PI2)) == Ordering::Equal);
}

TEST_CASE("relaxed limits") {
  const auto limits = relaxed_limits();
  REQUIRE(limits.n_cap.size() == kIndexCapM + 1);
  CHECK(limits.n_cap[0] == kIndexCapN);
  for (size_t m = 0; m < limits.n_cap.size(); ++m) {
    const long n = limits.n_cap[m];
    const double lam = double(m * m) + double(n * n) / (M_PI * M_PI);
    if (n > 0 && n < kIndexCapN) {
      CHECK(lam <= kEigenvalueCap);
      CHECK(double(m * m) + double((n + 1) * (n + 1)) / (M_PI * M_PI) > kEigenvalueCap);
    }
  }
}

TEST_CASE("exceptional orders up to 2000") {
  const auto res = exceptional_sweep(PI2 / 2, PI2, {2000, std::nullopt, 512, {}});
  std::vector<long> ks;
  for (const auto& w : res.windows) ks.push_back(w.k);
  CHECK(ks == std::vector<long>{7, 10, 77, 86});
  CHECK(res.completed == 2000);
  for (const auto& w : res.windows) {
    REQUIRE(!w.ranges.empty());
    for (const auto& r : w.ranges) {
      const ExactValue mid = reals::canonicalize((r.lo + r.hi) / 2);
      const auto inside = sample_rationals(r.lo, r.hi, 5);
      for (const auto& s : inside) CHECK_FALSE(relaxed_holds(ExactValue(s), w.k));
      CHECK_FALSE(relaxed_holds(mid, w.k));
    }
  }
  // outside the windows the relaxed condition holds for the same orders
  for (long i = 1; i <= 30; ++i) {
    const ExactValue h = q(4935 + 163 * i, 1000);
    if (compare(h, PI2) == Ordering::Greater) break;
    for (const auto& w : res.windows) {
      bool in = false;
      for (const auto& r : w.ranges)
        in = in || (compare(r.lo, h) == Ordering::Less && compare(h, r.hi) == Ordering::Less);
      if (!in) CHECK(relaxed_holds(h, w.k));
    }
  }
}

TEST_CASE("exceptional orders on a clear sub-range") {
  CHECK(exceptional_orders(q(5), q(68, 10), 2000).empty());
  for (long i = 1; i <= 9; ++i)
    for (long k = 1; k <= 100; ++k) CHECK(relaxed_holds(q(5) + q(18 * i, 100), k));
}

TEST_CASE("exceptional sweep checkpoint and resume") {
  const auto path = (std::filesystem::temp_directory_path() / "stripcert_test_checkpoint.txt").string();
  std::remove(path.c_str());
  const auto first = exceptional_sweep(PI2 / 2, PI2, {100, path, 16, {}});
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "stripcert liyau-exceptional checkpoint v1");
  std::stringstream rest;
  rest << in.rdbuf();
  CHECK(rest.str().find("completed 100") != std::string::npos);
  const auto resumed = exceptional_sweep(PI2 / 2, PI2, {300, path, 64, {}});
  const auto fresh = exceptional_sweep(PI2 / 2, PI2, {300, std::nullopt, 64, {}});
  auto ks = [](const ExceptionalResult& r) {
    std::vector<long> out;
    for (const auto& w : r.windows) out.push_back(w.k);
    return out;
  };
  CHECK(ks(first) == std::vector<long>{7, 10, 77, 86});
  CHECK(ks(resumed) == ks(fresh));
  REQUIRE(resumed.windows.size() == fresh.windows.size());
  for (size_t i = 0; i < fresh.windows.size(); ++i)
    for (size_t j = 0; j < fresh.windows[i].ranges.size(); ++j)
      CHECK(reals::structurally_equal(resumed.windows[i].ranges[j].lo, fresh.windows[i].ranges[j].lo));
  CHECK_THROWS_AS(exceptional_sweep(PI2 / 2, q(9), {300, path, 64, {}}), InvalidArgument);
  std::remove(path.c_str());
  CHECK_THROWS_AS(exceptional_sweep(q(4), PI2, {10, std::nullopt, 64, {}}), InvalidArgument);
}

TEST_CASE("partition covers the range without gaps") {
  const auto& cells = partition();
  REQUIRE(!cells.empty());
  CHECK(reals::structurally_equal(reals::canonicalize(cells.front().lo), reals::canonicalize(PI2 / 2)));
  CHECK(compare(cells.back().hi, PI2) == Ordering::Equal);
  bool has_pi_sqrt3 = false;
  const ExactValue pi_sqrt3 = PI * reals::sqrt(q(3));
  for (size_t i = 0; i < cells.size(); ++i) {
    CHECK(compare(cells[i].lo, cells[i].hi) == Ordering::Less);
    CHECK(cells[i].ordered.size() >= 44);
    if (i + 1 < cells.size()) CHECK(compare(cells[i].hi, cells[i + 1].lo) == Ordering::Equal);
    has_pi_sqrt3 = has_pi_sqrt3 || compare(cells[i].hi, pi_sqrt3) == Ordering::Equal;
    CHECK(compare(cells[i].lo, PI) != Ordering::Equal);
  }
  CHECK(has_pi_sqrt3);
}

TEST_CASE("partition cells carry no inner crossovers") {
  const auto& cells = partition();
  for (size_t i = 0; i < cells.size(); i += 37) {
    const auto inner = spectrum::crossover_points(9, 28, cells[i].lo, cells[i].hi);
    CHECK(inner.empty());
  }
}

TEST_CASE("cell orderings agree at a second sample") {
  const auto& cells = partition();
  for (size_t i = 0; i < cells.size(); i += 11) {
    const auto& c = cells[i];
    const ExactValue h = c.lo + (c.hi - c.lo) / 10;
    CHECK(ordering_at(h, 86) == c.ordered);
    CHECK(verify_cell(c, 86));
  }
}

TEST_CASE("partial sums match the spectrum oracle") {
  const auto& cells = partition();
  for (size_t i = 0; i < cells.size(); i += 97) {
    const auto& c = cells[i];
    const auto sums = partial_sums(c, 86);
    REQUIRE(sums.size() == 86);
    for (size_t j = 1; j < sums.size(); ++j) {
      CHECK(sums[j].a >= sums[j - 1].a);
      CHECK(sums[j].beta >= sums[j - 1].beta);
    }
    for (const auto& r : sample_rationals(c.lo, c.hi, 3)) {
      const ExactValue h(r);
      for (long k : {1L, 8L, 13L, 86L}) {
        const auto& s = sums[static_cast<size_t>(k - 1)];
        CHECK(s.k == k);
        CHECK(compare(q(s.a) + q(s.beta) * PI2 / reals::pow(h, 2), oracle_sum(h, k)) == Ordering::Equal);
      }
    }
  }
}

TEST_CASE("cell checks") {
  const auto& cells = partition();
  long violations = 0;
  for (const auto& c : cells) violations += static_cast<long>(liyau_check_cell(c, 86).size());
  CHECK(violations == 0);
  for (size_t i = 0; i < cells.size(); i += 50) {
    const auto sums = partial_sums(cells[i], 1);
    CHECK(sums[0].a == 0);
    CHECK(sums[0].beta == 1);
  }
  const PartitionCell past{q(9), q(11), ordering_at(q(10), 86)};
  const auto v = liyau_check_cell(past, 86);
  REQUIRE(!v.empty());
  CHECK(v.front() == 1);
}

TEST_CASE("relaxed condition at cell endpoints outside the exceptional orders") {
  const auto& cells = partition();
  const std::vector<long> exceptional{7, 10, 77, 86};
  long checked = 0;
  for (const auto& c : cells) {
    const auto order = expanded(c);
    for (long k = 1; k <= 86; ++k) {
      if (std::find(exceptional.begin(), exceptional.end(), k) != exceptional.end()) continue;
      const auto& idx = order[static_cast<size_t>(k - 1)];
      for (const ExactValue* h : {&c.lo, &c.hi}) {
        CHECK(compare(lambda_of(idx, *h), (2 * k - 1) / *h) != Ordering::Less);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("low-range certificates") {
  const auto rec = lowrange_certificates();
  CHECK(rec.all_hold());
  CHECK(rec.items.size() >= 8);
  CHECK(reals::sign(16 - 4 * PI2) == -1);
  const ExactValue h = q(31, 10);
  CHECK(compare(spectrum::kth_eigenvalue(h, 8), 1 + 4 * PI2 / reals::pow(h, 2)) == Ordering::Equal);
  CHECK(compare(spectrum::kth_eigenvalue(h, 8), 8 / h) != Ordering::Less);
  const auto branches = low_range_branches();
  CHECK(branches.size() == 4);
  for (const auto& b : branches)
    for (const auto& s : sample_rationals(b.lo, b.hi, 4))
      CHECK(compare(spectrum::kth_eigenvalue(ExactValue(s), b.k), lambda_of(b.index, ExactValue(s))) ==
            Ordering::Equal);
}

TEST_CASE("sweep caps") {
  const auto rec = sweep_cap_certificates();
  CHECK(rec.all_hold());
  CHECK(eigenvalue_cap_expression().approx() == doctest::Approx(26300.558).epsilon(1e-7));
  CHECK(compare(eigenvalue_cap_expression(), q(kEigenvalueCap)) == Ordering::Less);
}

TEST_CASE("verdicts") {
  auto v = liyau_verdict(q(31, 10));
  CHECK(v.kind == LiYauVerdictKind::Holds);
  v = liyau_verdict(q(7));
  CHECK(v.kind == LiYauVerdictKind::Holds);
  v = liyau_verdict(q(10));
  CHECK(v.kind == LiYauVerdictKind::FailsAt);
  CHECK(v.failing_orders == std::vector<long>{1});
  CHECK(liyau_verdict(PI2).kind == LiYauVerdictKind::Holds);
  CHECK(liyau_verdict(q(1)).kind == LiYauVerdictKind::Holds);
  CHECK_THROWS_AS(liyau_verdict(q(-1)), InvalidHeight);
}

TEST_CASE("average form on random heights") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> hp(1, 98696);
  std::uniform_int_distribution<long> kp(1, 86);
  for (int i = 0; i < 50; ++i) {
    const ExactValue h = q(hp(rng), 10000);
    const long k = kp(rng);
    CHECK(compare(oracle_sum(h, k) / k, q(k) / h) != Ordering::Less);
  }
}
