#include "stripcert/polya/polya.hpp"

#include <mutex>

#include "stripcert/errors.hpp"
#include "stripcert/util/parallel.hpp"

namespace stripcert::polya {

using reals::Ball;
using reals::Mpfr;
using reals::compare;
using reals::Ordering;

namespace {

const ExactValue& pi() {
  static const ExactValue v = ExactValue::pi();
  return v;
}

ExactValue two_thirds_pow_three_halves() { return ExactValue(mpq_class(2, 3)) * reals::sqrt(ExactValue(mpq_class(2, 3))); }

ExactValue fourth_root(const ExactValue& x) { return reals::sqrt(reals::sqrt(x)); }

// (h/pi + sqrt(pi/h)) / (sqrt((h/pi)^2 + 1) - h/pi), squared and scaled by 8/27,
// over a Ball of heights.
Ball second_threshold_ball(const Ball& h) {
  const Ball p = Ball::pi(h.precision());
  const Ball x = h / p;
  const Ball num = x + reals::sqrt(p / h);
  const Ball den = reals::sqrt(x * x + Ball::from_int(1, h.precision())) - x;
  const Ball r = num / den;
  return Ball::from_rational(mpq_class(8, 27), h.precision()) * r * r;
}

// Certifies sup over [lo, hi] of the second threshold is below `bound` by
// bisecting until each piece's enclosure clears it.
bool threshold_below_on(const Mpfr& lo, const Mpfr& hi, const mpq_class& bound, int depth) {
  const Ball piece(lo, hi);
  const Ball v = second_threshold_ball(piece);
  if (reals::certainly_less(v, Ball::from_rational(bound, 128))) return true;
  if (depth == 0) return false;
  Mpfr mid(128);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return threshold_below_on(lo, mid, bound, depth - 1) && threshold_below_on(mid, hi, bound, depth - 1);
}

struct SearchCache {
  std::once_flag once;
  std::vector<FailureReport> reports;
};

const std::vector<FailureReport>& searched_failures() {
  static SearchCache cache;
  std::call_once(cache.once,
                 [] { cache.reports = failure_sets(kSearchOrderCap, analytic_height(), lambda1_height()); });
  return cache.reports;
}

}  // namespace


std::optional<WeightedInterval> k_interval(long k, const EigenIndex& idx) {
  if (k < 1 || idx.n < 1 || idx.m < 0) throw InvalidArgument("k_interval needs k >= 1 and a valid index");
  if (!interval_exists(2 * k, idx.m, idx.n)) return std::nullopt;
  return WeightedInterval{interval_lo(2 * k, idx.m, idx.n), interval_hi(2 * k, idx.m, idx.n), idx.multiplicity(),
                          idx, k};
}

FailureReport failure_set_for_k(long k, const ExactValue& h_lo, const ExactValue& h_hi) {
  if (k < 1) throw InvalidArgument("order must be >= 1");
  const Window window = Window::make(h_lo, h_hi);
  SweepOutcome out = sweep_level({2 * k, k}, window, SweepLimits::square(k));
  FailureReport report{k, {}, out.stats};
  for (auto& r : out.ranges) report.intervals.push_back({std::move(r.lo), std::move(r.hi)});
  return report;
}

std::vector<FailureReport> failure_sets(long k_max, const ExactValue& h_lo, const ExactValue& h_hi) {
  if (k_max < 1) throw InvalidArgument("kmax must be >= 1");
  const Window window = Window::make(h_lo, h_hi);
  std::vector<FailureReport> all(static_cast<size_t>(k_max));
  // Largest orders first: they dominate the cost, so dynamic scheduling
  // balances better.
  util::parallel_for(all.size(), [&](size_t i) {
    const long k = k_max - static_cast<long>(i);
    SweepOutcome out = sweep_level({2 * k, k}, window, SweepLimits::square(k));
    FailureReport report{k, {}, out.stats};
    for (auto& r : out.ranges) report.intervals.push_back({std::move(r.lo), std::move(r.hi)});
    all[static_cast<size_t>(k - 1)] = std::move(report);
  });
  std::vector<FailureReport> nonempty;
  for (auto& r : all)
    if (!r.intervals.empty()) nonempty.push_back(std::move(r));
  return nonempty;
}

ExactValue r_bound_first(const ExactValue& h, const ExactValue& lambda) {
  if (reals::sign(h) <= 0 || reals::sign(lambda) <= 0) throw InvalidArgument("r_bound_first needs h, lambda > 0");
  return (h / pi() - 1) * reals::sqrt(lambda) +
         reals::sqrt(pi() / h) * two_thirds_pow_three_halves() * fourth_root(lambda);
}

ExactValue r_bound_second(const ExactValue& h, const ExactValue& lambda) {
  if (reals::sign(h) <= 0 || reals::sign(lambda) <= 0) throw InvalidArgument("r_bound_second needs h, lambda > 0");
  const ExactValue lead = (reals::sqrt(reals::pow(h, 2) + reals::pow(pi(), 2)) - h) / pi();
  return -(lead * reals::sqrt(lambda)) +
         (h / pi() + reals::sqrt(pi() / h)) * two_thirds_pow_three_halves() * fourth_root(lambda);
}

ExactValue first_estimate_threshold(const ExactValue& h) {
  if (reals::sign(h) <= 0 || compare(h, pi()) != Ordering::Less)
    throw InvalidArgument("first estimate needs 0 < h < pi");
  return 8 * reals::pow(pi(), 3) / (27 * h * reals::pow(pi() - h, 2));
}

ExactValue second_estimate_threshold(const ExactValue& h) {
  if (reals::sign(h) <= 0) throw InvalidArgument("second estimate needs h > 0");
  const ExactValue x = h / pi();
  const ExactValue r = (x + reals::sqrt(pi() / h)) / (reals::sqrt(reals::pow(x, 2) + 1) - x);
  return ExactValue(mpq_class(8, 27)) * reals::pow(r, 2);
}

ExactValue analytic_height() {
  static const ExactValue v = (1 - 2 * reals::sqrt(ExactValue(6)) / 9) * pi();
  return v;
}

ExactValue lambda1_height() {
  static const ExactValue v = reals::pow(pi(), 2) / 2;
  return v;
}

PolyaVerdict polya_verdict(const ExactValue& h) {
  if (reals::sign(h) <= 0) throw InvalidHeight("strip height must be positive: " + h.to_prefix());
  if (compare(h, analytic_height()) != Ordering::Greater)
    return {VerdictKind::SatisfiedAnalytic, {}, "h <= (1 - 2 sqrt(6)/9) pi"};
  const Ordering top = compare(h, lambda1_height());
  if (top == Ordering::Greater) return {VerdictKind::Fails, {1}, "lambda_1 = pi^2/h^2 < 2/h for h > pi^2/2"};

  std::vector<long> failing;
  if (top == Ordering::Less) {
    for (const auto& report : searched_failures())
      for (const auto& iv : report.intervals)
        if (compare(iv.lo, h) == Ordering::Less && compare(h, iv.hi) == Ordering::Less) failing.push_back(report.k);
  } else {
    // h = pi^2/2 is the open window's edge; check the orders directly there.
    const spectrum::SpectrumSlice slice = spectrum::enumerate_up_to(h, 2 * kSearchOrderCap / h);
    long seen = 0;
    for (const auto& e : slice.entries) {
      for (int r = 0; r < e.multiplicity; ++r) {
        ++seen;
        if (seen <= kSearchOrderCap && compare(e.lambda, 2 * seen / h) == Ordering::Less) failing.push_back(seen);
      }
    }
  }
  if (failing.empty())
    return {VerdictKind::SatisfiedSearched, {}, "finite search k <= 1019 with the sqrt(lambda) >= 20 gate"};
  return {VerdictKind::Fails, failing, "finite search k <= 1019"};
}

std::vector<GateCertificate> polya_gate_certificates() {
  std::vector<GateCertificate> out;
  {
    // k = N(lambda) <= (h/2) 400 + (h/pi) 20, largest at h = pi^2/2.
    const ExactValue h = lambda1_height();
    const ExactValue cap = h / 2 * 400 + h / pi() * 20;
    out.push_back({"order_cap", "(h/2)*400 + (h/pi)*20 < 1019 at h = pi^2/2", cap.to_decimal(30),
                   compare(cap, ExactValue(kSearchOrderCap)) == Ordering::Less});
  }
  {
    const mpq_class bound(20);
    Mpfr lo(128), hi(128);
    const Ball a = analytic_height().eval(128);
    const Ball b = lambda1_height().eval(128);
    mpfr_set(lo.get(), a.lower().get(), MPFR_RNDD);
    mpfr_set(hi.get(), b.upper().get(), MPFR_RNDU);
    const bool ok = threshold_below_on(lo, hi, bound, 12);
    const ExactValue at_top = second_estimate_threshold(lambda1_height());
    out.push_back({"second_estimate_gate",
                   "(8/27)((h/pi + sqrt(pi/h))/(sqrt((h/pi)^2+1) - h/pi))^2 < 20 on the searched range",
                   at_top.to_decimal(30), ok && compare(at_top, ExactValue(20)) == Ordering::Less});
  }
  {
    const bool ok = compare(analytic_height(), lambda1_height()) == Ordering::Less;
    out.push_back({"range_order", "(1 - 2 sqrt(6)/9) pi < pi^2/2", analytic_height().to_decimal(30), ok});
  }
  return out;
}

std::string verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::SatisfiedAnalytic: return "SatisfiedAnalytic";
    case VerdictKind::SatisfiedSearched: return "SatisfiedSearched";
    case VerdictKind::Fails: return "Fails";
  }
  return "";
}

}  // namespace stripcert::polya
