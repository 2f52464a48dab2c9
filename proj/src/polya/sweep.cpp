#include "stripcert/polya/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stripcert/errors.hpp"
#include "stripcert/reals/certified_sort.hpp"

namespace stripcert::polya {

using reals::compare;
using reals::Ordering;
using reals::Separation;

namespace {

constexpr double kUnit = 0x1p-53;

double pi_squared_double() {
  static const double value = [] {
    reals::Mpfr p(53);
    mpfr_const_pi(p.get(), MPFR_RNDN);
    mpfr_sqr(p.get(), p.get(), MPFR_RNDN);
    return p.to_double();
  }();
  return value;
}

struct Event {
  double mid;
  double rad;
  int m;
  int n;
  bool end;
};

Approx event_approx(const Event& e) { return {e.mid, e.rad}; }

ExactValue event_value(long level2, const Event& e) {
  return e.end ? *interval_hi(level2, e.m, e.n) : interval_lo(level2, e.m, e.n);
}

class LevelSweeper {
 public:
  LevelSweeper(const SweepLevel& level, const Window& window) : level_(level), window_(window) {}

  // Certified comparison of an endpoint with a window bound.
  Ordering compare_to_bound(long m, long n, bool right, const Approx& a, const ExactValue& bound,
                            const Approx& bound_approx) {
    switch (reals::separate(a, bound_approx)) {
      case Separation::Less: return Ordering::Less;
      case Separation::Greater: return Ordering::Greater;
      case Separation::Unknown: break;
    }
    ++stats_.exact_comparisons;
    const ExactValue v = right ? *interval_hi(level_.level2, m, n) : interval_lo(level_.level2, m, n);
    return compare(v, bound);
  }

  // Largest n in [0, top] with pred(n) true, for pred true on a prefix.
  template <class Pred>
  static long prefix_length(long top, Pred pred) {
    long lo = 0, hi = top;
    while (lo < hi) {
      const long mid = lo + (hi - lo + 1) / 2;
      if (pred(mid))
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  void collect_column(long m, long top, std::vector<Event>& events) {
    if (top <= 0) return;
    const long w = m == 0 ? 1 : 2;
    auto left = [&](long n) { return approx_endpoints(level_.level2, m, n).lo; };
    auto right = [&](long n) { return approx_endpoints(level_.level2, m, n).hi; };
    const Window& win = window_;
    // a: L <= lo, b: R > lo, c: L < hi, d: R >= hi
    const long a = prefix_length(top, [&](long n) {
      return compare_to_bound(m, n, false, left(n), win.lo, win.lo_approx) != Ordering::Greater;
    });
    const long c = prefix_length(top, [&](long n) {
      return compare_to_bound(m, n, false, left(n), win.hi, win.hi_approx) == Ordering::Less;
    });
    long b = top, d = top;
    if (m > 0) {
      b = prefix_length(top, [&](long n) {
        return compare_to_bound(m, n, true, right(n), win.lo, win.lo_approx) == Ordering::Greater;
      });
      d = prefix_length(top, [&](long n) {
        return compare_to_bound(m, n, true, right(n), win.hi, win.hi_approx) != Ordering::Less;
      });
    }
    stats_.seed += w * std::min(a, b);
    for (long n = a + 1; n <= c; ++n) {
      const Approx l = left(n);
      events.push_back({l.mid, l.rad, static_cast<int>(m), static_cast<int>(n), false});
    }
    for (long n = d + 1; n <= b; ++n) {
      const Approx r = right(n);
      events.push_back({r.mid, r.rad, static_cast<int>(m), static_cast<int>(n), true});
    }
  }

  // Upper bound on the coverage anywhere in the window from a bucketed count:
  // in bucket [x_j, x_j+1] coverage is at most the seed plus every start
  // whose value may lie below x_j+1 minus every end certainly at or below x_j.
  long coverage_upper_bound(const std::vector<Event>& events) const {
    const double lo = window_.lo_approx.lower();
    const double hi = window_.hi_approx.upper();
    const size_t buckets = std::clamp<size_t>(events.size() / 8, 1, 4096);
    const double width = (hi - lo) / static_cast<double>(buckets);
    std::vector<long> starts(buckets + 1, 0), ends(buckets + 1, 0);
    for (const Event& e : events) {
      const long w = e.m == 0 ? 1 : 2;
      const Approx a = event_approx(e);
      if (e.end) {
        // first bucket whose left edge is >= upper(R)
        const double x = (a.upper() - lo) / width;
        const size_t j = x <= 0 ? 0 : static_cast<size_t>(std::ceil(x)) + 1;
        if (j < buckets) ends[j] += w;
      } else {
        // every bucket whose right edge exceeds lower(L)
        const double x = (a.lower() - lo) / width;
        const size_t j = x <= 1 ? 0 : std::min(buckets, static_cast<size_t>(std::floor(x)) - 1);
        starts[j] += w;
      }
    }
    long best = stats_.seed, started = 0, ended = 0;
    for (size_t j = 0; j < buckets; ++j) {
      started += starts[j];
      ended += ends[j];
      best = std::max(best, stats_.seed + started - ended);
    }
    return best;
  }

  bool same_value(const Event& x, const Event& y) {
    if (reals::separate(event_approx(x), event_approx(y)) != Separation::Unknown) return false;
    ++stats_.exact_comparisons;
    return compare(event_value(level_.level2, x), event_value(level_.level2, y)) == Ordering::Equal;
  }

  SweepOutcome run(const SweepLimits& limits) {
    std::vector<Event>& events = buffer();
    events.clear();
    for (size_t m = 0; m < limits.n_cap.size(); ++m) {
      long top = limits.n_cap[m];
      if (m > 0) top = std::min(top, max_valid_n(level_.level2, static_cast<long>(m)));
      collect_column(static_cast<long>(m), top, events);
    }
    stats_.events = static_cast<long>(events.size());
    if (const long bound = coverage_upper_bound(events); bound < level_.threshold) {
      stats_.max_coverage = bound;
      stats_.pruned = true;
      return {{}, stats_};
    }

    const long level2 = level_.level2;
    reals::certified_sort(
        events, event_approx,
        [&](const Event& x, const Event& y) {
          ++stats_.exact_comparisons;
          return compare(event_value(level2, x), event_value(level2, y));
        },
        [](const Event& x, const Event& y) {
          if (x.end != y.end) return x.end;  // ends first at equal values
          if (x.m != y.m) return x.m < y.m;
          return x.n < y.n;
        });

    SweepOutcome out;
    const long k = level_.threshold;
    long cov = stats_.seed;
    long best = cov;
    std::optional<ExactValue> open;
    if (cov >= k) open = window_.lo;
    for (size_t i = 0; i < events.size();) {
      size_t j = i + 1;
      while (j < events.size() && same_value(events[j - 1], events[j])) ++j;
      long ends = 0, starts = 0;
      for (size_t t = i; t < j; ++t) (events[t].end ? ends : starts) += events[t].m == 0 ? 1 : 2;
      const long at_point = cov - ends;
      const long after = at_point + starts;
      if (open && (at_point < k || after < k)) {
        out.ranges.push_back({*open, event_value(level2, events[i])});
        open.reset();
      }
      if (!open && after >= k) open = event_value(level2, events[i]);
      cov = after;
      best = std::max(best, cov);
      i = j;
    }
    if (open) out.ranges.push_back({*open, window_.hi});
    stats_.max_coverage = best;
    out.stats = stats_;
    return out;
  }

 private:
  static std::vector<Event>& buffer() {
    thread_local std::vector<Event> events;
    return events;
  }

  SweepLevel level_;
  const Window& window_;
  SweepStats stats_;
};

}  // namespace

Window Window::make(const ExactValue& lo, const ExactValue& hi) {
  if (compare(lo, hi) != Ordering::Less) throw InvalidArgument("empty window");
  if (reals::sign(lo) < 0) throw InvalidArgument("window must lie in h >= 0");
  return {lo, hi, Approx::from_ball(lo.eval(128)), Approx::from_ball(hi.eval(128))};
}

SweepLimits SweepLimits::square(long cap) { return {std::vector<long>(static_cast<size_t>(cap) + 1, cap)}; }

bool interval_exists(long level2, long m, long n) {
  if (m == 0) return true;
  // level2 > 2 m n pi; never an equality since pi is irrational.
  const double x = 2.0 * m * n * M_PI;
  const double margin = 1e-9 * x;
  if (x + margin < static_cast<double>(level2)) return true;
  if (x - margin > static_cast<double>(level2)) return false;
  return compare(ExactValue(2 * m * n) * ExactValue::pi(), ExactValue(level2)) == Ordering::Less;
}

long max_valid_n(long level2, long m) {
  long n = static_cast<long>(std::floor(static_cast<double>(level2) / (2.0 * m * M_PI)));
  n = std::max(n, 0L);
  while (interval_exists(level2, m, n + 1)) ++n;
  while (n > 0 && !interval_exists(level2, m, n)) --n;
  return n;
}

ExactValue interval_lo(long level2, long m, long n) {
  if (m == 0) return ExactValue(mpq_class(n * n, level2)) * reals::pow(ExactValue::pi(), 2);
  const mpq_class kp(level2, 2);
  const mpq_class m2(m * m);
  return ExactValue::from_quadratic_pi_surd({mpq_class(kp / m2), -1, mpq_class(kp * kp / (m2 * m2)),
                                             mpq_class(-mpq_class(n * n) / m2)});
}

std::optional<ExactValue> interval_hi(long level2, long m, long n) {
  if (m == 0) return std::nullopt;
  const mpq_class kp(level2, 2);
  const mpq_class m2(m * m);
  return ExactValue::from_quadratic_pi_surd({mpq_class(kp / m2), 1, mpq_class(kp * kp / (m2 * m2)),
                                             mpq_class(-mpq_class(n * n) / m2)});
}

EndpointApprox approx_endpoints(long level2, long m, long n) {
  const double pi2 = pi_squared_double();
  const double inf = std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  if (m == 0) {
    const double l = nn * pi2 / static_cast<double>(level2);
    return {{l, 6 * kUnit * l}, {inf, 0.0}};
  }
  const double kp = 0.5 * static_cast<double>(level2);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  const double t = mn * mn * pi2;
  const double d = kp * kp - t;
  const double eps_d = 2.1 * kUnit * t + kUnit * std::fabs(d);
  if (d <= eps_d) {
    // Too close to the degenerate case for a useful double bound.
    const double r = (kp + std::sqrt(std::max(d, 0.0))) / static_cast<double>(m * m);
    return {{0.5 * r, inf}, {r, inf}};
  }
  const double s = std::sqrt(d);
  const double eps_s = std::min(std::sqrt(eps_d), eps_d / s) + kUnit * s;
  const double rho = eps_s / (kp + s);
  const double l = nn * pi2 / (kp + s);
  const double r = (kp + s) / static_cast<double>(m * m);
  return {{l, 2 * (5 * kUnit + rho) * l}, {r, 2 * (3 * kUnit + rho) * r}};
}

SweepOutcome sweep_level(const SweepLevel& level, const Window& window, const SweepLimits& limits) {
  if (level.level2 < 1 || level.threshold < 1) throw InvalidArgument("sweep level must be positive");
  LevelSweeper sweeper(level, window);
  return sweeper.run(limits);
}

}  // namespace stripcert::polya
