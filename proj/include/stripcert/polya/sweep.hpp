#pragma once

#include <optional>
#include <vector>

#include "stripcert/reals/approx.hpp"
#include "stripcert/reals/exact_value.hpp"

namespace stripcert::polya {

using reals::Approx;
using reals::ExactValue;

/// Open search window (lo, hi) with precomputed double enclosures.
struct Window {
  ExactValue lo;
  ExactValue hi;
  Approx lo_approx;
  Approx hi_approx;

  static Window make(const ExactValue& lo, const ExactValue& hi);
};

/// One sweep level: the intervals are {h > 0 : level2 > m^2 h + n^2 pi^2 / h}
/// (level2 = 2k for Polya, 2k - 1 for the relaxed Li-Yau condition), and the
/// sweep reports where weighted coverage reaches `threshold`.
struct SweepLevel {
  long level2 = 0;
  long threshold = 0;
};

/// Index limits: m runs over 0..n_cap.size()-1 and n over 1..n_cap[m].
struct SweepLimits {
  std::vector<long> n_cap;
  static SweepLimits square(long cap);  // m, n <= cap
};

struct CoverageRange {
  ExactValue lo;
  ExactValue hi;
};

struct SweepStats {
  long seed = 0;
  long events = 0;
  long max_coverage = 0;  // an upper bound when pruned
  bool pruned = false;    // ruled out by the bucket bound without sorting
  long exact_comparisons = 0;
};

struct SweepOutcome {
  std::vector<CoverageRange> ranges;  // maximal open ranges with coverage >= threshold
  SweepStats stats;
};

SweepOutcome sweep_level(const SweepLevel& level, const Window& window, const SweepLimits& limits);

/// Whether the interval for (m, n) is nonempty: level2 > 2 m n pi (always for m = 0).
bool interval_exists(long level2, long m, long n);
/// Largest n with a nonempty interval at this m (m >= 1).
long max_valid_n(long level2, long m);
/// Exact endpoints; the right endpoint is absent (infinite) for m = 0.
ExactValue interval_lo(long level2, long m, long n);
std::optional<ExactValue> interval_hi(long level2, long m, long n);

/// Double enclosures of the endpoints (hi is +inf for m = 0).
struct EndpointApprox {
  Approx lo;
  Approx hi;
};
EndpointApprox approx_endpoints(long level2, long m, long n);

}  // namespace stripcert::polya
