#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stripcert/polya/sweep.hpp"
#include "stripcert/spectrum/spectrum.hpp"

namespace stripcert::polya {

using spectrum::EigenIndex;

/// Open interval lo < h < hi (hi absent = +infinity) where lambda_{m,n}
/// would violate the target inequality if it were the k-th eigenvalue.
struct WeightedInterval {
  ExactValue lo;
  std::optional<ExactValue> hi;
  int weight = 1;
  EigenIndex source;
  long k = 0;
};

/// {h : k > m^2 h/2 + n^2 pi^2/(2h)}, absent when empty.
std::optional<WeightedInterval> k_interval(long k, const EigenIndex& idx);

struct FailureInterval {
  ExactValue lo;
  ExactValue hi;
};

struct FailureReport {
  long k = 0;
  std::vector<FailureInterval> intervals;  // disjoint, increasing
  SweepStats stats;
};

/// Where lambda_k(h) < 2k/h inside (h_lo, h_hi), indices capped at m, n <= k.
FailureReport failure_set_for_k(long k, const ExactValue& h_lo, const ExactValue& h_hi);

/// failure_set_for_k for k = 1..k_max (in parallel); only nonempty reports,
/// ordered by k.
std::vector<FailureReport> failure_sets(long k_max, const ExactValue& h_lo, const ExactValue& h_hi);

/// Upper bounds on N(lambda) - lambda h / 2.
ExactValue r_bound_first(const ExactValue& h, const ExactValue& lambda);
ExactValue r_bound_second(const ExactValue& h, const ExactValue& lambda);
/// Thresholds on sqrt(lambda) beyond which each bound is <= 0 (first: h < pi).
ExactValue first_estimate_threshold(const ExactValue& h);
ExactValue second_estimate_threshold(const ExactValue& h);

/// (1 - 2 sqrt(6)/9) pi: below it the conjecture holds analytically.
ExactValue analytic_height();
/// pi^2 / 2: above it lambda_1 already fails.
ExactValue lambda1_height();
/// Eigenvalue orders searched on the intermediate range.
constexpr long kSearchOrderCap = 1019;

enum class VerdictKind { SatisfiedAnalytic, SatisfiedSearched, Fails };

struct PolyaVerdict {
  VerdictKind kind = VerdictKind::SatisfiedAnalytic;
  std::vector<long> failing_orders;
  std::string gate;  // which argument settled the case
};

PolyaVerdict polya_verdict(const ExactValue& h);

struct GateCertificate {
  std::string name;
  std::string statement;
  std::string value;  // decimal rendering of the certified quantity
  bool holds = false;
};

/// The analytic facts that make the finite search complete: the k cap and the
/// sqrt(lambda) >= 20 gate of the second estimate over the whole range.
std::vector<GateCertificate> polya_gate_certificates();

std::string verdict_name(VerdictKind kind);

}  // namespace stripcert::polya
