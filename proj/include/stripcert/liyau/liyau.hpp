#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stripcert/polya/polya.hpp"

namespace stripcert::liyau {

using polya::CoverageRange;
using polya::SweepStats;
using polya::WeightedInterval;
using reals::ExactValue;
using spectrum::EigenIndex;

/// {h : k - 1/2 > m^2 h/2 + n^2 pi^2/(2h)}, absent when empty.
std::optional<WeightedInterval> relaxed_interval(long k, const EigenIndex& idx);

/// Orders and index limits of the relaxed sweep on (pi^2/2, pi^2].
constexpr long kOrderCap = 130297;
constexpr long kEigenvalueCap = 26301;
constexpr long kIndexCapM = 162;
constexpr long kIndexCapN = 509;

/// n <= min(509, pi sqrt(26301 - m^2)) for m <= 162, i.e. the pairs with
/// m^2 + n^2/pi^2 <= 26301.
polya::SweepLimits relaxed_limits();

struct ExceptionalWindow {
  long k = 0;
  std::vector<CoverageRange> ranges;
};

struct ExceptionalOptions {
  long k_max = kOrderCap;
  std::optional<std::string> checkpoint_path;
  long block = 512;  // orders per checkpointed block
  std::function<void(long completed)> progress;
};

struct ExceptionalResult {
  std::vector<ExceptionalWindow> windows;  // by k
  long completed = 0;                      // orders 1..completed were swept
  long events = 0;
  long exact_comparisons = 0;
};

/// Sweeps the relaxed intervals for k = 1..k_max over (h_lo, h_hi) and keeps
/// the orders whose coverage reaches k. With a checkpoint path, progress is
/// written after every block and an existing file for the same range resumes
/// the run.
ExceptionalResult exceptional_sweep(const ExactValue& h_lo, const ExactValue& h_hi, const ExceptionalOptions& options);
std::vector<long> exceptional_orders(const ExactValue& h_lo, const ExactValue& h_hi, long k_max = kOrderCap);

struct PartitionCell {
  ExactValue lo;
  ExactValue hi;
  std::vector<EigenIndex> ordered;  // one entry per index; weights by multiplicity
};

struct PartialSumCoeffs {
  long k = 0;
  long a = 0;     // sum of m_i^2
  long beta = 0;  // sum of n_i^2; b_k = pi^2 beta
};

/// Crossover-free cells covering (pi^2/2, pi^2], ordered at each midpoint.
std::vector<PartitionCell> build_partition(long k_cap = 86);
/// Ordering of the first k_cap eigenvalues (with multiplicity) at h.
std::vector<EigenIndex> ordering_at(const ExactValue& h, long k_cap);
/// Coefficients of the partial sums for k = 1..k_cap.
std::vector<PartialSumCoeffs> partial_sums(const PartitionCell& cell, long k_cap);
/// Orders k <= k_cap whose Li-Yau region misses part of [lo, hi].
std::vector<long> liyau_check_cell(const PartitionCell& cell, long k_cap);
/// Certifies that the cell ordering agrees at two more interior points and
/// that no index beyond the caps (m > 9 or n > 28) can enter the first k_cap.
bool verify_cell(const PartitionCell& cell, long k_cap);

struct CertificateItem {
  std::string name;
  std::string statement;
  bool holds = false;
};

struct CertificateRecord {
  std::vector<CertificateItem> items;
  bool all_hold() const;
};

/// Sign facts and branch formulas for lambda_8, lambda_13 on (0, pi^2/2].
/// Throws CertificateFailure if any item fails.
CertificateRecord lowrange_certificates();
/// The cap certificates of the relaxed sweep: lambda < 26301 and k < 130298.
CertificateRecord sweep_cap_certificates();
/// Upper root of the lambda^(1/4) inequality, raised to the fourth power.
ExactValue eigenvalue_cap_expression();

enum class LiYauVerdictKind { Holds, FailsAt };

struct LiYauVerdict {
  LiYauVerdictKind kind = LiYauVerdictKind::Holds;
  std::vector<long> failing_orders;
  std::string gate;
};

LiYauVerdict liyau_verdict(const ExactValue& h);

/// Branch formulas lambda_8, lambda_13 with their h-ranges.
struct Branch {
  long k = 0;
  ExactValue lo;
  ExactValue hi;
  EigenIndex index;
};
std::vector<Branch> low_range_branches();
/// Rationals strictly inside (lo, hi), evenly spread.
std::vector<mpq_class> sample_rationals(const ExactValue& lo, const ExactValue& hi, int count);

}  // namespace stripcert::liyau
