#pragma once

#include <compare>
#include <string>
#include <vector>

#include "stripcert/reals/exact_value.hpp"

namespace stripcert::spectrum {

using reals::ExactValue;

/// Lattice pair for the eigenvalue m^2 + n^2 pi^2 / h^2; m stands for +-m.
struct EigenIndex {
  long m = 0;
  long n = 1;
  int multiplicity() const { return m == 0 ? 1 : 2; }
  friend auto operator<=>(const EigenIndex&, const EigenIndex&) = default;
};

struct SpectrumEntry {
  EigenIndex index;
  int multiplicity = 1;
  ExactValue lambda;
};

struct SpectrumSlice {
  ExactValue h;
  std::vector<SpectrumEntry> entries;  // certified nondecreasing, ties by (m, n)
  long k_max = 0;                      // total multiplicity of entries
};

/// m^2 + n^2 pi^2 / h^2. Throws InvalidHeight unless h > 0.
ExactValue eigenvalue(const EigenIndex& idx, const ExactValue& h);

/// All eigenvalues <= lambda_max, sorted.
SpectrumSlice enumerate_up_to(const ExactValue& h, const ExactValue& lambda_max);

/// k-th eigenvalue counted with multiplicity (k >= 1).
ExactValue kth_eigenvalue(const ExactValue& h, long k);

/// Number of eigenvalues <= lambda, with multiplicity. Counts each m-column
/// by a certified floor instead of sorting.
long counting_function(const ExactValue& h, const ExactValue& lambda);

/// Distinct values pi*sqrt((n2^2 - n1^2)/(m1^2 - m2^2)) in (h_lo, h_hi) over
/// 0 <= m <= m_cap, 1 <= n <= n_cap, sorted increasingly.
std::vector<ExactValue> crossover_points(long m_cap, long n_cap, const ExactValue& h_lo, const ExactValue& h_hi);

/// One JSON object per entry, newline terminated.
std::string to_json_lines(const SpectrumSlice& slice);

}  // namespace stripcert::spectrum
