#include "stripcert/spectrum/spectrum.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "stripcert/errors.hpp"
#include "stripcert/reals/approx.hpp"
#include "stripcert/reals/certified_sort.hpp"

namespace stripcert::spectrum {

using reals::Approx;
using reals::compare;
using reals::Ordering;

namespace {

void require_positive_height(const ExactValue& h) {
  if (reals::sign(h) <= 0) throw InvalidHeight("strip height must be positive: " + h.to_prefix());
}

bool eigenvalue_at_most(long m, long n, const ExactValue& h, const ExactValue& lambda) {
  return compare(eigenvalue({m, n}, h), lambda) != Ordering::Greater;
}

// Largest n >= 0 with m^2 + n^2 pi^2/h^2 <= lambda.
long column_height(long m, const ExactValue& h, const ExactValue& lambda, double h_approx, double lambda_approx) {
  const double room = lambda_approx - static_cast<double>(m * m);
  long n = room > 0 ? static_cast<long>(std::floor(h_approx / M_PI * std::sqrt(room))) : 0;
  n = std::max(n, 0L);
  while (eigenvalue_at_most(m, n + 1, h, lambda)) ++n;
  while (n >= 1 && !eigenvalue_at_most(m, n, h, lambda)) --n;
  return n;
}

}  // namespace

ExactValue eigenvalue(const EigenIndex& idx, const ExactValue& h) {
  if (idx.n < 1 || idx.m < 0) throw InvalidArgument("eigen index needs m >= 0 and n >= 1");
  const ExactValue pi2 = reals::pow(ExactValue::pi(), 2);
  if (auto q = h.as_rational()) {
    if (*q <= 0) throw InvalidHeight("strip height must be positive: " + q->get_str());
    return ExactValue(idx.m * idx.m) + ExactValue(mpq_class(idx.n * idx.n) / (*q * *q)) * pi2;
  }
  require_positive_height(h);
  return reals::canonicalize(ExactValue(idx.m * idx.m) + ExactValue(idx.n * idx.n) * pi2 / reals::pow(h, 2));
}

SpectrumSlice enumerate_up_to(const ExactValue& h, const ExactValue& lambda_max) {
  require_positive_height(h);
  SpectrumSlice slice{h, {}, 0};
  if (reals::sign(lambda_max) <= 0) return slice;
  const double h_approx = h.approx();
  const double lambda_approx = lambda_max.approx();
  struct Item {
    SpectrumEntry entry;
    Approx approx;
  };
  std::vector<Item> items;
  for (long m = 0;; ++m) {
    if (compare(ExactValue(m * m), lambda_max) != Ordering::Less) break;
    const long top = column_height(m, h, lambda_max, h_approx, lambda_approx);
    for (long n = 1; n <= top; ++n) {
      ExactValue lambda = eigenvalue({m, n}, h);
      Approx a = Approx::from_ball(lambda.eval(64));
      items.push_back({{{m, n}, m == 0 ? 1 : 2, std::move(lambda)}, a});
    }
  }
  reals::certified_sort(
      items, [](const Item& x) -> const Approx& { return x.approx; },
      [](const Item& x, const Item& y) { return compare(x.entry.lambda, y.entry.lambda); },
      [](const Item& x, const Item& y) { return x.entry.index < y.entry.index; });
  slice.entries.reserve(items.size());
  for (auto& it : items) {
    slice.k_max += it.entry.multiplicity;
    slice.entries.push_back(std::move(it.entry));
  }
  return slice;
}

ExactValue kth_eigenvalue(const ExactValue& h, long k) {
  if (k < 1) throw InvalidArgument("eigenvalue order must be >= 1");
  require_positive_height(h);
  const double ha = h.approx();
  // Weyl guess for the cutoff, doubled until the slice is deep enough.
  mpq_class cutoff(static_cast<long>(std::ceil(M_PI * M_PI / (ha * ha) + 2.0 * k / ha + 2.0)));
  for (;;) {
    const SpectrumSlice slice = enumerate_up_to(h, ExactValue(cutoff));
    if (slice.k_max >= k) {
      long seen = 0;
      for (const auto& e : slice.entries) {
        seen += e.multiplicity;
        if (seen >= k) return e.lambda;
      }
    }
    cutoff *= 2;
  }
}

long counting_function(const ExactValue& h, const ExactValue& lambda) {
  require_positive_height(h);
  if (reals::sign(lambda) <= 0) return 0;
  const double h_approx = h.approx();
  const double lambda_approx = lambda.approx();
  long count = 0;
  for (long m = 0;; ++m) {
    if (compare(ExactValue(m * m), lambda) != Ordering::Less) break;
    const long top = column_height(m, h, lambda, h_approx, lambda_approx);
    count += (m == 0 ? 1 : 2) * top;
  }
  return count;
}

std::vector<ExactValue> crossover_points(long m_cap, long n_cap, const ExactValue& h_lo, const ExactValue& h_hi) {
  if (m_cap < 1 || n_cap < 1) throw InvalidArgument("crossover caps must be >= 1");
  if (compare(h_lo, h_hi) != Ordering::Less) throw InvalidArgument("crossover range must be nonempty");
  // h = pi sqrt(q) is increasing in q, so ordering by q is the certified order.
  std::set<mpq_class> radicands;
  for (long m1 = 0; m1 <= m_cap; ++m1)
    for (long m2 = 0; m2 < m1; ++m2)
      for (long n1 = 1; n1 <= n_cap; ++n1)
        for (long n2 = n1 + 1; n2 <= n_cap; ++n2) {
          mpq_class q(n2 * n2 - n1 * n1, m1 * m1 - m2 * m2);
          q.canonicalize();
          radicands.insert(q);
        }
  const ExactValue pi = ExactValue::pi();
  std::vector<ExactValue> out;
  for (const auto& q : radicands) {
    ExactValue h = pi * reals::sqrt(ExactValue(q));
    if (compare(h, h_lo) == Ordering::Greater && compare(h, h_hi) == Ordering::Less) out.push_back(std::move(h));
  }
  return out;
}

std::string to_json_lines(const SpectrumSlice& slice) {
  std::string out;
  for (const auto& e : slice.entries) {
    nlohmann::ordered_json j;
    j["m"] = e.index.m;
    j["n"] = e.index.n;
    j["multiplicity"] = e.multiplicity;
    j["lambda_exact"] = e.lambda.to_prefix();
    j["lambda_decimal30"] = e.lambda.to_decimal(30);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace stripcert::spectrum
