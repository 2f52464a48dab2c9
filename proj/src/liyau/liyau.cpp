#include "stripcert/liyau/liyau.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stripcert/errors.hpp"
#include "stripcert/reals/certified_sort.hpp"
#include "stripcert/util/parallel.hpp"

namespace stripcert::liyau {

using polya::SweepLimits;
using polya::Window;
using reals::Approx;
using reals::Ball;
using reals::compare;
using reals::Ordering;

namespace {

constexpr long kCellCapM = 9;
constexpr long kCellCapN = 28;
constexpr long kMaxCellOrder = 86;

const ExactValue& pi() {
  static const ExactValue v = ExactValue::pi();
  return v;
}

const ExactValue& pi2() {
  static const ExactValue v = reals::pow(ExactValue::pi(), 2);
  return v;
}

ExactValue rational(long p, long q = 1) { return ExactValue(mpq_class(p, q)); }

// ---- checkpoint -------------------------------------------------------------

struct Checkpoint {
  long completed = 0;
  std::vector<long> exceptional;
};

const char* kCheckpointHeader = "stripcert liyau-exceptional checkpoint v1";

std::optional<Checkpoint> read_checkpoint(const std::string& path, const std::string& lo, const std::string& hi) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kCheckpointHeader)
    throw InvalidArgument("not a checkpoint file: " + path);
  Checkpoint cp;
  std::string file_lo, file_hi;
  while (std::getline(in, line)) {
    const auto space = line.find(' ');
    const std::string key = line.substr(0, space);
    const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
    if (key == "lo") {
      file_lo = value;
    } else if (key == "hi") {
      file_hi = value;
    } else if (key == "completed") {
      cp.completed = std::stol(value);
    } else if (key == "exceptional") {
      std::istringstream ks(value);
      long k;
      while (ks >> k) cp.exceptional.push_back(k);
    }
  }
  if (file_lo != lo || file_hi != hi) throw InvalidArgument("checkpoint " + path + " belongs to a different range");
  return cp;
}

void write_checkpoint(const std::string& path, const std::string& lo, const std::string& hi, const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write checkpoint " + tmp);
    out << kCheckpointHeader << '\n' << "lo " << lo << '\n' << "hi " << hi << '\n';
    out << "completed " << cp.completed << '\n' << "exceptional";
    for (long k : cp.exceptional) out << ' ' << k;
    out << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw InvalidArgument("cannot replace checkpoint " + path);
}

ExceptionalWindow sweep_one(long k, const Window& window, const SweepLimits& limits, long& events, long& exact) {
  polya::SweepOutcome out = polya::sweep_level({2 * k - 1, k}, window, limits);
  events += out.stats.events;
  exact += out.stats.exact_comparisons;
  return {k, std::move(out.ranges)};
}

// ---- cell orderings ---------------------------------------------------------

struct Candidate {
  EigenIndex index;
  Approx approx;
};

// Ordering of all in-cap indices at h, from a shared enclosure of pi^2/h^2.
std::vector<EigenIndex> capped_ordering(const ExactValue& h, long k_cap) {
  const Ball c = pi2().eval(128) / reals::pow(h.eval(128), 2);
  std::vector<Candidate> cands;
  for (long m = 0; m <= kCellCapM; ++m)
    for (long n = 1; n <= kCellCapN; ++n) {
      const Ball v = Ball::from_int(m * m, 128) + Ball::from_int(n * n, 128) * c;
      cands.push_back({{m, n}, Approx::from_ball(v)});
    }
  reals::certified_sort(
      cands, [](const Candidate& x) -> const Approx& { return x.approx; },
      [&](const Candidate& x, const Candidate& y) {
        return compare(spectrum::eigenvalue(x.index, h), spectrum::eigenvalue(y.index, h));
      },
      [](const Candidate& x, const Candidate& y) { return x.index < y.index; });
  std::vector<EigenIndex> out;
  long seen = 0;
  for (const auto& cand : cands) {
    if (seen >= k_cap) break;
    out.push_back(cand.index);
    seen += cand.index.multiplicity();
  }
  if (seen < k_cap) throw CertificateFailure("index caps too small for the requested order");
  return out;
}

ExactValue eigen_at(const EigenIndex& idx, const ExactValue& h) { return spectrum::eigenvalue(idx, h); }

}  // namespace

std::optional<WeightedInterval> relaxed_interval(long k, const EigenIndex& idx) {
  if (k < 1 || idx.n < 1 || idx.m < 0) throw InvalidArgument("relaxed_interval needs k >= 1 and a valid index");
  const long level2 = 2 * k - 1;
  if (!polya::interval_exists(level2, idx.m, idx.n)) return std::nullopt;
  return WeightedInterval{polya::interval_lo(level2, idx.m, idx.n), polya::interval_hi(level2, idx.m, idx.n),
                          idx.multiplicity(), idx, k};
}

SweepLimits relaxed_limits() {
  SweepLimits limits;
  for (long m = 0; m <= kIndexCapM; ++m) {
    const long room = kEigenvalueCap - m * m;
    long n = static_cast<long>(std::floor(M_PI * std::sqrt(static_cast<double>(room))));
    const ExactValue bound = rational(room) * pi2();
    auto fits = [&](long v) { return compare(rational(v * v), bound) != Ordering::Greater; };
    while (fits(n + 1)) ++n;
    while (n > 0 && !fits(n)) --n;
    limits.n_cap.push_back(std::min(n, kIndexCapN));
  }
  return limits;
}

ExceptionalResult exceptional_sweep(const ExactValue& h_lo, const ExactValue& h_hi, const ExceptionalOptions& options) {
  if (options.k_max < 1) throw InvalidArgument("kmax must be >= 1");
  if (compare(h_lo, pi2() / 2) == Ordering::Less || compare(h_hi, pi2()) == Ordering::Greater)
    throw InvalidArgument("exceptional range must lie within [pi^2/2, pi^2]");
  const Window window = Window::make(h_lo, h_hi);
  const SweepLimits limits = relaxed_limits();
  const std::string lo_text = h_lo.to_prefix();
  const std::string hi_text = h_hi.to_prefix();

  ExceptionalResult result;
  Checkpoint cp;
  if (options.checkpoint_path) {
    if (auto existing = read_checkpoint(*options.checkpoint_path, lo_text, hi_text)) cp = *existing;
    cp.completed = std::min(cp.completed, options.k_max);
    for (long k : cp.exceptional) {
      if (k > cp.completed) continue;
      ExceptionalWindow w = sweep_one(k, window, limits, result.events, result.exact_comparisons);
      if (!w.ranges.empty()) result.windows.push_back(std::move(w));
    }
  }
  const long block = std::max(1L, options.block);
  for (long start = cp.completed + 1; start <= options.k_max; start += block) {
    const long end = std::min(options.k_max, start + block - 1);
    std::vector<ExceptionalWindow> found(static_cast<size_t>(end - start + 1));
    std::vector<long> events(found.size(), 0), exact(found.size(), 0);
    util::parallel_for(found.size(), [&](size_t i) {
      found[i] = sweep_one(start + static_cast<long>(i), window, limits, events[i], exact[i]);
    });
    for (size_t i = 0; i < found.size(); ++i) {
      result.events += events[i];
      result.exact_comparisons += exact[i];
      if (!found[i].ranges.empty()) {
        cp.exceptional.push_back(found[i].k);
        result.windows.push_back(std::move(found[i]));
      }
    }
    cp.completed = end;
    if (options.checkpoint_path) write_checkpoint(*options.checkpoint_path, lo_text, hi_text, cp);
    if (options.progress) options.progress(end);
  }
  result.completed = cp.completed;
  std::sort(result.windows.begin(), result.windows.end(),
            [](const ExceptionalWindow& a, const ExceptionalWindow& b) { return a.k < b.k; });
  return result;
}

std::vector<long> exceptional_orders(const ExactValue& h_lo, const ExactValue& h_hi, long k_max) {
  ExceptionalOptions options;
  options.k_max = k_max;
  std::vector<long> ks;
  for (const auto& w : exceptional_sweep(h_lo, h_hi, options).windows) ks.push_back(w.k);
  return ks;
}

std::vector<EigenIndex> ordering_at(const ExactValue& h, long k_cap) {
  if (k_cap < 1 || k_cap > kMaxCellOrder) throw InvalidArgument("cell orders are limited to 1..86");
  return capped_ordering(h, k_cap);
}

std::vector<PartitionCell> build_partition(long k_cap) {
  if (k_cap < 1 || k_cap > kMaxCellOrder) throw InvalidArgument("partition order cap must be in 1..86");
  const ExactValue lo = pi2() / 2;
  const ExactValue hi = pi2();
  std::vector<ExactValue> bounds{lo};
  for (auto& x : spectrum::crossover_points(kCellCapM, kCellCapN, lo, hi)) bounds.push_back(std::move(x));
  bounds.push_back(hi);
  std::vector<PartitionCell> cells(bounds.size() - 1);
  util::parallel_for(cells.size(), [&](size_t i) {
    const ExactValue mid = (bounds[i] + bounds[i + 1]) / 2;
    cells[i] = {bounds[i], bounds[i + 1], capped_ordering(mid, k_cap)};
  });
  return cells;
}

std::vector<PartialSumCoeffs> partial_sums(const PartitionCell& cell, long k_cap) {
  std::vector<PartialSumCoeffs> out;
  long a = 0, beta = 0, k = 0;
  for (const auto& idx : cell.ordered) {
    for (int r = 0; r < idx.multiplicity() && k < k_cap; ++r) {
      ++k;
      a += idx.m * idx.m;
      beta += idx.n * idx.n;
      out.push_back({k, a, beta});
    }
  }
  if (k < k_cap) throw InvalidArgument("cell ordering shorter than the requested order");
  return out;
}

std::vector<long> liyau_check_cell(const PartitionCell& cell, long k_cap) {
  std::vector<long> violations;
  for (const auto& s : partial_sums(cell, k_cap)) {
    const long k2 = s.k * s.k;
    if (s.a == 0) {
      // beta pi^2 - k^2 h >= 0  <=>  h <= beta pi^2 / k^2
      if (compare(cell.hi, rational(s.beta, k2) * pi2()) == Ordering::Greater) violations.push_back(s.k);
      continue;
    }
    // a h^2 - k^2 h + beta pi^2 >= 0 fails only strictly between the roots.
    const ExactValue disc = rational(k2 * k2) - rational(4 * s.a * s.beta) * pi2();
    if (reals::sign(disc) <= 0) continue;
    const mpq_class center(k2, 2 * s.a);
    const mpq_class c0 = center * center;
    const mpq_class d0(-s.beta, s.a);
    const ExactValue r1 = ExactValue::from_quadratic_pi_surd({center, -1, c0, d0});
    const ExactValue r2 = ExactValue::from_quadratic_pi_surd({center, 1, c0, d0});
    if (compare(r1, cell.hi) == Ordering::Less && compare(r2, cell.lo) == Ordering::Greater)
      violations.push_back(s.k);
  }
  return violations;
}

bool verify_cell(const PartitionCell& cell, long k_cap) {
  const ExactValue width = cell.hi - cell.lo;
  const auto at_first = capped_ordering(cell.lo + width / 10, k_cap);
  const auto at_last = capped_ordering(cell.lo + 9 * width / 10, k_cap);
  if (at_first != cell.ordered || at_last != cell.ordered) return false;
  // The largest of the first k_cap eigenvalues, at its largest (h = lo), must
  // stay below the smallest eigenvalue outside the caps, at its smallest.
  const EigenIndex last = cell.ordered.back();
  const ExactValue top = eigen_at(last, cell.lo);
  const ExactValue outside = reals::min(eigen_at({kCellCapM + 1, 1}, cell.hi), eigen_at({0, kCellCapN + 1}, cell.hi));
  return compare(top, outside) == Ordering::Less;
}

bool CertificateRecord::all_hold() const {
  return std::all_of(items.begin(), items.end(), [](const CertificateItem& i) { return i.holds; });
}

std::vector<Branch> low_range_branches() {
  const ExactValue root53 = pi() * reals::sqrt(rational(5, 3));
  return {
      {8, 8 - reals::sqrt(64 - 4 * pi2()), pi(), {1, 2}},
      {8, pi(), 2 + reals::sqrt(4 - pi2() / 4), {2, 1}},
      {13, 13 - reals::sqrt(169 - 9 * pi2()), root53, {1, 3}},
      {13, root53, rational(13, 4) + reals::sqrt(rational(169, 16) - pi2()), {2, 2}},
  };
}

std::vector<mpq_class> sample_rationals(const ExactValue& lo, const ExactValue& hi, int count) {
  std::vector<mpq_class> out;
  const double a = lo.approx(), b = hi.approx();
  for (int i = 1; i <= count; ++i) {
    const double t = a + (b - a) * i / (count + 1);
    mpq_class r(static_cast<long>(std::llround(t * 1e6)), 1000000);
    r.canonicalize();
    const ExactValue x(r);
    if (compare(lo, x) == Ordering::Less && compare(x, hi) == Ordering::Less) out.push_back(r);
  }
  if (static_cast<int>(out.size()) != count) throw InvalidArgument("range too narrow for rational samples");
  return out;
}

CertificateRecord lowrange_certificates() {
  CertificateRecord rec;
  auto negative = [&](const std::string& name, const ExactValue& x) {
    rec.items.push_back({name, x.to_prefix() + " < 0", reals::sign(x) == -1});
  };
  negative("lambda8_branch1_sign", 16 - 4 * pi2());
  negative("lambda8_branch2_sign", 1 - pi2() / 4);
  negative("lambda13_branch1_sign", rational(169, 4) - 9 * pi2());
  negative("lambda13_branch2_sign", rational(169, 64) - pi2());
  int b = 0;
  for (const auto& br : low_range_branches()) {
    ++b;
    bool ok = true;
    for (const auto& r : sample_rationals(br.lo, br.hi, 5)) {
      const ExactValue h(r);
      const ExactValue lk = spectrum::kth_eigenvalue(h, br.k);
      ok = ok && compare(lk, spectrum::eigenvalue(br.index, h)) == Ordering::Equal;
      ok = ok && compare(lk, rational(br.k) / h) != Ordering::Less;
    }
    std::ostringstream st;
    st << "lambda_" << br.k << " = " << br.index.m * br.index.m << " + " << br.index.n * br.index.n
       << " pi^2/h^2 and lambda_" << br.k << " >= " << br.k << "/h at 5 rationals in (" << br.lo.to_prefix() << ", "
       << br.hi.to_prefix() << ")";
    rec.items.push_back({"branch_" + std::to_string(b), st.str(), ok});
  }
  if (!rec.all_hold()) throw CertificateFailure("low-range certificate failed");
  return rec;
}

ExactValue eigenvalue_cap_expression() {
  const ExactValue s = reals::sqrt(1 + pi2());
  const ExactValue pi32 = pi() * reals::sqrt(pi());
  const ExactValue inner = -27 * pi() * s + 8 * pi32 + 4 * reals::pow(pi(), 3) + 27 * pi2() + 4;
  const ExactValue root = (2 * pi32 + 2 + reals::sqrt(inner)) / (3 * reals::sqrt(6 * pi()) * (s - pi()));
  return reals::pow(root, 4);
}

CertificateRecord sweep_cap_certificates() {
  CertificateRecord rec;
  const ExactValue lam = eigenvalue_cap_expression();
  rec.items.push_back({"eigenvalue_cap", "upper root^4 = " + lam.to_decimal(12) + " < 26301",
                       compare(lam, rational(kEigenvalueCap)) == Ordering::Less});
  // k <= (h/2) lambda + (h/pi) sqrt(lambda), largest at h = pi^2.
  const ExactValue kcap = pi2() / 2 * lam + pi() * reals::sqrt(lam);
  rec.items.push_back({"order_cap", "(pi^2/2) lambda + pi sqrt(lambda) = " + kcap.to_decimal(12) + " < 130298",
                       compare(kcap, rational(kOrderCap + 1)) == Ordering::Less});
  rec.items.push_back({"index_caps", "162^2 <= 26301 < 163^2 and pi sqrt(26301) < 510",
                       kIndexCapM * kIndexCapM <= kEigenvalueCap && (kIndexCapM + 1) * (kIndexCapM + 1) > kEigenvalueCap &&
                           compare(pi() * reals::sqrt(rational(kEigenvalueCap)), rational(kIndexCapN + 1)) ==
                               Ordering::Less});
  if (!rec.all_hold()) throw CertificateFailure("relaxed sweep cap certificate failed");
  return rec;
}

namespace {

// Orders k <= kOrderCap with lambda_k(h) < (2k - 1)/h, restricted to the
// pairs with m^2 + n^2/pi^2 <= 26301. Counts eigenvalues below each
// threshold from sorted double enclosures and settles near ties exactly.
std::vector<long> relaxed_violations_at(const ExactValue& h) {
  const SweepLimits limits = relaxed_limits();
  const Ball c = pi2().eval(128) / reals::pow(h.eval(128), 2);
  const Approx ca = Approx::from_ball(c);
  struct Item {
    double mid;
    double rad;
    long m, n;
  };
  std::vector<Item> items;
  const double u = 0x1p-53;
  for (long m = 0; m < static_cast<long>(limits.n_cap.size()); ++m)
    for (long n = 1; n <= limits.n_cap[static_cast<size_t>(m)]; ++n) {
      const double nn = static_cast<double>(n * n);
      const double v = static_cast<double>(m * m) + nn * ca.mid;
      items.push_back({v, 2 * (nn * ca.rad + 4 * u * v), m, n});
    }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.mid < b.mid; });
  double max_rad = 0;
  for (const auto& it : items) max_rad = std::max(max_rad, it.rad);
  std::vector<long> prefix(items.size() + 1, 0);
  for (size_t i = 0; i < items.size(); ++i) prefix[i + 1] = prefix[i] + (items[i].m == 0 ? 1 : 2);

  std::vector<long> out;
  for (long k = 1; k <= kOrderCap; ++k) {
    const ExactValue t = rational(2 * k - 1) / h;
    const Approx ta = Approx::from_ball(t.eval(128));
    const double lo = ta.lower() - 2 * max_rad;
    const double hi = ta.upper() + 2 * max_rad;
    const size_t i0 = static_cast<size_t>(
        std::lower_bound(items.begin(), items.end(), lo, [](const Item& a, double x) { return a.mid < x; }) -
        items.begin());
    const size_t i1 = static_cast<size_t>(
        std::upper_bound(items.begin(), items.end(), hi, [](double x, const Item& a) { return x < a.mid; }) -
        items.begin());
    long below = prefix[i0];
    for (size_t i = i0; i < i1; ++i) {
      const Item& it = items[i];
      const reals::Separation sep = reals::separate({it.mid, it.rad}, ta);
      bool less = sep == reals::Separation::Less;
      if (sep == reals::Separation::Unknown) less = compare(eigen_at({it.m, it.n}, h), t) == Ordering::Less;
      if (less) below += it.m == 0 ? 1 : 2;
    }
    if (below >= k) out.push_back(k);
  }
  return out;
}

}  // namespace

LiYauVerdict liyau_verdict(const ExactValue& h) {
  if (reals::sign(h) <= 0) throw InvalidHeight("strip height must be positive: " + h.to_prefix());
  if (compare(h, pi2()) == Ordering::Greater) return {LiYauVerdictKind::FailsAt, {1}, "lambda_1 = pi^2/h^2 < 1/h"};
  if (compare(h, pi2() / 2) != Ordering::Greater) {
    lowrange_certificates();
    // Polya holds on (0, pi^2/2] except lambda_8 and lambda_13 on disjoint
    // windows, where lambda_k >= k/h still holds.
    std::vector<long> ks;
    for (const auto& r : polya::failure_sets(polya::kSearchOrderCap, polya::analytic_height(), polya::lambda1_height()))
      ks.push_back(r.k);
    if (ks != std::vector<long>{8, 13}) throw CertificateFailure("unexpected Polya failure orders on (0, pi^2/2]");
    return {LiYauVerdictKind::Holds, {}, "Polya except lambda_8, lambda_13, which satisfy lambda_k >= k/h"};
  }
  sweep_cap_certificates();
  const std::vector<long> relaxed = relaxed_violations_at(h);
  for (long k : relaxed)
    if (k > kMaxCellOrder) throw CertificateFailure("relaxed condition fails beyond the cell order cap");
  // Cell containing h (either one when h is a boundary).
  const auto cells = build_partition(kMaxCellOrder);
  auto it = std::lower_bound(cells.begin(), cells.end(), h, [](const PartitionCell& c, const ExactValue& x) {
    return compare(c.hi, x) == Ordering::Less;
  });
  if (it == cells.end()) throw CertificateFailure("no partition cell contains h");
  if (!verify_cell(*it, kMaxCellOrder)) throw CertificateFailure("cell ordering certificate failed");
  PartitionCell point{h, h, it->ordered};
  const std::vector<long> bad = liyau_check_cell(point, kMaxCellOrder);
  if (!bad.empty()) return {LiYauVerdictKind::FailsAt, bad, "partial sums on the crossover cell"};
  return {LiYauVerdictKind::Holds, {}, "relaxed condition at h fails only for k <= 86; partial sums hold for k <= 86"};
}

}  // namespace stripcert::liyau
