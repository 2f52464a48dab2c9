#pragma once

#include <algorithm>
#include <vector>

#include "stripcert/reals/approx.hpp"
#include "stripcert/reals/exact_value.hpp"

namespace stripcert::reals {

/// Sorts items into certified order. approx_of(x) gives a rigorous Approx,
/// exact_cmp(x, y) a certified Ordering, and tie_less(x, y) a strict order
/// used between exactly equal values. A cheap sort on midpoints runs first;
/// an insertion pass with the certified comparator then fixes the few
/// neighbours whose enclosures overlap.
template <class T, class ApproxOf, class ExactCmp, class TieLess>
void certified_sort(std::vector<T>& items, ApproxOf approx_of, ExactCmp exact_cmp, TieLess tie_less) {
  std::sort(items.begin(), items.end(), [&](const T& x, const T& y) {
    const double a = approx_of(x).mid;
    const double b = approx_of(y).mid;
    if (a != b) return a < b;
    return tie_less(x, y);
  });
  auto certified_less = [&](const T& x, const T& y) {
    switch (separate(approx_of(x), approx_of(y))) {
      case Separation::Less: return true;
      case Separation::Greater: return false;
      case Separation::Unknown: break;
    }
    switch (exact_cmp(x, y)) {
      case Ordering::Less: return true;
      case Ordering::Greater: return false;
      case Ordering::Equal: break;
    }
    return tie_less(x, y);
  };
  for (size_t i = 1; i < items.size(); ++i) {
    size_t j = i;
    while (j > 0 && certified_less(items[j], items[j - 1])) {
      std::swap(items[j], items[j - 1]);
      --j;
    }
  }
}

}  // namespace stripcert::reals
