#pragma once

#include <cmath>
#include <limits>

#include "stripcert/reals/ball.hpp"

namespace stripcert::reals {

/// Double-precision enclosure mid +- rad used to skip exact comparisons when
/// two values are far apart. rad must already bound every rounding error.
struct Approx {
  double mid = 0.0;
  double rad = 0.0;

  double lower() const { return std::nextafter(mid - rad, -std::numeric_limits<double>::infinity()); }
  double upper() const { return std::nextafter(mid + rad, std::numeric_limits<double>::infinity()); }

  static Approx infinity() { return {std::numeric_limits<double>::infinity(), 0.0}; }
  static Approx from_ball(const Ball& b) {
    const double lo = b.lower().to_double(MPFR_RNDD);
    const double hi = b.upper().to_double(MPFR_RNDU);
    const double mid = 0.5 * (lo + hi);
    return {mid, std::nextafter(std::fmax(hi - mid, mid - lo), std::numeric_limits<double>::infinity())};
  }
};

enum class Separation { Less, Greater, Unknown };

inline Separation separate(const Approx& a, const Approx& b) {
  if (a.upper() < b.lower()) return Separation::Less;
  if (b.upper() < a.lower()) return Separation::Greater;
  return Separation::Unknown;
}

}  // namespace stripcert::reals
