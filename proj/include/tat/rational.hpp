#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace tat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "p" or "p/q", optional sign, q != 0.  Result is in lowest terms, q > 0.
std::optional<Rat> parse_rat(std::string_view s);

// Lowest terms; "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& x);

inline Int rfloor(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

// x mod m, in [0, m).  Requires m > 0.
inline Rat rmod(const Rat& x, const Rat& m) {
  Rat r = x - m * Rat(rfloor(Rat(x / m)));
  if (r < 0) r += m;   // guard against any rounding in hand-rolled floor
  if (r >= m) r -= m;
  return r;
}

inline bool divides(const Rat& m, const Rat& x) { return rmod(x, m) == 0; }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace tat
