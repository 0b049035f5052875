#include "tat/rational.hpp"

namespace tat {

std::optional<Rat> parse_rat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    i = 1;
  }
  auto digits = [&](size_t& pos) -> std::optional<Int> {
    size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
    Int v = 0;
    for (size_t k = start; k < pos; ++k) v = v * 10 + (s[k] - '0');
    return v;
  };
  auto num = digits(i);
  if (!num) return std::nullopt;
  Int den = 1;
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    auto d = digits(i);
    if (!d || i != s.size() || *d == 0) return std::nullopt;
    den = *d;
  }
  Rat r(*num, den);
  if (neg) r = -r;
  return r;
}

std::string rat_str(const Rat& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) {
    out += '/';
    out += denominator(x).str();
  }
  return out;
}

}  // namespace tat
