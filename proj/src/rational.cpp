#include "treesearch/rational.hpp"

#include <cctype>

namespace treesearch {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

bool try_parse_rational(std::string_view text, Rat& out) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den)) return false;  // q must be a plain positive integer
  }
  bool neg = false;
  if (!num.empty() && num.front() == '-') {
    neg = true;
    num.remove_prefix(1);
  }
  if (!all_digits(num)) return false;
  try {
    Int p{std::string(num)};
    if (neg) p = -p;
    if (den.empty()) {
      out = Rat(p);
      return true;
    }
    Int q{std::string(den)};
    if (q == 0) return false;
    out = Rat(p, q);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::string format_rational(const Rat& value) {
  std::string s = numerator(value).str();
  if (denominator(value) != 1) {
    s += '/';
    s += denominator(value).str();
  }
  return s;
}

}  // namespace treesearch
