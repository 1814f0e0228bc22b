#include "cusplab/real.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "cusplab/error.hpp"

namespace cusplab {
namespace {

unsigned g_bits = kDefaultPrecisionBits;

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * std::log10(2.0)));
}

struct DefaultPrecisionInit {
  DefaultPrecisionInit() { Real::default_precision(digits10_for_bits(kDefaultPrecisionBits)); }
};
const DefaultPrecisionInit g_init;

bool is_decimal_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    digits = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      digits = true;
    }
  }
  if (!digits) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    bool exp_digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      exp_digits = true;
    }
    if (!exp_digits) return false;
  }
  return i == s.size();
}

}  // namespace

void set_precision_bits(unsigned bits) {
  if (bits < 24) throw DomainError("precision below 24 bits is not supported");
  g_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
}

unsigned precision_bits() { return g_bits; }

Real det_tolerance() { return boost::multiprecision::ldexp(Real(1), 48 - static_cast<int>(g_bits)); }

Real tie_tolerance() { return boost::multiprecision::ldexp(Real(1), 40 - static_cast<int>(g_bits)); }

PrecisionScope::PrecisionScope(unsigned bits) : previous_(g_bits) { set_precision_bits(bits); }

PrecisionScope::~PrecisionScope() { set_precision_bits(previous_); }

Real parse_real(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_decimal_literal(num) || !is_decimal_literal(den)) {
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
    }
    Real d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Real(std::string(num)) / d;
  }
  if (!is_decimal_literal(text)) {
    throw ParseError("malformed decimal literal '" + std::string(text) + "'");
  }
  return Real(std::string(text));
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace cusplab
