#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace cusplab {

/// Working scalar: MPFR float with run-time precision and no expression
/// templates (values are stored in plain containers).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

using IntVector = std::vector<std::int64_t>;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Sets the process-wide mantissa size used for every Real created afterwards.
/// MPFR precision is allocated in whole decimal digits, so the effective
/// mantissa is the smallest digit count covering `bits` (128 -> 131 bits).
void set_precision_bits(unsigned bits);

/// The mantissa size last requested through set_precision_bits.
unsigned precision_bits();

/// Relative determinant tolerance for forms and group elements:
/// 2^(48 - bits), which is about 1e-24 at 128 bits.
Real det_tolerance();

/// Relative tolerance under which two lattice values count as tied.
Real tie_tolerance();

/// Restores the previous precision on scope exit. Not thread-safe: MPFR's
/// default precision is global state in this Boost version.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Parses a decimal literal ("1.25", "-3e-4") or a rational "a/b" at the
/// current precision. Throws ParseError on malformed input.
Real parse_real(std::string_view text);

inline double to_double(const Real& x) { return x.convert_to<double>(); }

inline Real sqrt_of(int n) { return boost::multiprecision::sqrt(Real(n)); }

/// Decimal rendering with `digits` significant digits.
std::string format_real(const Real& x, int digits = 17);

}  // namespace cusplab
