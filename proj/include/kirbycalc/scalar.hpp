#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace kirbycalc {

using Complex = std::complex<double>;

/// Exact rational used for phases (mod 1) and exact group-backend values.
using Rational = boost::rational<std::int64_t>;

/// Global comparison tolerance for complex-valued category data.
inline constexpr double kTolerance = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

inline bool approx_equal(Complex a, Complex b, double tol = kTolerance) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Reduces a rational into [0, 1).
Rational mod_one(Rational r);

/// e^{2 pi i r}; r is reduced first so that integer phases give exactly 1.
Complex exp_2pi_i(Rational r);

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

std::string to_string(Rational r);

/// Formats as `re+imi` / `re-imi` with 12 significant digits.
std::string format_complex(Complex z);

/// Integer power of a complex number; negative exponents invert.
Complex ipow(Complex z, long long exponent);

}  // namespace kirbycalc
