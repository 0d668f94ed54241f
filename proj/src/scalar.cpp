#include "kirbycalc/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kirbycalc {

Rational mod_one(Rational r) {
  const std::int64_t num = r.numerator();
  const std::int64_t den = r.denominator();
  std::int64_t m = num % den;
  if (m < 0) m += den;
  return Rational(m, den);
}

Complex exp_2pi_i(Rational r) {
  const Rational reduced = mod_one(r);
  if (reduced.numerator() == 0) return {1.0, 0.0};
  const double angle = 2.0 * kPi * boost::rational_cast<double>(reduced);
  return std::polar(1.0, angle);
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    const std::int64_t den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(std::stoll(text.substr(0, slash)), den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

std::string to_string(Rational r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {
std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}
}  // namespace

std::string format_complex(Complex z) {
  // Values below 1e-12 in magnitude are rounding noise at this precision.
  double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
  double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
  std::string out = format_real(re);
  if (im < 0) out += "-" + format_real(-im) + "i";
  else out += "+" + format_real(im) + "i";
  return out;
}

Complex ipow(Complex z, long long exponent) {
  if (exponent < 0) return Complex(1.0) / ipow(z, -exponent);
  Complex result(1.0);
  Complex base = z;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace kirbycalc
