#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphpoly/errors.hpp"

namespace gp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) { return Rational(num, den); }

inline bool is_integer(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(const Complex& z, std::string_view what) {
  if (!is_finite(z)) {
    std::ostringstream os;
    os << what << " produced a non-finite value (" << z.real() << ", " << z.imag() << ")";
    throw NumericError(os.str());
  }
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Parses "re" or "re,im". Whitespace around the parts is ignored.
inline Complex parse_complex(std::string_view text) {
  auto parse_part = [&](std::string_view s) {
    std::string buf(s);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(buf, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + buf + "'");
    }
    while (used < buf.size() && std::isspace(static_cast<unsigned char>(buf[used]))) ++used;
    if (used != buf.size()) throw InvalidArgument("trailing characters in number '" + buf + "'");
    return v;
  };
  auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_part(text), 0.0};
  return {parse_part(text.substr(0, comma)), parse_part(text.substr(comma + 1))};
}

inline double parse_real(std::string_view text) {
  Complex z = parse_complex(text);
  if (z.imag() != 0.0) throw InvalidArgument("expected a real number, got '" + std::string(text) + "'");
  return z.real();
}

// Exact conversion of a finite double to a rational (every double is a dyadic rational).
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw NumericError("cannot convert non-finite double to rational");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // mant in [0.5, 1): scale to a 53-bit integer
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{BigInt(scaled)};
  if (exp > 0) r *= Rational(ipow(BigInt(2), static_cast<unsigned>(exp)));
  if (exp < 0) r /= Rational(ipow(BigInt(2), static_cast<unsigned>(-exp)));
  return r;
}

}  // namespace gp
