#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "graphpoly/numeric.hpp"

namespace gp {

/// Dense polynomial with exact integer coefficients; coeffs()[k] multiplies x^k.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> c) : c_(std::move(c)) { trim(); }
  IntPolynomial(std::initializer_list<long> c) {
    for (long x : c) c_.emplace_back(x);
    trim();
  }

  const std::vector<BigInt>& coeffs() const noexcept { return c_; }
  BigInt coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

  /// Horner evaluation in any ring constructible from BigInt via to_number.
  template <typename T>
  T evaluate(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + convert<T>(*it);
    return acc;
  }

  /// Coefficients as complex doubles.
  std::vector<Complex> to_complex() const {
    std::vector<Complex> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.emplace_back(to_double(x), 0.0);
    return out;
  }

  std::vector<Rational> to_rational() const { return {c_.begin(), c_.end()}; }

  /// Coefficients 0..m (padded with zeros).
  IntPolynomial prefix(std::size_t m) const {
    std::vector<BigInt> c(m + 1, 0);
    for (std::size_t k = 0; k <= m && k < c_.size(); ++k) c[k] = c_[k];
    return IntPolynomial(std::move(c));
  }

  /// Reversed coefficient order with respect to degree n: x^n p(1/x).
  IntPolynomial reversed(std::size_t n) const {
    std::vector<BigInt> c(n + 1, 0);
    for (std::size_t k = 0; k < c_.size() && k <= n; ++k) c[n - k] = c_[k];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += c_[k] < 0 ? " - " : " + ";
      else if (c_[k] < 0) s += "-";
      BigInt mag = c_[k] < 0 ? BigInt(-c_[k]) : c_[k];
      if (k == 0 || mag != 1) s += mag.str();
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  template <typename T>
  static T convert(const BigInt& x) {
    if constexpr (std::is_same_v<T, Complex>) return Complex(to_double(x), 0.0);
    else if constexpr (std::is_same_v<T, double>) return to_double(x);
    else return T(x);
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// Horner evaluation of complex coefficients.
inline Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// q(q-1)...(q-r+1) as an integer polynomial in q.
inline IntPolynomial falling_factorial(std::size_t r) {
  IntPolynomial p{1};
  for (std::size_t i = 0; i < r; ++i) p = p * IntPolynomial{-static_cast<long>(i), 1};
  return p;
}

}  // namespace gp
