#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>

namespace bjorling {

// Exact rational p/q with q > 0, kept reduced. Used to tag purely imaginary
// exponential rates i*(p/q) so that the w = e^{it/d} substitution can decide
// integrality exactly instead of guessing from doubles.
struct Rational {
  long long num = 0;
  long long den = 1;

  constexpr Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a) { return Rational(-a.num, a.den); }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

// Reconstructs x as p/q when the double x is *bit-exactly* p/q, via continued
// fractions. Returns nullopt for values that are not an exact small rational.
inline std::optional<Rational> exact_rational(double x, long long max_den = 4096) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Rational(0, 1);
  if (std::abs(x) > 9.0e15) return std::nullopt;

  double a = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(a);
    if (std::abs(fl) > 9.0e15) break;
    long long ai = static_cast<long long>(fl);
    long long p2 = ai * p1 + p0;
    long long q2 = ai * q1 + q0;
    if (q2 > max_den || std::abs(static_cast<double>(p2)) > 9.0e15) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (q1 > 0 && static_cast<double>(p1) / static_cast<double>(q1) == x)
      return Rational(p1, q1);
    double rem = a - fl;
    if (rem == 0.0) break;
    a = 1.0 / rem;
  }
  return std::nullopt;
}

}  // namespace bjorling
