#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace memb {

// Exact rational on 64-bit integers with overflow detection. Protocol
// acceptance probabilities at desk scale stay far below the guard.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static long long checked_mul(long long a, long long b) {
    const __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational overflow");
    return static_cast<long long>(r);
  }

  Rational operator+(const Rational& o) const {
    Rational r;
    r.num = checked_mul(num, o.den);
    const long long t = checked_mul(o.num, den);
    if ((r.num > 0 && t > INT64_MAX - r.num) || (r.num < 0 && t < INT64_MIN - r.num))
      throw std::overflow_error("Rational overflow");
    r.num += t;
    r.den = checked_mul(den, o.den);
    r.normalize();
    return r;
  }

  Rational operator*(const Rational& o) const {
    Rational a(num, o.den), b(o.num, den);  // cross-reduce first
    Rational r;
    r.num = checked_mul(a.num, b.num);
    r.den = checked_mul(a.den, b.den);
    r.normalize();
    return r;
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  // base^e with overflow guard, e >= 0.
  static long long ipow(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
  }
};

}  // namespace memb
