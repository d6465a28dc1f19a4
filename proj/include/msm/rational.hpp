#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace msm {

// Exact rational arithmetic on 64-bit integers with 128-bit intermediates.
// Every value is kept reduced with a positive denominator, so chains of
// factorial ratios stay in range as long as the reduced result does.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator) : num_(numerator) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("Rational: zero denominator");
    num_ = numerator;
    den_ = denominator;
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const { return Rational(-num_, den_, already_reduced_tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t da = a.den_ / g;
    const std::int64_t db = b.den_ / g;
    const __int128 num = static_cast<__int128>(a.num_) * db + static_cast<__int128>(b.num_) * da;
    const __int128 den = static_cast<__int128>(a.den_) * db;
    return make_reduced(num, den);
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
    const std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
    const __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    const __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return make_reduced(num, den);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return a * Rational(b.den_, b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct already_reduced_tag {};
  Rational(std::int64_t n, std::int64_t d, already_reduced_tag) : num_(n), den_(d) {}

  static Rational make_reduced(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den),
                    already_reduced_tag{});
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// n! for n <= 20.
inline std::int64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial: argument out of 64-bit range");
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// n!! = n(n-2)(n-4)...; (-1)!! = 1 by convention. Valid through 33!!.
inline std::int64_t double_factorial(int n) {
  if (n < -1 || n > 33) throw std::overflow_error("double_factorial: argument out of range");
  std::int64_t f = 1;
  for (int k = n; k > 1; k -= 2) f *= k;
  return f;
}

// n (n-1) ... (n-k+1), the falling product with k factors.
inline Rational falling_product(int n, int k) {
  Rational r = 1;
  for (int j = 0; j < k; ++j) r *= Rational(n - j);
  return r;
}

// a! / b! as an exact rational, valid for arbitrary a, b >= 0 with a, b <= 40
// provided the reduced value fits (computed as a falling/rising product).
inline Rational factorial_ratio(int a, int b) {
  if (a < 0 || b < 0) throw std::domain_error("factorial_ratio: negative argument");
  Rational r = 1;
  if (a >= b) {
    for (int j = b + 1; j <= a; ++j) r *= Rational(j);
  } else {
    for (int j = a + 1; j <= b; ++j) r /= Rational(j);
  }
  return r;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int j = 1; j <= k; ++j) {
    // Exact at every step: r * (n - k + j) is divisible by j.
    const __int128 t = static_cast<__int128>(r) * (n - k + j) / j;
    if (t > INT64_MAX) throw std::overflow_error("binomial: out of 64-bit range");
    r = static_cast<std::int64_t>(t);
  }
  return r;
}

inline std::int64_t int_pow2(int k) {
  if (k < 0 || k > 62) throw std::overflow_error("int_pow2: exponent out of range");
  return std::int64_t{1} << k;
}

}  // namespace msm
