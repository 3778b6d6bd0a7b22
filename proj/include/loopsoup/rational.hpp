#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "loopsoup/errors.hpp"

namespace loopsoup {

// Exact rational on int64 with int128 intermediates. Enough headroom for loop
// masses up to the length-12 enumeration guard (denominators <= 12 * (2d)^12).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num) : num_(num), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  // (1/n) * (1/(2d))^n, the based-loop mass of a length-n loop in dimension d.
  static Rational loop_weight(int n, int d) {
    __int128 den = n;
    for (int i = 0; i < n; ++i) {
      den *= 2 * d;
      if (den > kLimit) throw resource_error("Rational: loop weight overflow (length guard)");
    }
    return make(1, den);
  }

 private:
  static constexpr __int128 kLimit = static_cast<__int128>(INT64_MAX);

  static Rational make(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num, b = den;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    if (num > kLimit || num < -kLimit || den > kLimit)
      throw resource_error("Rational: overflow after reduction");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void normalize() {
    Rational r = make(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace loopsoup
