#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mwisr {

// Exact rational arithmetic on 64-bit numerator / denominator.
// Always normalized: den > 0, gcd(|num|, den) == 1. Intermediate products
// go through __int128; anything that would not fit back into 64 bits after
// reduction throws, which at the instance sizes this library targets never
// fires in practice.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t n) : num_(n) {}
  Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  // Largest integer <= value.
  std::int64_t floor() const {
    if (num_ >= 0) return num_ / den_;
    return -(((-num_) + den_ - 1) / den_);
  }
  // Smallest integer >= value.
  std::int64_t ceil() const {
    if (num_ >= 0) return (num_ + den_ - 1) / den_;
    return -((-num_) / den_);
  }

  Rat inverse() const {
    if (num_ == 0) throw std::domain_error("Rat: inverse of zero");
    return make(den_, num_);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    I128 n = I128(a.num_) * b.den_ + I128(b.num_) * a.den_;
    I128 d = I128(a.den_) * b.den_;
    return reduce(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    I128 n = I128(a.num_) * b.den_ - I128(b.num_) * a.den_;
    I128 d = I128(a.den_) * b.den_;
    return reduce(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return reduce(I128(a.num_) * b.num_, I128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return reduce(I128(a.num_) * b.den_, I128(a.den_) * b.num_);
  }
  Rat operator-() const { return make(-num_, den_); }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  double to_double() const { return double(num_) / double(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    I128 l = I128(a) / std::gcd(a, b) * b;
    return narrow(l);
  }

 private:
  using I128 = __int128;

  static std::int64_t narrow(I128 v) {
    if (v > I128(INT64_MAX) || v < I128(INT64_MIN))
      throw std::overflow_error("Rat: 64-bit overflow");
    return std::int64_t(v);
  }

  static Rat reduce(I128 n, I128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    I128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rat r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static I128 gcd128(I128 a, I128 b) {
    while (b) { I128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  static Rat make(std::int64_t n, std::int64_t d) { return reduce(n, d); }

  void normalize() { *this = reduce(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace mwisr
