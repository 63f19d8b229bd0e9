#pragma once

// The prime field F_32003, the optional fast backend. 32003 is prime and
// 32002^2 fits in 32 bits, so products reduce with a single % on uint32.

#include <cstdint>
#include <string>
#include <stdexcept>

namespace meshct {

class Fp {
 public:
  static constexpr uint32_t P = 32003;

  Fp() : v_(0) {}
  Fp(int64_t v) {
    int64_t m = v % static_cast<int64_t>(P);
    if (m < 0) m += P;
    v_ = static_cast<uint32_t>(m);
  }

  static Fp zero() { return Fp(); }
  static Fp one() { return Fp(1); }
  static Fp from_raw(uint32_t r) {
    Fp x;
    x.v_ = r;
    return x;
  }

  uint32_t raw() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  friend Fp operator+(Fp a, Fp b) {
    uint32_t s = a.v_ + b.v_;
    return from_raw(s >= P ? s - P : s);
  }
  friend Fp operator-(Fp a, Fp b) {
    return from_raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P - b.v_);
  }
  friend Fp operator-(Fp a) { return from_raw(a.v_ ? P - a.v_ : 0); }
  friend Fp operator*(Fp a, Fp b) { return from_raw(a.v_ * b.v_ % P); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
    // Fermat: v^(p-2)
    uint64_t base = v_, acc = 1, e = P - 2;
    while (e) {
      if (e & 1) acc = acc * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return from_raw(static_cast<uint32_t>(acc));
  }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  uint32_t v_;
};

}  // namespace meshct
