#pragma once

// Arbitrary-precision signed integers, base 2^32, with a two-limb inline
// buffer so that values below 2^64 never touch the heap. Exact kernels in
// this project run almost entirely on single-limb values; the heap path is
// the safety net for determinant-scale growth.

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <string>
#include <stdexcept>
#include <utility>

namespace meshct {

class BigInt {
 public:
  BigInt() : sign_(0), size_(0), cap_(kInline) { inl_[0] = inl_[1] = 0; }

  BigInt(int64_t v) : sign_(0), size_(0), cap_(kInline) {
    inl_[0] = inl_[1] = 0;
    if (v == 0) return;
    uint64_t m;
    if (v < 0) {
      sign_ = -1;
      m = ~static_cast<uint64_t>(v) + 1;  // avoids overflow at INT64_MIN
    } else {
      sign_ = 1;
      m = static_cast<uint64_t>(v);
    }
    inl_[0] = static_cast<uint32_t>(m);
    inl_[1] = static_cast<uint32_t>(m >> 32);
    size_ = inl_[1] ? 2 : 1;
  }

  BigInt(const BigInt& o) : sign_(o.sign_), size_(o.size_), cap_(kInline) {
    if (o.size_ <= kInline) {
      inl_[0] = o.limb(0);
      inl_[1] = o.size_ > 1 ? o.limb(1) : 0;
    } else {
      heap_ = alloc(o.size_);
      cap_ = o.size_;
      std::memcpy(heap_, o.limbs(), o.size_ * 4);
    }
  }

  BigInt(BigInt&& o) noexcept : sign_(o.sign_), size_(o.size_), cap_(o.cap_) {
    if (o.cap_ > kInline) {
      heap_ = o.heap_;
      o.cap_ = kInline;
    } else {
      inl_[0] = o.inl_[0];
      inl_[1] = o.inl_[1];
    }
    o.sign_ = 0;
    o.size_ = 0;
  }

  BigInt& operator=(const BigInt& o) {
    if (this == &o) return *this;
    reserve(o.size_);
    sign_ = o.sign_;
    size_ = o.size_;
    if (size_) std::memcpy(limbs(), o.limbs(), size_ * 4);
    return *this;
  }

  BigInt& operator=(BigInt&& o) noexcept {
    if (this == &o) return *this;
    if (cap_ > kInline) std::free(heap_);
    sign_ = o.sign_;
    size_ = o.size_;
    cap_ = o.cap_;
    if (o.cap_ > kInline) {
      heap_ = o.heap_;
      o.cap_ = kInline;
    } else {
      inl_[0] = o.inl_[0];
      inl_[1] = o.inl_[1];
    }
    o.sign_ = 0;
    o.size_ = 0;
    return *this;
  }

  ~BigInt() {
    if (cap_ > kInline) std::free(heap_);
  }

  bool is_zero() const { return sign_ == 0; }
  bool is_one() const { return sign_ == 1 && size_ == 1 && limb(0) == 1; }
  bool is_neg() const { return sign_ < 0; }
  int sign() const { return sign_; }

  void negate() { sign_ = -sign_; }

  friend BigInt operator-(const BigInt& a) {
    BigInt r(a);
    r.negate();
    return r;
  }

  // |a| vs |b|
  static int cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_ ? -1 : 1;
    for (uint32_t i = a.size_; i-- > 0;) {
      uint32_t x = a.limb(i), y = b.limb(i);
      if (x != y) return x < y ? -1 : 1;
    }
    return 0;
  }

  static int cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a, b);
    return a.sign_ >= 0 ? c : -c;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) {
      add_mag(r, a, b);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a, b);
      if (c == 0) return r;
      if (c > 0) {
        sub_mag(r, a, b);
        r.sign_ = a.sign_;
      } else {
        sub_mag(r, b, a);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) {
    BigInt nb(b);
    nb.negate();
    return a + nb;
  }

  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    if (a.size_ == 1 && b.size_ == 1) {
      uint64_t p = static_cast<uint64_t>(a.limb(0)) * b.limb(0);
      r.inl_[0] = static_cast<uint32_t>(p);
      r.inl_[1] = static_cast<uint32_t>(p >> 32);
      r.size_ = r.inl_[1] ? 2 : 1;
      r.sign_ = a.sign_ * b.sign_;
      return r;
    }
    r.reserve(a.size_ + b.size_);
    uint32_t* rl = r.limbs();
    std::memset(rl, 0, (a.size_ + b.size_) * 4);
    const uint32_t* al = a.limbs();
    const uint32_t* bl = b.limbs();
    for (uint32_t i = 0; i < a.size_; ++i) {
      uint64_t carry = 0;
      uint64_t ai = al[i];
      for (uint32_t j = 0; j < b.size_; ++j) {
        uint64_t t = ai * bl[j] + rl[i + j] + carry;
        rl[i + j] = static_cast<uint32_t>(t);
        carry = t >> 32;
      }
      rl[i + b.size_] = static_cast<uint32_t>(carry);
    }
    r.size_ = a.size_ + b.size_;
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  // Truncated division: q = trunc(a/b), r = a - q*b (sign of r = sign of a).
  static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt division by zero");
    int c = cmp_mag(a, b);
    if (c < 0) {
      q = BigInt();
      r = a;
      return;
    }
    if (b.size_ == 1) {
      divrem_small(a, b.limb(0), q, r);
    } else {
      divrem_knuth(a, b, q, r);
    }
    q.sign_ = q.size_ ? a.sign_ * b.sign_ : 0;
    r.sign_ = r.size_ ? a.sign_ : 0;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divrem(a, b, q, r);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divrem(a, b, q, r);
    return r;
  }

  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x(a), y(b);
    x.sign_ = x.size_ ? 1 : 0;
    y.sign_ = y.size_ ? 1 : 0;
    while (!y.is_zero()) {
      BigInt q, r;
      divrem(x, y, q, r);
      x = std::move(y);
      y = std::move(r);
    }
    return x;
  }

  bool fits_int64() const {
    if (size_ > 2) return false;
    if (size_ < 2) return true;
    uint64_t m = mag64();
    return sign_ > 0 ? m <= static_cast<uint64_t>(INT64_MAX)
                     : m <= static_cast<uint64_t>(INT64_MAX) + 1;
  }

  int64_t to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt does not fit int64");
    uint64_t m = mag64();
    if (sign_ < 0) return static_cast<int64_t>(~m + 1);  // two's complement
    return static_cast<int64_t>(m);
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    BigInt t(*this);
    t.sign_ = 1;
    std::string out;
    BigInt q, r;
    const uint32_t chunk = 1000000000u;
    while (!t.is_zero()) {
      divrem_small(t, chunk, q, r);
      uint32_t digits = r.size_ ? r.limb(0) : 0;
      std::string part = std::to_string(digits);
      t = q;
      if (t.is_zero()) {
        out = part + out;
      } else {
        out = std::string(9 - part.size(), '0') + part + out;
      }
    }
    if (sign_ < 0) out = "-" + out;
    return out;
  }

  static BigInt from_string(const std::string& s) {
    size_t i = 0;
    int sg = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      if (s[i] == '-') sg = -1;
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("empty integer literal");
    BigInt r;
    BigInt ten9(1000000000);
    while (i < s.size()) {
      size_t take = std::min<size_t>(9, s.size() - i);
      uint32_t v = 0;
      for (size_t k = 0; k < take; ++k) {
        char c = s[i + k];
        if (c < '0' || c > '9') throw std::invalid_argument("bad integer literal");
        v = v * 10 + static_cast<uint32_t>(c - '0');
      }
      BigInt scale = take == 9 ? ten9 : BigInt(static_cast<int64_t>(pow10(take)));
      r = r * scale + BigInt(static_cast<int64_t>(v));
      i += take;
    }
    if (sg < 0) r.negate();
    return r;
  }

  size_t hash() const {
    size_t h = static_cast<size_t>(sign_) * 1099511628211ull;
    for (uint32_t i = 0; i < size_; ++i) h = (h ^ limb(i)) * 1099511628211ull;
    return h;
  }

  uint32_t limb_count() const { return size_; }

 private:
  static constexpr uint32_t kInline = 2;

  int32_t sign_;
  uint32_t size_;
  uint32_t cap_;
  union {
    uint32_t inl_[kInline];
    uint32_t* heap_;
  };

  const uint32_t* limbs() const { return cap_ > kInline ? heap_ : inl_; }
  uint32_t* limbs() { return cap_ > kInline ? heap_ : inl_; }
  uint32_t limb(uint32_t i) const { return limbs()[i]; }

  uint64_t mag64() const {
    if (size_ == 0) return 0;
    uint64_t m = limb(0);
    if (size_ > 1) m |= static_cast<uint64_t>(limb(1)) << 32;
    return m;
  }

  static uint32_t* alloc(uint32_t n) {
    void* p = std::malloc(static_cast<size_t>(n) * 4);
    if (!p) throw std::bad_alloc();
    return static_cast<uint32_t*>(p);
  }

  void reserve(uint32_t n) {
    if (n <= cap_) return;
    uint32_t* p = alloc(n);
    if (size_) std::memcpy(p, limbs(), size_ * 4);
    if (cap_ > kInline) std::free(heap_);
    heap_ = p;
    cap_ = n;
  }

  void trim() {
    while (size_ && limb(size_ - 1) == 0) --size_;
    if (size_ == 0) sign_ = 0;
  }

  static void add_mag(BigInt& r, const BigInt& a, const BigInt& b) {
    const BigInt& hi = a.size_ >= b.size_ ? a : b;
    const BigInt& lo = a.size_ >= b.size_ ? b : a;
    r.reserve(hi.size_ + 1);
    uint32_t* rl = r.limbs();
    uint64_t carry = 0;
    for (uint32_t i = 0; i < lo.size_; ++i) {
      uint64_t t = static_cast<uint64_t>(hi.limb(i)) + lo.limb(i) + carry;
      rl[i] = static_cast<uint32_t>(t);
      carry = t >> 32;
    }
    for (uint32_t i = lo.size_; i < hi.size_; ++i) {
      uint64_t t = static_cast<uint64_t>(hi.limb(i)) + carry;
      rl[i] = static_cast<uint32_t>(t);
      carry = t >> 32;
    }
    rl[hi.size_] = static_cast<uint32_t>(carry);
    r.size_ = hi.size_ + 1;
    r.trim();
  }

  // requires |a| >= |b|
  static void sub_mag(BigInt& r, const BigInt& a, const BigInt& b) {
    r.reserve(a.size_);
    uint32_t* rl = r.limbs();
    int64_t borrow = 0;
    for (uint32_t i = 0; i < a.size_; ++i) {
      int64_t t = static_cast<int64_t>(a.limb(i)) - (i < b.size_ ? b.limb(i) : 0) - borrow;
      borrow = t < 0 ? 1 : 0;
      rl[i] = static_cast<uint32_t>(t + (borrow << 32));
    }
    r.size_ = a.size_;
    r.trim();
  }

  static void divrem_small(const BigInt& a, uint32_t d, BigInt& q, BigInt& r) {
    q.reserve(a.size_);
    q.size_ = a.size_;
    uint64_t rem = 0;
    for (uint32_t i = a.size_; i-- > 0;) {
      uint64_t cur = (rem << 32) | a.limb(i);
      q.limbs()[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    q.trim();
    q.sign_ = q.size_ ? 1 : 0;
    r = BigInt(static_cast<int64_t>(rem));
  }

  // Knuth algorithm D on magnitudes; b.size_ >= 2, |a| >= |b|.
  static void divrem_knuth(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    uint32_t n = b.size_, m = a.size_ - b.size_;
    int shift = 0;
    uint32_t top = b.limb(n - 1);
    while (!(top & 0x80000000u)) {
      top <<= 1;
      ++shift;
    }
    // normalized copies
    BigInt u, v;
    u.reserve(a.size_ + 1);
    v.reserve(n);
    {
      uint32_t carry = 0;
      for (uint32_t i = 0; i < n; ++i) {
        uint32_t x = b.limb(i);
        v.limbs()[i] = (x << shift) | carry;
        carry = shift ? static_cast<uint32_t>(static_cast<uint64_t>(x) >> (32 - shift)) : 0;
      }
      v.size_ = n;
      carry = 0;
      for (uint32_t i = 0; i < a.size_; ++i) {
        uint32_t x = a.limb(i);
        u.limbs()[i] = (x << shift) | carry;
        carry = shift ? static_cast<uint32_t>(static_cast<uint64_t>(x) >> (32 - shift)) : 0;
      }
      u.limbs()[a.size_] = carry;
      u.size_ = a.size_ + 1;
    }
    q.reserve(m + 1);
    q.size_ = m + 1;
    uint32_t* ul = u.limbs();
    const uint32_t* vl = v.limbs();
    uint64_t vtop = vl[n - 1];
    uint64_t vsec = vl[n - 2];
    for (uint32_t j = m + 1; j-- > 0;) {
      uint64_t num = (static_cast<uint64_t>(ul[j + n]) << 32) | ul[j + n - 1];
      uint64_t qhat = num / vtop;
      uint64_t rhat = num % vtop;
      while (qhat >= (1ull << 32) ||
             qhat * vsec > ((rhat << 32) | ul[j + n - 2])) {
        --qhat;
        rhat += vtop;
        if (rhat >= (1ull << 32)) break;
      }
      // u[j..j+n] -= qhat * v
      int64_t borrow = 0;
      uint64_t carry = 0;
      for (uint32_t i = 0; i < n; ++i) {
        uint64_t p = qhat * vl[i] + carry;
        carry = p >> 32;
        int64_t t = static_cast<int64_t>(ul[i + j]) - static_cast<int64_t>(p & 0xffffffffu) - borrow;
        borrow = t < 0 ? 1 : 0;
        ul[i + j] = static_cast<uint32_t>(t + (borrow << 32));
      }
      int64_t t = static_cast<int64_t>(ul[j + n]) - static_cast<int64_t>(carry) - borrow;
      if (t < 0) {
        // qhat was one too large; add back
        --qhat;
        uint64_t c2 = 0;
        for (uint32_t i = 0; i < n; ++i) {
          uint64_t s = static_cast<uint64_t>(ul[i + j]) + vl[i] + c2;
          ul[i + j] = static_cast<uint32_t>(s);
          c2 = s >> 32;
        }
        t += static_cast<int64_t>(c2);
      }
      ul[j + n] = static_cast<uint32_t>(t);
      q.limbs()[j] = static_cast<uint32_t>(qhat);
    }
    q.trim();
    q.sign_ = q.size_ ? 1 : 0;
    // remainder = u[0..n) >> shift
    r.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
      uint32_t lo = ul[i] >> shift;
      uint32_t hi = (shift && i + 1 < n + 0u) ? (ul[i + 1] << (32 - shift)) : 0;
      if (shift == 0) hi = 0;
      r.limbs()[i] = lo | hi;
    }
    r.size_ = n;
    r.trim();
    r.sign_ = r.size_ ? 1 : 0;
  }

  static uint64_t pow10(size_t k) {
    uint64_t v = 1;
    while (k--) v *= 10;
    return v;
  }
};

}  // namespace meshct
