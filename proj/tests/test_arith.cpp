#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "meshct/bigint.hpp"
#include "meshct/fp.hpp"
#include "meshct/matrix.hpp"
#include "meshct/rational.hpp"
#include "meshct/simd_kernels.hpp"

using namespace meshct;

TEST_CASE("bigint small arithmetic agrees with int128") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> dist(-1000000000000ll, 1000000000000ll);
  for (int t = 0; t < 2000; ++t) {
    int64_t x = dist(rng), y = dist(rng);
    BigInt a(x), b(y);
    CHECK((a + b).to_int64() == x + y);
    CHECK((a - b).to_int64() == x - y);
    __int128 p = static_cast<__int128>(x) * y;
    BigInt prod = a * b;
    CHECK(prod.to_string() == [&] {
      if (p == 0) return std::string("0");
      bool neg = p < 0;
      unsigned __int128 m = neg ? -static_cast<unsigned __int128>(p) : p;
      std::string s;
      while (m) {
        s += static_cast<char>('0' + static_cast<int>(m % 10));
        m /= 10;
      }
      if (neg) s += '-';
      return std::string(s.rbegin(), s.rend());
    }());
    if (y != 0) {
      BigInt q, r;
      BigInt::divrem(a, b, q, r);
      CHECK(q.to_int64() == x / y);
      CHECK(r.to_int64() == x % y);
      CHECK(q * b + r == a);
    }
  }
}

TEST_CASE("bigint multi-limb division round trips") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 400; ++t) {
    BigInt a(1), b(1);
    int la = 1 + static_cast<int>(rng() % 6), lb = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < la; ++i) a = a * BigInt(static_cast<int64_t>(rng() % 0xffffffffull)) + BigInt(static_cast<int64_t>(rng() % 97));
    for (int i = 0; i < lb; ++i) b = b * BigInt(static_cast<int64_t>(rng() % 0xffffffffull)) + BigInt(static_cast<int64_t>(rng() % 89));
    if (rng() % 2) a.negate();
    if (rng() % 2) b.negate();
    if (b.is_zero()) continue;
    BigInt q, r;
    BigInt::divrem(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(BigInt::cmp_mag(r, b) < 0);
    BigInt g = BigInt::gcd(a, b);
    if (!a.is_zero()) {
      BigInt q2, r2;
      BigInt::divrem(a, g, q2, r2);
      CHECK(r2.is_zero());
    }
  }
}

TEST_CASE("bigint string round trip") {
  const char* cases[] = {"0", "-1", "123456789012345678901234567890",
                         "-999999999999999999999999999999999999"};
  for (const char* c : cases) {
    CHECK(BigInt::from_string(c).to_string() == c);
  }
  CHECK(BigInt::from_string("170141183460469231731687303715884105728").to_string() ==
        "170141183460469231731687303715884105728");
}

TEST_CASE("rational field axioms on random samples") {
  std::mt19937_64 rng(7);
  auto rnd = [&] {
    int64_t n = static_cast<int64_t>(rng() % 2001) - 1000;
    int64_t d = 1 + static_cast<int64_t>(rng() % 50);
    return Rational(BigInt(n), BigInt(d));
  };
  for (int t = 0; t < 500; ++t) {
    Rational a = rnd(), b = rnd(), c = rnd();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
  CHECK(Rational::from_string("-6/4").to_string() == "-3/2");
  CHECK(Rational(BigInt(2), BigInt(-4)).to_string() == "-1/2");
}

TEST_CASE("prime field inverses") {
  for (uint32_t v = 1; v < 2000; ++v) {
    Fp x = Fp::from_raw(v);
    CHECK((x * x.inverse()).is_one());
  }
  CHECK((Fp(32003)).is_zero());
  CHECK((Fp(-1) + Fp(1)).is_zero());
}

TEST_CASE("simd kernels match scalar reference") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    size_t n = 1 + rng() % 300;
    std::vector<uint32_t> dst(n), src(n);
    for (size_t i = 0; i < n; ++i) {
      dst[i] = static_cast<uint32_t>(rng() % simd::kP);
      src[i] = static_cast<uint32_t>(rng() % simd::kP);
    }
    uint32_t c = static_cast<uint32_t>(rng() % simd::kP);
    std::vector<uint32_t> want = dst, got = dst;
    simd::axpy_mod_scalar(want.data(), src.data(), c, n);
    simd::active_kernels().axpy(got.data(), src.data(), c, n);
    CHECK(want == got);
    want = dst;
    got = dst;
    simd::scale_mod_scalar(want.data(), c, n);
    simd::active_kernels().scale(got.data(), c, n);
    CHECK(want == got);
  }
  // edge values
  std::vector<uint32_t> dst{0, simd::kP - 1, simd::kP - 1, 1, 0, 7, simd::kP - 2, 3};
  std::vector<uint32_t> src{simd::kP - 1, simd::kP - 1, 1, 0, 0, 9, simd::kP - 1, 5};
  auto want = dst, got = dst;
  simd::axpy_mod_scalar(want.data(), src.data(), simd::kP - 1, dst.size());
  simd::active_kernels().axpy(got.data(), src.data(), simd::kP - 1, dst.size());
  CHECK(want == got);
}

#if MESHCT_X86
TEST_CASE("avx2 kernels exercised directly when available") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937_64 rng(9);
  size_t n = 1023;
  std::vector<uint32_t> dst(n), src(n);
  for (size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<uint32_t>(rng() % simd::kP);
    src[i] = static_cast<uint32_t>(rng() % simd::kP);
  }
  for (uint32_t c : {0u, 1u, 2u, simd::kP - 1, 17u}) {
    auto want = dst, got = dst;
    simd::axpy_mod_scalar(want.data(), src.data(), c % simd::kP, n);
    simd::axpy_mod_avx2(got.data(), src.data(), c % simd::kP, n);
    CHECK(want == got);
  }
  CHECK(std::string(simd::active_kernels().name) == "avx2");
}
#endif

template <class F>
static void matrix_suite(uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 40; ++t) {
    int r = 1 + static_cast<int>(rng() % 8), c = 1 + static_cast<int>(rng() % 8);
    Mat<F> a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a.at(i, j) = F(static_cast<int64_t>(rng() % 11) - 5);
    Mat<F> ns = nullspace(a);
    CHECK((a * ns).is_zero());
    CHECK(rank_of(a) + ns.cols() == c);
    // square: inverse when full rank
    if (r == c) {
      auto inv = inverse(a);
      if (inv) {
        CHECK((a * *inv) == Mat<F>::identity(r));
        CHECK((*inv * a) == Mat<F>::identity(r));
      } else {
        CHECK(rank_of(a) < r);
      }
    }
    // consistent solve
    Mat<F> x(c, 2);
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < 2; ++j) x.at(i, j) = F(static_cast<int64_t>(rng() % 7) - 3);
    Mat<F> b = a * x;
    auto sol = solve(a, b);
    REQUIRE(sol.has_value());
    CHECK((a * *sol) == b);
  }
}

TEST_CASE("dense elimination over both fields") {
  matrix_suite<Rational>(21);
  matrix_suite<Fp>(22);
}
