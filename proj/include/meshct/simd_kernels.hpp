#pragma once

// Row kernels for F_32003 dense elimination: dst += c*src and dst *= c,
// elementwise mod p. Scalar reference implementations plus AVX2 (x86) and
// NEON (aarch64) variants; the backend is picked once at runtime and the
// variants are equivalence-tested against the scalar kernels.

#include <cstddef>
#include <cstdint>

#if defined(__x86_64__) || defined(__i386__)
#define MESHCT_X86 1
#include <immintrin.h>
#else
#define MESHCT_X86 0
#endif

#if defined(__aarch64__)
#define MESHCT_NEON 1
#include <arm_neon.h>
#else
#define MESHCT_NEON 0
#endif

namespace meshct::simd {

inline constexpr uint32_t kP = 32003;
// Barrett constant: floor(2^45 / p); for x < 2^31, floor(x*m >> 45) is
// floor(x/p) or one less, so a single conditional subtract finishes.
inline constexpr uint64_t kBarrettM = (1ull << 45) / kP;
inline constexpr int kBarrettK = 45;

inline void axpy_mod_scalar(uint32_t* dst, const uint32_t* src, uint32_t c, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    dst[i] = (dst[i] + c * src[i]) % kP;
  }
}

inline void scale_mod_scalar(uint32_t* dst, uint32_t c, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    dst[i] = dst[i] * c % kP;
  }
}

#if MESHCT_X86

__attribute__((target("avx2"))) inline __m256i barrett_reduce64(__m256i x) {
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(kBarrettM));
  const __m256i p64 = _mm256_set1_epi64x(kP);
  __m256i q = _mm256_srli_epi64(_mm256_mul_epu32(x, m), kBarrettK);
  __m256i r = _mm256_sub_epi64(x, _mm256_mul_epu32(q, p64));
  __m256i lt = _mm256_cmpgt_epi64(p64, r);  // r < p
  return _mm256_sub_epi64(r, _mm256_andnot_si256(lt, p64));
}

__attribute__((target("avx2"))) inline void axpy_mod_avx2(uint32_t* dst, const uint32_t* src,
                                                          uint32_t c, size_t n) {
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i lo32 = _mm256_set1_epi64x(0xffffffffll);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i xe = _mm256_add_epi64(_mm256_mul_epu32(s, cv), _mm256_and_si256(d, lo32));
    __m256i xo = _mm256_add_epi64(_mm256_mul_epu32(_mm256_srli_epi64(s, 32), cv),
                                  _mm256_srli_epi64(d, 32));
    __m256i re = barrett_reduce64(xe);
    __m256i ro = barrett_reduce64(xo);
    __m256i out = _mm256_or_si256(re, _mm256_slli_epi64(ro, 32));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), out);
  }
  axpy_mod_scalar(dst + i, src + i, c, n - i);
}

__attribute__((target("avx2"))) inline void scale_mod_avx2(uint32_t* dst, uint32_t c, size_t n) {
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i xe = _mm256_mul_epu32(d, cv);
    __m256i xo = _mm256_mul_epu32(_mm256_srli_epi64(d, 32), cv);
    __m256i re = barrett_reduce64(xe);
    __m256i ro = barrett_reduce64(xo);
    __m256i out = _mm256_or_si256(re, _mm256_slli_epi64(ro, 32));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), out);
  }
  scale_mod_scalar(dst + i, c, n - i);
}

#endif  // MESHCT_X86

#if MESHCT_NEON

inline uint64x2_t barrett_reduce64_neon(uint64x2_t x) {
  // lanes < 2^31, so the low-32 narrowing below is lossless
  uint64x2_t xm = vmull_u32(vmovn_u64(x), vdup_n_u32(static_cast<uint32_t>(kBarrettM)));
  uint64x2_t q = vshrq_n_u64(xm, kBarrettK);
  uint64x2_t qp = vmull_u32(vmovn_u64(q), vdup_n_u32(kP));
  uint64x2_t r = vsubq_u64(x, qp);
  uint64x2_t ge = vcgeq_u64(r, vdupq_n_u64(kP));
  return vsubq_u64(r, vandq_u64(ge, vdupq_n_u64(kP)));
}

inline void axpy_mod_neon(uint32_t* dst, const uint32_t* src, uint32_t c, size_t n) {
  size_t i = 0;
  uint32x2_t cv = vdup_n_u32(c);
  for (; i + 2 <= n; i += 2) {
    uint32x2_t s = vld1_u32(src + i);
    uint32x2_t d = vld1_u32(dst + i);
    uint64x2_t x = vaddw_u32(vmull_u32(s, cv), d);
    vst1_u32(dst + i, vmovn_u64(barrett_reduce64_neon(x)));
  }
  axpy_mod_scalar(dst + i, src + i, c, n - i);
}

inline void scale_mod_neon(uint32_t* dst, uint32_t c, size_t n) {
  size_t i = 0;
  uint32x2_t cv = vdup_n_u32(c);
  for (; i + 2 <= n; i += 2) {
    uint32x2_t d = vld1_u32(dst + i);
    uint64x2_t x = vmull_u32(d, cv);
    vst1_u32(dst + i, vmovn_u64(barrett_reduce64_neon(x)));
  }
  scale_mod_scalar(dst + i, c, n - i);
}

#endif  // MESHCT_NEON

struct Kernels {
  void (*axpy)(uint32_t*, const uint32_t*, uint32_t, size_t);
  void (*scale)(uint32_t*, uint32_t, size_t);
  const char* name;
};

inline const Kernels& active_kernels() {
  static const Kernels k = [] {
#if MESHCT_X86
    if (__builtin_cpu_supports("avx2")) {
      return Kernels{axpy_mod_avx2, scale_mod_avx2, "avx2"};
    }
#endif
#if MESHCT_NEON
    return Kernels{axpy_mod_neon, scale_mod_neon, "neon"};
#endif
    return Kernels{axpy_mod_scalar, scale_mod_scalar, "scalar"};
  }();
  return k;
}

inline void axpy_mod(uint32_t* dst, const uint32_t* src, uint32_t c, size_t n) {
  active_kernels().axpy(dst, src, c, n);
}

inline void scale_mod(uint32_t* dst, uint32_t c, size_t n) {
  active_kernels().scale(dst, c, n);
}

}  // namespace meshct::simd
