// AVX2 variants of the Z/m vector kernels. Values are < m < 2^32, so lane
// products are exact 64-bit and the Barrett step below needs at most two
// conditional subtractions (q >= floor(x/m) - 2).
#include "grouplog/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define GROUPLOG_X86 1
#include <immintrin.h>
#endif

namespace grouplog {

#ifdef GROUPLOG_X86

namespace {

using std::size_t;
using std::uint64_t;

inline __m256i mul_lo32(__m256i a, __m256i b) { return _mm256_mul_epu32(a, b); }

// High 64 bits of x*y for full 64-bit lanes, recomposed from 32x32 products.
inline __m256i mulhi64(__m256i x, __m256i yl, __m256i yh) {
  const __m256i mask32 = _mm256_set1_epi64x(0xffffffffll);
  __m256i xl = _mm256_and_si256(x, mask32);
  __m256i xh = _mm256_srli_epi64(x, 32);
  __m256i t1 = mul_lo32(xl, yl);
  __m256i t2 = mul_lo32(xl, yh);
  __m256i t3 = mul_lo32(xh, yl);
  __m256i t4 = mul_lo32(xh, yh);
  __m256i mid = _mm256_add_epi64(_mm256_srli_epi64(t1, 32),
                                 _mm256_add_epi64(_mm256_and_si256(t2, mask32),
                                                  _mm256_and_si256(t3, mask32)));
  return _mm256_add_epi64(t4, _mm256_add_epi64(_mm256_srli_epi64(t2, 32),
                                               _mm256_add_epi64(_mm256_srli_epi64(t3, 32),
                                                                _mm256_srli_epi64(mid, 32))));
}

inline __m256i cond_sub(__m256i x, __m256i m, __m256i m_minus1) {
  __m256i gt = _mm256_cmpgt_epi64(x, m_minus1);
  return _mm256_sub_epi64(x, _mm256_and_si256(gt, m));
}

struct Barrett {
  __m256i m, m_minus1, binv_lo, binv_hi;
  explicit Barrett(uint64_t mod) {
    uint64_t binv = (uint64_t)((static_cast<unsigned __int128>(1) << 64) / mod);
    m = _mm256_set1_epi64x((long long)mod);
    m_minus1 = _mm256_set1_epi64x((long long)(mod - 1));
    binv_lo = _mm256_set1_epi64x((long long)(binv & 0xffffffffull));
    binv_hi = _mm256_set1_epi64x((long long)(binv >> 32));
  }
  // x < m^2 -> x mod m
  inline __m256i reduce(__m256i x) const {
    __m256i q = mulhi64(x, binv_lo, binv_hi);
    __m256i r = _mm256_sub_epi64(x, mul_lo32(q, m));
    r = cond_sub(r, m, m_minus1);
    r = cond_sub(r, m, m_minus1);
    return r;
  }
};

void add_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n, uint64_t mod) {
  const __m256i m = _mm256_set1_epi64x((long long)mod);
  const __m256i m1 = _mm256_set1_epi64x((long long)(mod - 1));
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256((const __m256i*)(a + i));
    __m256i y = _mm256_loadu_si256((const __m256i*)(b + i));
    _mm256_storeu_si256((__m256i*)(dst + i), cond_sub(_mm256_add_epi64(x, y), m, m1));
  }
  for (; i < n; ++i) {
    uint64_t s = a[i] + b[i];
    dst[i] = s >= mod ? s - mod : s;
  }
}

void sub_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n, uint64_t mod) {
  const __m256i m = _mm256_set1_epi64x((long long)mod);
  const __m256i m1 = _mm256_set1_epi64x((long long)(mod - 1));
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256((const __m256i*)(a + i));
    __m256i y = _mm256_loadu_si256((const __m256i*)(b + i));
    __m256i d = _mm256_add_epi64(_mm256_sub_epi64(x, y), m);
    _mm256_storeu_si256((__m256i*)(dst + i), cond_sub(d, m, m1));
  }
  for (; i < n; ++i) {
    uint64_t x = a[i], y = b[i];
    dst[i] = x >= y ? x - y : x + mod - y;
  }
}

void scale_avx2(uint64_t* dst, const uint64_t* a, size_t n, uint64_t c, uint64_t mod) {
  const Barrett br(mod);
  const __m256i cv = _mm256_set1_epi64x((long long)c);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256((const __m256i*)(a + i));
    _mm256_storeu_si256((__m256i*)(dst + i), br.reduce(mul_lo32(x, cv)));
  }
  for (; i < n; ++i) dst[i] = (a[i] * c) % mod;
}

void axpy_avx2(uint64_t* dst, const uint64_t* a, size_t n, uint64_t c, uint64_t mod) {
  const Barrett br(mod);
  const __m256i cv = _mm256_set1_epi64x((long long)c);
  const __m256i m = _mm256_set1_epi64x((long long)mod);
  const __m256i m1 = _mm256_set1_epi64x((long long)(mod - 1));
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256((const __m256i*)(a + i));
    __m256i d = _mm256_loadu_si256((const __m256i*)(dst + i));
    __m256i t = _mm256_add_epi64(d, br.reduce(mul_lo32(x, cv)));
    _mm256_storeu_si256((__m256i*)(dst + i), cond_sub(t, m, m1));
  }
  for (; i < n; ++i) {
    uint64_t t = dst[i] + (a[i] * c) % mod;
    dst[i] = t >= mod ? t - mod : t;
  }
}

constexpr Kernels kAvx2{"avx2", add_avx2, sub_avx2, scale_avx2, axpy_avx2};

}  // namespace

const Kernels* avx2_kernels() {
  return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

#else

const Kernels* avx2_kernels() { return nullptr; }

#endif

}  // namespace grouplog
