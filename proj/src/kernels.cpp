#include "grouplog/kernels.hpp"

#include <cstdlib>

namespace grouplog {

namespace {

using std::size_t;
using std::uint64_t;

void add_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n, uint64_t m) {
  for (size_t i = 0; i < n; ++i) {
    uint64_t s = a[i] + b[i];
    dst[i] = s >= m ? s - m : s;
  }
}

void sub_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n, uint64_t m) {
  for (size_t i = 0; i < n; ++i) {
    uint64_t x = a[i], y = b[i];
    dst[i] = x >= y ? x - y : x + m - y;
  }
}

void scale_scalar(uint64_t* dst, const uint64_t* a, size_t n, uint64_t c, uint64_t m) {
  for (size_t i = 0; i < n; ++i) dst[i] = (a[i] * c) % m;
}

void axpy_scalar(uint64_t* dst, const uint64_t* a, size_t n, uint64_t c, uint64_t m) {
  for (size_t i = 0; i < n; ++i) {
    uint64_t t = dst[i] + (a[i] * c) % m;
    dst[i] = t >= m ? t - m : t;
  }
}

constexpr Kernels kScalar{"scalar", add_scalar, sub_scalar, scale_scalar, axpy_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& kernels() {
  static const Kernels& k = []() -> const Kernels& {
    if (std::getenv("GROUPLOG_NO_SIMD")) return kScalar;
    if (const Kernels* simd = avx2_kernels()) return *simd;
    return kScalar;
  }();
  return k;
}

}  // namespace grouplog
