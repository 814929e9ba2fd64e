#pragma once

#include <cstddef>
#include <cstdint>

namespace grouplog {

// Vector kernels over Z/m, m < 2^32. Inputs are reduced mod m; outputs are
// reduced mod m. These are the inner loops of group-ring coefficient
// arithmetic and of Howell-form row operations.
//
// A scalar reference implementation always exists; wider variants (AVX2) are
// selected at runtime and are equivalence-tested against the reference.
struct Kernels {
  const char* name;
  // dst[i] = (a[i] + b[i]) mod m
  void (*add)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t n, std::uint64_t m);
  // dst[i] = (a[i] - b[i]) mod m
  void (*sub)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t n, std::uint64_t m);
  // dst[i] = (c * a[i]) mod m
  void (*scale)(std::uint64_t* dst, const std::uint64_t* a, std::size_t n,
                std::uint64_t c, std::uint64_t m);
  // dst[i] = (dst[i] + c * a[i]) mod m
  void (*axpy)(std::uint64_t* dst, const std::uint64_t* a, std::size_t n,
               std::uint64_t c, std::uint64_t m);
};

const Kernels& scalar_kernels();

// AVX2 variant, or nullptr when the CPU does not support it.
const Kernels* avx2_kernels();

// The runtime-selected implementation.
const Kernels& kernels();

}  // namespace grouplog
