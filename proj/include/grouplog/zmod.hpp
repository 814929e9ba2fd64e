#pragma once

#include <cstdint>

#include "grouplog/error.hpp"

namespace grouplog {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// All coefficient arithmetic happens mod p^n with p^n below this cap, so a
// product of two reduced values fits in 64 bits.
inline constexpr u64 kModulusCap = u64(1) << 32;

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 negmod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

inline u64 mulmod(u64 a, u64 b, u64 m) { return (a * b) % m; }

u64 powmod(u64 a, u64 e, u64 m);

// p^n, checked against the modulus cap.
u64 pow_checked(u64 p, unsigned n);

// p-adic valuation of x (x already reduced mod p^cap); v(0) = cap by convention.
unsigned val_p(u64 x, u64 p, unsigned cap);

// Inverse of a unit mod p^n (p prime). Throws NonUnit when p | a.
u64 inv_mod_ppow(u64 a, u64 p, u64 m);

bool is_prime_u64(u64 p);

}  // namespace grouplog
