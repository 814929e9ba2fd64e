#include "grouplog/zmod.hpp"

namespace grouplog {

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 pow_checked(u64 p, unsigned n) {
  u64 r = 1;
  for (unsigned i = 0; i < n; ++i) {
    require(r < kModulusCap / p, Err::InvalidArgument,
            "modulus p^n exceeds the 2^32 working cap");
    r *= p;
  }
  return r;
}

unsigned val_p(u64 x, u64 p, unsigned cap) {
  if (x == 0) return cap;
  unsigned v = 0;
  while (v < cap && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

u64 inv_mod_ppow(u64 a, u64 p, u64 m) {
  a %= m;
  require(a % p != 0, Err::NonUnit, "not a unit mod p^n");
  // inverse mod p by Fermat, then Newton lifting y <- y(2 - ay)
  u64 y = powmod(a % p, p - 2, p);
  if (p == 2) y = 1;
  while (true) {
    u64 e = mulmod(a, y, m);
    if (e == 1) return y;
    y = mulmod(y, submod(2 % m, e, m), m);
  }
}

bool is_prime_u64(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace grouplog
