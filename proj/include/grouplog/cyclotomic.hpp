#pragma once

#include <cstdint>
#include <vector>

#include "grouplog/zmod.hpp"

namespace grouplog {

// Exact element of Z[zeta_{p^e}], reduced mod Phi_{p^e}. No precision: these
// carry character values, and orthogonality must be exact.
struct CycInt {
  u64 p = 2;
  unsigned e = 1;           // root order p^e
  std::vector<long long> c;  // length phi(p^e)

  bool operator==(const CycInt&) const = default;
};

unsigned cyc_phi(u64 p, unsigned e);
CycInt cyc_zero(u64 p, unsigned e);
CycInt cyc_int(u64 p, unsigned e, long long v);
CycInt cyc_zeta_pow(u64 p, unsigned e, u64 k);
CycInt cyc_add(const CycInt& a, const CycInt& b);
CycInt cyc_sub(const CycInt& a, const CycInt& b);
CycInt cyc_neg(const CycInt& a);
CycInt cyc_mul(const CycInt& a, const CycInt& b);
bool cyc_is_zero(const CycInt& a);
// constant term if the value is a rational integer
bool cyc_is_int(const CycInt& a, long long* value = nullptr);
// lexicographic total order on coefficient vectors (for stable table sort)
int cyc_compare(const CycInt& a, const CycInt& b);

std::string cyc_to_string(const CycInt& a);

}  // namespace grouplog
