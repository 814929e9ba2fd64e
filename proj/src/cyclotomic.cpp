#include "grouplog/cyclotomic.hpp"

#include <sstream>

namespace grouplog {

unsigned cyc_phi(u64 p, unsigned e) {
  u64 pe1 = 1;
  for (unsigned i = 0; i + 1 < e; ++i) pe1 *= p;
  return (unsigned)((p - 1) * pe1);
}

CycInt cyc_zero(u64 p, unsigned e) { return CycInt{p, e, std::vector<long long>(cyc_phi(p, e), 0)}; }

namespace {

void check_same(const CycInt& a, const CycInt& b) {
  require(a.p == b.p && a.e == b.e, Err::InvalidArgument, "cyclotomic orders differ");
}

// reduce a polynomial in zeta of arbitrary degree mod Phi_{p^e}
std::vector<long long> cyc_reduce(std::vector<long long> v, u64 p, unsigned e) {
  unsigned phi = cyc_phi(p, e);
  u64 pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  u64 pe1 = pe / p;
  // first wrap exponents mod p^e (zeta^{p^e} = 1)
  if (v.size() > pe) {
    std::vector<long long> w(pe, 0);
    for (std::size_t i = 0; i < v.size(); ++i) w[i % pe] += v[i];
    v = std::move(w);
  }
  if (v.size() < phi) v.resize(phi, 0);
  // zeta^d for d >= phi: X^phi = -(sum_{j<p-1} X^{j p^{e-1}})
  for (std::size_t d = v.size(); d-- > phi;) {
    long long cd = v[d];
    if (cd == 0) continue;
    v[d] = 0;
    for (u64 j = 0; j + 1 < p; ++j) v[d - phi + (std::size_t)(j * pe1)] -= cd;
  }
  v.resize(phi);
  return v;
}

}  // namespace

CycInt cyc_int(u64 p, unsigned e, long long value) {
  CycInt r = cyc_zero(p, e);
  r.c[0] = value;
  return r;
}

CycInt cyc_zeta_pow(u64 p, unsigned e, u64 k) {
  u64 pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  k %= pe;
  std::vector<long long> v(k + 1, 0);
  v[k] = 1;
  return CycInt{p, e, cyc_reduce(std::move(v), p, e)};
}

CycInt cyc_add(const CycInt& a, const CycInt& b) {
  check_same(a, b);
  CycInt r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

CycInt cyc_sub(const CycInt& a, const CycInt& b) {
  check_same(a, b);
  CycInt r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

CycInt cyc_neg(const CycInt& a) {
  CycInt r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

CycInt cyc_mul(const CycInt& a, const CycInt& b) {
  check_same(a, b);
  std::vector<long long> v(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  }
  return CycInt{a.p, a.e, cyc_reduce(std::move(v), a.p, a.e)};
}

bool cyc_is_zero(const CycInt& a) {
  for (long long x : a.c)
    if (x != 0) return false;
  return true;
}

bool cyc_is_int(const CycInt& a, long long* value) {
  for (std::size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return false;
  if (value) *value = a.c[0];
  return true;
}

int cyc_compare(const CycInt& a, const CycInt& b) {
  check_same(a, b);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
  }
  return 0;
}

std::string cyc_to_string(const CycInt& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    long long v = a.c[i];
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    long long av = v < 0 ? -v : v;
    if (av != 1 || i == 0) os << av;
    if (i > 0) {
      if (av != 1) os << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace grouplog
