#pragma once

#include <optional>

#include "grouplog/groupring.hpp"

namespace grouplog {

// p^{-denom} * v, trusted mod p^{eff}. The only representation of
// field-of-fractions values in the artifact.
template <class T>
struct Scaled {
  T v;
  unsigned denom = 0;
  unsigned eff = 0;
};
using ScaledGr = Scaled<GrElem>;
using ScaledCv = Scaled<ClassVec>;

// least N with I(F_p[G])^N = 0, by iterated lattice products over F_p
unsigned nilpotency_index(const FiniteGroup& G, u64 p);
unsigned nilpotency_index(const GroupPtr& G, const RingPtr& R);

// guard digits a series at target precision n needs (max denominator exponent)
unsigned plog_guard(unsigned N, u64 p, unsigned n);
// input precision plog/pexp need for a target-n result
unsigned plog_required_precision(unsigned N, u64 p, unsigned n);
// with a known lower bound vx >= 1 on the coefficient valuation of 1-u
unsigned plog_required_precision_val(unsigned N, u64 p, unsigned n, unsigned vx);
unsigned pexp_required_precision(u64 p, unsigned n);
// ring construction precision that supports group_log/log_det work at target n
unsigned working_precision(const GroupPtr& G, u64 p, unsigned n);

// log u = -sum (1-u)^k / k for u in 1 + (I + pR[G]); payload p^denom * log u
ScaledGr plog(const GrElem& u, unsigned n);

// exp a = sum a^k / k! for a with coefficient valuation >= 2
GrElem pexp(const GrElem& a, unsigned n);

// the group logarithm L(u) = (p - Psi_bar) phi(log u), integral by
// construction (denominators must cancel, else IntegralityViolation)
ClassVec group_log(const GrElem& u, unsigned n);

// same map on the full one-unit domain 1 + (I + pR[G]); the image is only
// guaranteed integral, not inside p phi(I)
ClassVec group_log_unit(const GrElem& u, unsigned n);

// L(u)/p, exact; lands in phi(I)
ClassVec nu_over_p(const GrElem& u, unsigned n);

// solve L(1+b) = target for b in (1-c) R[G], c a central commutator of order
// p; successive approximation down the (1-c) I^m filtration
GrElem solve_one_minus_c_preimage(const ClassVec& target, unsigned c, unsigned n);

// solve L(1+x) = target for x in A(R[G]); recursion through G/<c>
GrElem solve_A_preimage(const GroupPtr& G, const RingPtr& R, const ClassVec& target, unsigned n);

// ---- cotangent space of R[G] at the origin, G abelian (section with the
// F(g) = g^p convention; the switch is explicit, never implicit) ----
struct CotangentModule {
  GroupPtr G;   // abelian
  RingPtr R;
  unsigned prec = 0;
  std::vector<unsigned> basis;        // abelian basis elements g_i
  std::vector<unsigned> basis_order;  // p^{m_i}
  std::vector<std::vector<unsigned>> coords;  // per element, basis coordinates

  unsigned blocks() const { return (unsigned)basis.size(); }
  unsigned dim() const { return blocks() * R->rank(); }

  // d: I(R[G]) -> T*, dj with j = sum_{g != 1} j_g (g - 1)
  std::vector<u64> d(const GrElem& j) const;
  // F on T*: F_R on coefficients, d(g_i - 1) fixed; this uses
  // g^p - 1 = p(g-1) mod I^2, so (1/p) d(F(g-1)) = d(g-1)
  std::vector<u64> apply_F(const std::vector<u64>& v) const;
  std::vector<u64> reduce(std::vector<u64> v) const;  // block i mod p^{min(m_i, prec)}
  bool equal(const std::vector<u64>& a, const std::vector<u64>& b, unsigned k) const;

  // invariant factors of T*/(1-F)T*
  std::vector<unsigned> coker_one_minus_F() const;
};

CotangentModule cotangent(const GroupPtr& G, const RingPtr& R, unsigned n);

// independent oracle: R/(1-F)R tensor G^ab = (+)_i R/((1-F)R + p^{m_i} R),
// computed blockwise from the matrix of 1 - F_R alone
std::vector<unsigned> coker_oracle(const GroupPtr& G, const RingPtr& R, unsigned n);

// d(p^{-1} L(1+j)) = (1-F) dj in T*, compared mod p^{n-2}
bool differential_check(const GrElem& j, const CotangentModule& T, unsigned n);

// p phi((1-c)R[G]) / L(1+(1-c)R[G]) for central non-commutator c of order p;
// returns invariant factor exponents
std::vector<unsigned> lemma25_quotient(const GroupPtr& G, const RingPtr& R, unsigned c,
                                       unsigned n);
// closed form R/((1-F)R + pR) as invariant factors (all exponent 1)
std::vector<unsigned> lemma25_oracle(const RingPtr& R);

}  // namespace grouplog
