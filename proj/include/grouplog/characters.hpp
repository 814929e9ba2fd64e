#pragma once

#include "grouplog/cyclotomic.hpp"
#include "grouplog/padiclog.hpp"

namespace grouplog {

// Irreducible character with its monomial realization chi = Ind_H^G theta.
// theta is a linear character of H with exact root-of-unity values
// theta(H[i]) = zeta^{theta_exp[i]}, zeta of order p^e (e from exponent(G)).
struct Character {
  GroupPtr G;
  unsigned degree = 1;
  std::vector<CycInt> values;         // one per conjugacy class
  std::vector<unsigned> H;            // subgroup, sorted parent indices
  std::vector<unsigned> transversal;  // left-coset reps, identity first
  std::vector<unsigned> theta_exp;    // per element of H
  bool linear() const { return degree == 1; }
};

struct CharTable {
  GroupPtr G;
  unsigned e = 1;  // values in Q(zeta_{p^e})
  u64 pe = 2;
  std::vector<Character> irr;
};

// complete table via exhaustive monomial induction; cached per group.
// IncompleteSearch (a bug signal) if sum of squared degrees misses |G|.
const CharTable& character_table(const GroupPtr& G);

// virtual character as multiplicities in the irreducible basis
using VirtualChar = std::vector<long long>;

// psi^p chi, (psi^p chi)(g) = chi(g^p); NonIntegerDecomposition is a bug signal
VirtualChar adams_psi_p(const CharTable& T, unsigned chi);
// value vector of a virtual character on a class
CycInt virtual_value(const CharTable& T, const VirtualChar& vc, unsigned cls);

// the cyclotomic extension R (x) Z_p[zeta_{p^e}] holding determinant values
RingPtr det_ring(const RingPtr& R, unsigned e);

RElem det_value(const GrElem& x, const CharTable& T, unsigned chi, const RingPtr& dring);
// multiplicative extension to virtual characters; negative parts invert
// determinant values (never group-ring elements)
RElem det_value_virtual(const GrElem& x, const CharTable& T, const VirtualChar& vc,
                        const RingPtr& dring);
RElem det_value_matrix(const std::vector<std::vector<GrElem>>& M, const CharTable& T,
                       unsigned chi, const RingPtr& dring);

// Det-equality: agreement on every irreducible character mod p^k. This is
// the artifact-wide operational meaning of equality in Det(R[G]^x).
bool det_equal(const GrElem& x, const GrElem& y, const CharTable& T, const RingPtr& dring,
               unsigned k);

using ScaledR = Scaled<RElem>;

ScaledR sc_from(const RElem& v, unsigned eff);
ScaledR sc_add(const ScaledR& a, const ScaledR& b);
ScaledR sc_sub(const ScaledR& a, const ScaledR& b);
ScaledR sc_scale_int(const ScaledR& a, long long c);
bool sc_is_zero_at(const ScaledR& a, unsigned k);
bool sc_equal_at(const ScaledR& a, const ScaledR& b, unsigned k);

// log Det(u)(chi) = p^{-M} log(Det(u^{p^M})(chi)), M minimal with the value
// in 1 + p^2; guard digits are charged for the division
ScaledR log_det(const GrElem& u, const CharTable& T, unsigned chi, const RingPtr& dring,
                unsigned n);
ScaledR log_det_virtual(const GrElem& u, const CharTable& T, const VirtualChar& vc,
                        const RingPtr& dring, unsigned n);

// sum_K v_K chi(K) in the value ring
RElem pair_cv_char(const ClassVec& v, const CharTable& T, unsigned chi, const RingPtr& dring);

// chi(L(1+x)) = p log Det(1+x)(chi) - log Det(1+Fx)(psi^p chi), mod p^{n-2}
bool verify_lemma14(const GrElem& x, const CharTable& T, unsigned chi, const RingPtr& dring,
                    unsigned n);

// log Det(u)(chi) = 0 for every irreducible chi at the working precision
bool torsion_test(const GrElem& u, const CharTable& T, const RingPtr& dring, unsigned n);

}  // namespace grouplog
