#pragma once

#include <vector>

#include "grouplog/lattice.hpp"
#include "grouplog/pgroup.hpp"
#include "grouplog/ring.hpp"

namespace grouplog {

// Element of R[G]: flat coefficient block per group element, reduced mod
// p^prec. Element of R[C_G]: one block per conjugacy class.
struct GrElem {
  GroupPtr G;
  RingPtr R;
  unsigned prec = 0;
  std::vector<u64> c;  // |G| * rank

  std::span<u64> blk(unsigned g) { return std::span<u64>(c).subspan((std::size_t)g * R->rank(), R->rank()); }
  std::span<const u64> blk(unsigned g) const {
    return std::span<const u64>(c).subspan((std::size_t)g * R->rank(), R->rank());
  }
};

struct ClassVec {
  GroupPtr G;
  RingPtr R;
  unsigned prec = 0;
  std::vector<u64> c;  // |C_G| * rank

  std::span<u64> blk(unsigned k) { return std::span<u64>(c).subspan((std::size_t)k * R->rank(), R->rank()); }
  std::span<const u64> blk(unsigned k) const {
    return std::span<const u64>(c).subspan((std::size_t)k * R->rank(), R->rank());
  }
};

GrElem gr_zero(const GroupPtr& G, const RingPtr& R, unsigned prec);
GrElem gr_one(const GroupPtr& G, const RingPtr& R, unsigned prec);
GrElem gr_group_elem(const GroupPtr& G, const RingPtr& R, unsigned g, unsigned prec);
GrElem gr_scalar(const GroupPtr& G, const RElem& r);
GrElem gr_from_int(const GroupPtr& G, const RingPtr& R, long long v, unsigned prec);

GrElem gr_add(const GrElem& a, const GrElem& b);
GrElem gr_sub(const GrElem& a, const GrElem& b);
GrElem gr_neg(const GrElem& a);
GrElem gr_mul(const GrElem& a, const GrElem& b);
GrElem gr_scale(const GrElem& a, const RElem& r);
GrElem gr_scale_scalar(const GrElem& a, u64 s);
GrElem gr_pow(const GrElem& a, u64 e);
GrElem gr_reduce_precision(const GrElem& a, unsigned k);
bool gr_equal_at(const GrElem& a, const GrElem& b, unsigned k);
bool gr_equal(const GrElem& a, const GrElem& b);
bool gr_is_zero(const GrElem& a);
unsigned gr_valuation(const GrElem& a);
// exact division by p^j; requires valuation >= j, result precision drops by j
GrElem gr_divide_p(const GrElem& a, unsigned j);

RElem augment(const GrElem& x);
GrElem quotient_map(const GrElem& x, const GroupHom& hom, const RingPtr& R);
GrElem apply_coeff_frobenius(const GrElem& x);  // F on coefficients, g fixed

// two-sided inverse via augmentation-unit bootstrap and Newton refinement;
// for p-groups x is a unit iff augment(x) is a unit of R
GrElem invert_unit(const GrElem& x);

ClassVec phi(const GrElem& x);
GrElem psi(const GrElem& x);         // Psi(r g) = F(r) g^p
ClassVec psi_bar(const ClassVec& v);  // induced on classes

ClassVec cv_zero(const GroupPtr& G, const RingPtr& R, unsigned prec);
ClassVec cv_add(const ClassVec& a, const ClassVec& b);
ClassVec cv_sub(const ClassVec& a, const ClassVec& b);
ClassVec cv_scale_scalar(const ClassVec& a, u64 s);
ClassVec cv_reduce_precision(const ClassVec& a, unsigned k);
bool cv_equal_at(const ClassVec& a, const ClassVec& b, unsigned k);
bool cv_is_zero(const ClassVec& a);
unsigned cv_valuation(const ClassVec& a);
ClassVec cv_divide_p(const ClassVec& a, unsigned j);
// multiply by a central group element (acts on classes by translation)
ClassVec cv_mul_central(const ClassVec& a, unsigned c);
// push a class vector along a quotient hom (classes map to classes)
ClassVec cv_push(const ClassVec& v, const GroupHom& hom, const RingPtr& R);
RElem cv_coeff_sum(const ClassVec& v);

// ---- lattices of ideals (ambient: |G|*rank or |C_G|*rank, modulus p^k) ----

enum class IdealKind {
  I,              // augmentation ideal, generators g-1
  A,              // ker(R[G] -> R[G^ab]), generators g([h,k]-1)
  OneMinusC,      // (1-c) R[G]
  OneMinusCI,     // (1-c) I(R[G])
  ISquared,       // I^2
  PhiI,
  PhiA,
  PhiOneMinusC,
  PhiOneMinusCI,
  PhiOneMinusCSq,  // phi((1-c)^2 R[G])
};

Lattice ideal_lattice(const GroupPtr& G, const RingPtr& R, IdealKind kind, unsigned k,
                      unsigned c = 0);

// I^m as a lattice (m >= 1), via module products of Howell rows
Lattice ideal_power_lattice(const GroupPtr& G, const RingPtr& R, unsigned mpow, unsigned k);

// module product span{a*b} of two lattices of R[G]-elements
Lattice lattice_product(const Lattice& A, const Lattice& B, const GroupPtr& G, const RingPtr& R);

Lattice phi_lattice(const Lattice& L, const GroupPtr& G, const RingPtr& R);

std::vector<u64> flat_at(const GrElem& x, unsigned k);   // coords mod p^k
std::vector<u64> flat_at(const ClassVec& x, unsigned k);
GrElem gr_from_flat(const GroupPtr& G, const RingPtr& R, const std::vector<u64>& c, unsigned k);
ClassVec cv_from_flat(const GroupPtr& G, const RingPtr& R, const std::vector<u64>& c, unsigned k);

// random sampling
GrElem gr_random(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec);
GrElem gr_random_I(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec);
GrElem gr_random_I2(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec);
GrElem gr_random_A(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec);
GrElem gr_random_unit(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec);

// Gaussian elimination of an invertible matrix over R[G] to one unit with the
// same determinant on every character (elementary operations only)
GrElem reduce_matrix_to_unit(std::vector<std::vector<GrElem>> M);

}  // namespace grouplog
