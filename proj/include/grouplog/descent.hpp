#pragma once

#include "grouplog/characters.hpp"

namespace grouplog {

// Cyclic unramified extension S/R of degree f with Galois group generated by
// sigma (Frobenius on the unramified layer, identity on R). Tr: S -> R is
// surjective; tau is a fixed trace-one element.
struct ExtensionCtx {
  RingPtr R;
  RingPtr S;
  unsigned f = 1;
  RElem tau;  // Tr(tau) = 1
};

// Builds S over R (R must be Zp or a power-series ring; unramified bases are
// rejected since the tensor would not stay a domain). Verifies S^Delta = R
// and trace surjectivity at construction.
ExtensionCtx make_extension(const RingPtr& R, unsigned f);

GrElem galois_act(const ExtensionCtx& E, const GrElem& x, unsigned times = 1);
RElem ext_trace(const ExtensionCtx& E, const RElem& s);       // element of S, lands in R-block
GrElem lift_to_S(const ExtensionCtx& E, const GrElem& x_over_R);
// strips the omega-blocks; NotInvariant if they are nonzero at precision k
GrElem descend_to_R(const ExtensionCtx& E, const GrElem& x_over_S, unsigned k);
bool is_elementwise_invariant(const ExtensionCtx& E, const GrElem& x, unsigned k);

// ordered product prod_delta x^delta over the fixed generator ordering
GrElem frohlich_norm_product(const ExtensionCtx& E, const GrElem& x);

// Det-level Delta-invariance at precision k (values fixed by sigma (x) id)
bool det_invariant(const ExtensionCtx& E, const GrElem& x, const CharTable& T, unsigned k);

// y in 1 + I(S[G]) with Det(prod_delta y^delta) = Det(target) on every
// irreducible character (forward-verified); target in 1 + I(R[G])
GrElem solve_norm_preimage(const ExtensionCtx& E, const GroupPtr& G, const GrElem& target,
                           unsigned n);

// u in R[G]^x with det_equal_S(u, x); x in S[G]^x with Delta-invariant Det
GrElem solve_fixed_point(const ExtensionCtx& E, const GroupPtr& G, const GrElem& x, unsigned n);

// ring construction precision the descent solvers need at forward target n
unsigned descent_working_precision(const GroupPtr& G, u64 p, unsigned n);

}  // namespace grouplog
