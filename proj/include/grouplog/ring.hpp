#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "grouplog/rng.hpp"
#include "grouplog/zmod.hpp"

namespace grouplog {

// Coefficient rings are towers: a Z/p^n leaf, extended by monic defining
// polynomials with integer coefficients. Every admissible kind fits:
//
//   Zp                  leaf
//   unram:f             leaf + unramified layer (lexicographically least
//                       irreducible monic of degree f over F_p, lifted)
//   powser:D            leaf + X^D layer (truncated power series in T)
//   cyc:e@base          base + cyclotomic layer Phi_{p^e} (the value ring
//                       R (x) Z_p[zeta] for determinants)
//   descent extension   base + unramified layer (the ring S of a cyclic
//                       unramified Galois extension S/R)
//
// Elements are flat coordinate vectors over Z/p^k, block-major in the top
// variable. Each value carries its own precision k <= construction precision;
// arithmetic happens at the minimum precision of its inputs.

enum class RingKind { Zp, Unramified, PowerSeries, CyclotomicTensor };

struct RingSpec {
  u64 p = 2;
  RingKind kind = RingKind::Zp;
  unsigned param = 0;  // f (Unramified), D (PowerSeries), e (CyclotomicTensor)
  std::shared_ptr<RingSpec> base;  // CyclotomicTensor only
  unsigned precision = 1;
};

// Grammar: `Zp`, `unram:<f>`, `powser:<D>`, `cyc:<e>@<base>`, case-insensitive.
RingSpec parse_ring_spec(const std::string& text, u64 p, unsigned precision);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct RElem {
  RingPtr ring;
  unsigned prec = 0;
  std::vector<u64> c;  // ring->rank() coords, reduced mod p^prec
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  enum class Layer { Leaf, Unram, Power, Cyclo };

  u64 p() const { return p_; }
  unsigned precision() const { return prec_; }
  u64 modulus() const { return mod_; }
  u64 modulus_at(unsigned k) const;
  Layer layer() const { return layer_; }
  const RingPtr& base() const { return base_; }
  unsigned degree() const { return deg_; }
  unsigned rank() const { return rank_; }
  unsigned cyc_order() const { return cyc_order_; }  // p^e for a Cyclo layer
  const std::string& spec_string() const { return spec_; }
  const std::vector<u64>& defining_poly() const { return defpoly_; }

  // --- span-level arithmetic (length rank(), values reduced mod m = p^k) ---
  void add(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const;
  void sub(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const;
  void neg(std::span<u64> dst, std::span<const u64> a, u64 m) const;
  void scale(std::span<u64> dst, std::span<const u64> a, u64 c, u64 m) const;
  void mul(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const;
  void mul_acc(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const;
  void frobenius_span(std::span<u64> dst, std::span<const u64> a, u64 m) const;
  // Galois action on the unique unramified layer, fixing base coefficients.
  void sigma_span(std::span<u64> dst, std::span<const u64> a, u64 m) const;
  bool invert_span(std::span<u64> dst, std::span<const u64> a, u64 m) const;
  unsigned valuation_span(std::span<const u64> a, unsigned cap) const;
  static bool is_zero(std::span<const u64> a);

  // --- value-level API ---
  RElem zero(unsigned prec) const;
  RElem one(unsigned prec) const;
  RElem from_int(long long v, unsigned prec) const;
  RElem from_scalar(u64 v, unsigned prec) const;  // v mod p^prec
  RElem var(unsigned prec) const;                 // the top-layer variable
  RElem random(Rng& rng, unsigned prec) const;
  RElem random_unit(Rng& rng, unsigned prec) const;

  bool has_unram_layer() const;
  bool has_power_layer() const;
  bool has_cyclo_layer() const;
  std::string var_name() const;  // "w", "T", "z" per layer

  static RingPtr leaf(u64 p, unsigned prec);
  static RingPtr unramified(u64 p, unsigned f, unsigned prec);
  static RingPtr power_series(u64 p, unsigned D, unsigned prec);
  static RingPtr cyclotomic_extension(const RingPtr& base, unsigned e);
  static RingPtr unramified_extension(const RingPtr& base, unsigned f);

 private:
  friend RingPtr make_ring(const RingSpec& spec);

  u64 p_ = 2;
  unsigned prec_ = 1;
  u64 mod_ = 2;
  Layer layer_ = Layer::Leaf;
  RingPtr base_;
  unsigned deg_ = 1;
  unsigned rank_ = 1;
  unsigned cyc_order_ = 0;
  std::vector<u64> defpoly_;   // non-leading coefficients, scalar mod p^prec
  std::vector<u64> frob_var_;  // coords of F(var) for an Unram layer
  std::string spec_;

  void residue_project(std::span<const u64> a, std::span<u64> out) const;
  void residue_lift(std::span<const u64> in, std::span<u64> out, u64 m) const;
  unsigned residue_degree() const;
  std::vector<u64> residue_min_poly() const;  // mod p, non-leading coeffs
  void compute_frob_root();
};

RingPtr make_ring(const RingSpec& spec);

// Same tower rebuilt at a different construction precision.
RingPtr ring_at_precision(const RingPtr& ring, unsigned prec);

// --- RElem operations (precision = min of inputs) ---
RElem radd(const RElem& a, const RElem& b);
RElem rsub(const RElem& a, const RElem& b);
RElem rneg(const RElem& a);
RElem rmul(const RElem& a, const RElem& b);
RElem rpow(const RElem& a, u64 e);
RElem frobenius(const RElem& a);
RElem galois_sigma(const RElem& a, unsigned times = 1);
RElem invert(const RElem& a);
// Precision truncation; raising precision is refused (PrecisionRaise).
RElem reduce_precision(const RElem& a, unsigned new_n);
unsigned valuation(const RElem& a);
bool requal(const RElem& a, const RElem& b);          // at min precision
bool requal_at(const RElem& a, const RElem& b, unsigned k);
bool ris_zero(const RElem& a);

// Move an element into an extension built over its own ring (block 0).
RElem embed(const RElem& a, const RingPtr& target);

std::string to_string(const RElem& a);

}  // namespace grouplog
