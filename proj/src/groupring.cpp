#include "grouplog/groupring.hpp"

#include <algorithm>

#include "grouplog/kernels.hpp"

namespace grouplog {

namespace {

void check_compat(const GrElem& a, const GrElem& b) {
  require(a.G.get() == b.G.get(), Err::GroupMismatch, "elements over different groups");
  require(a.R.get() == b.R.get(), Err::RingMismatch, "elements over different rings");
}

void check_compat(const ClassVec& a, const ClassVec& b) {
  require(a.G.get() == b.G.get(), Err::GroupMismatch, "class vectors over different groups");
  require(a.R.get() == b.R.get(), Err::RingMismatch, "class vectors over different rings");
}

std::vector<u64> reduced_coords(const std::vector<u64>& c, u64 m) {
  std::vector<u64> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] % m;
  return out;
}

}  // namespace

GrElem gr_zero(const GroupPtr& G, const RingPtr& R, unsigned prec) {
  return GrElem{G, R, prec, std::vector<u64>((std::size_t)G->order() * R->rank(), 0)};
}

GrElem gr_one(const GroupPtr& G, const RingPtr& R, unsigned prec) {
  GrElem x = gr_zero(G, R, prec);
  x.c[0] = 1 % R->modulus_at(prec);
  return x;
}

GrElem gr_group_elem(const GroupPtr& G, const RingPtr& R, unsigned g, unsigned prec) {
  GrElem x = gr_zero(G, R, prec);
  x.c[(std::size_t)g * R->rank()] = 1 % R->modulus_at(prec);
  return x;
}

GrElem gr_scalar(const GroupPtr& G, const RElem& r) {
  GrElem x = gr_zero(G, r.ring, r.prec);
  std::copy(r.c.begin(), r.c.end(), x.c.begin());
  return x;
}

GrElem gr_from_int(const GroupPtr& G, const RingPtr& R, long long v, unsigned prec) {
  return gr_scalar(G, R->from_int(v, prec));
}

GrElem gr_add(const GrElem& a, const GrElem& b) {
  check_compat(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.R->modulus_at(k);
  GrElem r = gr_zero(a.G, a.R, k);
  auto ca = reduced_coords(a.c, m), cb = reduced_coords(b.c, m);
  kernels().add(r.c.data(), ca.data(), cb.data(), r.c.size(), m);
  return r;
}

GrElem gr_sub(const GrElem& a, const GrElem& b) {
  check_compat(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.R->modulus_at(k);
  GrElem r = gr_zero(a.G, a.R, k);
  auto ca = reduced_coords(a.c, m), cb = reduced_coords(b.c, m);
  kernels().sub(r.c.data(), ca.data(), cb.data(), r.c.size(), m);
  return r;
}

GrElem gr_neg(const GrElem& a) {
  u64 m = a.R->modulus_at(a.prec);
  GrElem r = gr_zero(a.G, a.R, a.prec);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = negmod(a.c[i] % m, m);
  return r;
}

GrElem gr_mul(const GrElem& a, const GrElem& b) {
  check_compat(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.R->modulus_at(k);
  const FiniteGroup& G = *a.G;
  const Ring& R = *a.R;
  GrElem out = gr_zero(a.G, a.R, k);
  auto ca = reduced_coords(a.c, m), cb = reduced_coords(b.c, m);
  GrElem av{a.G, a.R, k, std::move(ca)};
  GrElem bv{a.G, a.R, k, std::move(cb)};
  for (unsigned i = 0; i < G.order(); ++i) {
    auto ai = av.blk(i);
    if (Ring::is_zero(ai)) continue;
    for (unsigned j = 0; j < G.order(); ++j) {
      auto bj = bv.blk(j);
      if (Ring::is_zero(bj)) continue;
      R.mul_acc(out.blk(G.mul(i, j)), ai, bj, m);
    }
  }
  return out;
}

GrElem gr_scale(const GrElem& a, const RElem& r) {
  require(a.R.get() == r.ring.get(), Err::RingMismatch, "scalar from a different ring");
  unsigned k = std::min(a.prec, r.prec);
  u64 m = a.R->modulus_at(k);
  GrElem out = gr_zero(a.G, a.R, k);
  std::vector<u64> rc = reduced_coords(r.c, m);
  for (unsigned g = 0; g < a.G->order(); ++g) {
    auto blk = a.blk(g);
    if (Ring::is_zero(blk)) continue;
    std::vector<u64> rb = reduced_coords(std::vector<u64>(blk.begin(), blk.end()), m);
    a.R->mul_acc(out.blk(g), rb, rc, m);
  }
  return out;
}

GrElem gr_scale_scalar(const GrElem& a, u64 s) {
  u64 m = a.R->modulus_at(a.prec);
  GrElem out = gr_zero(a.G, a.R, a.prec);
  kernels().scale(out.c.data(), a.c.data(), a.c.size(), s % m, m);
  return out;
}

GrElem gr_pow(const GrElem& a, u64 e) {
  GrElem acc = gr_one(a.G, a.R, a.prec);
  GrElem v = a;
  while (e) {
    if (e & 1) acc = gr_mul(acc, v);
    if (e >>= 1) v = gr_mul(v, v);
  }
  return acc;
}

GrElem gr_reduce_precision(const GrElem& a, unsigned k) {
  require(k <= a.prec, Err::PrecisionRaise, "cannot raise precision");
  GrElem r = a;
  r.prec = k;
  u64 m = a.R->modulus_at(k);
  for (u64& v : r.c) v %= m;
  return r;
}

bool gr_equal_at(const GrElem& a, const GrElem& b, unsigned k) {
  check_compat(a, b);
  require(k <= a.prec && k <= b.prec, Err::PrecisionRaise, "comparison beyond precision");
  u64 m = a.R->modulus_at(k);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] % m != b.c[i] % m) return false;
  return true;
}

bool gr_equal(const GrElem& a, const GrElem& b) {
  return gr_equal_at(a, b, std::min(a.prec, b.prec));
}

bool gr_is_zero(const GrElem& a) { return Ring::is_zero(a.c); }

unsigned gr_valuation(const GrElem& a) { return a.R->valuation_span(a.c, a.prec); }

GrElem gr_divide_p(const GrElem& a, unsigned j) {
  require(gr_valuation(a) >= j, Err::IntegralityViolation,
          "exact division by p^j requires valuation >= j");
  require(a.prec > j, Err::PrecisionStarved, "division eats all precision");
  u64 pj = 1;
  for (unsigned t = 0; t < j; ++t) pj *= a.R->p();
  GrElem r = gr_zero(a.G, a.R, a.prec - j);
  u64 m = a.R->modulus_at(a.prec - j);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = (a.c[i] / pj) % m;
  return r;
}

RElem augment(const GrElem& x) {
  RElem s = x.R->zero(x.prec);
  u64 m = x.R->modulus_at(x.prec);
  for (unsigned g = 0; g < x.G->order(); ++g)
    kernels().add(s.c.data(), s.c.data(), x.blk(g).data(), x.R->rank(), m);
  return s;
}

GrElem quotient_map(const GrElem& x, const GroupHom& hom, const RingPtr& R) {
  require(hom.source.get() == x.G.get(), Err::HomMismatch, "hom source mismatch");
  GrElem out = gr_zero(hom.target, R, x.prec);
  u64 m = R->modulus_at(x.prec);
  for (unsigned g = 0; g < x.G->order(); ++g)
    kernels().add(out.blk(hom.images[g]).data(), out.blk(hom.images[g]).data(), x.blk(g).data(),
                  R->rank(), m);
  return out;
}

GrElem apply_coeff_frobenius(const GrElem& x) {
  GrElem out = gr_zero(x.G, x.R, x.prec);
  u64 m = x.R->modulus_at(x.prec);
  for (unsigned g = 0; g < x.G->order(); ++g) x.R->frobenius_span(out.blk(g), x.blk(g), m);
  return out;
}

GrElem invert_unit(const GrElem& x) {
  RElem a = augment(x);
  u64 m = x.R->modulus_at(x.prec);
  RElem ainv = x.R->zero(x.prec);
  require(x.R->invert_span(ainv.c, a.c, m), Err::NonUnit,
          "augmentation is not a unit, element not invertible");
  GrElem y = gr_scalar(x.G, ainv);
  GrElem one = gr_one(x.G, x.R, x.prec);
  for (int iter = 0; iter < 64; ++iter) {
    GrElem e = gr_mul(x, y);
    if (gr_equal(e, one)) {
      require(gr_equal(gr_mul(y, x), one), Err::Internal, "one-sided inverse");
      return y;
    }
    y = gr_add(y, gr_mul(y, gr_sub(one, e)));
  }
  fail(Err::Internal, "unit inversion did not converge");
}

ClassVec phi(const GrElem& x) {
  ClassVec v{x.G, x.R, x.prec,
             std::vector<u64>((std::size_t)x.G->num_classes() * x.R->rank(), 0)};
  u64 m = x.R->modulus_at(x.prec);
  for (unsigned g = 0; g < x.G->order(); ++g) {
    unsigned k = x.G->class_of(g);
    kernels().add(v.blk(k).data(), v.blk(k).data(), x.blk(g).data(), x.R->rank(), m);
  }
  return v;
}

GrElem psi(const GrElem& x) {
  GrElem out = gr_zero(x.G, x.R, x.prec);
  u64 m = x.R->modulus_at(x.prec);
  std::vector<u64> fb(x.R->rank());
  for (unsigned g = 0; g < x.G->order(); ++g) {
    x.R->frobenius_span(fb, x.blk(g), m);
    unsigned gp = x.G->pow(g, (long long)x.G->p());
    kernels().add(out.blk(gp).data(), out.blk(gp).data(), fb.data(), x.R->rank(), m);
  }
  return out;
}

ClassVec psi_bar(const ClassVec& v) {
  ClassVec out{v.G, v.R, v.prec, std::vector<u64>(v.c.size(), 0)};
  u64 m = v.R->modulus_at(v.prec);
  std::vector<u64> fb(v.R->rank());
  for (unsigned k = 0; k < v.G->num_classes(); ++k) {
    v.R->frobenius_span(fb, v.blk(k), m);
    unsigned kp = v.G->class_pow_p(k);
    kernels().add(out.blk(kp).data(), out.blk(kp).data(), fb.data(), v.R->rank(), m);
  }
  return out;
}

ClassVec cv_zero(const GroupPtr& G, const RingPtr& R, unsigned prec) {
  return ClassVec{G, R, prec, std::vector<u64>((std::size_t)G->num_classes() * R->rank(), 0)};
}

ClassVec cv_add(const ClassVec& a, const ClassVec& b) {
  check_compat(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.R->modulus_at(k);
  ClassVec r = cv_zero(a.G, a.R, k);
  auto ca = reduced_coords(a.c, m), cb = reduced_coords(b.c, m);
  kernels().add(r.c.data(), ca.data(), cb.data(), r.c.size(), m);
  return r;
}

ClassVec cv_sub(const ClassVec& a, const ClassVec& b) {
  check_compat(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.R->modulus_at(k);
  ClassVec r = cv_zero(a.G, a.R, k);
  auto ca = reduced_coords(a.c, m), cb = reduced_coords(b.c, m);
  kernels().sub(r.c.data(), ca.data(), cb.data(), r.c.size(), m);
  return r;
}

ClassVec cv_scale_scalar(const ClassVec& a, u64 s) {
  u64 m = a.R->modulus_at(a.prec);
  ClassVec r = cv_zero(a.G, a.R, a.prec);
  kernels().scale(r.c.data(), a.c.data(), a.c.size(), s % m, m);
  return r;
}

ClassVec cv_reduce_precision(const ClassVec& a, unsigned k) {
  require(k <= a.prec, Err::PrecisionRaise, "cannot raise precision");
  ClassVec r = a;
  r.prec = k;
  u64 m = a.R->modulus_at(k);
  for (u64& v : r.c) v %= m;
  return r;
}

bool cv_equal_at(const ClassVec& a, const ClassVec& b, unsigned k) {
  check_compat(a, b);
  require(k <= a.prec && k <= b.prec, Err::PrecisionRaise, "comparison beyond precision");
  u64 m = a.R->modulus_at(k);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] % m != b.c[i] % m) return false;
  return true;
}

bool cv_is_zero(const ClassVec& a) { return Ring::is_zero(a.c); }

unsigned cv_valuation(const ClassVec& a) { return a.R->valuation_span(a.c, a.prec); }

ClassVec cv_divide_p(const ClassVec& a, unsigned j) {
  require(cv_valuation(a) >= j, Err::IntegralityViolation,
          "exact division by p^j requires valuation >= j");
  require(a.prec > j, Err::PrecisionStarved, "division eats all precision");
  u64 pj = 1;
  for (unsigned t = 0; t < j; ++t) pj *= a.R->p();
  ClassVec r = cv_zero(a.G, a.R, a.prec - j);
  u64 m = a.R->modulus_at(a.prec - j);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = (a.c[i] / pj) % m;
  return r;
}

ClassVec cv_mul_central(const ClassVec& a, unsigned c) {
  const FiniteGroup& G = *a.G;
  for (unsigned h = 0; h < G.order(); ++h)
    require(G.mul(c, h) == G.mul(h, c), Err::NotCentral, "multiplier must be central");
  ClassVec out = cv_zero(a.G, a.R, a.prec);
  u64 m = a.R->modulus_at(a.prec);
  for (unsigned k = 0; k < G.num_classes(); ++k) {
    unsigned kk = G.class_of(G.mul(c, G.class_rep(k)));
    kernels().add(out.blk(kk).data(), out.blk(kk).data(), a.blk(k).data(), a.R->rank(), m);
  }
  return out;
}

ClassVec cv_push(const ClassVec& v, const GroupHom& hom, const RingPtr& R) {
  require(hom.source.get() == v.G.get(), Err::HomMismatch, "hom source mismatch");
  ClassVec out = cv_zero(hom.target, R, v.prec);
  u64 m = R->modulus_at(v.prec);
  for (unsigned k = 0; k < v.G->num_classes(); ++k) {
    unsigned kk = hom.target->class_of(hom.images[v.G->class_rep(k)]);
    kernels().add(out.blk(kk).data(), out.blk(kk).data(), v.blk(k).data(), R->rank(), m);
  }
  return out;
}

RElem cv_coeff_sum(const ClassVec& v) {
  RElem s = v.R->zero(v.prec);
  u64 m = v.R->modulus_at(v.prec);
  for (unsigned k = 0; k < v.G->num_classes(); ++k)
    kernels().add(s.c.data(), s.c.data(), v.blk(k).data(), v.R->rank(), m);
  return s;
}

// ---------------- lattices ----------------

std::vector<u64> flat_at(const GrElem& x, unsigned k) {
  return reduced_coords(x.c, x.R->modulus_at(k));
}

std::vector<u64> flat_at(const ClassVec& x, unsigned k) {
  return reduced_coords(x.c, x.R->modulus_at(k));
}

GrElem gr_from_flat(const GroupPtr& G, const RingPtr& R, const std::vector<u64>& c, unsigned k) {
  GrElem x = gr_zero(G, R, k);
  require(c.size() == x.c.size(), Err::AmbientMismatch, "flat vector size mismatch");
  u64 m = R->modulus_at(k);
  for (std::size_t i = 0; i < c.size(); ++i) x.c[i] = c[i] % m;
  return x;
}

ClassVec cv_from_flat(const GroupPtr& G, const RingPtr& R, const std::vector<u64>& c, unsigned k) {
  ClassVec x = cv_zero(G, R, k);
  require(c.size() == x.c.size(), Err::AmbientMismatch, "flat vector size mismatch");
  u64 m = R->modulus_at(k);
  for (std::size_t i = 0; i < c.size(); ++i) x.c[i] = c[i] % m;
  return x;
}

namespace {

// R-module generators as group-ring elements with scalar +/-1 coefficients,
// expanded over the ring basis into Z/p^k rows
void push_rows(std::vector<std::vector<u64>>& rows, const GroupPtr& G, const RingPtr& R,
               unsigned k, const std::vector<std::pair<unsigned, int>>& sparse) {
  unsigned rank = R->rank();
  u64 m = R->modulus_at(k);
  for (unsigned alpha = 0; alpha < rank; ++alpha) {
    std::vector<u64> row((std::size_t)G->order() * rank, 0);
    for (auto [g, s] : sparse) {
      u64 v = s >= 0 ? (u64)s % m : negmod((u64)(-s) % m, m);
      row[(std::size_t)g * rank + alpha] = addmod(row[(std::size_t)g * rank + alpha], v, m);
    }
    rows.push_back(std::move(row));
  }
}

std::vector<std::vector<u64>> ideal_generators(const GroupPtr& G, const RingPtr& R,
                                               IdealKind kind, unsigned k, unsigned c) {
  std::vector<std::vector<u64>> rows;
  const FiniteGroup& g = *G;
  switch (kind) {
    case IdealKind::I:
      for (unsigned x = 1; x < g.order(); ++x) push_rows(rows, G, R, k, {{x, 1}, {0, -1}});
      break;
    case IdealKind::A: {
      std::vector<unsigned> comm;
      for (unsigned a = 0; a < g.order(); ++a)
        for (unsigned b = 0; b < g.order(); ++b) {
          unsigned w = g.commutator(a, b);
          if (w != 0) comm.push_back(w);
        }
      std::sort(comm.begin(), comm.end());
      comm.erase(std::unique(comm.begin(), comm.end()), comm.end());
      for (unsigned x = 0; x < g.order(); ++x)
        for (unsigned w : comm) push_rows(rows, G, R, k, {{g.mul(x, w), 1}, {x, -1}});
      break;
    }
    case IdealKind::OneMinusC:
      for (unsigned x = 0; x < g.order(); ++x)
        push_rows(rows, G, R, k, {{x, 1}, {g.mul(c, x), -1}});
      break;
    case IdealKind::OneMinusCI:
      for (unsigned x = 1; x < g.order(); ++x)
        for (unsigned h = 0; h < g.order(); ++h) {
          // (1-c)(x-1)h = xh - cxh - h + ch
          unsigned xh = g.mul(x, h);
          push_rows(rows, G, R, k,
                    {{xh, 1}, {g.mul(c, xh), -1}, {h, -1}, {g.mul(c, h), 1}});
        }
      break;
    case IdealKind::ISquared:
      for (unsigned x = 1; x < g.order(); ++x)
        for (unsigned y = 1; y < g.order(); ++y)
          push_rows(rows, G, R, k, {{g.mul(x, y), 1}, {x, -1}, {y, -1}, {0, 1}});
      break;
    default:
      fail(Err::Internal, "phi kinds are built from element kinds");
  }
  return rows;
}

}  // namespace

Lattice phi_lattice(const Lattice& L, const GroupPtr& G, const RingPtr& R) {
  unsigned rank = R->rank();
  std::vector<std::vector<u64>> rows;
  for (const auto& r : L.rows) {
    std::vector<u64> v((std::size_t)G->num_classes() * rank, 0);
    for (unsigned x = 0; x < G->order(); ++x) {
      unsigned k = G->class_of(x);
      for (unsigned a = 0; a < rank; ++a)
        v[(std::size_t)k * rank + a] =
            addmod(v[(std::size_t)k * rank + a], r[(std::size_t)x * rank + a], L.m);
    }
    rows.push_back(std::move(v));
  }
  return howell_form(std::move(rows), G->num_classes() * rank, L.p, L.n);
}

Lattice ideal_lattice(const GroupPtr& G, const RingPtr& R, IdealKind kind, unsigned k,
                      unsigned c) {
  unsigned rank = R->rank();
  switch (kind) {
    case IdealKind::PhiI:
      return phi_lattice(ideal_lattice(G, R, IdealKind::I, k, c), G, R);
    case IdealKind::PhiA:
      return phi_lattice(ideal_lattice(G, R, IdealKind::A, k, c), G, R);
    case IdealKind::PhiOneMinusC:
      return phi_lattice(ideal_lattice(G, R, IdealKind::OneMinusC, k, c), G, R);
    case IdealKind::PhiOneMinusCI:
      return phi_lattice(ideal_lattice(G, R, IdealKind::OneMinusCI, k, c), G, R);
    case IdealKind::PhiOneMinusCSq: {
      // (1-c)^2 R[G] generated by (1-c)^2 x = x - 2cx + c^2 x
      std::vector<std::vector<u64>> rows;
      const FiniteGroup& g = *G;
      for (unsigned x = 0; x < g.order(); ++x) {
        unsigned cx = g.mul(c, x), ccx = g.mul(c, cx);
        push_rows(rows, G, R, k, {{x, 1}, {cx, -2}, {ccx, 1}});
      }
      Lattice L = howell_form(std::move(rows), G->order() * rank, R->p(), k);
      return phi_lattice(L, G, R);
    }
    default: {
      auto rows = ideal_generators(G, R, kind, k, c);
      return howell_form(std::move(rows), G->order() * rank, R->p(), k);
    }
  }
}

Lattice lattice_product(const Lattice& A, const Lattice& B, const GroupPtr& G,
                        const RingPtr& R) {
  unsigned k = A.n;
  std::vector<std::vector<u64>> rows;
  for (const auto& ra : A.rows) {
    GrElem ea = gr_from_flat(G, R, ra, k);
    for (const auto& rb : B.rows) {
      GrElem eb = gr_from_flat(G, R, rb, k);
      rows.push_back(gr_mul(ea, eb).c);
    }
  }
  return howell_form(std::move(rows), A.dim, A.p, A.n);
}

Lattice ideal_power_lattice(const GroupPtr& G, const RingPtr& R, unsigned mpow, unsigned k) {
  Lattice I = ideal_lattice(G, R, IdealKind::I, k);
  Lattice acc = I;
  for (unsigned t = 1; t < mpow; ++t) acc = lattice_product(acc, I, G, R);
  return acc;
}

// ---------------- sampling ----------------

GrElem gr_random(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec) {
  GrElem x = gr_zero(G, R, prec);
  u64 m = R->modulus_at(prec);
  for (u64& v : x.c) v = rng.below(m);
  return x;
}

GrElem gr_random_I(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec) {
  GrElem z = gr_random(G, R, rng, prec);
  return gr_sub(z, gr_scalar(G, augment(z)));
}

GrElem gr_random_I2(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec) {
  GrElem acc = gr_zero(G, R, prec);
  for (unsigned t = 0; t < 2 * G->order(); ++t) {
    unsigned x = 1 + (unsigned)rng.below(G->order() - 1);
    unsigned y = 1 + (unsigned)rng.below(G->order() - 1);
    GrElem gx = gr_sub(gr_group_elem(G, R, x, prec), gr_one(G, R, prec));
    GrElem gy = gr_sub(gr_group_elem(G, R, y, prec), gr_one(G, R, prec));
    acc = gr_add(acc, gr_scale(gr_mul(gx, gy), R->random(rng, prec)));
  }
  return acc;
}

GrElem gr_random_A(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec) {
  const FiniteGroup& g = *G;
  std::vector<unsigned> comm;
  for (unsigned a = 0; a < g.order(); ++a)
    for (unsigned b = 0; b < g.order(); ++b) {
      unsigned w = g.commutator(a, b);
      if (w != 0) comm.push_back(w);
    }
  std::sort(comm.begin(), comm.end());
  comm.erase(std::unique(comm.begin(), comm.end()), comm.end());
  GrElem acc = gr_zero(G, R, prec);
  if (comm.empty()) return acc;
  for (unsigned t = 0; t < 2 * g.order(); ++t) {
    unsigned x = (unsigned)rng.below(g.order());
    unsigned w = comm[rng.below(comm.size())];
    GrElem gen = gr_sub(gr_group_elem(G, R, g.mul(x, w), prec), gr_group_elem(G, R, x, prec));
    acc = gr_add(acc, gr_scale(gen, R->random(rng, prec)));
  }
  return acc;
}

GrElem gr_random_unit(const GroupPtr& G, const RingPtr& R, Rng& rng, unsigned prec) {
  GrElem x = gr_add(gr_scalar(G, R->random_unit(rng, prec)), gr_random_I(G, R, rng, prec));
  return x;
}

// ---------------- matrix reduction ----------------

GrElem reduce_matrix_to_unit(std::vector<std::vector<GrElem>> M) {
  const std::size_t k = M.size();
  require(k > 0, Err::InvalidArgument, "empty matrix");
  for (auto& row : M) require(row.size() == k, Err::InvalidArgument, "matrix not square");
  const GroupPtr G = M[0][0].G;
  const RingPtr R = M[0][0].R;
  const unsigned prec = M[0][0].prec;
  u64 m = R->modulus_at(prec);

  // augmentation part E = eps(M) over R; invert by Gaussian elimination with
  // unit pivots (R is local, so an invertible E always offers one)
  std::vector<std::vector<RElem>> E(k), Einv(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      E[i].push_back(augment(M[i][j]));
      Einv[i].push_back(i == j ? R->one(prec) : R->zero(prec));
    }
  RElem detE = R->one(prec);
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = k;
    for (std::size_t r = col; r < k; ++r) {
      std::vector<u64> tmp(R->rank());
      if (R->invert_span(tmp, E[r][col].c, m)) {
        piv = r;
        break;
      }
    }
    require(piv < k, Err::NotInvertible, "augmentation matrix is not invertible over R");
    if (piv != col) {
      std::swap(E[piv], E[col]);
      std::swap(Einv[piv], Einv[col]);
      detE = rneg(detE);
    }
    RElem pinv = invert(E[col][col]);
    detE = rmul(detE, E[col][col]);
    for (std::size_t j = 0; j < k; ++j) {
      E[col][j] = rmul(E[col][j], pinv);
      Einv[col][j] = rmul(Einv[col][j], pinv);
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || ris_zero(E[r][col])) continue;
      RElem f = E[r][col];
      for (std::size_t j = 0; j < k; ++j) {
        E[r][j] = rsub(E[r][j], rmul(f, E[col][j]));
        Einv[r][j] = rsub(Einv[r][j], rmul(f, Einv[col][j]));
      }
    }
  }

  // Y = M * embed(Einv): eps(Y) = identity, so Y is 1 + M_k(I)
  std::vector<std::vector<GrElem>> Y(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      GrElem acc = gr_zero(G, R, prec);
      for (std::size_t t = 0; t < k; ++t)
        acc = gr_add(acc, gr_scale(M[i][t], Einv[t][j]));
      Y[i].push_back(std::move(acc));
    }

  // Gaussian elimination with unit diagonal pivots (off-diagonal parts are in
  // the radical, so each Y[i][i] stays a unit); elementary row operations do
  // not change the determinant on any character
  for (std::size_t i = 0; i < k; ++i) {
    GrElem pinv = invert_unit(Y[i][i]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == i) continue;
      GrElem f = gr_mul(Y[r][i], pinv);
      if (gr_is_zero(f)) continue;
      for (std::size_t j = 0; j < k; ++j) Y[r][j] = gr_sub(Y[r][j], gr_mul(f, Y[i][j]));
    }
  }

  GrElem u = gr_scalar(G, detE);
  for (std::size_t i = 0; i < k; ++i) u = gr_mul(u, Y[i][i]);
  return u;
}

}  // namespace grouplog
