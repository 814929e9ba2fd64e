#include "grouplog/descent.hpp"

#include <algorithm>

#include "grouplog/kernels.hpp"

namespace grouplog {

namespace {

unsigned ilog(u64 p, u64 x) {
  unsigned v = 0;
  while (x >= p) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

ExtensionCtx make_extension(const RingPtr& R, unsigned f) {
  ExtensionCtx E;
  E.R = R;
  E.f = f;
  if (f == 1) {
    E.S = R;
    E.tau = R->one(R->precision());
    return E;
  }
  require(!R->has_unram_layer() && !R->has_cyclo_layer(), Err::InvalidArgument,
          "extensions over unramified or cyclotomic bases are not supported");
  E.S = Ring::unramified_extension(R, f);
  const RingPtr& S = E.S;
  unsigned prec = S->precision();
  u64 m = S->modulus_at(prec);
  unsigned rank = S->rank(), br = R->rank();

  // S^Delta = R: the kernel of (sigma - 1) must be exactly the R-block
  {
    std::vector<std::vector<u64>> rows;
    for (unsigned a = 0; a < rank; ++a) {
      std::vector<u64> e(rank, 0), se(rank, 0), row(rank);
      e[a] = 1;
      S->sigma_span(se, e, m);
      kernels().sub(row.data(), se.data(), e.data(), rank, m);
      rows.push_back(std::move(row));
    }
    Lattice ker = kernel_of(rows, rank, S->p(), prec);
    std::vector<std::vector<u64>> rblock;
    for (unsigned a = 0; a < br; ++a) {
      std::vector<u64> e(rank, 0);
      e[a] = 1;
      rblock.push_back(std::move(e));
    }
    require(lattice_equal(ker, howell_form(std::move(rblock), rank, S->p(), prec)),
            Err::Internal, "fixed ring of sigma is not R");
  }

  // trace-one element: solve sum_i t_i Tr(w^i) = 1 over R
  {
    std::vector<RElem> trw;
    for (unsigned i = 0; i < f; ++i) {
      RElem wi = rpow(S->var(prec), i);
      RElem tr = S->zero(prec);
      for (unsigned k = 0; k < f; ++k) tr = radd(tr, galois_sigma(wi, k));
      trw.push_back(tr);  // invariant, lives in the R-block
    }
    std::vector<std::vector<u64>> gens;
    for (unsigned i = 0; i < f; ++i)
      for (unsigned a = 0; a < br; ++a) {
        // e_a * Tr(w^i) as an R-coordinate row
        RElem ea = R->zero(prec);
        ea.c[a] = 1;
        RElem blk = R->zero(prec);
        std::copy(trw[i].c.begin(), trw[i].c.begin() + br, blk.c.begin());
        gens.push_back(rmul(ea, blk).c);
      }
    std::vector<u64> one(br, 0);
    one[0] = 1;
    auto sol = solve_in_span(gens, one, br, S->p(), prec);
    require(sol.has_value(), Err::Internal, "trace is not surjective");
    RElem tau = S->zero(prec);
    for (unsigned i = 0; i < f; ++i) {
      RElem coeff = R->zero(prec);
      for (unsigned a = 0; a < br; ++a) coeff.c[a] = (*sol)[(std::size_t)i * br + a];
      RElem term = rmul(embed(coeff, S), rpow(S->var(prec), i));
      tau = radd(tau, term);
    }
    // verify
    RElem tr = S->zero(prec);
    for (unsigned k = 0; k < f; ++k) tr = radd(tr, galois_sigma(tau, k));
    require(requal(tr, S->one(prec)), Err::Internal, "trace-one element verification failed");
    E.tau = tau;
  }
  return E;
}

GrElem galois_act(const ExtensionCtx& E, const GrElem& x, unsigned times) {
  require(x.R.get() == E.S.get(), Err::RingMismatch, "galois action needs S coefficients");
  if (E.f == 1 || times % E.f == 0) return x;
  GrElem out = gr_zero(x.G, x.R, x.prec);
  u64 m = x.R->modulus_at(x.prec);
  std::vector<u64> tmp(x.R->rank());
  for (unsigned g = 0; g < x.G->order(); ++g) {
    std::copy(x.blk(g).begin(), x.blk(g).end(), tmp.begin());
    for (unsigned t = 0; t < times % E.f; ++t) {
      std::vector<u64> t2(tmp.size());
      x.R->sigma_span(t2, tmp, m);
      tmp = t2;
    }
    std::copy(tmp.begin(), tmp.end(), out.blk(g).begin());
  }
  return out;
}

RElem ext_trace(const ExtensionCtx& E, const RElem& s) {
  RElem tr = E.S->zero(s.prec);
  for (unsigned k = 0; k < E.f; ++k) tr = radd(tr, galois_sigma(s, k));
  return tr;
}

GrElem lift_to_S(const ExtensionCtx& E, const GrElem& x) {
  require(x.R.get() == E.R.get(), Err::RingMismatch, "lift needs R coefficients");
  if (E.f == 1) return x;
  GrElem out = gr_zero(x.G, E.S, x.prec);
  for (unsigned g = 0; g < x.G->order(); ++g) {
    auto src = x.blk(g);
    std::copy(src.begin(), src.end(), out.blk(g).begin());
  }
  return out;
}

GrElem descend_to_R(const ExtensionCtx& E, const GrElem& x, unsigned k) {
  require(x.R.get() == E.S.get(), Err::RingMismatch, "descend needs S coefficients");
  if (E.f == 1) return gr_reduce_precision(x, std::min(k, x.prec));
  unsigned br = E.R->rank(), rank = E.S->rank();
  u64 mk = E.R->modulus_at(std::min(k, x.prec));
  GrElem out = gr_zero(x.G, E.R, std::min(k, x.prec));
  for (unsigned g = 0; g < x.G->order(); ++g) {
    auto src = x.blk(g);
    for (unsigned a = br; a < rank; ++a)
      require(src[a] % mk == 0, Err::NotInvariant, "coefficients do not lie in R");
    for (unsigned a = 0; a < br; ++a) out.blk(g)[a] = src[a] % mk;
  }
  return out;
}

bool is_elementwise_invariant(const ExtensionCtx& E, const GrElem& x, unsigned k) {
  if (E.f == 1) return true;
  GrElem s = galois_act(E, x, 1);
  return gr_equal_at(s, x, std::min({k, x.prec, s.prec}));
}

GrElem frohlich_norm_product(const ExtensionCtx& E, const GrElem& x) {
  GrElem P = x;
  for (unsigned k = 1; k < E.f; ++k) P = gr_mul(P, galois_act(E, x, k));
  return P;
}

bool det_invariant(const ExtensionCtx& E, const GrElem& x, const CharTable& T, unsigned k) {
  if (E.f == 1) return true;
  RingPtr dring = det_ring(E.S, T.e);
  GrElem sx = galois_act(E, x, 1);
  for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
    RElem a = det_value(x, T, chi, dring);
    RElem b = det_value(sx, T, chi, dring);
    // Det(sigma x) = (sigma (x) id) Det(x)
    if (!requal_at(b, a, k) && !requal_at(b, galois_sigma(a), k)) return false;
    if (!requal_at(galois_sigma(a), a, k)) return false;
  }
  return true;
}

// ---------------- solvers ----------------

namespace {

// p-division exponent paid by one Fourier-log inversion at this group
unsigned fourier_loss(const GroupPtr& G, u64 p, unsigned W) {
  unsigned M = ilog(p, nilpotency_index(*G, p)) + 3;  // powering bound
  unsigned A = ilog(p, W + 2) + 1;                    // log-series guard
  return ilog(p, G->order()) + M + A + 1;
}

// reconstruct the class vector v with chi(v) = p * log t_chi for all chi,
// from scaled logs; v_K = (p |K| / |G|) sum_chi log t_chi * chi(K^{-1})
ClassVec cv_from_scaled_logs(const GroupPtr& G, const CharTable& T,
                             const std::vector<ScaledR>& logs, const RingPtr& dring,
                             unsigned out_prec) {
  const RingPtr base = dring->base();
  const unsigned W = logs[0].v.prec;
  u64 p = dring->p();
  unsigned D0 = 0;
  for (const auto& l : logs) D0 = std::max(D0, l.denom);
  // payloads aligned at denominator D0
  std::vector<RElem> P;
  for (const auto& l : logs) {
    RElem v = l.v;
    u64 m = dring->modulus_at(W);
    u64 f = 1;
    for (unsigned i = l.denom; i < D0; ++i) f = (f * p) % m;
    RElem w = dring->zero(W);
    dring->scale(w.c, v.c, f, m);
    P.push_back(std::move(w));
  }
  // zeta powers for multiplying payloads by chi coefficients
  std::vector<RElem> zpow;
  zpow.push_back(dring->one(W));
  for (unsigned i = 1; i < (unsigned)T.pe; ++i) zpow.push_back(rmul(zpow.back(), dring->var(W)));

  ClassVec out = cv_zero(G, base, out_prec);
  u64 mo = base->modulus_at(out_prec);
  for (unsigned K = 0; K < G->num_classes(); ++K) {
    unsigned Kinv = G->class_of(G->inv(G->class_rep(K)));
    RElem Q = dring->zero(W);
    for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
      const CycInt& val = T.irr[chi].values[Kinv];
      for (std::size_t i = 0; i < val.c.size(); ++i) {
        if (val.c[i] == 0) continue;
        RElem t = rmul(P[chi], zpow[i]);
        RElem c = dring->from_int(val.c[i], W);
        Q = radd(Q, rmul(t, c));
      }
    }
    // v_K = p * Q / (|G|/|K| * p^{D0});   |G|/|K| is a p-power
    u64 quot = G->order() / (u64)G->classes()[K].size();
    unsigned eK = ilog(p, quot) + D0;
    // multiply by p then divide by p^{eK}: net division by p^{eK-1}
    unsigned div = eK >= 1 ? eK - 1 : 0;
    u64 pd = 1;
    for (unsigned i = 0; i < div; ++i) pd *= p;
    require(valuation(Q) >= div || ris_zero(Q), Err::NoConvergence,
            "descent log inversion failed integrality");
    // exact division, then the value must be zeta-free and land in the base
    unsigned rprec = W - div;
    require(rprec >= out_prec, Err::PrecisionStarved, "descent inversion out of precision");
    RElem vk = dring->zero(rprec);
    u64 mr = dring->modulus_at(rprec);
    for (std::size_t i = 0; i < Q.c.size(); ++i) vk.c[i] = (Q.c[i] / pd) % mr;
    unsigned brr = base->rank();
    u64 mcheck = dring->modulus_at(out_prec);
    for (std::size_t i = brr; i < vk.c.size(); ++i)
      require(vk.c[i] % mcheck == 0, Err::NoConvergence,
              "descent log inversion left the base ring");
    for (unsigned a = 0; a < brr; ++a) out.blk(K)[a] = vk.c[a] % mo;
  }
  return out;
}

std::vector<ScaledR> det_ratio_logs(const CharTable& T, const GrElem& num, const GrElem& den,
                                    const RingPtr& dring, unsigned n) {
  std::vector<ScaledR> logs;
  for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
    RElem a = det_value(num, T, chi, dring);
    RElem b = det_value(den, T, chi, dring);
    RElem ratio = rmul(a, invert(b));
    // log of the ratio via the same powering trick as log_det
    const u64 p = dring->p();
    RElem one = dring->one(ratio.prec);
    unsigned M = 0;
    RElem val = ratio;
    while (valuation(rsub(val, one)) < 2) {
      val = rpow(val, p);
      ++M;
      require(M <= 64, Err::NoConvergence, "descent defect is not close to torsion");
    }
    RElem x = rsub(one, val);
    unsigned W = val.prec;
    unsigned A = ilog(p, W + 2) + 1;
    u64 m = dring->modulus_at(W);
    RElem P = x;
    RElem S = dring->zero(W);
    for (u64 k = 1; !ris_zero(P); ++k) {
      require(k <= (u64)W + 8, Err::Internal, "log series did not terminate");
      unsigned t = val_p(k, p, A + 1);
      u64 pt = 1;
      for (unsigned i = 0; i < t; ++i) pt *= p;
      u64 pa = 1;
      for (unsigned i = 0; i < A - t; ++i) pa *= p;
      kernels().axpy(S.c.data(), P.c.data(), S.c.size(),
                     mulmod(pa % m, inv_mod_ppow(k / pt, p, m), m), m);
      P = rmul(P, x);
    }
    S = rneg(S);
    logs.push_back(ScaledR{S, M + A, std::min(n, W - M - A)});
  }
  return logs;
}

}  // namespace

unsigned descent_working_precision(const GroupPtr& G, u64 p, unsigned n) {
  // one fourier inversion per non-abelian level of the central-series
  // descent; its p-divisions consume payload headroom, the plog guards
  // consume series headroom, and both are measured from the same ring
  // precision, so the budget is a max rather than a sum
  unsigned depth = 0;
  GroupPtr cur = G;
  while (!cur->is_abelian()) {
    cur = central_quotient(cur, find_central_commutator_order_p(*cur)).group;
    ++depth;
  }
  unsigned forward = working_precision(G, p, n + 2);
  unsigned W = std::max(forward, n + 2 + depth * (fourier_loss(G, p, n + 22) + 2) + 4);
  (void)pow_checked(p, W);
  return W;
}

GrElem solve_norm_preimage(const ExtensionCtx& E, const GroupPtr& G, const GrElem& target,
                           unsigned n) {
  require(target.R.get() == E.R.get(), Err::RingMismatch, "target must have R coefficients");
  {
    RElem eps = augment(target);
    require(requal(eps, E.R->one(target.prec)), Err::InvalidArgument,
            "target must lie in 1 + I(R[G])");
  }
  if (E.f == 1) return target;
  const RingPtr& S = E.S;
  const unsigned up = S->precision();

  if (G->is_abelian()) {
    // successive approximation through the I-adic filtration; the trace-one
    // element splits each layer, so the norm equality ends up elementwise
    GrElem y = gr_one(G, S, up);
    GrElem tS = lift_to_S(E, target);
    unsigned N = nilpotency_index(*G, S->p());
    unsigned budget = N * up + 16;
    for (unsigned it = 0;; ++it) {
      GrElem u = gr_mul(tS, invert_unit(frohlich_norm_product(E, y)));
      GrElem d = gr_sub(u, gr_one(G, S, up));
      if (gr_is_zero(d)) break;
      require(it < budget, Err::NoConvergence, "abelian norm solver exceeded its budget");
      GrElem w = gr_scale(d, E.tau);
      y = gr_mul(y, gr_add(gr_one(G, S, up), w));
    }
    return y;
  }

  unsigned c = find_central_commutator_order_p(*G);
  QuotientResult q = central_quotient(G, c);
  GrElem tbar = quotient_map(target, q.proj, E.R);
  GrElem ybar = solve_norm_preimage(E, q.group, tbar, n);

  // lift ybar coefficientwise along the least-preimage section
  std::vector<unsigned> section(q.group->order(), G->order());
  for (unsigned g = G->order(); g-- > 0;) section[q.proj.images[g]] = g;
  GrElem y0 = gr_zero(G, S, up);
  for (unsigned h = 0; h < q.group->order(); ++h) {
    auto src = ybar.blk(h);
    std::copy(src.begin(), src.end(), y0.blk(section[h]).begin());
  }

  const CharTable& T = character_table(G);
  RingPtr dring = det_ring(S, T.e);
  GrElem P0 = frohlich_norm_product(E, y0);
  std::vector<ScaledR> logs = det_ratio_logs(T, lift_to_S(E, target), P0, dring, up);
  unsigned loss = fourier_loss(G, S->p(), up);
  require(up > loss + n, Err::PrecisionStarved, "norm solver needs more ring precision");
  unsigned vprec = up - loss;
  ClassVec vS_raw = cv_from_scaled_logs(G, T, logs, dring, vprec);
  // the defect log descends to R (sigma-invariant values); then spread by tau
  ClassVec vR = cv_zero(G, E.R, vprec);
  {
    unsigned br = E.R->rank(), rank = S->rank();
    u64 mk = E.R->modulus_at(vprec);
    for (unsigned K = 0; K < G->num_classes(); ++K) {
      auto src = vS_raw.blk(K);
      for (unsigned a = br; a < rank; ++a)
        require(src[a] % mk == 0, Err::NoConvergence, "norm defect log did not descend to R");
      for (unsigned a = 0; a < br; ++a) vR.blk(K)[a] = src[a] % mk;
    }
  }
  // v_S = tau * vR, solved inside 1 + (1-c) S[G]
  ClassVec vS = cv_zero(G, S, vprec);
  {
    RElem tau = reduce_precision(E.tau, vprec);
    u64 m = S->modulus_at(vprec);
    for (unsigned K = 0; K < G->num_classes(); ++K) {
      RElem blk = E.R->zero(vprec);
      std::copy(vR.blk(K).begin(), vR.blk(K).end(), blk.c.begin());
      RElem prod = rmul(embed(blk, S), tau);
      (void)m;
      std::copy(prod.c.begin(), prod.c.end(), vS.blk(K).begin());
    }
  }
  unsigned nsolve = std::min(n + 2, vprec);
  GrElem b = solve_one_minus_c_preimage(vS, c, nsolve);
  GrElem y = gr_mul(y0, gr_add(gr_one(G, S, up), b));

  // forward verification at tolerance n - 2
  GrElem Py = frohlich_norm_product(E, y);
  unsigned tol = n >= 2 ? n - 2 : 1;
  require(det_equal(Py, lift_to_S(E, target), T, dring, tol), Err::NoConvergence,
          "norm preimage forward check failed");
  return y;
}

GrElem solve_fixed_point(const ExtensionCtx& E, const GroupPtr& G, const GrElem& x, unsigned n) {
  require(x.R.get() == E.S.get(), Err::RingMismatch, "input must have S coefficients");
  if (E.f == 1) return x;
  const RingPtr& S = E.S;
  const unsigned up = S->precision();
  const CharTable& T = character_table(G);
  RingPtr dring = det_ring(S, T.e);
  require(det_invariant(E, x, T, n), Err::NotInvariant,
          "determinant is not Delta-invariant at the requested precision");

  // split the augmentation part: x = eps * x' with x' in 1 + I(S[G])
  RElem eps = augment(x);
  RElem epsR;
  {
    // Det-invariance at the trivial character makes eps sigma-invariant
    unsigned br = E.R->rank();
    u64 mk = E.R->modulus_at(up);
    epsR = E.R->zero(up);
    RElem diff = rsub(galois_sigma(eps), eps);
    require(valuation(diff) + 2 >= n, Err::NotInvariant, "augmentation is not invariant");
    for (unsigned a = 0; a < br; ++a) epsR.c[a] = eps.c[a] % mk;
    for (unsigned a = br; a < S->rank(); ++a)
      require(eps.c[a] % E.R->modulus_at(std::min(n, up)) == 0, Err::NotInvariant,
              "augmentation does not descend");
  }
  GrElem xprime = gr_mul(x, invert_unit(gr_scalar(G, eps)));

  GrElem uprime;
  if (G->is_abelian()) {
    // Det is injective on abelian group rings, so Delta-invariance of the
    // determinant forces elementwise invariance: descend directly
    unsigned tol = up - ilog(S->p(), G->order()) - 1;
    require(is_elementwise_invariant(E, xprime, std::min(tol, up)), Err::NotInvariant,
            "abelian fixed point is not elementwise invariant");
    uprime = descend_to_R(E, xprime, std::min(tol, up));
  } else {
    unsigned c = find_central_commutator_order_p(*G);
    QuotientResult q = central_quotient(G, c);
    GrElem xbar = quotient_map(xprime, q.proj, S);
    GrElem ubar = solve_fixed_point(E, q.group, xbar, n);
    std::vector<unsigned> section(q.group->order(), G->order());
    for (unsigned g = G->order(); g-- > 0;) section[q.proj.images[g]] = g;
    GrElem u0 = gr_zero(G, E.R, ubar.prec);
    for (unsigned h = 0; h < q.group->order(); ++h) {
      auto src = ubar.blk(h);
      std::copy(src.begin(), src.end(), u0.blk(section[h]).begin());
    }
    GrElem u0S = lift_to_S(E, u0);
    std::vector<ScaledR> logs = det_ratio_logs(T, xprime, u0S, dring, up);
    unsigned loss = fourier_loss(G, S->p(), up);
    require(up > loss + n, Err::PrecisionStarved, "fixed-point solver needs more ring precision");
    unsigned vprec = std::min<unsigned>(up - loss, u0.prec);
    ClassVec vS_raw = cv_from_scaled_logs(G, T, logs, dring, vprec);
    // invariance of the defect values puts v in p phi((1-c) R[G])
    ClassVec vR = cv_zero(G, E.R, vprec);
    {
      unsigned br = E.R->rank(), rank = S->rank();
      u64 mk = E.R->modulus_at(vprec);
      for (unsigned K = 0; K < G->num_classes(); ++K) {
        auto src = vS_raw.blk(K);
        for (unsigned a = br; a < rank; ++a)
          require(src[a] % mk == 0, Err::NotInvariant, "defect log did not descend to R");
        for (unsigned a = 0; a < br; ++a) vR.blk(K)[a] = src[a] % mk;
      }
    }
    unsigned nsolve = std::min(n + 2, vprec);
    GrElem b = solve_one_minus_c_preimage(vR, c, nsolve);
    uprime = gr_mul(u0, gr_add(gr_one(G, E.R, u0.prec), b));
  }

  GrElem u = gr_mul(gr_scalar(G, epsR), uprime);
  unsigned tol = n >= 2 ? n - 2 : 1;
  require(det_equal(lift_to_S(E, u), x, T, dring, tol), Err::NoConvergence,
          "fixed point forward check failed");
  return u;
}

}  // namespace grouplog
