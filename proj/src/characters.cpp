#include "grouplog/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>

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

// linear characters of an abelian-ized group as exponent maps into Z/p^e
std::vector<std::vector<unsigned>> linear_exponents(const GroupPtr& G, u64 pe) {
  const Abelianization& ab = abelianization(G);
  std::size_t k = ab.basis.size();
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> tuple(k, 0);
  while (true) {
    std::vector<unsigned> exps(G->order());
    for (unsigned g = 0; g < G->order(); ++g) {
      u64 e = 0;
      const auto& co = ab.coords[ab.proj.images[g]];
      for (std::size_t j = 0; j < k; ++j)
        e += (u64)tuple[j] * co[j] * (pe / ab.basis_order[j]);
      exps[g] = (unsigned)(e % pe);
    }
    out.push_back(std::move(exps));
    std::size_t i = 0;
    while (i < k) {
      if (++tuple[i] < ab.basis_order[i]) break;
      tuple[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<unsigned> coset_transversal(const FiniteGroup& G, const std::vector<unsigned>& H) {
  std::vector<unsigned> reps;
  std::vector<bool> seen(G.order(), false);
  for (unsigned x = 0; x < G.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (unsigned h : H) seen[G.mul(x, h)] = true;
  }
  return reps;
}

// inner product <a, b> * |G| = sum_K |K| a(K) b(K^{-1})
CycInt inner_times_order(const FiniteGroup& G, const std::vector<CycInt>& a,
                         const std::vector<CycInt>& b) {
  CycInt s = cyc_zero(a[0].p, a[0].e);
  for (unsigned K = 0; K < G.num_classes(); ++K) {
    unsigned Kinv = G.class_of(G.inv(G.class_rep(K)));
    CycInt t = cyc_mul(a[K], b[Kinv]);
    for (auto& cc : t.c) cc *= (long long)G.classes()[K].size();
    s = cyc_add(s, t);
  }
  return s;
}

CharTable build_table(const GroupPtr& G) {
  CharTable T;
  T.G = G;
  u64 p = G->p();
  T.e = std::max(1u, ilog(p, G->exponent()));
  T.pe = 1;
  for (unsigned i = 0; i < T.e; ++i) T.pe *= p;

  auto push_char = [&](Character&& ch) {
    for (const Character& have : T.irr)
      if (have.values == ch.values) return;
    T.irr.push_back(std::move(ch));
  };

  // linear characters from G^ab
  std::vector<unsigned> allG(G->order());
  for (unsigned g = 0; g < G->order(); ++g) allG[g] = g;
  for (auto& exps : linear_exponents(G, T.pe)) {
    Character ch;
    ch.G = G;
    ch.degree = 1;
    ch.H = allG;
    ch.transversal = {0};
    ch.theta_exp = exps;
    for (unsigned K = 0; K < G->num_classes(); ++K)
      ch.values.push_back(cyc_zeta_pow(p, T.e, exps[G->class_rep(K)]));
    push_char(std::move(ch));
  }

  unsigned degsum = 0;
  for (const Character& ch : T.irr) degsum += ch.degree * ch.degree;

  if (degsum < G->order()) {
    // exhaustive monomial search: induce linear characters up the subgroups,
    // larger subgroups first (smaller induced degree)
    auto subs = subgroups(*G);
    std::stable_sort(subs.begin(), subs.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& H : subs) {
      if (degsum >= G->order()) break;
      if (H.size() == G->order() || H.empty()) continue;
      SubgroupResult sub = subgroup_as_group(G, H);
      std::vector<unsigned> to_local(G->order(), G->order());
      for (unsigned i = 0; i < sub.group->order(); ++i) to_local[sub.to_parent[i]] = i;
      std::vector<unsigned> Hs = H;
      std::vector<unsigned> reps = coset_transversal(*G, Hs);
      unsigned deg = (unsigned)reps.size();
      for (auto& sub_exps : linear_exponents(sub.group, T.pe)) {
        // theta on H in parent indexing
        std::vector<unsigned> texp(Hs.size());
        for (std::size_t i = 0; i < Hs.size(); ++i) texp[i] = sub_exps[to_local[Hs[i]]];
        Character ch;
        ch.G = G;
        ch.degree = deg;
        ch.H = Hs;
        ch.transversal = reps;
        ch.theta_exp = texp;
        for (unsigned K = 0; K < G->num_classes(); ++K) {
          unsigned g = G->class_rep(K);
          CycInt v = cyc_zero(p, T.e);
          for (unsigned x : reps) {
            unsigned conj = G->mul(G->mul(G->inv(x), g), x);
            if (to_local[conj] != G->order())
              v = cyc_add(v, cyc_zeta_pow(p, T.e, sub_exps[to_local[conj]]));
          }
          ch.values.push_back(std::move(v));
        }
        CycInt norm = inner_times_order(*G, ch.values, ch.values);
        long long nv = 0;
        if (cyc_is_int(norm, &nv) && nv == (long long)G->order()) {
          unsigned before = (unsigned)T.irr.size();
          push_char(std::move(ch));
          if (T.irr.size() > before) degsum += deg * deg;
        }
        if (degsum >= G->order()) break;
      }
    }
  }

  require(degsum == G->order(), Err::IncompleteSearch,
          "monomial search missed irreducibles: sum deg^2 = " + std::to_string(degsum));

  std::sort(T.irr.begin(), T.irr.end(), [](const Character& a, const Character& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      int c = cyc_compare(a.values[i], b.values[i]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  return T;
}

}  // namespace

const CharTable& character_table(const GroupPtr& G) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::shared_ptr<CharTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(G.get());
  if (it != cache.end()) return *it->second;
  auto t = std::make_shared<CharTable>(build_table(G));
  cache[G.get()] = t;
  return *t;
}

VirtualChar adams_psi_p(const CharTable& T, unsigned chi) {
  const FiniteGroup& G = *T.G;
  std::vector<CycInt> w;
  for (unsigned K = 0; K < G.num_classes(); ++K)
    w.push_back(T.irr[chi].values[G.class_pow_p(K)]);
  VirtualChar vc;
  for (const Character& ci : T.irr) {
    CycInt ip = inner_times_order(G, w, ci.values);
    long long v = 0;
    require(cyc_is_int(ip, &v) && v % (long long)G.order() == 0, Err::NonIntegerDecomposition,
            "psi^p of a character must be a virtual character");
    vc.push_back(v / (long long)G.order());
  }
  // exact decomposition check
  for (unsigned K = 0; K < G.num_classes(); ++K) {
    CycInt s = cyc_zero(T.irr[0].values[0].p, T.irr[0].values[0].e);
    for (std::size_t i = 0; i < vc.size(); ++i) {
      CycInt t = T.irr[i].values[K];
      for (auto& cc : t.c) cc *= vc[i];
      s = cyc_add(s, t);
    }
    require(s == w[K], Err::NonIntegerDecomposition, "virtual decomposition mismatch");
  }
  return vc;
}

CycInt virtual_value(const CharTable& T, const VirtualChar& vc, unsigned cls) {
  CycInt s = cyc_zero(T.irr[0].values[0].p, T.irr[0].values[0].e);
  for (std::size_t i = 0; i < vc.size(); ++i) {
    CycInt t = T.irr[i].values[cls];
    for (auto& cc : t.c) cc *= vc[i];
    s = cyc_add(s, t);
  }
  return s;
}

RingPtr det_ring(const RingPtr& R, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<const Ring*, unsigned>, RingPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(R.get(), e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RingPtr d = Ring::cyclotomic_extension(R, e);
  cache[key] = d;
  return d;
}

namespace {

// accumulate base-ring blocks at zeta exponents 0..pe-1, then reduce mod Phi
struct TensorAccum {
  const Ring* dring;
  u64 pe;
  unsigned br;
  u64 m;
  std::vector<u64> ext;  // pe * br

  TensorAccum(const RingPtr& d, u64 pe_, unsigned prec)
      : dring(d.get()), pe(pe_), br(d->base()->rank()), m(d->modulus_at(prec)),
        ext((std::size_t)pe_ * d->base()->rank(), 0) {}

  void add(u64 zexp, std::span<const u64> blk) {
    std::vector<u64> red(blk.begin(), blk.end());
    for (u64& x : red) x %= m;
    kernels().add(ext.data() + (std::size_t)(zexp % pe) * br,
                  ext.data() + (std::size_t)(zexp % pe) * br, red.data(), br, m);
  }

  void add_int_mult(u64 zexp, std::span<const u64> blk, long long mult) {
    if (mult == 0) return;
    u64 c = mult > 0 ? (u64)mult % m : negmod((u64)(-mult) % m, m);
    std::vector<u64> red(blk.begin(), blk.end());
    for (u64& x : red) x %= m;
    kernels().axpy(ext.data() + (std::size_t)(zexp % pe) * br, red.data(), br, c, m);
  }

  RElem finish(unsigned prec) const {
    // zeta^phi = -(sum_{j<p-1} zeta^{j p^{e-1}})
    unsigned phi = dring->degree();
    u64 p = dring->p();
    u64 pe1 = pe / p;
    std::vector<u64> v = ext;
    for (std::size_t dgr = pe; dgr-- > phi;) {
      auto blk = std::span<u64>(v).subspan(dgr * br, br);
      bool nz = false;
      for (u64 x : blk) nz = nz || x != 0;
      if (!nz) continue;
      for (u64 j = 0; j + 1 < p; ++j) {
        auto dst = std::span<u64>(v).subspan((dgr - phi + (std::size_t)(j * pe1)) * br, br);
        kernels().sub(dst.data(), dst.data(), blk.data(), br, m);
      }
      std::fill(blk.begin(), blk.end(), 0);
    }
    RElem out = dring->zero(prec);
    std::copy(v.begin(), v.begin() + (std::size_t)phi * br, out.c.begin());
    return out;
  }
};

// determinant over the (local) value ring: Gaussian elimination on unit
// pivots, Berkowitz fallback when no unit pivot exists
RElem det_berkowitz(std::vector<std::vector<RElem>>& A, const RingPtr& R, unsigned prec) {
  const std::size_t n = A.size();
  std::vector<RElem> q{R->one(prec)};
  for (std::size_t i = 0; i < n; ++i) {
    // c_0 = 1, c_1 = -A[i][i], c_{k+2} = -(Rrow . A_i^k . Scol)
    std::vector<RElem> c;
    c.push_back(R->one(prec));
    c.push_back(rneg(A[i][i]));
    if (i > 0) {
      std::vector<RElem> w(i);
      for (std::size_t t = 0; t < i; ++t) w[t] = A[t][i];  // S column
      for (std::size_t k = 0; k + 2 <= i + 1; ++k) {
        // dot = R . w
        RElem dot = R->zero(prec);
        for (std::size_t t = 0; t < i; ++t) dot = radd(dot, rmul(A[i][t], w[t]));
        c.push_back(rneg(dot));
        if (k + 3 > i + 1) break;
        // w <- A_i w
        std::vector<RElem> w2(i, R->zero(prec));
        for (std::size_t r = 0; r < i; ++r)
          for (std::size_t t = 0; t < i; ++t) w2[r] = radd(w2[r], rmul(A[r][t], w[t]));
        w = std::move(w2);
      }
    }
    // q <- Toeplitz(c) * q
    std::vector<RElem> q2(q.size() + 1, R->zero(prec));
    for (std::size_t r = 0; r < q2.size(); ++r)
      for (std::size_t s = 0; s < q.size(); ++s)
        if (r >= s && r - s < c.size()) q2[r] = radd(q2[r], rmul(c[r - s], q[s]));
    q = std::move(q2);
  }
  RElem det = q.back();
  if (n % 2 == 1) det = rneg(det);
  return det;
}

RElem det_local(std::vector<std::vector<RElem>> A, const RingPtr& R, unsigned prec) {
  const std::size_t n = A.size();
  u64 m = R->modulus_at(prec);
  std::vector<std::vector<RElem>> orig = A;  // Berkowitz fallback needs it intact
  RElem det = R->one(prec);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    std::vector<u64> pinv(R->rank());
    for (std::size_t r = col; r < n; ++r)
      if (R->invert_span(pinv, A[r][col].c, m)) {
        piv = r;
        break;
      }
    if (piv == n) return det_berkowitz(orig, R, prec);  // no unit pivot in this column
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = rneg(det);
    }
    det = rmul(det, A[col][col]);
    RElem inv{R, prec, pinv};
    for (std::size_t r = col + 1; r < n; ++r) {
      if (ris_zero(A[r][col])) continue;
      RElem f = rmul(A[r][col], inv);
      for (std::size_t t = col; t < n; ++t) A[r][t] = rsub(A[r][t], rmul(f, A[col][t]));
    }
  }
  return det;
}

}  // namespace

RElem det_value(const GrElem& x, const CharTable& T, unsigned chi, const RingPtr& dring) {
  require(dring->base().get() == x.R.get(), Err::RingMismatch,
          "value ring is not the cyclotomic extension of the coefficient ring");
  const Character& ch = T.irr[chi];
  const FiniteGroup& G = *x.G;
  const unsigned d = ch.degree;
  const unsigned prec = x.prec;
  std::vector<unsigned> to_H(G.order(), G.order());
  for (std::size_t i = 0; i < ch.H.size(); ++i) to_H[ch.H[i]] = (unsigned)i;

  std::vector<std::vector<RElem>> V(d, std::vector<RElem>(d, dring->zero(prec)));
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      TensorAccum acc(dring, T.pe, prec);
      unsigned xi = ch.transversal[i], xj_inv = G.inv(ch.transversal[j]);
      for (std::size_t hi = 0; hi < ch.H.size(); ++hi) {
        unsigned g = G.mul(G.mul(xi, ch.H[hi]), xj_inv);
        acc.add(ch.theta_exp[hi], x.blk(g));
      }
      V[i][j] = acc.finish(prec);
    }
  if (d == 1) return V[0][0];
  return det_local(std::move(V), dring, prec);
}

RElem det_value_matrix(const std::vector<std::vector<GrElem>>& M, const CharTable& T,
                       unsigned chi, const RingPtr& dring) {
  const Character& ch = T.irr[chi];
  const std::size_t k = M.size();
  const FiniteGroup& G = *M[0][0].G;
  const unsigned d = ch.degree;
  const unsigned prec = M[0][0].prec;
  std::vector<std::vector<RElem>> V(d * k, std::vector<RElem>(d * k, dring->zero(prec)));
  for (std::size_t I = 0; I < k; ++I)
    for (std::size_t J = 0; J < k; ++J)
      for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
          TensorAccum acc(dring, T.pe, prec);
          unsigned xi = ch.transversal[i], xj_inv = G.inv(ch.transversal[j]);
          for (std::size_t hi = 0; hi < ch.H.size(); ++hi) {
            unsigned g = G.mul(G.mul(xi, ch.H[hi]), xj_inv);
            acc.add(ch.theta_exp[hi], M[I][J].blk(g));
          }
          V[I * d + i][J * d + j] = acc.finish(prec);
        }
  if (V.size() == 1) return V[0][0];
  return det_local(std::move(V), dring, prec);
}

RElem det_value_virtual(const GrElem& x, const CharTable& T, const VirtualChar& vc,
                        const RingPtr& dring) {
  RElem out = dring->one(x.prec);
  for (std::size_t i = 0; i < vc.size(); ++i) {
    if (vc[i] == 0) continue;
    RElem v = det_value(x, T, (unsigned)i, dring);
    long long mult = vc[i];
    if (mult < 0) {
      v = invert(v);  // NonUnit propagates per contract
      mult = -mult;
    }
    for (long long t = 0; t < mult; ++t) out = rmul(out, v);
  }
  return out;
}

bool det_equal(const GrElem& x, const GrElem& y, const CharTable& T, const RingPtr& dring,
               unsigned k) {
  for (unsigned chi = 0; chi < T.irr.size(); ++chi)
    if (!requal_at(det_value(x, T, chi, dring), det_value(y, T, chi, dring), k)) return false;
  return true;
}

// ---------------- scaled values and logarithms ----------------

ScaledR sc_from(const RElem& v, unsigned eff) { return ScaledR{v, 0, std::min(eff, v.prec)}; }

namespace {

// p^{D-denom} * payload; scaling by p^j is exact, so the payload precision
// grows by j (capped at the ring construction precision)
RElem payload_at_denom(const ScaledR& a, unsigned D) {
  if (D == a.denom) return a.v;
  unsigned shift = D - a.denom;
  unsigned newprec = std::min(a.v.prec + shift, a.v.ring->precision());
  RElem out = a.v.ring->zero(newprec);
  u64 m = a.v.ring->modulus_at(newprec);
  u64 f = 1;
  for (unsigned i = 0; i < shift; ++i) f = (f * a.v.ring->p()) % m;
  a.v.ring->scale(out.c, a.v.c, f, m);
  return out;
}

}  // namespace

ScaledR sc_add(const ScaledR& a, const ScaledR& b) {
  unsigned D = std::max(a.denom, b.denom);
  RElem va = payload_at_denom(a, D), vb = payload_at_denom(b, D);
  ScaledR r{radd(va, vb), D, std::min(a.eff, b.eff)};
  return r;
}

ScaledR sc_sub(const ScaledR& a, const ScaledR& b) {
  unsigned D = std::max(a.denom, b.denom);
  RElem va = payload_at_denom(a, D), vb = payload_at_denom(b, D);
  ScaledR r{rsub(va, vb), D, std::min(a.eff, b.eff)};
  return r;
}

ScaledR sc_scale_int(const ScaledR& a, long long c) {
  RingPtr R = a.v.ring;
  return ScaledR{rmul(a.v, R->from_int(c, a.v.prec)), a.denom, a.eff};
}

bool sc_is_zero_at(const ScaledR& a, unsigned k) {
  unsigned kk = std::min(k, a.eff);
  require(kk + a.denom <= a.v.prec, Err::PrecisionStarved, "scaled compare beyond payload");
  u64 m = a.v.ring->modulus_at(kk + a.denom);
  for (u64 x : a.v.c)
    if (x % m != 0) return false;
  return true;
}

bool sc_equal_at(const ScaledR& a, const ScaledR& b, unsigned k) {
  return sc_is_zero_at(sc_sub(a, b), k);
}

ScaledR log_det(const GrElem& u, const CharTable& T, unsigned chi, const RingPtr& dring,
                unsigned n) {
  const u64 p = dring->p();
  RElem val = det_value(u, T, chi, dring);
  const unsigned W = val.prec;
  RElem one = dring->one(W);
  unsigned M = 0;
  while (valuation(rsub(val, one)) < 2) {
    val = rpow(val, p);
    ++M;
    require(M <= 64, Err::Internal, "determinant value does not approach 1 under p-powering");
  }
  // log(1-x) = -sum x^k/k with v(x) >= 2; payload carries p^A
  RElem x = rsub(one, val);
  unsigned A = ilog(p, W + 2) + 1;
  u64 m = dring->modulus_at(W);
  RElem P = x;
  RElem S = dring->zero(W);
  for (u64 k = 1; !ris_zero(P); ++k) {
    require(k <= (u64)W + 8, Err::Internal, "log series did not terminate");
    unsigned t = val_p(k, p, A + 1);
    require(t <= A, Err::Internal, "log guard budget exceeded");
    u64 pt = 1;
    for (unsigned i = 0; i < t; ++i) pt *= p;
    u64 pa = 1;
    for (unsigned i = 0; i < A - t; ++i) pa *= p;
    u64 cc = mulmod(pa % m, inv_mod_ppow(k / pt, p, m), m);
    kernels().axpy(S.c.data(), P.c.data(), S.c.size(), cc, m);
    P = rmul(P, x);
  }
  S = rneg(S);
  unsigned denom = M + A;
  require(W > denom, Err::PrecisionStarved, "log_det needs more working precision");
  unsigned eff = std::min(n, W - denom);
  return ScaledR{S, denom, eff};
}

ScaledR log_det_virtual(const GrElem& u, const CharTable& T, const VirtualChar& vc,
                        const RingPtr& dring, unsigned n) {
  ScaledR acc = sc_from(dring->zero(u.prec), n);
  for (std::size_t i = 0; i < vc.size(); ++i) {
    if (vc[i] == 0) continue;
    acc = sc_add(acc, sc_scale_int(log_det(u, T, (unsigned)i, dring, n), vc[i]));
  }
  return acc;
}

RElem pair_cv_char(const ClassVec& v, const CharTable& T, unsigned chi, const RingPtr& dring) {
  const unsigned prec = v.prec;
  TensorAccum acc(dring, T.pe, prec);
  for (unsigned K = 0; K < v.G->num_classes(); ++K) {
    const CycInt& val = T.irr[chi].values[K];
    for (std::size_t i = 0; i < val.c.size(); ++i) acc.add_int_mult((u64)i, v.blk(K), val.c[i]);
  }
  return acc.finish(prec);
}

bool verify_lemma14(const GrElem& x, const CharTable& T, unsigned chi, const RingPtr& dring,
                    unsigned n) {
  GrElem one = gr_one(x.G, x.R, x.prec);
  GrElem u = gr_add(one, x);
  ClassVec L = group_log(u, n);
  ScaledR lhs = sc_from(pair_cv_char(L, T, chi, dring), n);
  ScaledR t1 = sc_scale_int(log_det(u, T, chi, dring, n), (long long)x.R->p());
  VirtualChar psi_chi = adams_psi_p(T, chi);
  GrElem uf = gr_add(one, apply_coeff_frobenius(x));
  ScaledR t2 = log_det_virtual(uf, T, psi_chi, dring, n);
  ScaledR rhs = sc_sub(t1, t2);
  return sc_equal_at(lhs, rhs, n >= 2 ? n - 2 : 1);
}

bool torsion_test(const GrElem& u, const CharTable& T, const RingPtr& dring, unsigned n) {
  for (unsigned chi = 0; chi < T.irr.size(); ++chi)
    if (!sc_is_zero_at(log_det(u, T, chi, dring, n), n)) return false;
  return true;
}

}  // namespace grouplog
