#include "grouplog/padiclog.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "grouplog/kernels.hpp"

namespace grouplog {

namespace {

unsigned ilog(u64 p, u64 x) {  // floor log_p x, x >= 1
  unsigned v = 0;
  while (x >= p) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

unsigned nilpotency_index(const FiniteGroup& G, u64 p) {
  // the cache pins its keys: cached groups stay allocated, so pointer keys
  // can never be recycled by later allocations
  static std::mutex mu;
  static std::map<std::pair<const FiniteGroup*, u64>, std::pair<GroupPtr, unsigned>> cache;
  GroupPtr Gp = G.shared_from_this();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({&G, p});
    if (it != cache.end()) return it->second.second;
  }
  RingPtr F = Ring::leaf(p, 1);
  Lattice I = ideal_lattice(Gp, F, IdealKind::I, 1);
  Lattice acc = I;
  unsigned N = 1;
  while (!acc.is_zero()) {
    acc = lattice_product(acc, I, Gp, F);
    ++N;
    require(N <= 4 * G.order(), Err::Internal, "nilpotency index runaway");
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[{&G, p}] = {Gp, N};
  return N;
}

unsigned nilpotency_index(const GroupPtr& G, const RingPtr& R) {
  return nilpotency_index(*G, R->p());
}

unsigned plog_guard(unsigned N, u64 p, unsigned n) {
  // A bounds v_p(k) over the summed terms k <= N*(working precision) + N;
  // the fixpoint settles in a few rounds since A only grows like log
  unsigned A = 1;
  for (int i = 0; i < 4; ++i) A = ilog(p, (u64)N * (n + A + 2) + N) + 1;
  return A;
}

// tighter guard when 1-u has coefficient valuation vx >= 1: the k-th term
// already has valuation k*vx, so the series stops near (n+A)/vx
unsigned plog_guard_val(unsigned N, u64 p, unsigned n, unsigned vx) {
  if (vx == 0) return plog_guard(N, p, n);
  unsigned A = 1;
  for (int i = 0; i < 4; ++i) A = ilog(p, (u64)(n + A + 2) / vx + 2) + 1;
  return A;
}

unsigned plog_required_precision(unsigned N, u64 p, unsigned n) {
  return n + plog_guard(N, p, n) + 2;
}

unsigned plog_required_precision_val(unsigned N, u64 p, unsigned n, unsigned vx) {
  return n + plog_guard_val(N, p, n, vx) + 2;
}

unsigned pexp_required_precision(u64 p, unsigned n) {
  unsigned K = 1;
  while (2 * K < n + 1 + (K - 1) / (unsigned)(p - 1) + 1) ++K;
  unsigned A = 0;
  for (u64 q = p; q <= K; q *= p) A += (unsigned)(K / q);
  return n + A + 2;
}

unsigned working_precision(const GroupPtr& G, u64 p, unsigned n) {
  unsigned N = nilpotency_index(*G, p);
  // group_log guards + headroom for the log-of-determinant powering used by
  // the character-side checks (M <= ceil(log_p N) + 2) and one p-division
  unsigned A = plog_guard(N, p, n + 2);
  unsigned M = ilog(p, N) + 3;
  unsigned W = n + A + M + 4;
  // the headroom beyond the plog floor only feeds determinant logs, which
  // check their own budget; clamp to the modulus cap when the floor fits
  unsigned cap = 0;
  for (u64 q = 1; q < kModulusCap / p; q *= p) ++cap;
  unsigned floor_prec = plog_required_precision(N, p, n + 2) + 1;
  if (W > cap) {
    require(floor_prec <= cap, Err::InvalidArgument,
            "modulus p^n exceeds the 2^32 working cap");
    W = cap;
  }
  return W;
}

ScaledGr plog(const GrElem& u, unsigned n) {
  const RingPtr& R = u.R;
  const u64 p = R->p();
  unsigned N = nilpotency_index(*u.G, p);
  unsigned vx = std::min(4u, gr_valuation(gr_sub(u, gr_one(u.G, R, u.prec))));
  unsigned A = plog_guard_val(N, p, n, vx);
  unsigned W = n + A + 2;
  require(u.prec >= W, Err::PrecisionStarved,
          "plog at target " + std::to_string(n) + " needs input precision " + std::to_string(W));
  // u - 1 must lie in the radical I + pR[G]
  {
    RElem a = augment(gr_sub(u, gr_one(u.G, R, u.prec)));
    require(valuation(a) >= 1, Err::NotOneUnit, "u - 1 is not in the radical");
  }
  u64 m = R->modulus_at(W);
  GrElem uw = gr_reduce_precision(u, W);
  GrElem x = gr_sub(gr_one(u.G, R, W), uw);  // u = 1 - x
  GrElem P = x;
  GrElem S = gr_zero(u.G, R, W);
  u64 kmax = (u64)N * W + 4 * N;
  for (u64 k = 1; !gr_is_zero(P); ++k) {
    require(k <= kmax, Err::NoConvergence, "plog series did not terminate");
    unsigned t = val_p(k, p, A + 1);
    require(t <= A, Err::Internal, "plog guard budget exceeded");
    u64 pt = 1;
    for (unsigned i = 0; i < t; ++i) pt *= p;
    u64 unit_inv = inv_mod_ppow(k / pt, p, m);
    u64 pa = 1;
    for (unsigned i = 0; i < A - t; ++i) pa *= p;
    // S += P * p^{A-t} * unit_inv
    kernels().axpy(S.c.data(), P.c.data(), S.c.size(), mulmod(pa % m, unit_inv, m), m);
    P = gr_mul(P, x);
  }
  // log u = -sum x^k/k
  return ScaledGr{gr_neg(S), A, n};
}

GrElem pexp(const GrElem& a, unsigned n) {
  const RingPtr& R = a.R;
  const u64 p = R->p();
  require(gr_valuation(a) >= 2, Err::ValuationTooSmall, "exp needs coefficient valuation >= 2");
  // cutoff: term a^k/k! has valuation >= 2k - (k-1)/(p-1) >= n + 1
  unsigned K = 1;
  while (2 * K < n + 1 + (K - 1) / (unsigned)(p - 1) + 1) ++K;
  unsigned A = 0;  // v_p(K!)
  for (u64 q = p; q <= K; q *= p) A += (unsigned)(K / q);
  unsigned W = n + A + 2;
  require(a.prec >= W, Err::PrecisionStarved,
          "pexp at target " + std::to_string(n) + " needs input precision " + std::to_string(W));
  u64 m = R->modulus_at(W);
  GrElem aw = gr_reduce_precision(a, W);
  GrElem P = gr_one(a.G, R, W);  // a^k
  GrElem S = gr_zero(a.G, R, W);
  u64 kfact_val = 0, kfact_unit = 1;
  for (unsigned k = 0; k <= K; ++k) {
    if (k > 0) {
      P = gr_mul(P, aw);
      unsigned t = val_p(k, p, 64);
      kfact_val += t;
      u64 pt = 1;
      for (unsigned i = 0; i < t; ++i) pt *= p;
      kfact_unit = mulmod(kfact_unit, k / pt, m);
    }
    // S += P * p^{A - v_p(k!)} * (unit part of k!)^{-1}
    require(kfact_val <= A, Err::Internal, "pexp guard budget exceeded");
    u64 pa = 1;
    for (unsigned i = 0; i < A - (unsigned)kfact_val; ++i) pa *= p;
    u64 c = mulmod(pa % m, inv_mod_ppow(kfact_unit, p, m), m);
    kernels().axpy(S.c.data(), P.c.data(), S.c.size(), c, m);
  }
  return gr_reduce_precision(gr_divide_p(S, A), std::min(n, W - A));
}

ClassVec group_log_unit(const GrElem& u, unsigned n) {
  ScaledGr sl = plog(u, n + 2);
  ClassVec cv = phi(sl.v);
  ClassVec L_payload = cv_sub(cv_scale_scalar(cv, u.R->p()), psi_bar(cv));
  // the integral logarithm leaves no denominators: p^denom divides exactly
  if (cv_valuation(L_payload) < sl.denom)
    fail(Err::IntegralityViolation, "group logarithm failed to be integral");
  ClassVec L = cv_divide_p(L_payload, sl.denom);
  return cv_reduce_precision(L, std::min(n, L.prec));
}

ClassVec group_log(const GrElem& u, unsigned n) {
  {
    RElem eps = augment(u);
    require(requal_at(eps, u.R->one(u.prec), u.prec), Err::NotOneUnit,
            "group_log needs augmentation exactly 1 (u in 1 + I)");
  }
  return group_log_unit(u, n);
}

ClassVec nu_over_p(const GrElem& u, unsigned n) {
  ClassVec L = group_log(u, n + 1);
  if (cv_valuation(L) < 1) fail(Err::IntegralityViolation, "nu/p failed exact division by p");
  return cv_reduce_precision(cv_divide_p(L, 1), n);
}

// ---------------- solvers ----------------

namespace {

std::vector<u64> map_one_minus_c(const GroupPtr& G, const RingPtr& R, unsigned c,
                                 const std::vector<u64>& row, unsigned W) {
  GrElem z = gr_from_flat(G, R, row, W);
  GrElem cz = gr_mul(gr_group_elem(G, R, c, W), z);
  ClassVec v = phi(gr_sub(z, cz));
  return flat_at(cv_scale_scalar(v, R->p()), W);
}

// chain of I^{2^t} lattices at modulus p^n, shared across solver calls (the
// products dominate the solver cost and are sample-independent)
struct IpowChain {
  GroupPtr G;  // pins the cache key
  RingPtr R;
  std::vector<Lattice> levels;
};

const Lattice& ipow_level(const GroupPtr& G, const RingPtr& R, unsigned n, unsigned t) {
  static std::mutex mu;
  static std::map<std::tuple<const FiniteGroup*, const Ring*, unsigned>,
                  std::shared_ptr<IpowChain>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(G.get(), R.get(), n);
  auto& entry = cache[key];
  if (!entry) {
    entry = std::make_shared<IpowChain>();
    entry->G = G;
    entry->R = R;
    entry->levels.push_back(ideal_lattice(G, R, IdealKind::I, n));
  }
  while (entry->levels.size() <= t) {
    const Lattice& prev = entry->levels.back();
    entry->levels.push_back(lattice_product(prev, prev, G, R));
  }
  return entry->levels[t];
}

}  // namespace

GrElem solve_one_minus_c_preimage(const ClassVec& target, unsigned c, unsigned n) {
  const GroupPtr& G = target.G;
  const RingPtr& R = target.R;
  const u64 p = R->p();
  require(target.prec >= n, Err::PrecisionStarved, "target precision below requested accuracy");
  const unsigned up = R->precision();  // element precision; residuals live mod p^n

  ClassVec tgt = cv_reduce_precision(target, n);
  Lattice img = lattice_scale(ideal_lattice(G, R, IdealKind::PhiOneMinusC, n, c), 1);
  require(img.contains(flat_at(tgt, n)), Err::TargetNotInLattice,
          "target is not in p*phi((1-c)R[G])");

  GrElem u = gr_one(G, R, up);
  ClassVec res = cv_sub(tgt, group_log(u, n));
  // successive approximation: solve to first order inside (1-c) I^{2^t};
  // each correction leaves an error quadratic in the filtration, so the
  // level doubles every round
  unsigned level = 0;
  unsigned iterations = 0;
  const unsigned budget = 8 + 2 * (unsigned)(32 - __builtin_clz(n * G->order() + 2));
  while (!cv_is_zero(res)) {
    require(++iterations <= budget, Err::NoConvergence, "(1-c) solver exceeded its budget");
    const Lattice& ipow = ipow_level(G, R, n, level);
    std::vector<std::vector<u64>> mapped;
    mapped.reserve(ipow.rows.size());
    for (const auto& row : ipow.rows) mapped.push_back(map_one_minus_c(G, R, c, row, n));
    auto sol = solve_in_span(mapped, flat_at(res, n), G->num_classes() * R->rank(), p, n);
    require(sol.has_value(), Err::NoConvergence, "(1-c) solver: residual left the expected span");
    GrElem z = gr_zero(G, R, up);
    u64 m = R->modulus_at(up);
    for (std::size_t i = 0; i < ipow.rows.size(); ++i)
      if ((*sol)[i] != 0)
        kernels().axpy(z.c.data(), ipow.rows[i].data(), z.c.size(), (*sol)[i] % m, m);
    GrElem x = gr_sub(z, gr_mul(gr_group_elem(G, R, c, up), z));  // (1-c) z
    u = gr_mul(u, gr_add(gr_one(G, R, up), x));
    res = cv_sub(tgt, group_log(u, n));
    ++level;
  }
  return gr_sub(u, gr_one(G, R, u.prec));
}

GrElem solve_A_preimage(const GroupPtr& G, const RingPtr& R, const ClassVec& target, unsigned n) {
  require(target.G.get() == G.get() && target.R.get() == R.get(), Err::GroupMismatch,
          "target over a different group or ring");
  const unsigned up = R->precision();
  ClassVec tgt = cv_reduce_precision(target, std::min(target.prec, n));
  require(tgt.prec >= n, Err::PrecisionStarved, "target precision below requested accuracy");
  {
    Lattice pa = lattice_scale(ideal_lattice(G, R, IdealKind::PhiA, n), 1);
    require(pa.contains(flat_at(tgt, n)), Err::TargetNotInLattice,
            "target is not in p*phi(A(R[G]))");
  }
  if (G->is_abelian()) return gr_zero(G, R, up);  // A = 0, so only target 0 reaches here

  unsigned c = find_central_commutator_order_p(*G);
  QuotientResult q = central_quotient(G, c);

  ClassVec tbar = cv_push(tgt, q.proj, R);
  GrElem xbar = solve_A_preimage(q.group, R, tbar, n);

  // lift along the least-preimage section of G -> G/<c>
  std::vector<unsigned> section(q.group->order(), G->order());
  for (unsigned g = G->order(); g-- > 0;) section[q.proj.images[g]] = g;
  GrElem x0 = gr_zero(G, R, up);
  for (unsigned h = 0; h < q.group->order(); ++h) {
    auto src = xbar.blk(h);
    auto dst = x0.blk(section[h]);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  ClassVec res = cv_sub(tgt, group_log(gr_add(gr_one(G, R, up), x0), n));
  GrElem b = solve_one_minus_c_preimage(res, c, n);
  GrElem u = gr_mul(gr_add(gr_one(G, R, up), x0), gr_add(gr_one(G, R, up), b));
  GrElem x = gr_sub(u, gr_one(G, R, up));
  // forward check is part of the contract
  ClassVec check = group_log(gr_add(gr_one(G, R, up), x), n);
  require(cv_equal_at(check, tgt, n), Err::NoConvergence, "A-preimage forward check failed");
  return x;
}

// ---------------- cotangent space ----------------

CotangentModule cotangent(const GroupPtr& G, const RingPtr& R, unsigned n) {
  require(G->is_abelian(), Err::InvalidArgument, "cotangent module needs an abelian group");
  CotangentModule T;
  T.G = G;
  T.R = R;
  T.prec = n;
  auto basis = abelian_basis(*G);
  for (auto [g, o] : basis) {
    T.basis.push_back(g);
    T.basis_order.push_back(o);
  }
  T.coords = abelian_coords(*G, basis);
  return T;
}

std::vector<u64> CotangentModule::reduce(std::vector<u64> v) const {
  unsigned rank = R->rank();
  for (unsigned b = 0; b < blocks(); ++b) {
    unsigned mi = val_p(basis_order[b], R->p(), 32);
    u64 mb = R->modulus_at(std::min(mi, prec));
    for (unsigned a = 0; a < rank; ++a) v[(std::size_t)b * rank + a] %= mb;
  }
  return v;
}

std::vector<u64> CotangentModule::d(const GrElem& j) const {
  require(j.G.get() == G.get(), Err::GroupMismatch, "element from another group");
  unsigned rank = R->rank();
  std::vector<u64> out(dim(), 0);
  u64 m = R->modulus_at(prec);
  for (unsigned g = 1; g < G->order(); ++g) {
    auto blk = j.blk(g);
    if (Ring::is_zero(blk)) continue;
    for (unsigned b = 0; b < blocks(); ++b) {
      u64 a = coords[g][b] % m;
      if (a == 0) continue;
      std::vector<u64> red(blk.begin(), blk.end());
      for (u64& x : red) x %= m;
      kernels().axpy(out.data() + (std::size_t)b * rank, red.data(), rank, a, m);
    }
  }
  return reduce(std::move(out));
}

std::vector<u64> CotangentModule::apply_F(const std::vector<u64>& v) const {
  unsigned rank = R->rank();
  std::vector<u64> out(dim(), 0);
  u64 m = R->modulus_at(prec);
  for (unsigned b = 0; b < blocks(); ++b)
    R->frobenius_span(std::span<u64>(out).subspan((std::size_t)b * rank, rank),
                      std::span<const u64>(v).subspan((std::size_t)b * rank, rank), m);
  return reduce(std::move(out));
}

bool CotangentModule::equal(const std::vector<u64>& a, const std::vector<u64>& b,
                            unsigned k) const {
  unsigned rank = R->rank();
  for (unsigned bb = 0; bb < blocks(); ++bb) {
    unsigned mi = val_p(basis_order[bb], R->p(), 32);
    u64 mb = R->modulus_at(std::min({mi, prec, k}));
    for (unsigned t = 0; t < rank; ++t)
      if (a[(std::size_t)bb * rank + t] % mb != b[(std::size_t)bb * rank + t] % mb) return false;
  }
  return true;
}

std::vector<unsigned> CotangentModule::coker_one_minus_F() const {
  // T* = (+) R/p^{m_i}; quotient by (1-F)T* and the p^{m_i} relations
  unsigned rank = R->rank();
  unsigned D = dim();
  std::vector<std::vector<u64>> rels;
  u64 m = R->modulus_at(prec);
  for (unsigned b = 0; b < blocks(); ++b) {
    unsigned mi = val_p(basis_order[b], R->p(), 32);
    u64 pmi = 1;
    for (unsigned i = 0; i < std::min(mi, prec); ++i) pmi *= R->p();
    for (unsigned a = 0; a < rank; ++a) {
      // (1 - F) e_{b,a}
      std::vector<u64> e(D, 0), fe(D, 0);
      e[(std::size_t)b * rank + a] = 1;
      fe = apply_F(e);
      std::vector<u64> row(D);
      kernels().sub(row.data(), e.data(), fe.data(), D, m);
      rels.push_back(std::move(row));
      // p^{m_b} e_{b,a}
      std::vector<u64> pr(D, 0);
      pr[(std::size_t)b * rank + a] = pmi % m;
      rels.push_back(std::move(pr));
    }
  }
  Lattice sub = howell_form(std::move(rels), D, R->p(), prec);
  return quotient_invariants(full_ambient(D, R->p(), prec), sub);
}

std::vector<unsigned> coker_oracle(const GroupPtr& G, const RingPtr& R, unsigned n) {
  // (+)_i R/((1-F)R + p^{m_i} R), blockwise over the abelian basis orders
  GroupPtr A = G;
  if (!G->is_abelian()) A = abelianization(G).group;
  auto basis = abelian_basis(*A);
  unsigned rank = R->rank();
  std::vector<unsigned> inv;
  for (auto [g, o] : basis) {
    unsigned mi = std::min(val_p(o, R->p(), 32), n);
    u64 m = R->modulus_at(mi);
    std::vector<std::vector<u64>> rels;
    for (unsigned a = 0; a < rank; ++a) {
      std::vector<u64> e(rank, 0), fe(rank, 0), row(rank);
      e[a] = 1;
      R->frobenius_span(fe, e, m);
      kernels().sub(row.data(), e.data(), fe.data(), rank, m);
      rels.push_back(std::move(row));
    }
    auto q = quotient_invariants(full_ambient(rank, R->p(), mi),
                                 howell_form(std::move(rels), rank, R->p(), mi));
    inv.insert(inv.end(), q.begin(), q.end());
  }
  std::sort(inv.rbegin(), inv.rend());
  return inv;
}

bool differential_check(const GrElem& j, const CotangentModule& T, unsigned n) {
  // lhs: d(p^{-1} L(1+j)); for abelian G the class vector is the element
  GrElem one = gr_one(j.G, j.R, j.prec);
  ClassVec L = nu_over_p(gr_add(one, j), n);
  GrElem w = gr_from_flat(j.G, j.R, L.c, L.prec);  // classes are singletons
  std::vector<u64> lhs = T.d(gr_reduce_precision(w, std::min(w.prec, T.prec)));
  std::vector<u64> dj = T.d(gr_reduce_precision(j, std::min(j.prec, T.prec)));
  std::vector<u64> rhs(T.dim());
  std::vector<u64> fdj = T.apply_F(dj);
  u64 m = j.R->modulus_at(T.prec);
  kernels().sub(rhs.data(), dj.data(), fdj.data(), T.dim(), m);
  return T.equal(lhs, T.reduce(std::move(rhs)), n >= 2 ? n - 2 : 1);
}

std::vector<unsigned> lemma25_quotient(const GroupPtr& G, const RingPtr& R, unsigned c,
                                       unsigned n) {
  for (unsigned h = 0; h < G->order(); ++h)
    require(G->mul(c, h) == G->mul(h, c), Err::NotCentral, "c must be central");
  require(G->element_order(c) == G->p(), Err::WrongOrder, "c must have order p");
  require(!G->is_commutator(c), Err::IsCommutator, "c must not be a commutator");

  unsigned W = working_precision(G, R->p(), n);
  require(R->precision() >= W, Err::PrecisionStarved, "ring precision below solver needs");
  // image lattice of L on 1 + (1-c)R[G]: generators L(1 + p^k r_a (1-c) b)
  std::vector<std::vector<u64>> gens;
  for (unsigned k = 0; k < n; ++k) {
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= R->p();
    for (unsigned alpha = 0; alpha < R->rank(); ++alpha) {
      RElem e = R->zero(W);
      e.c[alpha] = pk % R->modulus_at(W);
      for (unsigned b = 0; b < G->order(); ++b) {
        GrElem g = gr_scale(gr_group_elem(G, R, b, W), e);
        GrElem x = gr_sub(g, gr_mul(gr_group_elem(G, R, c, W), g));  // (1-c) * p^k e b
        ClassVec L = group_log(gr_add(gr_one(G, R, W), x), n);
        gens.push_back(flat_at(cv_reduce_precision(L, n), n));
      }
    }
  }
  unsigned dim = G->num_classes() * R->rank();
  Lattice Limg = howell_form(std::move(gens), dim, R->p(), n);
  Lattice sup = lattice_scale(ideal_lattice(G, R, IdealKind::PhiOneMinusC, n, c), 1);
  require(lattice_contains(sup, Limg), Err::Internal, "L image left p phi((1-c)R[G])");
  return quotient_invariants(sup, Limg);
}

std::vector<unsigned> lemma25_oracle(const RingPtr& R) {
  // R/((1-F)R + pR): an F_p-vector space; dimension = corank of (1-F) mod p
  unsigned rank = R->rank();
  u64 p = R->p();
  std::vector<std::vector<u64>> rels;
  for (unsigned a = 0; a < rank; ++a) {
    std::vector<u64> e(rank, 0), fe(rank, 0), row(rank);
    e[a] = 1;
    R->frobenius_span(fe, e, p);
    for (unsigned t = 0; t < rank; ++t) row[t] = submod(e[t], fe[t], p);
    rels.push_back(std::move(row));
  }
  auto q = quotient_invariants(full_ambient(rank, p, 1), howell_form(std::move(rels), rank, p, 1));
  return q;
}

}  // namespace grouplog
