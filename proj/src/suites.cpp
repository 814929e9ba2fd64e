#include "grouplog/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "grouplog/elemparse.hpp"

namespace grouplog {

namespace {

u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Ctx {
  SuiteConfig cfg;
  GroupPtr G;
  RingPtr R;       // built at the working precision the suite needs
  unsigned n = 0;  // declared precision
  Rng sample_rng(const std::string& suite, unsigned idx) const {
    return Rng::derive({cfg.seed, fnv1a(suite), idx});
  }
};

// --ext f=<f> attaches an unramified extension to any suite: the non-descent
// suites then simply run over S = R (x) W_f. The descent suites instead use
// f as the Galois degree and keep the base ring, so they skip the wrap.
Ctx make_ctx(const SuiteConfig& cfg, unsigned work_prec, bool apply_ext = true) {
  Ctx c;
  c.cfg = cfg;
  c.G = build_group(cfg.group, cfg.p);
  RingSpec spec = parse_ring_spec(cfg.ring, cfg.p, work_prec);
  c.R = make_ring(spec);
  if (apply_ext && cfg.ext_f >= 2) c.R = Ring::unramified_extension(c.R, cfg.ext_f);
  c.n = cfg.prec;
  return c;
}

std::vector<unsigned> central_order_p_elements(const FiniteGroup& G) {
  std::vector<unsigned> out;
  for (unsigned z : G.center())
    if (G.element_order(z) == G.p()) out.push_back(z);
  return out;
}

using SuiteFn = std::function<void(const SuiteConfig&, SuiteResult&)>;

// ---------------- individual suites ----------------

void suite_thm16(const SuiteConfig& cfg, SuiteResult& res) {
  Ctx c = make_ctx(cfg, working_precision(build_group(cfg.group, cfg.p), cfg.p, cfg.prec));
  Lattice pPhiI = lattice_scale(ideal_lattice(c.G, c.R, IdealKind::PhiI, c.n), 1);
  Lattice pPhiI2;
  if (c.G->is_abelian())
    pPhiI2 = lattice_scale(phi_lattice(ideal_power_lattice(c.G, c.R, 2, c.n), c.G, c.R), 1);
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("thm16", i);
    GrElem u = gr_add(gr_one(c.G, c.R, c.R->precision()),
                      gr_random_I(c.G, c.R, rng, c.R->precision()));
    ClassVec L = group_log(u, c.n);
    ++res.samples_run;
    if (!pPhiI.contains(flat_at(L, c.n))) {
      res.failures.push_back({i, serialize(u), serialize(L), "p*phi(I) lattice"});
      continue;
    }
    if (c.G->is_abelian()) {
      GrElem u2 = gr_add(gr_one(c.G, c.R, c.R->precision()),
                         gr_random_I2(c.G, c.R, rng, c.R->precision()));
      ClassVec L2 = group_log(u2, c.n);
      if (!pPhiI2.contains(flat_at(L2, c.n)))
        res.failures.push_back({i, serialize(u2), serialize(L2), "p*I^2 lattice"});
    }
  }
}

void suite_thm17(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  if (c.G->is_abelian()) {
    // A(R[G]) = 0: the only valid target is 0, solved trivially
    ClassVec zero = cv_zero(c.G, c.R, c.R->precision());
    GrElem x = solve_A_preimage(c.G, c.R, zero, c.n);
    res.samples_run = 1;
    if (!gr_is_zero(x)) res.failures.push_back({0, "0", serialize(x), "0"});
    res.note = "abelian: A = 0, trivial target only";
    return;
  }
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(c.R, T.e);
  unsigned tol = c.n >= 2 ? c.n - 2 : 1;
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("thm17", i);
    GrElem a = gr_random_A(c.G, c.R, rng, c.R->precision());
    GrElem one = gr_one(c.G, c.R, c.R->precision());
    ClassVec target = group_log(gr_add(one, a), c.n);
    ++res.samples_run;
    GrElem x = solve_A_preimage(c.G, c.R, target, c.n);  // forward check inside
    ClassVec got = group_log(gr_add(one, x), c.n);
    if (!cv_equal_at(got, target, c.n)) {
      res.failures.push_back({i, serialize(a), serialize(got), serialize(target)});
      continue;
    }
    // strong round trip through determinants (Thm 28 injectivity)
    if (!det_equal(gr_add(one, x), gr_add(one, a), T, dring, tol))
      res.failures.push_back({i, serialize(a), serialize(gr_add(one, x)), "det mismatch"});
  }
}

void suite_lemma14(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(c.R, T.e);
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("lemma14", i);
    GrElem x = gr_random_I(c.G, c.R, rng, c.R->precision());
    ++res.samples_run;
    for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
      if (!verify_lemma14(x, T, chi, dring, c.n)) {
        res.failures.push_back({i, serialize(x), "chi(L(1+x))", "p logDet - logDet psi^p"});
        break;
      }
    }
  }
}

void suite_lemma18(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  auto cs = central_order_p_elements(*c.G);
  if (cs.empty()) {
    res.note = "skipped: no central element of order p";
    return;
  }
  u64 p = cfg.p;
  for (unsigned c_elem : cs) {
    // (a) exact congruence (1-c)^p = -p(1-c) mod p(1-c)^2, as lattice membership
    GrElem omc = gr_sub(gr_one(c.G, c.R, c.n), gr_group_elem(c.G, c.R, c_elem, c.n));
    GrElem w = gr_add(gr_pow(omc, p), gr_scale_scalar(omc, p));
    std::vector<std::vector<u64>> sq_gens;
    {
      GrElem sq = gr_mul(omc, omc);
      for (unsigned g = 0; g < c.G->order(); ++g)
        for (unsigned alpha = 0; alpha < c.R->rank(); ++alpha) {
          RElem e = c.R->zero(c.n);
          e.c[alpha] = 1;
          sq_gens.push_back(gr_scale(gr_mul(sq, gr_group_elem(c.G, c.R, g, c.n)), e).c);
        }
    }
    Lattice pSq = lattice_scale(
        howell_form(std::move(sq_gens), c.G->order() * c.R->rank(), p, c.n), 1);
    ++res.samples_run;
    if (!pSq.contains(flat_at(w, c.n)))
      res.failures.push_back({c_elem, c.G->name(c_elem), serialize(w), "p(1-c)^2 lattice"});

    // (b) sampled congruence L(1+(1-c)xi) = p(phi(xi) - Psibar phi(xi))(1-c)
    Lattice pPhiSq =
        lattice_scale(ideal_lattice(c.G, c.R, IdealKind::PhiOneMinusCSq, c.n, c_elem), 1);
    unsigned per_c = std::max(1u, cfg.samples / (unsigned)cs.size());
    for (unsigned i = 0; i < per_c; ++i) {
      Rng rng = c.sample_rng("lemma18b", (unsigned)(c_elem * 1000 + i));
      GrElem xi = gr_random(c.G, c.R, rng, c.R->precision());
      GrElem omcW =
          gr_sub(gr_one(c.G, c.R, c.R->precision()), gr_group_elem(c.G, c.R, c_elem, c.R->precision()));
      GrElem u = gr_add(gr_one(c.G, c.R, c.R->precision()), gr_mul(omcW, xi));
      ClassVec lhs = group_log(u, c.n);
      ClassVec pv = phi(xi);
      ClassVec rhs0 = cv_sub(pv, psi_bar(pv));
      ClassVec rhs = cv_scale_scalar(cv_sub(rhs0, cv_mul_central(rhs0, c_elem)), p);
      ClassVec diff = cv_sub(lhs, rhs);
      ++res.samples_run;
      if (!pPhiSq.contains(flat_at(cv_reduce_precision(diff, c.n), c.n))) {
        res.failures.push_back({i, serialize(xi), serialize(diff), "p phi((1-c)^2) lattice"});
        break;
      }
    }
  }
}

void suite_lemma21(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, std::max(cfg.prec + 4, working_precision(G0, cfg.p, cfg.prec)));
  auto cs = central_order_p_elements(*c.G);
  if (cs.empty()) {
    res.note = "skipped: no central element of order p";
    return;
  }
  unsigned dim = c.G->num_classes() * c.R->rank();
  for (unsigned c_elem : cs) {
    QuotientResult q = central_quotient(c.G, c_elem);
    // (1-c) R[C_G] as a class-coordinate lattice
    std::vector<std::vector<u64>> gens;
    {
      u64 m = c.R->modulus_at(c.n);
      for (unsigned K = 0; K < c.G->num_classes(); ++K) {
        unsigned cK = c.G->class_of(c.G->mul(c_elem, c.G->class_rep(K)));
        for (unsigned alpha = 0; alpha < c.R->rank(); ++alpha) {
          std::vector<u64> row(dim, 0);
          row[(std::size_t)K * c.R->rank() + alpha] = addmod(row[(std::size_t)K * c.R->rank() + alpha], 1, m);
          row[(std::size_t)cK * c.R->rank() + alpha] =
              submod(row[(std::size_t)cK * c.R->rank() + alpha], 1, m);
          gens.push_back(std::move(row));
        }
      }
    }
    Lattice omcCV = howell_form(std::move(gens), dim, cfg.p, c.n);

    // first identity: (1-c) R[C_G] = ker(R[C_G] -> R[C_Gbar])
    std::vector<std::vector<u64>> pushrows;
    unsigned dimq = q.group->num_classes() * c.R->rank();
    for (unsigned K = 0; K < c.G->num_classes(); ++K)
      for (unsigned alpha = 0; alpha < c.R->rank(); ++alpha) {
        ClassVec e = cv_zero(c.G, c.R, c.n);
        e.blk(K)[alpha] = 1;
        pushrows.push_back(flat_at(cv_push(e, q.proj, c.R), c.n));
      }
    Lattice ker = preimage_lattice(pushrows, dim, howell_form({}, dimq, cfg.p, c.n));
    ++res.samples_run;
    if (!lattice_equal(omcCV, ker)) {
      res.failures.push_back({c_elem, c.G->name(c_elem), "(1-c)R[C_G]", "ker to C_Gbar"});
      continue;
    }

    // division identity: {x : p^k x in (1-c)R[C_G]} = (1-c)R[C_G] + p^{n-k} ambient
    for (unsigned k = 1; k <= 3 && k < c.n; ++k) {
      std::vector<std::vector<u64>> scaled;
      u64 pk = 1;
      for (unsigned t = 0; t < k; ++t) pk *= cfg.p;
      for (unsigned i = 0; i < dim; ++i) {
        std::vector<u64> row(dim, 0);
        row[i] = pk;
        scaled.push_back(std::move(row));
      }
      Lattice pre = preimage_lattice(scaled, dim, omcCV);
      Lattice rhs = lattice_sum(omcCV, lattice_scale(full_ambient(dim, cfg.p, c.n), c.n - k));
      ++res.samples_run;
      if (!lattice_equal(pre, rhs)) {
        res.failures.push_back({k, c.G->name(c_elem), "p^-k (1-c)R[C_G]",
                                "(1-c)R[C_G] + p^{n-k}"});
      }
    }

    // for commutator c: ker(phi(I^2) -> phibar(I^2)) = (1-c)R[C_G]
    if (c.G->is_commutator(c_elem)) {
      Lattice phiI2 = phi_lattice(ideal_power_lattice(c.G, c.R, 2, c.n), c.G, c.R);
      Lattice kerI2 = lattice_intersect(phiI2, ker);
      ++res.samples_run;
      if (!lattice_equal(kerI2, omcCV))
        res.failures.push_back({c_elem, c.G->name(c_elem), "ker phi(I^2)", "(1-c)R[C_G]"});
    }
  }
}

void suite_lemma25(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  std::vector<unsigned> cs;
  for (unsigned z : central_order_p_elements(*c.G))
    if (!c.G->is_commutator(z)) cs.push_back(z);
  if (cs.empty()) {
    res.note = "skipped: every central order-p element is a commutator";
    return;
  }
  auto oracle = lemma25_oracle(c.R);
  for (unsigned c_elem : cs) {
    auto inv = lemma25_quotient(c.G, c.R, c_elem, c.n);
    ++res.samples_run;
    if (inv != oracle) {
      std::ostringstream l, r;
      for (unsigned v : inv) l << v << " ";
      for (unsigned v : oracle) r << v << " ";
      res.failures.push_back({c_elem, c.G->name(c_elem), l.str(), r.str()});
    }
  }
}

void suite_prop10(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  unsigned N = nilpotency_index(*G0, cfg.p);
  // two precision chains: exp-then-log needs pexp at target n + log guards;
  // log-then-exp needs plog at target pexp_required(n). Both inputs sit in
  // 1 + p^2 R[G], so the valuation-aware log guard applies.
  unsigned nE = plog_required_precision_val(N, cfg.p, cfg.prec, 2);
  unsigned tB = pexp_required_precision(cfg.p, cfg.prec);
  unsigned W = std::max({pexp_required_precision(cfg.p, nE),
                         plog_required_precision_val(N, cfg.p, tB, 2),
                         working_precision(G0, cfg.p, cfg.prec)});
  Ctx c = make_ctx(cfg, W);
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(c.R, T.e);
  u64 p2 = cfg.p * cfg.p;
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("prop10", i);
    ++res.samples_run;
    // plog(pexp(a)) = a on p^2 R[G]
    GrElem a = gr_scale_scalar(gr_random(c.G, c.R, rng, W), p2);
    GrElem u = pexp(a, nE);
    ScaledGr back = plog(u, cfg.prec);
    GrElem lhs;
    {
      u64 pd = 1;
      for (unsigned t = 0; t < back.denom; ++t) pd *= cfg.p;
      lhs = gr_scale_scalar(gr_reduce_precision(a, back.v.prec), pd % c.R->modulus_at(back.v.prec));
    }
    unsigned cmp = std::min(c.n + back.denom, back.v.prec);
    if (!gr_equal_at(lhs, back.v, cmp)) {
      res.failures.push_back({i, serialize(a), serialize(back.v), serialize(lhs)});
      continue;
    }
    // pexp(plog(u)) = u on 1 + p^2 R[G]
    GrElem u2 = gr_add(gr_one(c.G, c.R, W), gr_scale_scalar(gr_random(c.G, c.R, rng, W), p2));
    ScaledGr l2 = plog(u2, tB);
    if (gr_valuation(l2.v) < l2.denom) {
      res.failures.push_back({i, serialize(u2), "non-integral log", ""});
      continue;
    }
    GrElem val = gr_divide_p(l2.v, l2.denom);
    GrElem back2 = pexp(val, c.n);
    if (!gr_equal_at(back2, gr_reduce_precision(u2, back2.prec), std::min(c.n, back2.prec))) {
      res.failures.push_back({i, serialize(u2), serialize(back2), "round trip"});
      continue;
    }
  }
  // injectivity witness: det_equal(1, 1 + p^2(g-1)) must fail for g != 1.
  // The distinction can sit above p^n (e.g. central g whose determinant is a
  // square of a 1-unit), so the witness compares at the full working
  // precision, which is the suite's operational det_equal.
  GrElem one = gr_one(c.G, c.R, W);
  for (unsigned g = 1; g < c.G->order(); ++g) {
    GrElem v = gr_add(one, gr_scale_scalar(gr_sub(gr_group_elem(c.G, c.R, g, W), one), p2));
    ++res.samples_run;
    if (det_equal(one, v, T, dring, W))
      res.failures.push_back({g, c.G->name(g), "Det(1) == Det(1+p^2(g-1))", "expected distinct"});
  }
}

void suite_prop13(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(c.R, T.e);
  unsigned W = c.R->precision();
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("prop13", i);
    unsigned k = (i % 2 == 0) ? 2 : 3;
    // invertible by construction: unit diagonal, radical off-diagonal noise
    std::vector<std::vector<GrElem>> M(k);
    for (unsigned r = 0; r < k; ++r)
      for (unsigned s = 0; s < k; ++s)
        M[r].push_back(r == s ? gr_random_unit(c.G, c.R, rng, W)
                              : gr_random_I(c.G, c.R, rng, W));
    // mix with elementary row operations to lose the special shape
    for (unsigned t = 0; t < k; ++t) {
      unsigned r1 = (unsigned)rng.below(k), r2 = (unsigned)rng.below(k);
      if (r1 == r2) continue;
      GrElem f = gr_random(c.G, c.R, rng, W);
      for (unsigned s = 0; s < k; ++s) M[r1][s] = gr_add(M[r1][s], gr_mul(f, M[r2][s]));
    }
    GrElem u = reduce_matrix_to_unit(M);
    ++res.samples_run;
    for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
      RElem dm = det_value_matrix(M, T, chi, dring);
      RElem du = det_value(u, T, chi, dring);
      if (!requal_at(dm, du, c.n)) {
        res.failures.push_back({i, "matrix " + std::to_string(k), to_string(dm), to_string(du)});
        break;
      }
    }
  }
}

void suite_thm29(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  GroupPtr A = c.G->is_abelian() ? c.G : abelianization(c.G).group;
  CotangentModule T = cotangent(A, c.R, c.n);
  auto inv1 = T.coker_one_minus_F();
  auto inv2 = coker_oracle(c.G, c.R, c.n);
  std::sort(inv1.rbegin(), inv1.rend());
  ++res.samples_run;
  if (inv1 != inv2) {
    std::ostringstream l, r;
    for (unsigned v : inv1) l << v << " ";
    for (unsigned v : inv2) r << v << " ";
    res.failures.push_back({0, "coker(1-F) on T*", l.str(), r.str()});
  }
}

void suite_prop30(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  GroupPtr A = c.G->is_abelian() ? c.G : abelianization(c.G).group;
  RingPtr R = c.R;
  CotangentModule T = cotangent(A, R, c.n);
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("prop30", i);
    GrElem j = gr_random_I(A, R, rng, R->precision());
    ++res.samples_run;
    if (!differential_check(j, T, c.n))
      res.failures.push_back({i, serialize(j), "d(p^-1 L(1+j))", "(1-F) dj"});
  }
}

void suite_torsion(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  Ctx c = make_ctx(cfg, working_precision(G0, cfg.p, cfg.prec));
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(c.R, T.e);
  unsigned W = c.R->precision();
  // group elements have vanishing group logarithm
  for (unsigned g = 0; g < c.G->order(); ++g) {
    GrElem eg = gr_group_elem(c.G, c.R, g, W);
    ClassVec L = group_log(eg, c.n);
    ++res.samples_run;
    if (!cv_is_zero(L)) {
      res.failures.push_back({g, c.G->name(g), serialize(L), "0"});
      return;
    }
  }
  // torsion_test on g * (commutators of one-units) constructions
  unsigned count = std::max(1u, cfg.samples / 2);
  for (unsigned i = 0; i < count; ++i) {
    Rng rng = c.sample_rng("torsion", i);
    unsigned g = (unsigned)rng.below(c.G->order());
    GrElem one = gr_one(c.G, c.R, W);
    GrElem v = gr_group_elem(c.G, c.R, g, W);
    for (unsigned t = 0; t < 2; ++t) {
      GrElem a = gr_add(one, gr_random_I(c.G, c.R, rng, W));
      GrElem b = gr_add(one, gr_random_I(c.G, c.R, rng, W));
      v = gr_mul(gr_mul(gr_mul(gr_mul(v, a), b), invert_unit(a)), invert_unit(b));
    }
    ++res.samples_run;
    if (!torsion_test(v, T, dring, c.n)) {
      res.failures.push_back({i, serialize(v), "torsion_test false", "expected torsion"});
      continue;
    }
    if (!det_equal(v, gr_group_elem(c.G, c.R, g, W), T, dring, c.n >= 2 ? c.n - 2 : 1))
      res.failures.push_back({i, serialize(v), "Det differs from Det(g)", c.G->name(g)});
  }
  // negative control: 1 + p^2(g-1) is not torsion for g != 1
  if (c.G->order() > 1) {
    GrElem one = gr_one(c.G, c.R, W);
    GrElem v = gr_add(one, gr_scale_scalar(gr_sub(gr_group_elem(c.G, c.R, 1, W), one),
                                           cfg.p * cfg.p));
    ++res.samples_run;
    if (torsion_test(v, T, dring, c.n))
      res.failures.push_back({0, serialize(v), "torsion_test true", "expected non-torsion"});
  }
  // the 2-adic scalar identity sum 2^k/k = 0 mod 2^12 (log(-1) = 0)
  if (cfg.p == 2) {
    const unsigned target = 12;
    const u64 m = 1ull << (target + 4);
    u64 S = 0;
    for (u64 k = 1; k <= 64; ++k) {
      unsigned v = val_p(k, 2, 8);
      if (k - v >= target + 4) continue;
      // 2^k / k = 2^{k-v} * odd(k)^{-1}, an exact 2-adic integer
      u64 term = (1ull << (k - v)) % m;
      S = (S + term * inv_mod_ppow(k >> v, 2, m)) % m;
    }
    ++res.samples_run;
    if (S % (1ull << target) != 0)
      res.failures.push_back({0, "sum 2^k/k", std::to_string(S), "0 mod 2^12"});
  }
}

void suite_thm32(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  unsigned f = cfg.ext_f == 0 ? 2 : cfg.ext_f;
  unsigned W;
  try {
    W = descent_working_precision(G0, cfg.p, cfg.prec);
  } catch (const Error&) {
    res.note = "skipped: descent precision budget exceeds the modulus cap here";
    return;
  }
  Ctx c = make_ctx(cfg, W, /*apply_ext=*/false);
  if (c.R->has_unram_layer()) {
    res.note = "skipped: extension over an unramified base is unsupported";
    return;
  }
  ExtensionCtx E = make_extension(c.R, f);
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(E.S, T.e);
  unsigned tol = c.n >= 2 ? c.n - 2 : 1;
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("thm32", i);
    GrElem v = gr_add(gr_one(c.G, E.S, E.S->precision()),
                      gr_random_I(c.G, E.S, rng, E.S->precision()));
    GrElem x = v;
    for (unsigned k = 1; k < E.f; ++k) x = gr_mul(x, galois_act(E, v, k));
    ++res.samples_run;
    GrElem u = solve_fixed_point(E, c.G, x, c.n);
    if (!det_equal(lift_to_S(E, u), x, T, dring, tol))
      res.failures.push_back({i, serialize(x), serialize(u), "det mismatch"});
  }
}

void suite_thm34(const SuiteConfig& cfg, SuiteResult& res) {
  GroupPtr G0 = build_group(cfg.group, cfg.p);
  unsigned f = cfg.ext_f == 0 ? 2 : cfg.ext_f;
  unsigned W;
  try {
    W = descent_working_precision(G0, cfg.p, cfg.prec);
  } catch (const Error&) {
    res.note = "skipped: descent precision budget exceeds the modulus cap here";
    return;
  }
  Ctx c = make_ctx(cfg, W, /*apply_ext=*/false);
  if (c.R->has_unram_layer()) {
    res.note = "skipped: extension over an unramified base is unsupported";
    return;
  }
  ExtensionCtx E = make_extension(c.R, f);
  const CharTable& T = character_table(c.G);
  RingPtr dring = det_ring(E.S, T.e);
  unsigned tol = c.n >= 2 ? c.n - 2 : 1;
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng = c.sample_rng("thm34", i);
    GrElem target = gr_add(gr_one(c.G, c.R, c.R->precision()),
                           gr_random_I(c.G, c.R, rng, c.R->precision()));
    ++res.samples_run;
    GrElem y = solve_norm_preimage(E, c.G, target, c.n);
    GrElem Ny = frohlich_norm_product(E, y);
    if (!det_equal(Ny, lift_to_S(E, target), T, dring, tol))
      res.failures.push_back({i, serialize(target), serialize(Ny), "det mismatch"});
  }
}

const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"thm16", suite_thm16},
      {"thm17-solver", suite_thm17},
      {"lemma14", suite_lemma14},
      {"lemma18", suite_lemma18},
      {"lemma21", suite_lemma21},
      {"lemma25", suite_lemma25},
      {"prop10-roundtrip", suite_prop10},
      {"prop13-matrix", suite_prop13},
      {"thm29-coker", suite_thm29},
      {"prop30-diff", suite_prop30},
      {"torsion", suite_torsion},
      {"thm32-fixedpoint", suite_thm32},
      {"thm34-norm", suite_thm34},
  };
  return reg;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : suite_registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

void validate_config(const SuiteConfig& cfg) {
  require(is_prime_u64(cfg.p), Err::InvalidArgument, "p must be prime");
  require(cfg.prec >= 2 && cfg.prec <= 16, Err::InvalidArgument, "precision must be in [2,16]");
  require(cfg.samples >= 1 && cfg.samples <= 10000, Err::InvalidArgument,
          "samples must be in [1,10000]");
  if (cfg.suite != "all") {
    bool known = false;
    for (const auto& id : suite_ids()) known = known || id == cfg.suite;
    require(known, Err::InvalidArgument, "unknown suite id '" + cfg.suite + "'");
  }
  require(cfg.ext_f <= 12, Err::InvalidArgument, "extension degree out of range");
  GroupPtr G = build_group(cfg.group, cfg.p);  // validates group spec and order
  require(G->order() <= 128, Err::OrderCap, "group order above 128");
  RingSpec rs = parse_ring_spec(cfg.ring, cfg.p, cfg.prec);
  // cyclotomic tensors are value rings: F fixes zeta, so they carry no
  // Frobenius lift and the logarithm suites are not defined over them
  require(rs.kind != RingKind::CyclotomicTensor, Err::InvalidArgument,
          "suites need a coefficient ring with a Frobenius lift (Zp, unram:<f>, powser:<D>)");
}

Report run_config(const SuiteConfig& cfg) {
  validate_config(cfg);
  Report rep;
  rep.config = cfg;
  for (const auto& [id, fn] : suite_registry()) {
    if (cfg.suite != "all" && cfg.suite != id) continue;
    SuiteResult res;
    res.id = id;
    auto t0 = std::chrono::steady_clock::now();
    fn(cfg, res);
    auto t1 = std::chrono::steady_clock::now();
    res.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    res.pass = res.failures.empty();
    rep.pass = rep.pass && res.pass;
    rep.suites.push_back(std::move(res));
  }
  return rep;
}

std::string report_json(const Report& r) {
  // nlohmann::json with the default (ordered map) representation sorts keys;
  // timings are deliberately excluded so equal seeds give identical bytes.
  nlohmann::json j;
  j["config"]["p"] = r.config.p;
  j["config"]["group"] = r.config.group;
  j["config"]["ring"] = r.config.ring;
  j["config"]["prec"] = r.config.prec;
  j["config"]["samples"] = r.config.samples;
  j["config"]["seed"] = r.config.seed;
  j["config"]["suite"] = r.config.suite;
  j["config"]["ext_f"] = r.config.ext_f;
  j["version"] = kVersion;
  j["pass"] = r.pass;
  j["suites"] = nlohmann::json::array();
  for (const auto& s : r.suites) {
    nlohmann::json js;
    js["id"] = s.id;
    js["pass"] = s.pass;
    js["samples"] = s.samples_run;
    js["note"] = s.note;
    js["failures"] = nlohmann::json::array();
    for (const auto& f : s.failures) {
      nlohmann::json jf;
      jf["sample"] = f.sample;
      jf["input"] = f.input;
      jf["lhs"] = f.lhs;
      jf["rhs"] = f.rhs;
      js["failures"].push_back(jf);
    }
    j["suites"].push_back(js);
  }
  return j.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << kVersion << "  p=" << r.config.p << " group=" << r.config.group
     << " ring=" << r.config.ring << " prec=" << r.config.prec
     << " samples=" << r.config.samples << " seed=" << r.config.seed << "\n";
  for (const auto& s : r.suites) {
    os << "  " << (s.pass ? "PASS" : "FAIL") << "  " << s.id << "  (" << s.samples_run
       << " samples, " << s.elapsed_ms << " ms)";
    if (!s.note.empty()) os << "  [" << s.note << "]";
    os << "\n";
    for (const auto& f : s.failures)
      os << "    sample " << f.sample << ": input=" << f.input << " lhs=" << f.lhs
         << " rhs=" << f.rhs << "\n";
  }
  os << (r.pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

int report_exit_code(const Report& r) { return r.pass ? 0 : 1; }

}  // namespace grouplog
