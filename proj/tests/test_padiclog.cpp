#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grouplog/characters.hpp"
#include "grouplog/elemparse.hpp"

using namespace grouplog;

TEST_CASE("nilpotency index oracles") {
  CHECK(nilpotency_index(*build_group("C2", 2), 2) == 2);
  CHECK(nilpotency_index(*build_group("C3", 3), 3) == 3);
  CHECK(nilpotency_index(*build_group("C4", 2), 2) == 4);
  CHECK(nilpotency_index(*build_group("C5", 5), 5) == 5);
}

TEST_CASE("plog: torsion logs vanish and log(1) = 0") {
  for (auto [spec, p] : std::vector<std::pair<const char*, u64>>{{"C4", 2}, {"D8", 2}, {"C9", 3}}) {
    auto G = build_group(spec, p);
    auto R = Ring::leaf(p, working_precision(G, p, 6));
    CHECK(cv_is_zero(group_log(gr_one(G, R, R->precision()), 6)));
    for (unsigned g = 0; g < G->order(); ++g)
      CHECK(cv_is_zero(group_log(gr_group_elem(G, R, g, R->precision()), 6)));
  }
}

TEST_CASE("theorem 16(a): integrality into p phi(I), sampled") {
  for (auto [spec, p] : std::vector<std::pair<const char*, u64>>{
           {"C4", 2}, {"C2xC2", 2}, {"D8", 2}, {"Q8", 2}, {"C9", 3}, {"H27", 3}}) {
    auto G = build_group(spec, p);
    for (RingPtr R : {Ring::leaf(p, working_precision(G, p, 6)),
                      Ring::power_series(p, 4, working_precision(G, p, 6))}) {
      Lattice pPhiI = lattice_scale(ideal_lattice(G, R, IdealKind::PhiI, 6), 1);
      Rng rng = Rng::derive({31, p, (u64)R->rank()});
      for (int i = 0; i < 20; ++i) {
        GrElem u = gr_add(gr_one(G, R, R->precision()), gr_random_I(G, R, rng, R->precision()));
        ClassVec L = group_log(u, 6);
        CHECK(pPhiI.contains(flat_at(L, 6)));
      }
    }
  }
}

TEST_CASE("theorem 16(b): abelian L(1+I^2) inside p I^2") {
  auto G = build_group("C8", 2);
  auto R = Ring::leaf(2, working_precision(G, 2, 6));
  Lattice pI2 = lattice_scale(phi_lattice(ideal_power_lattice(G, R, 2, 6), G, R), 1);
  Rng rng = Rng::derive({32});
  for (int i = 0; i < 25; ++i) {
    GrElem u = gr_add(gr_one(G, R, R->precision()), gr_random_I2(G, R, rng, R->precision()));
    CHECK(pI2.contains(flat_at(group_log(u, 6), 6)));
  }
}

TEST_CASE("group_log is a homomorphism, including non-commuting inputs") {
  auto G = build_group("Q8", 2);
  auto R = Ring::leaf(2, working_precision(G, 2, 6));
  Rng rng = Rng::derive({33});
  for (int i = 0; i < 15; ++i) {
    GrElem u = gr_add(gr_one(G, R, R->precision()), gr_random_I(G, R, rng, R->precision()));
    GrElem v = gr_add(gr_one(G, R, R->precision()), gr_random_I(G, R, rng, R->precision()));
    ClassVec sum = cv_add(group_log(u, 6), group_log(v, 6));
    CHECK(cv_equal_at(group_log(gr_mul(u, v), 6), sum, 6));
    // invariance under multiplying by group elements (torsion part)
    unsigned g = (unsigned)rng.below(G->order());
    GrElem ug = gr_mul(u, gr_group_elem(G, R, g, R->precision()));
    RElem eps = augment(ug);
    if (requal_at(eps, R->one(R->precision()), R->precision()))
      CHECK(cv_equal_at(group_log_unit(ug, 6), group_log(u, 6), 6));
    else
      CHECK(cv_equal_at(group_log_unit(ug, 6), group_log(u, 6), 6));
  }
}

TEST_CASE("nu_over_p: conjugation invariance and phi(I) membership") {
  auto G = build_group("D8", 2);
  auto R = Ring::unramified(2, 2, working_precision(G, 2, 6));
  Lattice phiI = ideal_lattice(G, R, IdealKind::PhiI, 5);
  Rng rng = Rng::derive({34});
  for (int i = 0; i < 10; ++i) {
    GrElem u = gr_add(gr_one(G, R, R->precision()), gr_random_I(G, R, rng, R->precision()));
    ClassVec nu = nu_over_p(u, 5);
    CHECK(phiI.contains(flat_at(nu, 5)));
    unsigned w = (unsigned)rng.below(G->order());
    GrElem wu = gr_mul(gr_mul(gr_group_elem(G, R, w, R->precision()), u),
                       gr_group_elem(G, R, G->inv(w), R->precision()));
    CHECK(cv_equal_at(nu_over_p(wu, 5), nu, 5));
  }
}

TEST_CASE("pexp basics and the exp/log round trips") {
  auto G = build_group("C4", 2);
  unsigned n = 6;
  unsigned N = nilpotency_index(*G, 2);
  unsigned nE = plog_required_precision_val(N, 2, n, 2);
  unsigned W = std::max(pexp_required_precision(2, nE), working_precision(G, 2, n));
  auto R = Ring::leaf(2, W);
  // exp(0) = 1
  CHECK(gr_equal(pexp(gr_zero(G, R, W), n), gr_one(G, R, n)));
  // scalar: round trip log(exp(4)) = 4 mod 2^{n}
  GrElem four = gr_from_int(G, R, 4, W);
  GrElem e4 = pexp(four, nE);
  ScaledGr l4 = plog(e4, n);
  GrElem lhs;
  {
    u64 pd = 1;
    for (unsigned t = 0; t < l4.denom; ++t) pd *= 2;
    lhs = gr_scale_scalar(gr_reduce_precision(four, l4.v.prec), pd % R->modulus_at(l4.v.prec));
  }
  CHECK(gr_equal_at(lhs, l4.v, std::min(n + l4.denom, l4.v.prec)));
  // valuation < 2 rejected
  CHECK_THROWS_AS((void)pexp(gr_from_int(G, R, 2, W), n), Error);
  // a = p^2 (g-1) round trip
  Rng rng = Rng::derive({35});
  for (int i = 0; i < 10; ++i) {
    GrElem a = gr_scale_scalar(gr_random(G, R, rng, W), 4);
    GrElem u = pexp(a, nE);
    ScaledGr back = plog(u, n);
    u64 pd = 1;
    for (unsigned t = 0; t < back.denom; ++t) pd *= 2;
    GrElem want = gr_scale_scalar(gr_reduce_precision(a, back.v.prec), pd % R->modulus_at(back.v.prec));
    CHECK(gr_equal_at(want, back.v, std::min(n + back.denom, back.v.prec)));
  }
}

TEST_CASE("solve_A_preimage: forward checks and strong round trip") {
  for (auto [spec, p] : std::vector<std::pair<const char*, u64>>{{"D8", 2}, {"Q8", 2}}) {
    auto G = build_group(spec, p);
    auto R = Ring::leaf(p, working_precision(G, p, 6));
    const CharTable& T = character_table(G);
    RingPtr dring = det_ring(R, T.e);
    Rng rng = Rng::derive({36, p});
    for (int i = 0; i < 6; ++i) {
      GrElem a = gr_random_A(G, R, rng, R->precision());
      GrElem one = gr_one(G, R, R->precision());
      ClassVec target = group_log(gr_add(one, a), 6);
      GrElem x = solve_A_preimage(G, R, target, 6);
      CHECK(cv_equal_at(group_log(gr_add(one, x), 6), target, 6));
      CHECK(det_equal(gr_add(one, x), gr_add(one, a), T, dring, 4));
    }
    // target = 0 -> x = 0
    GrElem x0 = solve_A_preimage(G, R, cv_zero(G, R, R->precision()), 6);
    CHECK(cv_is_zero(group_log(gr_add(gr_one(G, R, R->precision()), x0), 6)));
    // a target outside p phi(A) is rejected
    ClassVec bad = cv_zero(G, R, R->precision());
    bad.blk(0)[0] = 1;
    CHECK_THROWS_AS((void)solve_A_preimage(G, R, bad, 6), Error);
  }
}

TEST_CASE("solve via (1-c): membership-checked targets") {
  auto G = build_group("Q8", 2);
  auto R = Ring::power_series(2, 3, working_precision(G, 2, 5));
  unsigned c = find_central_commutator_order_p(*G);
  Rng rng = Rng::derive({37});
  for (int i = 0; i < 5; ++i) {
    // target = L(1 + (1-c) y) for random y; solver must reproduce it
    GrElem omc = gr_sub(gr_one(G, R, R->precision()),
                        gr_group_elem(G, R, c, R->precision()));
    GrElem y = gr_mul(omc, gr_random(G, R, rng, R->precision()));
    ClassVec target = group_log(gr_add(gr_one(G, R, R->precision()), y), 5);
    GrElem b = solve_one_minus_c_preimage(target, c, 5);
    CHECK(cv_equal_at(group_log(gr_add(gr_one(G, R, R->precision()), b), 5), target, 5));
  }
}

TEST_CASE("cotangent cokernels match the blockwise oracle") {
  // (C_4, Z_2): F = id, coker = Z/4
  {
    auto G = build_group("C4", 2);
    auto R = Ring::leaf(2, 6);
    CotangentModule T = cotangent(G, R, 6);
    CHECK(T.coker_one_minus_F() == std::vector<unsigned>{2});
    CHECK(coker_oracle(G, R, 6) == std::vector<unsigned>{2});
  }
  // (C_2, unram:2 at p=2): coker = Z/2
  {
    auto G = build_group("C2", 2);
    auto R = Ring::unramified(2, 2, 6);
    CotangentModule T = cotangent(G, R, 6);
    CHECK(T.coker_one_minus_F() == std::vector<unsigned>{1});
    CHECK(coker_oracle(G, R, 6) == std::vector<unsigned>{1});
  }
  // (C_3, Z_3[T]/(T^4)): coker = Z/3
  {
    auto G = build_group("C3", 3);
    auto R = Ring::power_series(3, 4, 6);
    CotangentModule T = cotangent(G, R, 6);
    CHECK(T.coker_one_minus_F() == std::vector<unsigned>{1});
    CHECK(coker_oracle(G, R, 6) == std::vector<unsigned>{1});
  }
  // non-abelian input reduces through the abelianization
  {
    auto G = build_group("D8", 2);
    auto R = Ring::leaf(2, 6);
    CHECK(coker_oracle(G, R, 6) == std::vector<unsigned>{1, 1});  // C2 x C2
  }
}

TEST_CASE("differential check: zero input and samples across rings") {
  {
    auto G = build_group("C4", 2);
    auto R = Ring::leaf(2, working_precision(G, 2, 6));
    CotangentModule T = cotangent(G, R, 6);
    CHECK(differential_check(gr_zero(G, R, R->precision()), T, 6));
    // j = p^2(g-1): F fixes dg and F_R = id, so both sides vanish
    GrElem j = gr_scale_scalar(
        gr_sub(gr_group_elem(G, R, G->generators()[0], R->precision()),
               gr_one(G, R, R->precision())),
        4);
    CHECK(differential_check(j, T, 6));
    Rng rng = Rng::derive({38});
    for (int i = 0; i < 25; ++i)
      CHECK(differential_check(gr_random_I(G, R, rng, R->precision()), T, 6));
  }
  {
    auto G = build_group("C9", 3);
    auto R = Ring::power_series(3, 4, working_precision(G, 3, 5));
    CotangentModule T = cotangent(G, R, 5);
    Rng rng = Rng::derive({39});
    for (int i = 0; i < 25; ++i)
      CHECK(differential_check(gr_random_I(G, R, rng, R->precision()), T, 5));
  }
}

TEST_CASE("lemma 25: C_p quotients across the three ring kinds") {
  // all three give R/((1-F)R + pR) of order p: a single invariant factor 1
  {
    auto G = build_group("C2", 2);
    auto R = Ring::leaf(2, working_precision(G, 2, 5));
    unsigned c = G->generators()[0];
    CHECK(lemma25_quotient(G, R, c, 5) == std::vector<unsigned>{1});
    CHECK(lemma25_oracle(R) == std::vector<unsigned>{1});
  }
  {
    auto G = build_group("C2", 2);
    auto R = Ring::unramified(2, 2, working_precision(G, 2, 5));
    unsigned c = G->generators()[0];
    CHECK(lemma25_quotient(G, R, c, 5) == std::vector<unsigned>{1});
    CHECK(lemma25_oracle(R) == std::vector<unsigned>{1});
  }
  {
    auto G = build_group("C3", 3);
    auto R = Ring::power_series(3, 4, working_precision(G, 3, 5));
    unsigned c = G->generators()[0];
    CHECK(lemma25_quotient(G, R, c, 5) == std::vector<unsigned>{1});
    CHECK(lemma25_oracle(R) == std::vector<unsigned>{1});
  }
  // Q8: -1 is a commutator, rejected
  {
    auto G = build_group("Q8", 2);
    auto R = Ring::leaf(2, working_precision(G, 2, 5));
    unsigned c = find_central_commutator_order_p(*G);
    CHECK_THROWS_AS((void)lemma25_quotient(G, R, c, 5), Error);
  }
}
