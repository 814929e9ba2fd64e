#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grouplog/characters.hpp"
#include "grouplog/elemparse.hpp"

using namespace grouplog;

namespace {

// orthogonality oracle: sum_K |K| a(K) b(K^{-1}) == delta * |G|
bool orthonormal(const GroupPtr& G, const CharTable& T) {
  for (std::size_t i = 0; i < T.irr.size(); ++i)
    for (std::size_t j = 0; j < T.irr.size(); ++j) {
      CycInt s = cyc_zero(T.irr[0].values[0].p, T.irr[0].values[0].e);
      for (unsigned K = 0; K < G->num_classes(); ++K) {
        unsigned Ki = G->class_of(G->inv(G->class_rep(K)));
        CycInt t = cyc_mul(T.irr[i].values[K], T.irr[j].values[Ki]);
        for (auto& cc : t.c) cc *= (long long)G->classes()[K].size();
        s = cyc_add(s, t);
      }
      long long v = 0;
      if (!cyc_is_int(s, &v)) return false;
      if (v != (i == j ? (long long)G->order() : 0)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("tables: degrees, counts, orthogonality") {
  auto C4 = build_group("C4", 2);
  const CharTable& t4 = character_table(C4);
  CHECK(t4.irr.size() == 4);
  for (const auto& ch : t4.irr) CHECK(ch.degree == 1);
  CHECK(orthonormal(C4, t4));

  auto D8 = build_group("D8", 2);
  const CharTable& t8 = character_table(D8);
  CHECK(t8.irr.size() == 5);
  CHECK(t8.irr[4].degree == 2);
  CHECK(orthonormal(D8, t8));

  auto H27 = build_group("H27", 3);
  const CharTable& t27 = character_table(H27);
  CHECK(t27.irr.size() == 11);
  unsigned lin = 0, deg3 = 0;
  for (const auto& ch : t27.irr) {
    if (ch.degree == 1) ++lin;
    if (ch.degree == 3) ++deg3;
  }
  CHECK(lin == 9);
  CHECK(deg3 == 2);
  CHECK(orthonormal(H27, t27));

  auto Q16 = build_group("Q16", 2);
  const CharTable& t16 = character_table(Q16);
  CHECK(t16.irr.size() == 7);
  CHECK(orthonormal(Q16, t16));

  auto SD16 = build_group("SD16", 2);
  CHECK(character_table(SD16).irr.size() == 7);
  CHECK(orthonormal(SD16, character_table(SD16)));
}

TEST_CASE("adams: linear p-th power and the D8 degree-2 values") {
  auto D8 = build_group("D8", 2);
  const CharTable& T = character_table(D8);
  // linear chi: psi^p chi = chi^p pointwise
  for (unsigned i = 0; i < 4; ++i) {
    VirtualChar vc = adams_psi_p(T, i);
    for (unsigned K = 0; K < D8->num_classes(); ++K) {
      CycInt expect = cyc_mul(T.irr[i].values[K], T.irr[i].values[K]);
      CHECK(virtual_value(T, vc, K) == expect);
    }
  }
  // degree-2 chi: values chi(g^2); class order (1, r, s, r^2, rs)
  VirtualChar vc = adams_psi_p(T, 4);
  std::vector<long long> expect{2, -2, 2, 2, 2};
  for (unsigned K = 0; K < 5; ++K) {
    long long v = 0;
    CHECK(cyc_is_int(virtual_value(T, vc, K), &v));
    CHECK(v == expect[K]);
  }
}

TEST_CASE("adams commutes with inflation from central quotients") {
  for (auto spec : {"D8", "Q8", "Q16"}) {
    auto G = build_group(spec, 2);
    const CharTable& T = character_table(G);
    unsigned c = find_central_commutator_order_p(*G);
    // psi^p chi is inflated from G/<c>: its values are constant on <c>-cosets
    for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
      VirtualChar vc = adams_psi_p(T, chi);
      for (unsigned g = 0; g < G->order(); ++g) {
        unsigned K1 = G->class_of(g);
        unsigned K2 = G->class_of(G->mul(c, g));
        CHECK(virtual_value(T, vc, K1) == virtual_value(T, vc, K2));
      }
    }
  }
}

TEST_CASE("det_value: linear evaluation, monomial determinant, commutators") {
  auto D8 = build_group("D8", 2);
  auto R = Ring::leaf(2, 6);
  const CharTable& T = character_table(D8);
  RingPtr dring = det_ring(R, T.e);
  Rng rng = Rng::derive({21});

  // linear chi: Det(x)(chi) = sum x_g chi(g)
  for (int i = 0; i < 10; ++i) {
    GrElem x = gr_random(D8, R, rng, 6);
    for (unsigned chi = 0; chi < 4; ++chi) {
      RElem got = det_value(x, T, chi, dring);
      RElem expect = dring->zero(6);
      for (unsigned g = 0; g < 8; ++g) {
        const CycInt& v = T.irr[chi].values[D8->class_of(g)];
        long long c0 = 0;
        REQUIRE(cyc_is_int(v, &c0));
        RElem coeff = R->zero(6);
        std::copy(x.blk(g).begin(), x.blk(g).end(), coeff.c.begin());
        expect = radd(expect, rmul(embed(coeff, dring), dring->from_int(c0, 6)));
      }
      CHECK(requal(got, expect));
    }
  }

  // Det(r)(chi_2) = det diag(i, -i) = 1
  unsigned r = D8->generators()[0];
  RElem dr = det_value(gr_group_elem(D8, R, r, 6), T, 4, dring);
  CHECK(requal(dr, dring->one(6)));

  // Det(h)(chi) = 1 for h in [G,G], exhaustively, several groups
  for (auto spec : {"D8", "Q8", "Q16", "SD16"}) {
    auto G = build_group(spec, 2);
    const CharTable& TT = character_table(G);
    RingPtr dd = det_ring(R, TT.e);
    for (unsigned h : G->commutator_subgroup())
      for (unsigned chi = 0; chi < TT.irr.size(); ++chi)
        CHECK(requal(det_value(gr_group_elem(G, R, h, 6), TT, chi, dd), dd->one(6)));
  }
}

TEST_CASE("det_value multiplicativity and conjugation invariance") {
  for (auto [spec, p] : std::vector<std::pair<const char*, u64>>{{"Q8", 2}, {"H27", 3}}) {
    auto G = build_group(spec, p);
    auto R = Ring::leaf(p, 5);
    const CharTable& T = character_table(G);
    RingPtr dring = det_ring(R, T.e);
    Rng rng = Rng::derive({22, p});
    for (int i = 0; i < 8; ++i) {
      GrElem x = gr_random(G, R, rng, 5);
      GrElem y = gr_random(G, R, rng, 5);
      for (unsigned chi = 0; chi < T.irr.size(); ++chi) {
        CHECK(requal(det_value(gr_mul(x, y), T, chi, dring),
                     rmul(det_value(x, T, chi, dring), det_value(y, T, chi, dring))));
      }
      // det_equal(x, g x g^-1)
      unsigned g = (unsigned)rng.below(G->order());
      GrElem conj = gr_mul(gr_mul(gr_group_elem(G, R, g, 5), x),
                           gr_group_elem(G, R, G->inv(g), 5));
      CHECK(det_equal(x, conj, T, dring, 5));
    }
  }
}

TEST_CASE("det_equal separates 1 from 1 + p^2(g-1)") {
  auto C4 = build_group("C4", 2);
  auto R = Ring::leaf(2, 6);
  const CharTable& T = character_table(C4);
  RingPtr dring = det_ring(R, T.e);
  GrElem one = gr_one(C4, R, 6);
  for (unsigned g = 1; g < 4; ++g) {
    GrElem v = gr_add(one, gr_scale_scalar(gr_sub(gr_group_elem(C4, R, g, 6), one), 4));
    CHECK(!det_equal(one, v, T, dring, 6));
  }
  CHECK(det_equal(one, gr_mul(one, one), T, dring, 6));
}

TEST_CASE("log_det: torsion values vanish; trivial character gives 0 on 1+I") {
  for (auto [spec, ring] : std::vector<std::pair<const char*, RingPtr>>{
           {"C4", Ring::leaf(2, 16)}, {"D8", Ring::leaf(2, 16)},
           {"Q8", Ring::power_series(2, 3, 16)}}) {
    auto G = build_group(spec, 2);
    const CharTable& T = character_table(G);
    RingPtr dring = det_ring(ring, T.e);
    for (unsigned g = 0; g < G->order(); ++g) {
      GrElem eg = gr_group_elem(G, ring, g, 16);
      for (unsigned chi = 0; chi < T.irr.size(); ++chi)
        CHECK(sc_is_zero_at(log_det(eg, T, chi, dring, 6), 6));
      CHECK(torsion_test(eg, T, dring, 6));
    }
  }
}

TEST_CASE("lemma 14 identity across rings and characters") {
  struct Cell {
    const char* g;
    u64 p;
    RingPtr (*mk)(unsigned);
  };
  auto mk_z2 = [](unsigned w) { return Ring::leaf(2, w); };
  auto mk_ps2 = [](unsigned w) { return Ring::power_series(2, 4, w); };
  auto mk_u2 = [](unsigned w) { return Ring::unramified(2, 2, w); };
  auto mk_z3 = [](unsigned w) { return Ring::leaf(3, w); };
  std::vector<std::tuple<const char*, u64, RingPtr>> cells;
  {
    auto C4 = build_group("C4", 2);
    auto D8 = build_group("D8", 2);
    auto C9 = build_group("C9", 3);
    cells.emplace_back("C4", 2, mk_z2(working_precision(C4, 2, 5)));
    cells.emplace_back("D8", 2, mk_ps2(working_precision(D8, 2, 5)));
    cells.emplace_back("D8", 2, mk_u2(working_precision(D8, 2, 5)));
    cells.emplace_back("C9", 3, mk_z3(working_precision(C9, 3, 5)));
  }
  for (auto& [spec, p, R] : cells) {
    auto G = build_group(spec, p);
    const CharTable& T = character_table(G);
    RingPtr dring = det_ring(R, T.e);
    Rng rng = Rng::derive({23, p, (u64)R->rank()});
    for (int i = 0; i < 5; ++i) {
      GrElem x = gr_random_I(G, R, rng, R->precision());
      for (unsigned chi = 0; chi < T.irr.size(); ++chi)
        CHECK(verify_lemma14(x, T, chi, dring, 5));
    }
  }
}

TEST_CASE("monomial data: transversal independence spot check") {
  // rebuild the degree-2 D8 character value from its monomial datum with a
  // different transversal and compare value vectors
  auto D8 = build_group("D8", 2);
  const CharTable& T = character_table(D8);
  const Character& ch = T.irr[4];
  std::vector<unsigned> to_H(D8->order(), D8->order());
  for (std::size_t i = 0; i < ch.H.size(); ++i) to_H[ch.H[i]] = (unsigned)i;
  // second transversal: multiply each rep by an element of H
  std::vector<unsigned> reps2 = ch.transversal;
  for (std::size_t i = 0; i < reps2.size(); ++i) reps2[i] = D8->mul(reps2[i], ch.H[1 % ch.H.size()]);
  for (unsigned K = 0; K < D8->num_classes(); ++K) {
    unsigned g = D8->class_rep(K);
    CycInt v = cyc_zero(2, T.e);
    for (unsigned x : reps2) {
      unsigned conj = D8->mul(D8->mul(D8->inv(x), g), x);
      if (to_H[conj] != D8->order())
        v = cyc_add(v, cyc_zeta_pow(2, T.e, ch.theta_exp[to_H[conj]]));
    }
    CHECK(v == ch.values[K]);
  }
}

TEST_CASE("corestriction norm: theta(N(x)) = Det(x)(Ind theta), and the transfer congruence") {
  // For an index-p abelian subgroup H with transversal {x_i}, the matrix
  // M_ij = sum_{h in H} x_{x_i h x_j^{-1}} h over R[H] has determinant N(x)
  // with theta(N(x)) = Det(x)(Ind theta), and
  // N(x) = sum_g x_g^p t(g) mod T, T spanned by the alpha-orbit sums.
  for (auto spec : {"D8", "Q8", "D16", "SD16"}) {
    auto G = build_group(spec, 2);
    auto R = Ring::leaf(2, 6);
    const CharTable& T = character_table(G);
    RingPtr dring = det_ring(R, T.e);
    // the cyclic maximal subgroup <first generator>
    std::vector<unsigned> H = subgroup_closure(*G, {G->generators()[0]});
    REQUIRE(H.size() * 2 == G->order());
    SubgroupResult sub = subgroup_as_group(G, H);
    REQUIRE(sub.group->is_abelian());
    std::vector<unsigned> to_local(G->order(), G->order());
    for (unsigned i = 0; i < sub.group->order(); ++i) to_local[sub.to_parent[i]] = i;
    // transversal {1, gamma} with gamma outside H
    unsigned gamma = 0;
    for (unsigned g = 1; g < G->order(); ++g)
      if (to_local[g] == G->order()) {
        gamma = g;
        break;
      }
    std::vector<unsigned> reps{0, gamma};

    Rng rng = Rng::derive({61, (u64)G->order()});
    for (int trial = 0; trial < 6; ++trial) {
      GrElem x = gr_random_unit(G, R, rng, 6);
      // 2x2 corestriction matrix over R[H]
      std::vector<std::vector<GrElem>> M(2, std::vector<GrElem>(2, gr_zero(sub.group, R, 6)));
      for (unsigned i = 0; i < 2; ++i)
        for (unsigned j = 0; j < 2; ++j)
          for (unsigned hl = 0; hl < sub.group->order(); ++hl) {
            unsigned g = G->mul(G->mul(reps[i], sub.to_parent[hl]), G->inv(reps[j]));
            GrElem term = gr_scale(gr_group_elem(sub.group, R, hl, 6), [&] {
              RElem c = R->zero(6);
              std::copy(x.blk(g).begin(), x.blk(g).end(), c.c.begin());
              return c;
            }());
            M[i][j] = gr_add(M[i][j], term);
          }
      GrElem N = gr_sub(gr_mul(M[0][0], M[1][1]), gr_mul(M[0][1], M[1][0]));

      // (a) theta(N) = Det(x)(Ind theta) for every linear theta of H that
      // induces irreducibly; evaluate theta on R[H] in the value ring
      const CharTable& TH = character_table(sub.group);
      for (const Character& th : TH.irr) {
        // chi = Ind theta: value vector on classes of G
        std::vector<CycInt> chi_vals;
        for (unsigned K = 0; K < G->num_classes(); ++K) {
          unsigned g = G->class_rep(K);
          CycInt v = cyc_zero(2, T.e);
          for (unsigned xr : reps) {
            unsigned conj = G->mul(G->mul(G->inv(xr), g), xr);
            if (to_local[conj] != G->order()) {
              // embed theta value (order TH.pe) into zeta of order T.pe
              u64 exp = th.theta_exp[to_local[conj]] * (T.pe / TH.pe);
              v = cyc_add(v, cyc_zeta_pow(2, T.e, exp));
            }
          }
          chi_vals.push_back(std::move(v));
        }
        // find it in the table (only irreducible inductions appear)
        int chi_idx = -1;
        for (std::size_t i = 0; i < T.irr.size(); ++i)
          if (T.irr[i].values == chi_vals) chi_idx = (int)i;
        if (chi_idx < 0) continue;  // reducible induction
        // theta(N) in the value ring
        RElem lhs = dring->zero(6);
        for (unsigned hl = 0; hl < sub.group->order(); ++hl) {
          RElem c = R->zero(6);
          std::copy(N.blk(hl).begin(), N.blk(hl).end(), c.c.begin());
          RElem zc = embed(c, dring);
          u64 exp = th.theta_exp[hl] * (T.pe / TH.pe);
          lhs = radd(lhs, rmul(zc, rpow(dring->var(6), exp)));
        }
        CHECK(requal(lhs, det_value(x, T, (unsigned)chi_idx, dring)));
      }

      // (b) N(x) = sum_g x_g^p t(g) mod T, with T the alpha-orbit sums
      Transfer tr = transfer(G, H);
      // invert the hab numbering (sub.group is abelian, so proj is a bijection)
      const Abelianization& hab = abelianization(sub.group);
      std::vector<unsigned> hab_to_sub(hab.group->order());
      for (unsigned hl = 0; hl < sub.group->order(); ++hl)
        hab_to_sub[hab.proj.images[hl]] = hl;
      GrElem rhs = gr_zero(sub.group, R, 6);
      u64 m = R->modulus_at(6);
      for (unsigned g = 0; g < G->order(); ++g) {
        u64 xg = x.blk(g)[0];
        unsigned th = hab_to_sub[tr.map[g]];
        rhs.blk(th)[0] = addmod(rhs.blk(th)[0], mulmod(xg, xg, m), m);
      }
      GrElem diff = gr_sub(N, rhs);
      // T-lattice: rows h + alpha(h) for h in H (alpha = conjugation by gamma)
      std::vector<std::vector<u64>> tg;
      for (unsigned hl = 0; hl < sub.group->order(); ++hl) {
        GrElem row = gr_add(
            gr_group_elem(sub.group, R, hl, 6),
            gr_group_elem(sub.group, R, to_local[G->conj(gamma, sub.to_parent[hl])], 6));
        tg.push_back(row.c);
      }
      Lattice TL = howell_form(std::move(tg), sub.group->order(), 2, 6);
      CHECK(TL.contains(flat_at(diff, 6)));
    }
  }
}
