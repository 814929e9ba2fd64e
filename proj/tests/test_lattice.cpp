#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grouplog/lattice.hpp"
#include "grouplog/rng.hpp"

using namespace grouplog;

namespace {

std::vector<std::vector<u64>> random_gens(Rng& rng, unsigned count, unsigned dim, u64 m) {
  std::vector<std::vector<u64>> g(count, std::vector<u64>(dim));
  for (auto& r : g)
    for (auto& x : r) x = rng.below(m);
  return g;
}

// all elements of the span, brute force (use only for tiny dim/n)
std::set<std::vector<u64>> span_brute(const std::vector<std::vector<u64>>& gens, unsigned dim,
                                      u64 m) {
  std::set<std::vector<u64>> out;
  out.insert(std::vector<u64>(dim, 0));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<u64>> cur(out.begin(), out.end());
    for (const auto& v : cur)
      for (const auto& g : gens) {
        std::vector<u64> w(dim);
        for (unsigned i = 0; i < dim; ++i) w[i] = (v[i] + g[i]) % m;
        if (out.insert(w).second) grew = true;
      }
  }
  return out;
}

}  // namespace

TEST_CASE("howell form is canonical under regenerating the same module") {
  Rng rng = Rng::derive({1});
  for (int trial = 0; trial < 30; ++trial) {
    unsigned dim = 4 + (unsigned)rng.below(4);
    u64 p = trial % 2 ? 2 : 3;
    unsigned n = 3;
    u64 m = p == 2 ? 8 : 27;
    auto gens = random_gens(rng, 3 + (unsigned)rng.below(3), dim, m);
    Lattice L1 = howell_form(gens, dim, p, n);
    // regenerate: random invertible recombinations + scaled extra rows
    std::vector<std::vector<u64>> gens2;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<u64> r(dim, 0);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        u64 c = (i == j) ? 1 + p * rng.below(m / p) : p * rng.below(m / p);
        for (unsigned t = 0; t < dim; ++t) r[t] = (r[t] + c * gens[j][t]) % m;
      }
      gens2.push_back(r);
    }
    for (const auto& g : gens) {
      std::vector<u64> r(dim);
      for (unsigned t = 0; t < dim; ++t) r[t] = (g[t] * p) % m;
      gens2.push_back(r);  // p*g is redundant
    }
    Lattice L2 = howell_form(gens2, dim, p, n);
    CHECK(lattice_equal(L1, L2));
  }
}

TEST_CASE("membership, express, and exhaustive span agreement") {
  Rng rng = Rng::derive({2});
  unsigned dim = 3, n = 2;
  u64 p = 2, m = 4;
  for (int trial = 0; trial < 20; ++trial) {
    auto gens = random_gens(rng, 2 + (unsigned)rng.below(2), dim, m);
    Lattice L = howell_form(gens, dim, p, n);
    auto brute = span_brute(gens, dim, m);
    CHECK((u64)brute.size() == (u64)1 << L.size_log());
    // every ambient vector: membership agrees with brute force
    for (u64 code = 0; code < 64; ++code) {
      std::vector<u64> v{code % 4, (code / 4) % 4, (code / 16) % 4};
      bool inb = brute.count(v) == 1;
      CHECK(L.contains(v) == inb);
      auto ex = L.express(v);
      CHECK(ex.has_value() == inb);
      if (ex) {
        std::vector<u64> back(dim, 0);
        for (std::size_t i = 0; i < L.rows.size(); ++i)
          for (unsigned t = 0; t < dim; ++t) back[t] = (back[t] + (*ex)[i] * L.rows[i][t]) % m;
        CHECK(back == v);
      }
    }
  }
}

TEST_CASE("kernel: annihilation and size identity |ker|*|im| = m^k") {
  Rng rng = Rng::derive({3});
  for (int trial = 0; trial < 25; ++trial) {
    u64 p = trial % 2 ? 3 : 2;
    unsigned n = 3;
    u64 m = p == 2 ? 8 : 27;
    unsigned dim = 3 + (unsigned)rng.below(3);
    unsigned k = 2 + (unsigned)rng.below(4);
    auto gens = random_gens(rng, k, dim, m);
    Lattice ker = kernel_of(gens, dim, p, n);
    for (const auto& u : ker.rows) {
      std::vector<u64> x(dim, 0);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned t = 0; t < dim; ++t) x[t] = (x[t] + u[i] * gens[i][t]) % m;
      CHECK(x == std::vector<u64>(dim, 0));
    }
    Lattice im = howell_form(gens, dim, p, n);
    CHECK(ker.size_log() + im.size_log() == n * k);
  }
}

TEST_CASE("solve_in_span finds exact combinations") {
  Rng rng = Rng::derive({4});
  for (int trial = 0; trial < 25; ++trial) {
    u64 p = 3;
    unsigned n = 4;
    u64 m = 81;
    unsigned dim = 5, k = 4;
    auto gens = random_gens(rng, k, dim, m);
    std::vector<u64> u(k), t(dim, 0);
    for (auto& x : u) x = rng.below(m);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < dim; ++j) t[j] = (t[j] + u[i] * gens[i][j]) % m;
    auto sol = solve_in_span(gens, t, dim, p, n);
    REQUIRE(sol.has_value());
    std::vector<u64> back(dim, 0);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < dim; ++j) back[j] = (back[j] + (*sol)[i] * gens[i][j]) % m;
    CHECK(back == t);
  }
}

TEST_CASE("sum, intersection, scale") {
  Rng rng = Rng::derive({5});
  for (int trial = 0; trial < 20; ++trial) {
    u64 p = 2;
    unsigned n = 3, dim = 4;
    u64 m = 8;
    Lattice A = howell_form(random_gens(rng, 2, dim, m), dim, p, n);
    Lattice B = howell_form(random_gens(rng, 2, dim, m), dim, p, n);
    Lattice S = lattice_sum(A, B);
    Lattice I = lattice_intersect(A, B);
    CHECK(lattice_contains(S, A));
    CHECK(lattice_contains(S, B));
    CHECK(lattice_contains(A, I));
    CHECK(lattice_contains(B, I));
    // |A| * |B| = |A+B| * |A vnd B|
    CHECK(A.size_log() + B.size_log() == S.size_log() + I.size_log());
    CHECK(lattice_equal(lattice_intersect(A, A), A));
    CHECK(lattice_equal(lattice_intersect(A, full_ambient(dim, p, n)), A));
    // p^1 scale shrinks size by number of pivots with room
    Lattice pA = lattice_scale(A, 1);
    CHECK(lattice_contains(A, pA));
  }
}

TEST_CASE("preimage_lattice: exhaustive check at small size") {
  Rng rng = Rng::derive({6});
  unsigned dim_src = 3, dim_dst = 3, n = 2;
  u64 p = 2, m = 4;
  for (int trial = 0; trial < 15; ++trial) {
    auto maprows = random_gens(rng, dim_src, dim_dst, m);
    Lattice L = howell_form(random_gens(rng, 2, dim_dst, m), dim_dst, p, n);
    Lattice P = preimage_lattice(maprows, dim_src, L);
    for (u64 code = 0; code < 64; ++code) {
      std::vector<u64> x{code % 4, (code / 4) % 4, (code / 16) % 4};
      std::vector<u64> y(dim_dst, 0);
      for (unsigned i = 0; i < dim_src; ++i)
        for (unsigned j = 0; j < dim_dst; ++j) y[j] = (y[j] + x[i] * maprows[i][j]) % m;
      CHECK(P.contains(x) == L.contains(y));
    }
  }
}

TEST_CASE("quotient invariants: known shapes") {
  u64 p = 2;
  unsigned n = 3, dim = 2;
  Lattice full = full_ambient(dim, p, n);
  CHECK(quotient_invariants(full, lattice_scale(full, 1)) == std::vector<unsigned>{1, 1});
  CHECK(quotient_invariants(full, lattice_scale(full, 2)) == std::vector<unsigned>{2, 2});
  CHECK(quotient_invariants(full, full).empty());
  // mixed: Z/8 + 2*Z/8 -> quotient Z/2 x (0)
  Lattice sub = howell_form({{1, 0}, {0, 2}}, dim, p, n);
  CHECK(quotient_invariants(full, sub) == std::vector<unsigned>{1});
  // Z/8^2 / <(1,1)> has invariants {3}
  Lattice diag = howell_form({{1, 1}}, dim, p, n);
  CHECK(quotient_invariants(full, diag) == std::vector<unsigned>{3});
}

TEST_CASE("quotient invariants agree with brute-force group counting") {
  Rng rng = Rng::derive({7});
  unsigned dim = 3, n = 2;
  u64 p = 2, m = 4;
  for (int trial = 0; trial < 20; ++trial) {
    Lattice sup = howell_form(random_gens(rng, 2 + (unsigned)rng.below(2), dim, m), dim, p, n);
    // sub = sup scaled + an extra multiple inside sup
    std::vector<std::vector<u64>> subg;
    for (const auto& r : sup.rows) {
      std::vector<u64> s(dim);
      for (unsigned i = 0; i < dim; ++i) s[i] = (r[i] * 2) % m;
      subg.push_back(std::move(s));
    }
    if (!sup.rows.empty()) subg.push_back(sup.rows[0]);
    Lattice sub = howell_form(std::move(subg), dim, p, n);
    auto inv = quotient_invariants(sup, sub);
    // oracle: |p^j Q| from exhaustive spans
    auto SS = span_brute(sup.rows, dim, m);
    auto TT = span_brute(sub.rows, dim, m);
    std::vector<unsigned> logsize(n + 1, 0);
    for (unsigned j = 0; j <= n; ++j) {
      std::vector<std::vector<u64>> gens = sub.rows;
      for (const auto& r : sup.rows) {
        std::vector<u64> s(dim);
        u64 f = 1;
        for (unsigned t = 0; t < j; ++t) f *= p;
        for (unsigned i = 0; i < dim; ++i) s[i] = (r[i] * f) % m;
        gens.push_back(std::move(s));
      }
      auto U = span_brute(gens, dim, m);
      unsigned e = 0;
      std::size_t sz = U.size() / TT.size();
      while (sz > 1) {
        sz /= p;
        ++e;
      }
      logsize[j] = e;
    }
    std::vector<unsigned> oracle;
    for (unsigned i = 1;; ++i) {
      unsigned e = 0;
      for (unsigned j = 0; j < n; ++j)
        if (logsize[j] - logsize[j + 1] >= i) e = j + 1;
      if (e == 0) break;
      oracle.push_back(e);
    }
    CHECK(inv == oracle);
    (void)SS;
  }
}
