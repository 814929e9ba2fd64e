#include "grouplog/lattice.hpp"

#include <algorithm>

#include "grouplog/kernels.hpp"

namespace grouplog {

namespace {

struct HowellScratch {
  // rows carry [main | transform]; transform width tw may be zero
  std::vector<std::vector<u64>> pool;
  std::vector<std::size_t> active;
};

// Core Howell elimination. Returns result row indices (pivots in column
// order); afterwards every active row has an all-zero main part, and with
// transform tracking those transforms generate the kernel.
void howell_core(std::vector<std::vector<u64>>& pool, unsigned dim, u64 p, unsigned n, u64 m,
                 std::vector<std::size_t>& result, std::vector<unsigned>& pivcol,
                 std::vector<unsigned>& pivexp, std::vector<std::size_t>& zero_rows) {
  std::vector<std::size_t> active(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) active[i] = i;

  for (unsigned col = 0; col < dim; ++col) {
    // pick the active row with minimal valuation in this column
    std::size_t best = SIZE_MAX;
    unsigned bestv = n;
    for (std::size_t idx : active) {
      u64 e = pool[idx][col];
      if (e == 0) continue;
      unsigned v = val_p(e, p, n);
      if (v < bestv) {
        bestv = v;
        best = idx;
      }
    }
    if (best == SIZE_MAX) continue;

    std::vector<u64>& r = pool[best];
    u64 pv = 1;
    for (unsigned i = 0; i < bestv; ++i) pv *= p;
    u64 unit = r[col] / pv;
    if (unit != 1) {
      u64 uinv = inv_mod_ppow(unit, p, m);
      kernels().scale(r.data(), r.data(), r.size(), uinv, m);
    }
    // eliminate the column from every other active row
    for (std::size_t idx : active) {
      if (idx == best) continue;
      std::vector<u64>& s = pool[idx];
      if (s[col] == 0) continue;
      u64 q = s[col] / pv;
      kernels().axpy(s.data(), r.data(), s.size(), negmod(q % m, m), m);
    }
    // annihilator row p^{n-v} * r joins the active set
    if (bestv > 0) {
      std::vector<u64> a(r.size());
      u64 ann = m / pv;
      kernels().scale(a.data(), r.data(), a.size(), ann, m);
      bool nz = false;
      for (unsigned j = 0; j < dim; ++j) nz = nz || a[j] != 0;
      if (nz || a.size() > dim) {
        pool.push_back(std::move(a));
        active.push_back(pool.size() - 1);
      }
    }
    // move pivot row out of the active set
    active.erase(std::find(active.begin(), active.end(), best));
    result.push_back(best);
    pivcol.push_back(col);
    pivexp.push_back(bestv);
  }
  zero_rows = active;
}

void reduce_above(std::vector<std::vector<u64>>& pool, const std::vector<std::size_t>& result,
                  const std::vector<unsigned>& pivcol, const std::vector<unsigned>& pivexp,
                  u64 p, u64 m) {
  for (std::size_t a = result.size(); a-- > 0;) {
    for (std::size_t b = a + 1; b < result.size(); ++b) {
      u64 pv = 1;
      for (unsigned i = 0; i < pivexp[b]; ++i) pv *= p;
      u64 e = pool[result[a]][pivcol[b]];
      u64 q = e / pv;
      if (q != 0)
        kernels().axpy(pool[result[a]].data(), pool[result[b]].data(), pool[result[a]].size(),
                       negmod(q % m, m), m);
    }
  }
}

}  // namespace

Lattice howell_form(std::vector<std::vector<u64>> gens, unsigned dim, u64 p, unsigned n) {
  u64 m = pow_checked(p, n);
  Lattice L;
  L.dim = dim;
  L.p = p;
  L.n = n;
  L.m = m;
  for (auto& r : gens) {
    require(r.size() == dim, Err::AmbientMismatch, "generator has wrong dimension");
    for (u64& x : r) x %= m;
  }
  std::vector<std::vector<u64>> pool = std::move(gens);
  std::vector<std::size_t> result, zero_rows;
  howell_core(pool, dim, p, n, m, result, L.pivcol, L.pivexp, zero_rows);
  reduce_above(pool, result, L.pivcol, L.pivexp, p, m);
  for (std::size_t idx : result) L.rows.push_back(std::move(pool[idx]));
  return L;
}

Lattice full_ambient(unsigned dim, u64 p, unsigned n) {
  std::vector<std::vector<u64>> gens(dim, std::vector<u64>(dim, 0));
  for (unsigned i = 0; i < dim; ++i) gens[i][i] = 1;
  return howell_form(std::move(gens), dim, p, n);
}

std::vector<u64> Lattice::reduce_vector(std::vector<u64> v) const {
  require(v.size() == dim, Err::AmbientMismatch, "vector has wrong dimension");
  for (u64& x : v) x %= m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    u64 pv = 1;
    for (unsigned t = 0; t < pivexp[i]; ++t) pv *= p;
    u64 e = v[pivcol[i]];
    u64 q = e / pv;
    if (q != 0) kernels().axpy(v.data(), rows[i].data(), dim, negmod(q % m, m), m);
  }
  return v;
}

bool Lattice::contains(const std::vector<u64>& v) const {
  std::vector<u64> r = reduce_vector(v);
  for (u64 x : r)
    if (x != 0) return false;
  return true;
}

std::optional<std::vector<u64>> Lattice::express(std::vector<u64> v) const {
  require(v.size() == dim, Err::AmbientMismatch, "vector has wrong dimension");
  for (u64& x : v) x %= m;
  std::vector<u64> coeff(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    u64 pv = 1;
    for (unsigned t = 0; t < pivexp[i]; ++t) pv *= p;
    u64 e = v[pivcol[i]];
    if (e % pv != 0) return std::nullopt;
    u64 q = e / pv;
    coeff[i] = q % m;
    if (q != 0) kernels().axpy(v.data(), rows[i].data(), dim, negmod(q % m, m), m);
  }
  for (u64 x : v)
    if (x != 0) return std::nullopt;
  return coeff;
}

unsigned Lattice::size_log() const {
  unsigned s = 0;
  for (unsigned v : pivexp) s += n - v;
  return s;
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
  return a.dim == b.dim && a.m == b.m && a.rows == b.rows;
}

bool lattice_contains(const Lattice& sup, const Lattice& sub) {
  require(sup.dim == sub.dim && sup.m == sub.m, Err::AmbientMismatch, "different ambients");
  for (const auto& r : sub.rows)
    if (!sup.contains(r)) return false;
  return true;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require(a.dim == b.dim && a.m == b.m, Err::AmbientMismatch, "different ambients");
  std::vector<std::vector<u64>> gens = a.rows;
  gens.insert(gens.end(), b.rows.begin(), b.rows.end());
  return howell_form(std::move(gens), a.dim, a.p, a.n);
}

Lattice lattice_scale(const Lattice& a, unsigned j) {
  u64 f = 1;
  for (unsigned i = 0; i < j && f < a.m; ++i) f *= a.p;
  std::vector<std::vector<u64>> gens;
  for (const auto& r : a.rows) {
    std::vector<u64> s(a.dim);
    kernels().scale(s.data(), r.data(), a.dim, f % a.m, a.m);
    gens.push_back(std::move(s));
  }
  return howell_form(std::move(gens), a.dim, a.p, a.n);
}

namespace {

// kernel of the map u -> sum u_i rows_i, with transform tracking
std::vector<std::vector<u64>> kernel_gens(const std::vector<std::vector<u64>>& gens, unsigned dim,
                                          u64 p, unsigned n, u64 m) {
  const std::size_t k = gens.size();
  std::vector<std::vector<u64>> pool;
  pool.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<u64> row(dim + k, 0);
    for (unsigned j = 0; j < dim; ++j) row[j] = gens[i][j] % m;
    row[dim + i] = 1;
    pool.push_back(std::move(row));
  }
  std::vector<std::size_t> result, zero_rows;
  std::vector<unsigned> pivcol, pivexp;
  howell_core(pool, dim, p, n, m, result, pivcol, pivexp, zero_rows);
  std::vector<std::vector<u64>> out;
  for (std::size_t idx : zero_rows) {
    std::vector<u64> u(pool[idx].begin() + dim, pool[idx].end());
    bool nz = false;
    for (u64 x : u) nz = nz || x != 0;
    if (nz) out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

Lattice kernel_of(const std::vector<std::vector<u64>>& gens, unsigned dim, u64 p, unsigned n) {
  u64 m = pow_checked(p, n);
  return howell_form(kernel_gens(gens, dim, p, n, m), (unsigned)gens.size(), p, n);
}

std::optional<std::vector<u64>> solve_in_span(const std::vector<std::vector<u64>>& gens,
                                              const std::vector<u64>& target, unsigned dim,
                                              u64 p, unsigned n) {
  u64 m = pow_checked(p, n);
  const std::size_t k = gens.size();
  std::vector<std::vector<u64>> pool;
  pool.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<u64> row(dim + k, 0);
    for (unsigned j = 0; j < dim; ++j) row[j] = gens[i][j] % m;
    row[dim + i] = 1;
    pool.push_back(std::move(row));
  }
  std::vector<std::size_t> result, zero_rows;
  std::vector<unsigned> pivcol, pivexp;
  howell_core(pool, dim, p, n, m, result, pivcol, pivexp, zero_rows);

  std::vector<u64> v = target;
  require(v.size() == dim, Err::AmbientMismatch, "target has wrong dimension");
  for (u64& x : v) x %= m;
  std::vector<u64> u(k, 0);
  for (std::size_t i = 0; i < result.size(); ++i) {
    u64 pv = 1;
    for (unsigned t = 0; t < pivexp[i]; ++t) pv *= p;
    u64 e = v[pivcol[i]];
    if (e % pv != 0) return std::nullopt;
    u64 q = (e / pv) % m;
    if (q != 0) {
      kernels().axpy(v.data(), pool[result[i]].data(), dim, negmod(q, m), m);
      kernels().axpy(u.data(), pool[result[i]].data() + dim, k, q, m);
    }
  }
  for (u64 x : v)
    if (x != 0) return std::nullopt;
  return u;
}

Lattice preimage_lattice(const std::vector<std::vector<u64>>& maprows, unsigned dim_src,
                         const Lattice& target) {
  require(maprows.size() == dim_src, Err::AmbientMismatch, "map must have one row per source dim");
  std::vector<std::vector<u64>> stacked = maprows;
  stacked.insert(stacked.end(), target.rows.begin(), target.rows.end());
  std::vector<std::vector<u64>> ker =
      kernel_gens(stacked, target.dim, target.p, target.n, target.m);
  std::vector<std::vector<u64>> xs;
  for (auto& u : ker) xs.push_back(std::vector<u64>(u.begin(), u.begin() + dim_src));
  return howell_form(std::move(xs), dim_src, target.p, target.n);
}

std::vector<unsigned> quotient_invariants(const Lattice& sup, const Lattice& sub) {
  require(lattice_contains(sup, sub), Err::AmbientMismatch, "quotient needs sub inside sup");
  unsigned n = sup.n;
  std::vector<unsigned> sz(n + 1, 0);
  for (unsigned j = 0; j <= n; ++j) {
    Lattice t = lattice_sum(lattice_scale(sup, j), sub);
    sz[j] = t.size_log();
  }
  // |p^j Q| = p^{sz[j] - sz[n]}; d_j = #(invariant factors with exponent > j)
  std::vector<unsigned> d(n, 0);
  for (unsigned j = 0; j < n; ++j) d[j] = sz[j] - sz[j + 1];
  std::vector<unsigned> inv;
  for (unsigned i = 1; i <= (n ? d[0] : 0); ++i) {
    unsigned e = 0;
    for (unsigned j = 0; j < n; ++j)
      if (d[j] >= i) e = j + 1;
    inv.push_back(e);
  }
  return inv;  // descending by construction
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  require(a.dim == b.dim && a.m == b.m, Err::AmbientMismatch, "different ambients");
  std::vector<std::vector<u64>> stacked = a.rows;
  stacked.insert(stacked.end(), b.rows.begin(), b.rows.end());
  std::vector<std::vector<u64>> ker = kernel_gens(stacked, a.dim, a.p, a.n, a.m);
  std::vector<std::vector<u64>> xs;
  for (auto& u : ker) {
    std::vector<u64> x(a.dim, 0);
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      if (u[i] != 0) kernels().axpy(x.data(), a.rows[i].data(), a.dim, u[i], a.m);
    xs.push_back(std::move(x));
  }
  return howell_form(std::move(xs), a.dim, a.p, a.n);
}

}  // namespace grouplog
