#include "grouplog/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "grouplog/kernels.hpp"

namespace grouplog {

namespace {

// --- F_p polynomial helpers (degree-indexed coefficient vectors) ---

void fp_trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a by monic b over F_p
std::vector<u64> fp_mod(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  fp_trim(a);
  std::size_t db = b.size() - 1;
  while (a.size() > db) {
    u64 lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (lead != 0)
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = submod(a[shift + i], mulmod(lead, b[i], p), p);
    a.pop_back();
    fp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

std::vector<u64> fp_mul(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
  fp_trim(r);
  return r;
}

// inverse of a modulo monic irreducible g over F_p (extended Euclid)
std::vector<u64> fp_inverse(std::vector<u64> a, std::vector<u64> g, u64 p) {
  fp_trim(a);
  require(!a.empty(), Err::NonUnit, "zero residue has no inverse");
  std::vector<u64> r0 = g, r1 = a, s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    std::vector<u64> q;
    std::vector<u64> rem = r0;
    fp_trim(rem);
    u64 lead_inv = inv_mod_ppow(r1.back(), p, p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      u64 c = mulmod(rem.back(), lead_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = submod(rem[shift + i], mulmod(c, r1[i], p), p);
      fp_trim(rem);
    }
    // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q s1)
    std::vector<u64> qs = fp_mul(q, s1, p);
    std::vector<u64> s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = submod(s2[i], qs[i], p);
    fp_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  require(r0.size() == 1, Err::NonUnit, "residue not invertible");
  u64 scale = inv_mod_ppow(r0[0], p, p);
  for (u64& c : s0) c = mulmod(c, scale, p);
  return fp_mod(std::move(s0), g, p);
}

bool fp_irreducible(const std::vector<u64>& g, u64 p) {
  std::size_t f = g.size() - 1;
  if (f == 0) return false;
  if (g[0] == 0) return f == 1;  // divisible by X
  // trial division by every monic polynomial of degree 1..f/2
  for (std::size_t d = 1; 2 * d <= f; ++d) {
    u64 count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u64> div(d + 1, 0);
      div[d] = 1;
      u64 t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = t % p;
        t /= p;
      }
      if (fp_mod(g, div, p).empty()) return false;
    }
  }
  return true;
}

// lexicographically least irreducible monic of degree f over F_p, ordered by
// the coefficient tuple (a_{f-1}, ..., a_0)
std::vector<u64> least_irreducible(u64 p, unsigned f) {
  u64 count = 1;
  for (unsigned i = 0; i < f; ++i) count *= p;
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<u64> g(f + 1, 0);
    g[f] = 1;
    // decode big-endian digits: a_{f-1} first
    u64 rem = idx;
    u64 place = count / p;
    for (unsigned j = 0; j < f; ++j) {
      g[f - 1 - j] = rem / place;
      rem %= place;
      place = (j + 1 == f) ? 1 : place / p;
    }
    if (fp_irreducible(g, p)) return g;
  }
  fail(Err::Internal, "no irreducible polynomial found");
}

std::string lower(std::string s) {
  for (char& c : s) c = (char)std::tolower((unsigned char)c);
  return s;
}

}  // namespace

u64 Ring::modulus_at(unsigned k) const {
  require(k <= prec_, Err::PrecisionRaise, "requested precision above ring construction precision");
  u64 m = 1;
  for (unsigned i = 0; i < k; ++i) m *= p_;
  return m;
}

// ---------------- construction ----------------

RingPtr Ring::leaf(u64 p, unsigned prec) {
  require(is_prime_u64(p), Err::InvalidArgument, "p must be prime");
  require(prec >= 1, Err::InvalidArgument, "precision must be >= 1");
  auto r = std::make_shared<Ring>();
  r->p_ = p;
  r->prec_ = prec;
  r->mod_ = pow_checked(p, prec);
  r->layer_ = Layer::Leaf;
  r->spec_ = "Zp";
  return r;
}

RingPtr Ring::power_series(u64 p, unsigned D, unsigned prec) {
  require(D >= 1 && D <= 64, Err::InvalidArgument, "power series truncation D must be in [1,64]");
  auto base = leaf(p, prec);
  if (D == 1) return base;  // (T) truncated away entirely
  auto r = std::make_shared<Ring>();
  r->p_ = p;
  r->prec_ = prec;
  r->mod_ = base->mod_;
  r->layer_ = Layer::Power;
  r->base_ = base;
  r->deg_ = D;
  r->rank_ = D;
  r->defpoly_.assign(D, 0);  // X^D = 0
  r->spec_ = "powser:" + std::to_string(D);
  return r;
}

RingPtr Ring::unramified_extension(const RingPtr& base, unsigned f) {
  require(f >= 1 && f <= 12, Err::InvalidArgument, "extension degree f must be in [1,12]");
  if (f == 1) return base;
  require(base->layer_ == Layer::Leaf || base->layer_ == Layer::Power, Err::InvalidArgument,
          "unramified extension supported over Zp and power-series bases only");
  auto r = std::make_shared<Ring>();
  r->p_ = base->p_;
  r->prec_ = base->prec_;
  r->mod_ = base->mod_;
  r->layer_ = Layer::Unram;
  r->base_ = base;
  r->deg_ = f;
  r->rank_ = f * base->rank_;
  std::vector<u64> g = least_irreducible(base->p_, f);
  r->defpoly_.assign(g.begin(), g.end() - 1);  // lift coefficients as-is
  r->spec_ = base->layer_ == Layer::Leaf ? "unram:" + std::to_string(f)
                                         : "unram:" + std::to_string(f) + "@" + base->spec_;
  r->compute_frob_root();
  return r;
}

RingPtr Ring::unramified(u64 p, unsigned f, unsigned prec) {
  return unramified_extension(leaf(p, prec), f);
}

RingPtr Ring::cyclotomic_extension(const RingPtr& base, unsigned e) {
  require(e >= 1 && e <= 7, Err::InvalidArgument, "cyclotomic order exponent e must be in [1,7]");
  u64 p = base->p_;
  u64 pe1 = 1;
  for (unsigned i = 0; i + 1 < e; ++i) pe1 *= p;
  unsigned phi = (unsigned)((p - 1) * pe1);
  require((u64)phi * base->rank_ <= 512, Err::InvalidArgument, "cyclotomic extension rank too large");
  auto r = std::make_shared<Ring>();
  r->p_ = p;
  r->prec_ = base->prec_;
  r->mod_ = base->mod_;
  r->layer_ = Layer::Cyclo;
  r->base_ = base;
  r->deg_ = phi;
  r->rank_ = phi * base->rank_;
  r->cyc_order_ = (u64)pe1 * p;
  r->defpoly_.assign(phi, 0);  // Phi_{p^e}(X) = sum_{j<p} X^{j p^{e-1}}
  for (u64 j = 0; j + 1 < p; ++j) r->defpoly_[(std::size_t)(j * pe1)] = 1;
  r->spec_ = "cyc:" + std::to_string(e) + "@" + base->spec_;
  return r;
}

void Ring::compute_frob_root() {
  // rho = F(var): the root of the defining polynomial congruent to var^p,
  // Hensel-lifted by Newton iteration inside the ring itself.
  std::vector<u64> rho(rank_, 0);
  {
    // var^p by square-and-multiply
    std::vector<u64> acc(rank_, 0), v(rank_, 0);
    acc[0] = 1;
    v[base_->rank()] = 1;  // the variable
    u64 e = p_;
    while (e) {
      if (e & 1) {
        std::vector<u64> t(rank_, 0);
        mul(t, acc, v, mod_);
        acc = t;
      }
      std::vector<u64> t(rank_, 0);
      mul(t, v, v, mod_);
      v = t;
      e >>= 1;
    }
    rho = acc;
  }
  auto eval_poly = [&](const std::vector<u64>& coeffs, const std::vector<u64>& x) {
    // scalar coefficients, leading first, Horner
    std::vector<u64> acc(rank_, 0), t(rank_, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::fill(t.begin(), t.end(), 0);
      mul(t, acc, x, mod_);
      acc = t;
      acc[0] = addmod(acc[0], coeffs[i] % mod_, mod_);
    }
    return acc;
  };
  std::vector<u64> g(deg_ + 1);
  g[0] = 1;  // monic leading
  for (unsigned i = 0; i < deg_; ++i) g[deg_ - i] = defpoly_[i] % mod_;
  std::vector<u64> gp(deg_);
  gp[0] = deg_ % mod_;
  for (unsigned i = 1; i < deg_; ++i) gp[deg_ - i] = mulmod(i % mod_, defpoly_[i] % mod_, mod_);
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<u64> val = eval_poly(g, rho);
    if (is_zero(val)) {
      frob_var_ = rho;
      return;
    }
    std::vector<u64> der = eval_poly(gp, rho);
    std::vector<u64> derinv(rank_, 0);
    require(invert_span(derinv, der, mod_), Err::Internal, "frobenius Newton derivative not a unit");
    std::vector<u64> step(rank_, 0);
    mul(step, val, derinv, mod_);
    sub(rho, rho, step, mod_);
  }
  fail(Err::Internal, "frobenius root iteration did not converge");
}

RingPtr make_ring(const RingSpec& spec) {
  switch (spec.kind) {
    case RingKind::Zp:
      return Ring::leaf(spec.p, spec.precision);
    case RingKind::Unramified:
      return Ring::unramified(spec.p, spec.param, spec.precision);
    case RingKind::PowerSeries:
      require(spec.param >= 1, Err::InvalidArgument, "power series needs D >= 1");
      return Ring::power_series(spec.p, spec.param, spec.precision);
    case RingKind::CyclotomicTensor: {
      require(spec.base != nullptr, Err::InvalidArgument, "cyclotomic tensor needs a base");
      RingSpec b = *spec.base;
      b.p = spec.p;
      b.precision = spec.precision;
      return Ring::cyclotomic_extension(make_ring(b), spec.param);
    }
  }
  fail(Err::Internal, "unknown ring kind");
}

RingPtr ring_at_precision(const RingPtr& ring, unsigned prec) {
  if (ring->precision() == prec) return ring;
  switch (ring->layer()) {
    case Ring::Layer::Leaf:
      return Ring::leaf(ring->p(), prec);
    case Ring::Layer::Power:
      return Ring::power_series(ring->p(), ring->degree(), prec);
    case Ring::Layer::Unram:
      return Ring::unramified_extension(ring_at_precision(ring->base(), prec), ring->degree());
    case Ring::Layer::Cyclo: {
      unsigned e = 0;
      u64 q = ring->cyc_order();
      while (q > 1) {
        q /= ring->p();
        ++e;
      }
      return Ring::cyclotomic_extension(ring_at_precision(ring->base(), prec), e);
    }
  }
  fail(Err::Internal, "unknown layer");
}

RingSpec parse_ring_spec(const std::string& text, u64 p, unsigned precision) {
  std::string s = lower(text);
  RingSpec spec;
  spec.p = p;
  spec.precision = precision;
  if (s == "zp") {
    spec.kind = RingKind::Zp;
    return spec;
  }
  auto starts = [&](const char* pre) { return s.rfind(pre, 0) == 0; };
  auto num_after = [&](std::size_t at, std::size_t end) -> unsigned {
    require(at < end, Err::InvalidArgument, "missing parameter in ring spec '" + text + "'");
    unsigned v = 0;
    for (std::size_t i = at; i < end; ++i) {
      require(std::isdigit((unsigned char)s[i]), Err::InvalidArgument,
              "bad ring spec '" + text + "'");
      v = v * 10 + (unsigned)(s[i] - '0');
    }
    return v;
  };
  if (starts("unram:")) {
    spec.kind = RingKind::Unramified;
    spec.param = num_after(6, s.size());
    return spec;
  }
  if (starts("powser:")) {
    spec.kind = RingKind::PowerSeries;
    spec.param = num_after(7, s.size());
    return spec;
  }
  if (starts("cyc:")) {
    std::size_t at = s.find('@');
    require(at != std::string::npos, Err::InvalidArgument,
            "cyclotomic spec needs '@<base>' in '" + text + "'");
    spec.kind = RingKind::CyclotomicTensor;
    spec.param = num_after(4, at);
    spec.base = std::make_shared<RingSpec>(parse_ring_spec(s.substr(at + 1), p, precision));
    return spec;
  }
  fail(Err::InvalidArgument, "unknown ring spec '" + text + "'");
}

// ---------------- span arithmetic ----------------

bool Ring::is_zero(std::span<const u64> a) {
  for (u64 v : a)
    if (v != 0) return false;
  return true;
}

void Ring::add(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const {
  kernels().add(dst.data(), a.data(), b.data(), dst.size(), m);
}

void Ring::sub(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const {
  kernels().sub(dst.data(), a.data(), b.data(), dst.size(), m);
}

void Ring::neg(std::span<u64> dst, std::span<const u64> a, u64 m) const {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = negmod(a[i], m);
}

void Ring::scale(std::span<u64> dst, std::span<const u64> a, u64 c, u64 m) const {
  kernels().scale(dst.data(), a.data(), dst.size(), c % m, m);
}

void Ring::mul(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b, u64 m) const {
  if (layer_ == Layer::Leaf) {
    dst[0] = mulmod(a[0], b[0], m);
    return;
  }
  std::fill(dst.begin(), dst.end(), 0);
  mul_acc(dst, a, b, m);
}

void Ring::mul_acc(std::span<u64> dst, std::span<const u64> a, std::span<const u64> b,
                   u64 m) const {
  if (layer_ == Layer::Leaf) {
    dst[0] = addmod(dst[0], mulmod(a[0], b[0], m), m);
    return;
  }
  const Ring& B = *base_;
  const unsigned br = B.rank();
  std::vector<u64> tmp((2 * deg_ - 1) * br, 0);
  for (unsigned i = 0; i < deg_; ++i) {
    auto ai = a.subspan(i * br, br);
    if (is_zero(ai)) continue;
    for (unsigned j = 0; j < deg_; ++j) {
      auto bj = b.subspan(j * br, br);
      if (is_zero(bj)) continue;
      B.mul_acc(std::span<u64>(tmp).subspan((i + j) * br, br), ai, bj, m);
    }
  }
  // reduce X^t for t >= deg via X^deg = -(sum defpoly_[i] X^i)
  for (unsigned t = 2 * deg_ - 2; t >= deg_; --t) {
    auto blk = std::span<u64>(tmp).subspan(t * br, br);
    if (!is_zero(blk)) {
      for (unsigned i = 0; i < deg_; ++i) {
        if (defpoly_[i] % m == 0) continue;
        u64 c = negmod(defpoly_[i] % m, m);
        kernels().axpy(tmp.data() + (t - deg_ + i) * br, blk.data(), br, c, m);
      }
      std::fill(blk.begin(), blk.end(), 0);
    }
    if (t == deg_) break;
  }
  kernels().add(dst.data(), dst.data(), tmp.data(), deg_ * br, m);
}

void Ring::frobenius_span(std::span<u64> dst, std::span<const u64> a, u64 m) const {
  switch (layer_) {
    case Layer::Leaf:
      dst[0] = a[0] % m;
      return;
    case Layer::Power: {
      std::vector<u64> out(deg_, 0);
      for (unsigned j = 0; j < deg_; ++j) {
        u64 v = a[j] % m;
        if (v != 0 && (u64)j * p_ < deg_) out[(std::size_t)(j * p_)] = v;
      }
      std::copy(out.begin(), out.end(), dst.begin());
      return;
    }
    case Layer::Cyclo: {
      const unsigned br = base_->rank();
      for (unsigned i = 0; i < deg_; ++i)
        base_->frobenius_span(dst.subspan(i * br, br), a.subspan(i * br, br), m);
      return;
    }
    case Layer::Unram: {
      const unsigned br = base_->rank();
      std::vector<u64> rho(rank_);
      for (unsigned i = 0; i < rank_; ++i) rho[i] = frob_var_[i] % m;
      std::vector<u64> acc(rank_, 0), t(rank_, 0), fb(br, 0);
      for (int i = (int)deg_ - 1; i >= 0; --i) {
        std::fill(t.begin(), t.end(), 0);
        mul(t, acc, rho, m);
        acc = t;
        base_->frobenius_span(fb, a.subspan((std::size_t)i * br, br), m);
        kernels().add(acc.data(), acc.data(), fb.data(), br, m);
      }
      std::copy(acc.begin(), acc.end(), dst.begin());
      return;
    }
  }
}

void Ring::sigma_span(std::span<u64> dst, std::span<const u64> a, u64 m) const {
  switch (layer_) {
    case Layer::Leaf:
      dst[0] = a[0] % m;
      return;
    case Layer::Power:
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] % m;
      return;
    case Layer::Cyclo: {
      const unsigned br = base_->rank();
      for (unsigned i = 0; i < deg_; ++i)
        base_->sigma_span(dst.subspan(i * br, br), a.subspan(i * br, br), m);
      return;
    }
    case Layer::Unram: {
      const unsigned br = base_->rank();
      std::vector<u64> rho(rank_);
      for (unsigned i = 0; i < rank_; ++i) rho[i] = frob_var_[i] % m;
      std::vector<u64> acc(rank_, 0), t(rank_, 0);
      for (int i = (int)deg_ - 1; i >= 0; --i) {
        std::fill(t.begin(), t.end(), 0);
        mul(t, acc, rho, m);
        acc = t;
        auto blk = a.subspan((std::size_t)i * br, br);
        for (unsigned j = 0; j < br; ++j) acc[j] = addmod(acc[j], blk[j] % m, m);
      }
      std::copy(acc.begin(), acc.end(), dst.begin());
      return;
    }
  }
}

// ---------------- residue field ----------------

unsigned Ring::residue_degree() const {
  switch (layer_) {
    case Layer::Leaf:
      return 1;
    case Layer::Power:
    case Layer::Cyclo:
      return base_->residue_degree();
    case Layer::Unram:
      return deg_ * base_->residue_degree();
  }
  return 1;
}

std::vector<u64> Ring::residue_min_poly() const {
  switch (layer_) {
    case Layer::Leaf:
      return {};
    case Layer::Power:
    case Layer::Cyclo:
      return base_->residue_min_poly();
    case Layer::Unram: {
      require(base_->residue_degree() == 1, Err::Internal, "stacked unramified layers");
      std::vector<u64> g(deg_);
      for (unsigned i = 0; i < deg_; ++i) g[i] = defpoly_[i] % p_;
      return g;
    }
  }
  return {};
}

void Ring::residue_project(std::span<const u64> a, std::span<u64> out) const {
  switch (layer_) {
    case Layer::Leaf:
      out[0] = a[0] % p_;
      return;
    case Layer::Power:
      base_->residue_project(a.subspan(0, base_->rank()), out);
      return;
    case Layer::Cyclo: {
      const unsigned br = base_->rank();
      std::fill(out.begin(), out.end(), 0);
      std::vector<u64> tmp(out.size());
      for (unsigned i = 0; i < deg_; ++i) {
        base_->residue_project(a.subspan(i * br, br), tmp);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = addmod(out[j], tmp[j], p_);
      }
      return;
    }
    case Layer::Unram: {
      const unsigned br = base_->rank();
      std::vector<u64> tmp(1);
      for (unsigned i = 0; i < deg_; ++i) {
        base_->residue_project(a.subspan(i * br, br), tmp);
        out[i] = tmp[0];
      }
      return;
    }
  }
}

void Ring::residue_lift(std::span<const u64> in, std::span<u64> out, u64 m) const {
  std::fill(out.begin(), out.end(), 0);
  switch (layer_) {
    case Layer::Leaf:
      out[0] = in[0] % m;
      return;
    case Layer::Power:
    case Layer::Cyclo:
      base_->residue_lift(in, out.subspan(0, base_->rank()), m);
      return;
    case Layer::Unram: {
      const unsigned br = base_->rank();
      for (unsigned i = 0; i < deg_; ++i) {
        std::vector<u64> scalar(1, in[i]);
        base_->residue_lift(scalar, out.subspan(i * br, br), m);
      }
      return;
    }
  }
}

bool Ring::invert_span(std::span<u64> dst, std::span<const u64> a, u64 m) const {
  const unsigned f = residue_degree();
  std::vector<u64> proj(f, 0);
  residue_project(a, proj);
  bool zero = true;
  for (u64 v : proj) zero = zero && v == 0;
  if (zero) return false;
  std::vector<u64> rinv;
  if (f == 1) {
    rinv = {inv_mod_ppow(proj[0], p_, p_)};
  } else {
    std::vector<u64> g = residue_min_poly();
    g.push_back(1);  // monic
    rinv = fp_inverse(proj, g, p_);
    rinv.resize(f, 0);
  }
  std::vector<u64> y(rank_, 0);
  residue_lift(rinv, y, m);
  std::vector<u64> e(rank_, 0), t(rank_, 0);
  for (int iter = 0; iter < 64; ++iter) {
    mul(e, a, y, m);
    if (e[0] == 1 % m && is_zero(std::span<const u64>(e).subspan(1))) {
      std::copy(y.begin(), y.end(), dst.begin());
      return true;
    }
    // y <- y (2 - a y)
    neg(t, e, m);
    t[0] = addmod(t[0], 2 % m, m);
    std::vector<u64> y2(rank_, 0);
    mul(y2, y, t, m);
    y = std::move(y2);
  }
  fail(Err::Internal, "unit inversion did not converge");
}

unsigned Ring::valuation_span(std::span<const u64> a, unsigned cap) const {
  unsigned v = cap;
  for (u64 x : a) v = std::min(v, val_p(x, p_, cap));
  return v;
}

// ---------------- value-level API ----------------

RElem Ring::zero(unsigned prec) const {
  require(prec >= 1 && prec <= prec_, Err::PrecisionRaise, "bad element precision");
  return RElem{shared_from_this(), prec, std::vector<u64>(rank_, 0)};
}

RElem Ring::one(unsigned prec) const {
  RElem r = zero(prec);
  r.c[0] = 1 % modulus_at(prec);
  return r;
}

RElem Ring::from_scalar(u64 v, unsigned prec) const {
  RElem r = zero(prec);
  r.c[0] = v % modulus_at(prec);
  return r;
}

RElem Ring::from_int(long long v, unsigned prec) const {
  u64 m = modulus_at(prec);
  long long red = v % (long long)m;
  if (red < 0) red += (long long)m;
  return from_scalar((u64)red, prec);
}

RElem Ring::var(unsigned prec) const {
  require(layer_ != Layer::Leaf, Err::InvalidArgument, "Zp has no variable");
  RElem r = zero(prec);
  u64 m = modulus_at(prec);
  if (deg_ == 1)  // degree-1 layer: the variable is the constant -c_0
    r.c[0] = negmod(defpoly_[0] % m, m);
  else
    r.c[base_->rank()] = 1 % m;
  return r;
}

RElem Ring::random(Rng& rng, unsigned prec) const {
  RElem r = zero(prec);
  u64 m = modulus_at(prec);
  for (u64& v : r.c) v = rng.below(m);
  return r;
}

RElem Ring::random_unit(Rng& rng, unsigned prec) const {
  for (int tries = 0; tries < 200; ++tries) {
    RElem r = random(rng, prec);
    std::vector<u64> proj(residue_degree(), 0);
    residue_project(r.c, proj);
    for (u64 v : proj)
      if (v != 0) return r;
  }
  fail(Err::Internal, "random unit sampling failed");
}

bool Ring::has_unram_layer() const {
  for (const Ring* r = this; r; r = r->base_.get())
    if (r->layer_ == Layer::Unram) return true;
  return false;
}

bool Ring::has_power_layer() const {
  for (const Ring* r = this; r; r = r->base_.get())
    if (r->layer_ == Layer::Power) return true;
  return false;
}

bool Ring::has_cyclo_layer() const {
  for (const Ring* r = this; r; r = r->base_.get())
    if (r->layer_ == Layer::Cyclo) return true;
  return false;
}

std::string Ring::var_name() const {
  switch (layer_) {
    case Layer::Leaf:
      return "";
    case Layer::Unram:
      return "w";
    case Layer::Power:
      return "T";
    case Layer::Cyclo:
      return "z";
  }
  return "";
}

// ---------------- RElem operations ----------------

namespace {

void check_same_ring(const RElem& a, const RElem& b) {
  require(a.ring.get() == b.ring.get(), Err::RingMismatch, "elements of different rings");
}

std::vector<u64> reduced(const RElem& a, u64 m) {
  std::vector<u64> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c[i] % m;
  return c;
}

}  // namespace

RElem radd(const RElem& a, const RElem& b) {
  check_same_ring(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.ring->modulus_at(k);
  RElem r = a.ring->zero(k);
  auto ca = reduced(a, m), cb = reduced(b, m);
  a.ring->add(r.c, ca, cb, m);
  return r;
}

RElem rsub(const RElem& a, const RElem& b) {
  check_same_ring(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.ring->modulus_at(k);
  RElem r = a.ring->zero(k);
  auto ca = reduced(a, m), cb = reduced(b, m);
  a.ring->sub(r.c, ca, cb, m);
  return r;
}

RElem rneg(const RElem& a) {
  u64 m = a.ring->modulus_at(a.prec);
  RElem r = a.ring->zero(a.prec);
  a.ring->neg(r.c, a.c, m);
  return r;
}

RElem rmul(const RElem& a, const RElem& b) {
  check_same_ring(a, b);
  unsigned k = std::min(a.prec, b.prec);
  u64 m = a.ring->modulus_at(k);
  RElem r = a.ring->zero(k);
  auto ca = reduced(a, m), cb = reduced(b, m);
  a.ring->mul(r.c, ca, cb, m);
  return r;
}

RElem rpow(const RElem& a, u64 e) {
  RElem acc = a.ring->one(a.prec);
  RElem v = a;
  while (e) {
    if (e & 1) acc = rmul(acc, v);
    v = rmul(v, v);
    e >>= 1;
  }
  return acc;
}

RElem frobenius(const RElem& a) {
  u64 m = a.ring->modulus_at(a.prec);
  RElem r = a.ring->zero(a.prec);
  a.ring->frobenius_span(r.c, a.c, m);
  return r;
}

RElem galois_sigma(const RElem& a, unsigned times) {
  RElem r = a;
  u64 m = a.ring->modulus_at(a.prec);
  for (unsigned i = 0; i < times; ++i) {
    RElem t = a.ring->zero(a.prec);
    a.ring->sigma_span(t.c, r.c, m);
    r = t;
  }
  return r;
}

RElem invert(const RElem& a) {
  u64 m = a.ring->modulus_at(a.prec);
  RElem r = a.ring->zero(a.prec);
  require(a.ring->invert_span(r.c, a.c, m), Err::NonUnit, "element is not a unit");
  return r;
}

RElem reduce_precision(const RElem& a, unsigned new_n) {
  require(new_n <= a.prec, Err::PrecisionRaise,
          "cannot raise precision of a value (would fabricate digits)");
  require(new_n >= 1, Err::InvalidArgument, "precision must stay >= 1");
  RElem r = a;
  r.prec = new_n;
  u64 m = a.ring->modulus_at(new_n);
  for (u64& v : r.c) v %= m;
  return r;
}

unsigned valuation(const RElem& a) { return a.ring->valuation_span(a.c, a.prec); }

bool requal_at(const RElem& a, const RElem& b, unsigned k) {
  check_same_ring(a, b);
  require(k <= a.prec && k <= b.prec, Err::PrecisionRaise, "comparison beyond value precision");
  u64 m = a.ring->modulus_at(k);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] % m != b.c[i] % m) return false;
  return true;
}

bool requal(const RElem& a, const RElem& b) {
  return requal_at(a, b, std::min(a.prec, b.prec));
}

bool ris_zero(const RElem& a) { return Ring::is_zero(a.c); }

RElem embed(const RElem& a, const RingPtr& target) {
  if (target.get() == a.ring.get()) return a;
  require(target->base() != nullptr, Err::RingMismatch, "element ring is not in the target tower");
  RElem inner = (target->base().get() == a.ring.get()) ? a : embed(a, target->base());
  RElem out = target->zero(std::min(inner.prec, target->precision()));
  std::copy(inner.c.begin(), inner.c.end(), out.c.begin());
  u64 m = target->modulus_at(out.prec);
  for (u64& v : out.c) v %= m;
  return out;
}

std::string to_string(const RElem& a) {
  const Ring& R = *a.ring;
  if (R.layer() == Ring::Layer::Leaf) return std::to_string(a.c[0]);
  std::ostringstream os;
  const unsigned br = R.base()->rank();
  bool first = true;
  for (unsigned i = 0; i < R.degree(); ++i) {
    RElem blk = R.base()->zero(std::max(1u, std::min(a.prec, R.base()->precision())));
    std::copy(a.c.begin() + (std::size_t)i * br, a.c.begin() + (std::size_t)(i + 1) * br,
              blk.c.begin());
    if (ris_zero(blk)) continue;
    std::string inner = to_string(blk);
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << inner;
    } else {
      bool composite = inner.find_first_of("+*") != std::string::npos;
      if (composite)
        os << "(" << inner << ")*";
      else if (inner != "1")
        os << inner << "*";
      os << R.var_name();
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace grouplog
