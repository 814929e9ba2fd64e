#include "grouplog/pgroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace grouplog {

namespace {

bool is_p_power(u64 order, u64 p) {
  while (order % p == 0) order /= p;
  return order == 1;
}

std::string word_name(const std::vector<std::pair<unsigned, unsigned>>& word,
                      const std::vector<std::string>& gen_names) {
  if (word.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += "*";
    s += gen_names[word[i].first];
    if (word[i].second > 1) s += "^" + std::to_string(word[i].second);
  }
  return s;
}

}  // namespace

GroupPtr renumber_and_verify(u64 p, const std::vector<unsigned>& raw, unsigned order,
                             const std::vector<unsigned>& gens,
                             const std::vector<std::string>& gen_names,
                             const std::string& spec);

unsigned FiniteGroup::pow(unsigned g, long long e) const {
  unsigned ord = element_order(g);
  long long r = e % (long long)ord;
  if (r < 0) r += ord;
  unsigned acc = 0;
  for (long long i = 0; i < r; ++i) acc = mul(acc, g);
  return acc;
}

unsigned FiniteGroup::element_order(unsigned g) const {
  unsigned acc = g, ord = 1;
  while (acc != 0) {
    acc = mul(acc, g);
    ++ord;
  }
  return ord;
}

unsigned FiniteGroup::exponent() const {
  unsigned e = 1;
  for (unsigned g = 0; g < order_; ++g) e = std::max(e, element_order(g));
  return e;  // p-group: lcm of p-powers is the max
}

std::vector<unsigned> FiniteGroup::center() const {
  std::vector<unsigned> z;
  for (unsigned g = 0; g < order_; ++g) {
    bool central = true;
    for (unsigned h = 0; h < order_ && central; ++h) central = mul(g, h) == mul(h, g);
    if (central) z.push_back(g);
  }
  return z;
}

std::vector<unsigned> FiniteGroup::commutator_subgroup() const {
  std::vector<unsigned> seed;
  for (unsigned g = 0; g < order_; ++g)
    for (unsigned h = 0; h < order_; ++h) seed.push_back(commutator(g, h));
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  return subgroup_closure(*this, seed);
}

bool FiniteGroup::is_commutator(unsigned c) const {
  for (unsigned g = 0; g < order_; ++g)
    for (unsigned h = 0; h < order_; ++h)
      if (commutator(g, h) == c) return true;
  return false;
}

GroupPtr FiniteGroup::from_table(u64 p, std::vector<unsigned> mul_table, unsigned order,
                                 std::vector<unsigned> gens, std::vector<std::string> gen_names,
                                 std::string spec) {
  return renumber_and_verify(p, mul_table, order, gens, gen_names, spec);
}

// BFS renumbering from the generators, then full axiom verification and
// conjugacy class computation.
GroupPtr renumber_and_verify(u64 p, const std::vector<unsigned>& raw, unsigned order,
                             const std::vector<unsigned>& gens,
                             const std::vector<std::string>& gen_names,
                             const std::string& spec) {
  require(order >= 1 && order <= FiniteGroup::kOrderCap, Err::OrderCap,
          "group order must be in [1,128]");
  require(is_p_power(order, p), Err::NonPPower,
          "group order " + std::to_string(order) + " is not a power of p=" + std::to_string(p));

  auto mul_raw = [&](unsigned a, unsigned b) { return raw[a * order + b]; };
  std::vector<unsigned> old2new(order, order), new2old;
  new2old.reserve(order);
  std::vector<std::vector<std::pair<unsigned, unsigned>>> words(order);
  old2new[0] = 0;
  new2old.push_back(0);
  for (unsigned qi = 0; qi < new2old.size(); ++qi) {
    unsigned x = new2old[qi];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      unsigned y = mul_raw(x, gens[gi]);
      if (old2new[y] == order) {
        unsigned idx = (unsigned)new2old.size();
        old2new[y] = idx;
        auto w = words[qi];
        if (!w.empty() && w.back().first == gi)
          w.back().second += 1;
        else
          w.push_back({(unsigned)gi, 1});
        words[idx] = std::move(w);
        new2old.push_back(y);
      }
    }
  }
  require(new2old.size() == order, Err::Internal, "generators do not generate the group");

  auto g = std::make_shared<FiniteGroup>();
  g->order_ = order;
  g->p_ = p;
  g->spec_ = spec;
  g->gen_names_ = gen_names;
  g->mul_.resize((std::size_t)order * order);
  for (unsigned a = 0; a < order; ++a)
    for (unsigned b = 0; b < order; ++b)
      g->mul_[a * order + b] = old2new[mul_raw(new2old[a], new2old[b])];
  for (unsigned gi = 0; gi < gens.size(); ++gi) g->gens_.push_back(old2new[gens[gi]]);
  g->names_.resize(order);
  for (unsigned a = 0; a < order; ++a) g->names_[a] = word_name(words[a], gen_names);

  // axioms
  g->inv_.assign(order, order);
  for (unsigned a = 0; a < order; ++a) {
    require(g->mul(a, 0) == a && g->mul(0, a) == a, Err::Internal, "identity axiom fails");
    for (unsigned b = 0; b < order; ++b)
      if (g->mul(a, b) == 0) g->inv_[a] = b;
    require(g->inv_[a] < order, Err::Internal, "inverse axiom fails");
    require(g->mul(g->inv_[a], a) == 0, Err::Internal, "two-sided inverse fails");
  }
  for (unsigned a = 0; a < order; ++a)
    for (unsigned b = 0; b < order; ++b)
      for (unsigned c = 0; c < order; ++c)
        require(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)), Err::Internal,
                "associativity fails");

  g->abelian_ = true;
  for (unsigned a = 0; a < order && g->abelian_; ++a)
    for (unsigned b = 0; b < order; ++b)
      if (g->mul(a, b) != g->mul(b, a)) {
        g->abelian_ = false;
        break;
      }

  // conjugacy classes, identity class first, others by least element
  g->cls_of_.assign(order, order);
  std::vector<std::vector<unsigned>> classes;
  for (unsigned x = 0; x < order; ++x) {
    if (g->cls_of_[x] != order) continue;
    std::set<unsigned> orbit;
    for (unsigned t = 0; t < order; ++t) orbit.insert(g->conj(t, x));
    std::vector<unsigned> cls(orbit.begin(), orbit.end());
    unsigned idx = (unsigned)classes.size();
    for (unsigned y : cls) g->cls_of_[y] = idx;
    classes.push_back(std::move(cls));
  }
  g->classes_ = std::move(classes);
  return g;
}

// ---------------- constructors ----------------

GroupPtr cyclic_group(u64 p, unsigned n) {
  std::vector<unsigned> mul(n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  return renumber_and_verify(p, mul, n, {n > 1 ? 1u : 0u}, {"c"}, "C" + std::to_string(n));
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B) {
  require(A->p() == B->p(), Err::InvalidArgument, "product factors over different primes");
  unsigned n = A->order() * B->order();
  require(n <= FiniteGroup::kOrderCap, Err::OrderCap, "product order exceeds 128");
  unsigned nb = B->order();
  std::vector<unsigned> mul((std::size_t)n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      mul[a * n + b] = A->mul(a / nb, b / nb) * nb + B->mul(a % nb, b % nb);
  std::vector<unsigned> gens;
  std::vector<std::string> gen_names;
  for (std::size_t i = 0; i < A->generators().size(); ++i) {
    gens.push_back(A->generators()[i] * nb);
    gen_names.push_back(A->generator_names()[i] + "1");
  }
  for (std::size_t i = 0; i < B->generators().size(); ++i) {
    gens.push_back(B->generators()[i]);
    gen_names.push_back(B->generator_names()[i] + "2");
  }
  return renumber_and_verify(A->p(), mul, n, gens, gen_names,
                             A->spec_string() + "x" + B->spec_string());
}

namespace {

// order-2^m groups of the form <r, s> with s r^k s^-1 = r^{t k} and s^2 = r^z
GroupPtr two_generator_2group(unsigned n, long long t, unsigned s2_power, const char* rn,
                              const char* sn, const std::string& spec) {
  unsigned half = n / 2;
  auto enc = [&](unsigned a, unsigned k) { return a * half + k; };
  auto twist = [&](unsigned k, unsigned a) {  // r^k conjugated by s^a
    long long kk = k;
    for (unsigned i = 0; i < a; ++i) kk = ((kk * t) % half + half) % half;
    return (unsigned)kk;
  };
  std::vector<unsigned> mul((std::size_t)n * n);
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned k = 0; k < half; ++k)
      for (unsigned a2 = 0; a2 < 2; ++a2)
        for (unsigned k2 = 0; k2 < half; ++k2) {
          // (s^a r^k)(s^{a2} r^{k2}) = s^{a+a2} r^{twist(k,a2)+k2} [with s^2 = r^{s2}]
          unsigned aa = a + a2;
          unsigned kk = (twist(k, a2) + k2) % half;
          if (aa == 2) {
            aa = 0;
            kk = (kk + s2_power) % half;
          }
          mul[enc(a, k) * n + enc(a2, k2)] = enc(aa, kk);
        }
  return renumber_and_verify(2, mul, n, {enc(0, 1), enc(1, 0)}, {rn, sn}, spec);
}

}  // namespace

GroupPtr dihedral_group(unsigned n) {
  require(n >= 8 && is_p_power(n, 2), Err::InvalidArgument, "dihedral order must be 2^m >= 8");
  return two_generator_2group(n, -1, 0, "r", "s", "D" + std::to_string(n));
}

GroupPtr quaternion_group(unsigned n) {
  require(n >= 8 && is_p_power(n, 2), Err::InvalidArgument, "quaternion order must be 2^m >= 8");
  const char* a = n == 8 ? "i" : "a";
  const char* b = n == 8 ? "j" : "b";
  return two_generator_2group(n, -1, n / 4, a, b, "Q" + std::to_string(n));
}

GroupPtr semidihedral16() { return two_generator_2group(16, 3, 0, "r", "s", "SD16"); }

GroupPtr modular16() { return two_generator_2group(16, 5, 0, "r", "s", "M16"); }

GroupPtr heisenberg(u64 p) {
  require(p % 2 == 1, Err::InvalidArgument, "Heisenberg group needs odd p");
  unsigned up = (unsigned)p;
  unsigned n = up * up * up;
  require(n <= FiniteGroup::kOrderCap, Err::OrderCap, "p^3 exceeds the order cap");
  auto enc = [&](unsigned a, unsigned b, unsigned c) { return (a * up + b) * up + c; };
  std::vector<unsigned> mul((std::size_t)n * n);
  for (unsigned a = 0; a < up; ++a)
    for (unsigned b = 0; b < up; ++b)
      for (unsigned c = 0; c < up; ++c)
        for (unsigned a2 = 0; a2 < up; ++a2)
          for (unsigned b2 = 0; b2 < up; ++b2)
            for (unsigned c2 = 0; c2 < up; ++c2)
              mul[enc(a, b, c) * n + enc(a2, b2, c2)] =
                  enc((a + a2) % up, (b + b2) % up, (c + c2 + a * b2) % up);
  return renumber_and_verify(p, mul, n, {enc(1, 0, 0), enc(0, 1, 0)}, {"x", "y"},
                             "H" + std::to_string(n));
}

GroupPtr build_group(const std::string& spec, u64 p) {
  std::string s;
  for (char c : spec) s += (char)std::toupper((unsigned char)c);
  auto parse_cyclic = [&](const std::string& t) -> unsigned {
    require(t.size() >= 2 && t[0] == 'C', Err::InvalidArgument, "bad group spec '" + spec + "'");
    unsigned n = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      require(std::isdigit((unsigned char)t[i]), Err::InvalidArgument,
              "bad group spec '" + spec + "'");
      n = n * 10 + (unsigned)(t[i] - '0');
    }
    require(n >= 1, Err::InvalidArgument, "bad group spec '" + spec + "'");
    return n;
  };
  if (s == "D8" || s == "D16" || s == "Q8" || s == "Q16" || s == "SD16" || s == "M16")
    require(p == 2, Err::NonPPower, s + " is a 2-group");
  if (s == "D8") return dihedral_group(8);
  if (s == "D16") return dihedral_group(16);
  if (s == "Q8") return quaternion_group(8);
  if (s == "Q16") return quaternion_group(16);
  if (s == "SD16") return semidihedral16();
  if (s == "M16") return modular16();
  if (s == "H27") {
    require(p == 3, Err::NonPPower, "H27 is a 3-group");
    return heisenberg(3);
  }
  if (!s.empty() && s[0] == 'C') {
    std::size_t x = s.find('X');
    if (x == std::string::npos) {
      unsigned n = parse_cyclic(s);
      require(is_p_power(n, p), Err::NonPPower, "order not a power of the session prime");
      return cyclic_group(p, n);
    }
    unsigned n = parse_cyclic(s.substr(0, x));
    unsigned m = parse_cyclic(s.substr(x + 1));
    require(is_p_power(n, p) && is_p_power(m, p), Err::NonPPower,
            "orders not powers of the session prime");
    return direct_product(cyclic_group(p, n), cyclic_group(p, m));
  }
  fail(Err::InvalidArgument, "unknown group spec '" + spec + "'");
}

// ---------------- subgroup machinery ----------------

std::vector<unsigned> subgroup_closure(const FiniteGroup& G, std::vector<unsigned> seed) {
  std::vector<bool> in(G.order(), false);
  in[0] = true;
  std::vector<unsigned> elems{0};
  for (unsigned s : seed)
    if (!in[s]) {
      in[s] = true;
      elems.push_back(s);
    }
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) {
        unsigned prod = G.mul(elems[i], elems[j]);
        if (!in[prod]) {
          in[prod] = true;
          elems.push_back(prod);
          grew = true;
        }
      }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<unsigned>> subgroups(const FiniteGroup& G) {
  std::set<std::vector<unsigned>> found;
  found.insert({0});
  std::vector<std::vector<unsigned>> queue{{0}};
  while (!queue.empty()) {
    std::vector<unsigned> H = std::move(queue.back());
    queue.pop_back();
    for (unsigned g = 1; g < G.order(); ++g) {
      if (std::binary_search(H.begin(), H.end(), g)) continue;
      std::vector<unsigned> seed = H;
      seed.push_back(g);
      std::vector<unsigned> K = subgroup_closure(G, seed);
      if (found.insert(K).second) {
        require(found.size() <= 100000, Err::Internal, "subgroup enumeration exploded");
        queue.push_back(std::move(K));
      }
    }
  }
  std::vector<std::vector<unsigned>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

bool verify_hom(const GroupHom& h) {
  const FiniteGroup& A = *h.source;
  for (unsigned a = 0; a < A.order(); ++a)
    for (unsigned b = 0; b < A.order(); ++b)
      if (h.images[A.mul(a, b)] != h.target->mul(h.images[a], h.images[b])) return false;
  return true;
}

QuotientResult quotient(const GroupPtr& G, const std::vector<unsigned>& normal_subgroup) {
  const FiniteGroup& g = *G;
  std::vector<bool> in_n(g.order(), false);
  for (unsigned x : normal_subgroup) in_n[x] = true;
  require(in_n[0], Err::InvalidArgument, "subgroup must contain identity");
  for (unsigned t = 0; t < g.order(); ++t)
    for (unsigned x : normal_subgroup)
      require(in_n[g.conj(t, x)], Err::InvalidArgument, "subgroup is not normal");

  // cosets keyed by least element
  std::vector<unsigned> coset_rep(g.order(), g.order());
  std::vector<unsigned> reps;
  for (unsigned x = 0; x < g.order(); ++x) {
    if (coset_rep[x] != g.order()) continue;
    unsigned least = x;
    std::vector<unsigned> members;
    for (unsigned n : normal_subgroup) {
      unsigned y = g.mul(x, n);
      members.push_back(y);
      least = std::min(least, y);
    }
    for (unsigned y : members) coset_rep[y] = least;
  }
  for (unsigned x = 0; x < g.order(); ++x)
    if (coset_rep[x] == x) reps.push_back(x);
  std::sort(reps.begin(), reps.end());
  unsigned q = (unsigned)reps.size();
  std::vector<unsigned> idx_of(g.order(), q);
  for (unsigned i = 0; i < q; ++i) idx_of[reps[i]] = i;

  std::vector<unsigned> mul((std::size_t)q * q);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) mul[a * q + b] = idx_of[coset_rep[g.mul(reps[a], reps[b])]];
  std::vector<unsigned> gens;
  for (unsigned gen : g.generators()) gens.push_back(idx_of[coset_rep[gen]]);
  GroupPtr Q = renumber_and_verify(g.p(), mul, q, gens, g.generator_names(),
                                   g.spec_string() + "/N");
  // rebuild the projection in Q's final numbering: BFS renumbering permutes
  // indices, so recompute via generator words is avoided by matching tables
  GroupHom proj;
  proj.source = G;
  proj.target = Q;
  proj.images.resize(g.order());
  // map: coset rep index -> Q element. Recover by multiplying generators:
  // walk raw indices through the same renumbering Q used.
  {
    // Recompute the BFS renumbering `old2new` exactly as renumber_and_verify
    std::vector<unsigned> old2new(q, q), new2old;
    old2new[0] = 0;
    new2old.push_back(0);
    for (unsigned qi = 0; qi < new2old.size(); ++qi)
      for (unsigned gen : gens) {
        unsigned y = mul[new2old[qi] * q + gen];
        if (old2new[y] == q) {
          old2new[y] = (unsigned)new2old.size();
          new2old.push_back(y);
        }
      }
    for (unsigned x = 0; x < g.order(); ++x) proj.images[x] = old2new[idx_of[coset_rep[x]]];
  }
  require(verify_hom(proj), Err::Internal, "quotient projection is not a homomorphism");
  return {Q, std::move(proj)};
}

SubgroupResult subgroup_as_group(const GroupPtr& G, const std::vector<unsigned>& elems) {
  std::vector<unsigned> H = subgroup_closure(*G, elems);
  unsigned n = (unsigned)H.size();
  std::vector<unsigned> idx_of(G->order(), n);
  for (unsigned i = 0; i < n; ++i) idx_of[H[i]] = i;
  std::vector<unsigned> mul((std::size_t)n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) mul[a * n + b] = idx_of[G->mul(H[a], H[b])];
  // keep parent ordering; generators listed as all non-identity elements
  auto g = std::make_shared<FiniteGroup>();
  std::vector<unsigned> gens;
  std::vector<std::string> gen_names;
  for (unsigned i = 1; i < n; ++i) {
    gens.push_back(i);
    gen_names.push_back(G->name(H[i]));
  }
  if (n == 1) {
    gens.push_back(0);
    gen_names.push_back("1");
  }
  GroupPtr sub = renumber_and_verify(G->p(), mul, n, gens, gen_names,
                                     G->spec_string() + ".sub" + std::to_string(n));
  // renumber_and_verify BFS keeps index order here because the generator list
  // enumerates elements in parent order; recompute to_parent defensively
  std::vector<unsigned> to_parent(n);
  {
    // identify sub elements with parent elements by matching products of
    // generators: BFS the same way
    std::vector<unsigned> old2new(n, n), new2old;
    old2new[0] = 0;
    new2old.push_back(0);
    for (unsigned qi = 0; qi < new2old.size(); ++qi)
      for (unsigned gen : gens) {
        unsigned y = mul[new2old[qi] * n + gen];
        if (old2new[y] == n) {
          old2new[y] = (unsigned)new2old.size();
          new2old.push_back(y);
        }
      }
    for (unsigned i = 0; i < n; ++i) to_parent[old2new[i]] = H[i];
  }
  return {sub, std::move(to_parent)};
}

// ---------------- abelian structure ----------------

std::vector<std::pair<unsigned, unsigned>> abelian_basis(const FiniteGroup& G) {
  require(G.is_abelian(), Err::InvalidArgument, "abelian_basis needs an abelian group");
  if (G.order() == 1) return {};
  GroupPtr self = G.shared_from_this();
  unsigned g1 = 0, best = 1;
  for (unsigned g = 0; g < G.order(); ++g) {
    unsigned o = G.element_order(g);
    if (o > best) {
      best = o;
      g1 = g;
    }
  }
  if (best == G.order()) return {{g1, best}};
  std::vector<unsigned> cyc;
  unsigned acc = 0;
  do {
    cyc.push_back(acc);
    acc = G.mul(acc, g1);
  } while (acc != 0);
  QuotientResult qr = quotient(self, cyc);
  auto qbasis = abelian_basis(*qr.group);
  std::vector<std::pair<unsigned, unsigned>> basis{{g1, best}};
  for (auto [qb, o] : qbasis) {
    // least preimage, adjusted to have order o
    unsigned x = G.order();
    for (unsigned cand = 0; cand < G.order(); ++cand)
      if (qr.proj.images[cand] == qb) {
        x = cand;
        break;
      }
    require(x < G.order(), Err::Internal, "no preimage found");
    unsigned xo = G.pow(x, o);  // lies in <g1>
    unsigned t = 0;
    {
      unsigned a = 0;
      while (a != xo) {
        a = G.mul(a, g1);
        ++t;
        require(t <= best, Err::Internal, "discrete log failed");
      }
    }
    require(t % o == 0, Err::Internal, "basis lifting adjustment failed");
    unsigned adjust = G.pow(g1, (long long)best - (long long)(t / o));
    unsigned lifted = G.mul(x, adjust);
    require(G.element_order(lifted) == o, Err::Internal, "lift has wrong order");
    basis.push_back({lifted, o});
  }
  std::sort(basis.begin(), basis.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  unsigned prod = 1;
  for (auto [e, o] : basis) prod *= o;
  require(prod == G.order(), Err::Internal, "basis orders do not multiply to |G|");
  return basis;
}

std::vector<std::vector<unsigned>> abelian_coords(
    const FiniteGroup& G, const std::vector<std::pair<unsigned, unsigned>>& basis) {
  std::vector<std::vector<unsigned>> coords(G.order());
  std::vector<unsigned> tuple(basis.size(), 0);
  unsigned count = 0;
  while (true) {
    unsigned elem = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      elem = G.mul(elem, G.pow(basis[i].first, tuple[i]));
    require(coords[elem].empty() || elem == 0, Err::Internal, "basis is not independent");
    if (coords[elem].empty()) {
      coords[elem] = tuple;
      ++count;
    }
    // increment mixed-radix counter
    std::size_t i = 0;
    while (i < basis.size()) {
      if (++tuple[i] < basis[i].second) break;
      tuple[i] = 0;
      ++i;
    }
    if (i == basis.size()) break;
  }
  require(count == G.order(), Err::Internal, "basis does not enumerate the group");
  return coords;
}

const Abelianization& abelianization(const GroupPtr& G) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::shared_ptr<Abelianization>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(G.get());
  if (it != cache.end()) return *it->second;
  auto ab = std::make_shared<Abelianization>();
  QuotientResult qr = quotient(G, G->commutator_subgroup());
  ab->group = qr.group;
  ab->proj = std::move(qr.proj);
  auto basis = abelian_basis(*ab->group);
  for (auto [e, o] : basis) {
    ab->basis.push_back(e);
    ab->basis_order.push_back(o);
  }
  ab->coords = abelian_coords(*ab->group, basis);
  cache[G.get()] = ab;
  return *ab;
}

unsigned find_central_commutator_order_p(const FiniteGroup& G) {
  require(!G.is_abelian(), Err::AbelianInput, "abelian group has no central commutator");
  std::vector<unsigned> z = G.center();
  std::vector<bool> central(G.order(), false);
  for (unsigned x : z) central[x] = true;
  unsigned bestc = G.order();
  for (unsigned g = 0; g < G.order(); ++g)
    for (unsigned h = 0; h < G.order(); ++h) {
      unsigned d = G.commutator(g, h);
      if (d == 0 || !central[d]) continue;
      unsigned m = G.element_order(d);
      unsigned c = G.pow(d, (long long)(m / G.p()));  // = [g, h^{m/p}] since d is central
      if (c != 0) bestc = std::min(bestc, c);
    }
  require(bestc < G.order(), Err::Internal, "non-abelian p-group without central commutator");
  return bestc;
}

QuotientResult central_quotient(const GroupPtr& G, unsigned c) {
  for (unsigned h = 0; h < G->order(); ++h)
    require(G->mul(c, h) == G->mul(h, c), Err::NotCentral, "element is not central");
  require(G->element_order(c) == G->p(), Err::WrongOrder, "element order is not p");
  std::vector<unsigned> cyc;
  unsigned acc = 0;
  do {
    cyc.push_back(acc);
    acc = G->mul(acc, c);
  } while (acc != 0);
  return quotient(G, cyc);
}

Transfer transfer(const GroupPtr& G, const std::vector<unsigned>& H) {
  std::vector<unsigned> Hs = subgroup_closure(*G, H);
  require(Hs.size() * G->p() == G->order(), Err::WrongIndex, "subgroup must have index p");
  SubgroupResult sub = subgroup_as_group(G, Hs);
  std::vector<unsigned> to_local(G->order(), G->order());
  for (unsigned i = 0; i < sub.group->order(); ++i) to_local[sub.to_parent[i]] = i;

  const Abelianization& hab = abelianization(sub.group);

  auto compute = [&](const std::vector<unsigned>& reps) {
    std::vector<unsigned> tmap(G->order());
    for (unsigned g = 0; g < G->order(); ++g) {
      unsigned acc = 0;  // in hab
      for (unsigned rep : reps) {
        unsigned gx = G->mul(g, rep);
        // find the rep whose coset contains gx
        unsigned h = G->order();
        for (unsigned rep2 : reps) {
          unsigned cand = G->mul(G->inv(rep2), gx);
          if (to_local[cand] != G->order()) {
            h = cand;
            break;
          }
        }
        require(h < G->order(), Err::Internal, "transversal does not cover");
        acc = hab.group->mul(acc, hab.proj.images[to_local[h]]);
      }
      tmap[g] = acc;
    }
    return tmap;
  };

  // transversal: least element of each left coset xH
  std::vector<unsigned> reps;
  {
    std::vector<bool> seen(G->order(), false);
    for (unsigned x = 0; x < G->order(); ++x) {
      if (seen[x]) continue;
      reps.push_back(x);
      for (unsigned h : Hs) seen[G->mul(x, h)] = true;
    }
  }
  std::vector<unsigned> t1 = compute(reps);
  // transversal independence: shift every nontrivial rep inside its coset
  std::vector<unsigned> reps2 = reps;
  if (Hs.size() > 1)
    for (std::size_t i = 1; i < reps2.size(); ++i) reps2[i] = G->mul(reps2[i], Hs[1]);
  require(compute(reps2) == t1, Err::Internal, "transfer depends on the transversal");

  return Transfer{hab.group, std::move(t1)};
}

}  // namespace grouplog
