#pragma once

#include <optional>
#include <vector>

#include "grouplog/zmod.hpp"

namespace grouplog {

// Finitely generated submodules of (Z/p^n)^dim in Howell normal form.
// Z/p^n is not a domain, so Howell (not Hermite/Smith) is the canonical
// choice: two submodules are equal iff their forms are identical, and
// membership is decided by greedy reduction against the rows.
struct Lattice {
  unsigned dim = 0;
  u64 p = 2;
  unsigned n = 1;
  u64 m = 2;  // p^n
  std::vector<std::vector<u64>> rows;  // canonical; pivot entries are p^v
  std::vector<unsigned> pivcol, pivexp;

  bool contains(const std::vector<u64>& v) const;
  std::vector<u64> reduce_vector(std::vector<u64> v) const;  // remainder
  // coefficients over the Howell rows, or nullopt if not a member
  std::optional<std::vector<u64>> express(std::vector<u64> v) const;
  unsigned size_log() const;  // log_p |span|
  bool is_zero() const { return rows.empty(); }
};

Lattice howell_form(std::vector<std::vector<u64>> gens, unsigned dim, u64 p, unsigned n);
Lattice full_ambient(unsigned dim, u64 p, unsigned n);

bool lattice_equal(const Lattice& a, const Lattice& b);
bool lattice_contains(const Lattice& sup, const Lattice& sub);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
Lattice lattice_scale(const Lattice& a, unsigned j);  // p^j * span

// {u : sum_i u_i gens_i = 0}, a lattice in (Z/p^n)^{#gens}
Lattice kernel_of(const std::vector<std::vector<u64>>& gens, unsigned dim, u64 p, unsigned n);

// coefficients u with sum_i u_i gens_i = target, if solvable
std::optional<std::vector<u64>> solve_in_span(const std::vector<std::vector<u64>>& gens,
                                              const std::vector<u64>& target, unsigned dim,
                                              u64 p, unsigned n);

// {x : x M in L}; maprows has one row (length L.dim) per source coordinate
Lattice preimage_lattice(const std::vector<std::vector<u64>>& maprows, unsigned dim_src,
                         const Lattice& target);

// invariant factor exponents of sup/sub (descending), sub contained in sup
std::vector<unsigned> quotient_invariants(const Lattice& sup, const Lattice& sub);

}  // namespace grouplog
