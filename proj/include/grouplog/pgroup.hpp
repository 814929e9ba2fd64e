#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grouplog/zmod.hpp"

namespace grouplog {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<unsigned> images;  // per source element, checked multiplicative
};

// A finite p-group as an explicit multiplication table, order capped at 128.
// Element 0 is the identity; numbering is BFS from the generators in fixed
// order, so reports are byte-stable. Conjugacy classes are precomputed with
// the identity class first and the rest ordered by least element.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static constexpr unsigned kOrderCap = 128;

  unsigned order() const { return order_; }
  u64 p() const { return p_; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * order_ + b]; }
  unsigned inv(unsigned a) const { return inv_[a]; }
  unsigned conj(unsigned g, unsigned x) const {  // g x g^-1
    return mul(mul(g, x), inv(g));
  }
  unsigned commutator(unsigned g, unsigned h) const {  // [g,h] = g h g^-1 h^-1
    return mul(conj(g, h), inv(h));
  }
  unsigned pow(unsigned g, long long e) const;
  unsigned element_order(unsigned g) const;
  unsigned exponent() const;
  bool is_abelian() const { return abelian_; }

  const std::vector<unsigned>& generators() const { return gens_; }
  const std::string& name(unsigned g) const { return names_[g]; }
  const std::string& spec_string() const { return spec_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }

  unsigned num_classes() const { return (unsigned)classes_.size(); }
  const std::vector<std::vector<unsigned>>& classes() const { return classes_; }
  unsigned class_of(unsigned g) const { return cls_of_[g]; }
  unsigned class_rep(unsigned k) const { return classes_[k][0]; }
  // class of g^p for [g] = k; well-defined on classes
  unsigned class_pow_p(unsigned k) const { return cls_of_[pow(classes_[k][0], (long long)p_)]; }

  std::vector<unsigned> center() const;
  std::vector<unsigned> commutator_subgroup() const;
  bool is_commutator(unsigned c) const;

  // table from an externally built multiplication law; verifies all axioms
  static GroupPtr from_table(u64 p, std::vector<unsigned> mul_table, unsigned order,
                             std::vector<unsigned> gens, std::vector<std::string> gen_names,
                             std::string spec);

 private:
  friend GroupPtr renumber_and_verify(u64 p, const std::vector<unsigned>& raw,
                                      unsigned order, const std::vector<unsigned>& gens,
                                      const std::vector<std::string>& gen_names,
                                      const std::string& spec);
  unsigned order_ = 1;
  u64 p_ = 2;
  bool abelian_ = true;
  std::vector<unsigned> mul_, inv_;
  std::vector<unsigned> gens_;
  std::vector<std::string> names_, gen_names_;
  std::vector<std::vector<unsigned>> classes_;
  std::vector<unsigned> cls_of_;
  std::string spec_;
};

// Spec strings: C<n>, C<n>xC<m>, D8, D16, Q8, Q16, SD16, M16, H27
// (case-insensitive). The order must be a power of the session prime.
GroupPtr build_group(const std::string& spec, u64 p);

GroupPtr cyclic_group(u64 p, unsigned n);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
GroupPtr dihedral_group(unsigned n);     // order n = 2^m >= 8
GroupPtr quaternion_group(unsigned n);   // generalized quaternion, order n = 2^m >= 8
GroupPtr semidihedral16();
GroupPtr modular16();
GroupPtr heisenberg(u64 p);  // extraspecial p^3 of exponent p, p odd

// closure of a subset under the table
std::vector<unsigned> subgroup_closure(const FiniteGroup& G, std::vector<unsigned> seed);

// all subgroups, each a sorted element list; includes {1} and G
std::vector<std::vector<unsigned>> subgroups(const FiniteGroup& G);

// quotient by a normal subgroup (checked); deterministic numbering
struct QuotientResult {
  GroupPtr group;
  GroupHom proj;
};
QuotientResult quotient(const GroupPtr& G, const std::vector<unsigned>& normal_subgroup);

// G/[G,G] together with the quotient hom and an explicit basis of the
// abelianization: independent generators with prime-power orders.
struct Abelianization {
  GroupPtr group;       // abelian
  GroupHom proj;
  std::vector<unsigned> basis;        // elements of `group`
  std::vector<unsigned> basis_order;  // p^{m_i}, descending
  // coordinates of each element of `group` w.r.t. the basis
  std::vector<std::vector<unsigned>> coords;
};
const Abelianization& abelianization(const GroupPtr& G);  // cached per group

// basis of an abelian p-group itself (used on subgroups for characters)
std::vector<std::pair<unsigned, unsigned>> abelian_basis(const FiniteGroup& G);
std::vector<std::vector<unsigned>> abelian_coords(
    const FiniteGroup& G, const std::vector<std::pair<unsigned, unsigned>>& basis);

// c = [g, h^{p^{m-1}}] for a central commutator d = [g,h] of order p^m:
// a central commutator of order exactly p; least such element index.
// Throws AbelianInput on abelian groups.
unsigned find_central_commutator_order_p(const FiniteGroup& G);

QuotientResult central_quotient(const GroupPtr& G, unsigned c);

// the subgroup generated by elems, as its own group plus the inclusion index map
struct SubgroupResult {
  GroupPtr group;
  std::vector<unsigned> to_parent;  // element of `group` -> element of G
};
SubgroupResult subgroup_as_group(const GroupPtr& G, const std::vector<unsigned>& elems);

// transfer homomorphism t: G -> H^ab for an index-p subgroup H
struct Transfer {
  GroupPtr hab;                    // H^ab
  std::vector<unsigned> map;       // per element of G, image in hab
};
Transfer transfer(const GroupPtr& G, const std::vector<unsigned>& H);

bool verify_hom(const GroupHom& h);

}  // namespace grouplog
