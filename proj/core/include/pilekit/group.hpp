#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pilekit/error.hpp"

namespace pilekit {

using Elem = int;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its full multiplication table over element indices
/// 0..order-1.  Index 0 is always the identity; every table is checked for
/// the group axioms on construction (Latin square, identity, associativity,
/// inverses), so a FiniteGroup value is a group by construction.
class FiniteGroup {
 public:
  /// Throws Error with code NotLatinSquare / NoIdentity / NotAssociative /
  /// NoInverse, naming the first violating cell or triple.
  static GroupPtr validate(const std::vector<std::vector<int>>& table,
                           std::vector<std::string> labels = {},
                           std::string name = {});

  int order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return mul_[a * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// a^g = g^-1 a g
  Elem conj(Elem a, Elem g) const { return mul(mul(inv(g), a), g); }
  int element_order(Elem a) const;
  bool is_p_group(int p) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  std::vector<std::vector<int>> table() const;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  std::vector<Elem> mul_;  // flat order x order
  std::vector<Elem> inv_;
  std::vector<std::string> labels_;
  std::string name_;
};

bool same_table(const FiniteGroup& a, const FiniteGroup& b);

/// A subgroup of a fixed parent group, stored as a sorted member list.
/// The constructor checks identity membership and closure under
/// multiplication and inverse.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Elem> members);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(Elem e) const;
  bool is_normal() const;
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return order() == parent_->order(); }

 private:
  GroupPtr parent_;
  std::vector<Elem> members_;
};

bool same_members(const Subgroup& a, const Subgroup& b);
Subgroup trivial_subgroup(GroupPtr g);
Subgroup whole_subgroup(GroupPtr g);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// A subgroup re-indexed as a standalone group, with translation maps.
struct SubgroupGroup {
  GroupPtr group;
  std::vector<Elem> to_parent;    // subgroup element -> parent element
  std::vector<int> from_parent;   // parent element -> subgroup element or -1
};
SubgroupGroup subgroup_as_group(const Subgroup& s);

/// A homomorphism between finite groups, stored as a full image table.
/// Construction checks map[0] = 0 and the homomorphism identity on all pairs.
class GroupHom {
 public:
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<Elem>& map() const { return map_; }
  Elem operator()(Elem e) const { return map_[e]; }

  bool is_injective() const;
  bool is_surjective() const;
  Subgroup kernel() const;
  std::vector<Elem> image_members() const;  // sorted, deduped

  static GroupHom identity(GroupPtr g);
  static GroupHom trivial(GroupPtr source, GroupPtr target);

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Elem> map_;
};

/// after(before(x)); sources/targets must chain.
GroupHom compose(const GroupHom& after, const GroupHom& before);
bool same_map(const GroupHom& a, const GroupHom& b);

// ---- operations ------------------------------------------------------

Subgroup subgroup_generated(GroupPtr g, const std::vector<Elem>& gens);

/// Smallest normal subgroup containing s.
Subgroup normal_closure(GroupPtr g, const std::vector<Elem>& s);

struct Quotient {
  GroupPtr group;
  GroupHom projection;
};

/// Quotient by a normal subgroup; cosets are indexed by first appearance so
/// the identity coset is element 0.  Throws NotNormal.
Quotient quotient_group(GroupPtr g, const Subgroup& n);

/// A small (greedy, deterministic) generating set.
std::vector<Elem> small_generating_set(const FiniteGroup& g);

/// All homomorphisms source -> target, enumerated by assigning images to
/// gens in lexicographic order and extending along a BFS word tree, with
/// incremental consistency pruning.  Output order is lexicographic in the
/// generator image tuple.  Throws GensDoNotGenerate.
std::vector<GroupHom> enumerate_homs(GroupPtr source,
                                     const std::vector<Elem>& gens,
                                     GroupPtr target);
std::vector<GroupHom> enumerate_homs(GroupPtr source, GroupPtr target);

/// True iff ker(h) meets s trivially.
bool is_injective_on(const GroupHom& h, const Subgroup& s);

/// All subgroups / all normal subgroups, sorted by (order, members).
std::vector<Subgroup> all_subgroups(GroupPtr g);
std::vector<Subgroup> all_normal_subgroups(GroupPtr g);

// ---- constructions ---------------------------------------------------

GroupPtr cyclic_group(int n);
GroupPtr direct_product(GroupPtr a, GroupPtr b, std::string name = {});

/// N x| H with action[h] an automorphism table of N satisfying
/// action[h h'] = action[h] . action[h'] (checked via table validation).
GroupPtr semidirect_product(GroupPtr n, GroupPtr h,
                            const std::vector<std::vector<Elem>>& action,
                            std::string name = {});

/// Symmetric group on m points; multiplication is left-to-right composition
/// so that a homomorphism G -> Sym(m) is a right action table.
GroupPtr symmetric_group(int m);
int sym_apply(const FiniteGroup& sym, Elem perm, int point);

}  // namespace pilekit
