#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pilekit/gset.hpp"

namespace pilekit {

/// A finite pile: a finite group together with a finite right action.
struct Pile {
  GroupPtr group;
  GSetPtr space;

  Pile(GroupPtr g, GSetPtr s) : group(std::move(g)), space(std::move(s)) {
    if (!same_table(*group, *space->group()))
      throw Error("MismatchedTarget", {{"reason", "space group differs"}});
  }
};

bool same_pile(const Pile& a, const Pile& b);

/// A morphism of piles: a group homomorphism plus an equivariant point map.
/// Construction checks equivariance at every (point, element) pair and
/// throws NotEquivariant naming the first violation.
class PileMorphism {
 public:
  PileMorphism(Pile source, Pile target, GroupHom group_map,
               std::vector<Point> space_map);

  const Pile& source() const { return source_; }
  const Pile& target() const { return target_; }
  const GroupHom& group_map() const { return group_map_; }
  const std::vector<Point>& space_map() const { return space_map_; }
  Point on_point(Point t) const { return space_map_[t]; }
  Elem on_elem(Elem g) const { return group_map_(g); }

  static PileMorphism identity(const Pile& p);

 private:
  Pile source_;
  Pile target_;
  GroupHom group_map_;
  std::vector<Point> space_map_;
};

template <class T>
struct Checked {
  std::optional<T> value;
  std::optional<Failure> failure;

  bool ok() const { return value.has_value(); }
  static Checked pass(T v) { return Checked{std::move(v), std::nullopt}; }
  static Checked fail(std::string code, json detail) {
    return Checked{std::nullopt, Failure{std::move(code), std::move(detail)}};
  }
};

/// Builds and validates a morphism without throwing.
Checked<PileMorphism> check_morphism(const Pile& source, const Pile& target,
                                     const GroupHom& group_map,
                                     const std::vector<Point>& space_map);

/// Epimorphism certificate: for every target point a source point mapping to
/// it whose stabilizer maps onto the target stabilizer.
struct EpiCertificate {
  std::vector<Point> witness;  // target point -> source point
};

Checked<EpiCertificate> check_epi(const PileMorphism& m);

/// Rigidity certificate: stabilizers map isomorphically and orbit spaces
/// biject.
struct RigidCertificate {
  EpiCertificate epi;
  std::vector<std::pair<int, int>> orbit_bijection;  // source -> target orbit
};

Checked<RigidCertificate> check_rigid(const PileMorphism& m,
                                      const EpiCertificate& epi);

/// Convenience: epi + rigid in one step.
Checked<RigidCertificate> check_rigid(const PileMorphism& m);

// ---- constructions ---------------------------------------------------

struct StandardExtension {
  Pile pile;
  std::vector<Point> base_points;  // one per label, stabilizer = given subgroup
  std::vector<std::string> labels;
};

/// The pile whose points are the right cosets of the given subgroups, acted
/// on by right multiplication; the labels index the orbits and each label's
/// base point has exactly the given subgroup as stabilizer.
StandardExtension standard_extension(
    GroupPtr g, const std::vector<std::pair<std::string, Subgroup>>& reps);

struct QuotientPile {
  Pile pile;
  PileMorphism projection;
};

/// (G/N, T/N) with the quotient morphism.  The projection is always an
/// epimorphism of piles; it is rigid iff N meets every point stabilizer
/// trivially (callers check).
QuotientPile quotient_pile(const Pile& p, const Subgroup& n);

/// Normal closure of the union of N ∩ G_t over all points t.
Subgroup tilde_closure(const Pile& p, const Subgroup& n);

struct FiberProduct {
  Pile pile;
  PileMorphism to_first;   // projection onto alpha's source
  PileMorphism to_second;  // projection onto phi0's source
};

/// Pile fibered product over a shared target, with componentwise action.
FiberProduct fiber_product(const PileMorphism& alpha,
                           const PileMorphism& phi0);

/// The unique morphism alpha with alpha . psi = phi, for psi a pile
/// epimorphism whose group kernel lies in phi's and whose point fibers
/// refine phi's.  Throws KernelNotContained / FibersNotFiner with witnesses.
PileMorphism connect(const PileMorphism& phi, const PileMorphism& psi);

struct Decomposition {
  Pile through;
  PileMorphism psi;    // source -> through, epimorphism
  PileMorphism alpha;  // through -> phi's target
};

/// Factors phi through a finite pile whose space is a stabilizer-aligned
/// G-partition refining both x and phi's point fibers, with ker(psi)
/// inside n0.
Decomposition decompose(const PileMorphism& phi, const Subgroup& n0,
                        const Partition& x);

struct FiberSeparation {
  Pile through;
  PileMorphism phi_hat;  // epimorphism onto `through`
  PileMorphism phi0;     // through -> phi's target
};

/// Factors phi = phi0 . phi_hat so that stabilizers of points with distinct
/// phi0-images intersect inside ker(phi0).  Requires pairwise trivially
/// intersecting point stabilizers on the source.
FiberSeparation separate_fibers(const PileMorphism& phi);

}  // namespace pilekit
