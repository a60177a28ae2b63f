#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pilekit/pile.hpp"

namespace pilekit {

/// Embedding problem for a pair (group, subgroup family): morphisms
/// phi: G -> A and alpha: B -> A with alpha surjective, phi carrying the
/// family into familyA, and a local lift through familyB for every family
/// member (checked at construction by exhaustive search).
class PairEmbeddingProblem {
 public:
  PairEmbeddingProblem(GroupPtr g, std::vector<Subgroup> family, GroupHom phi,
                       GroupHom alpha, std::vector<Subgroup> family_b,
                       std::vector<Subgroup> family_a);

  const GroupPtr& g() const { return g_; }
  const std::vector<Subgroup>& family() const { return family_; }
  const GroupHom& phi() const { return phi_; }
  const GroupHom& alpha() const { return alpha_; }
  const std::vector<Subgroup>& family_b() const { return family_b_; }
  const std::vector<Subgroup>& family_a() const { return family_a_; }

 private:
  GroupPtr g_;
  std::vector<Subgroup> family_;
  GroupHom phi_;
  GroupHom alpha_;
  std::vector<Subgroup> family_b_;
  std::vector<Subgroup> family_a_;
};

struct PairSolution {
  std::optional<GroupHom> solution;
  std::size_t candidates_examined = 0;
};

/// Exhaustive search over Hom(G, B) for gamma with alpha.gamma = phi and
/// gamma(family) inside familyB up to containment; lexicographically first
/// valid candidate wins.
PairSolution solve_pair_ep(const PairEmbeddingProblem& ep);

/// Configuration for the completion algorithm.  When target_partition is
/// set, multiplicity_floor must be at least the part count of the
/// stabilizer-aligned refinement; compute it with completion_floor.
struct CompletionConfig {
  std::optional<Partition> target_partition;
  int multiplicity_floor = 0;
};

/// Parts of the stabilizer-aligned G-partition refining p.
int completion_floor(const Partition& p);

struct CompletionResult {
  std::optional<PileMorphism> morphism;
  std::optional<Point> no_witness_point;
  bool refined = false;  // fibers refine the configured partition
};

/// Extends a group homomorphism psi with alpha.psi = phi (on groups) to a
/// pile morphism with alpha.psi = phi, iff every point t admits y with
/// alpha(y) = phi(t) and psi(G_t) <= B_y.  Representatives are assigned per
/// orbit and propagated equivariantly.  With a target partition configured
/// and the multiplicity floor met, witnesses are drawn from distinct
/// B-orbits with exact stabilizer images so the fibers refine the
/// partition.
CompletionResult complete_to_pile_morphism(const GroupHom& psi,
                                           const Pile& source,
                                           const Pile& target,
                                           const PileMorphism& phi,
                                           const PileMorphism& alpha,
                                           const CompletionConfig& cfg = {});

/// Embedding problem for piles: alpha must carry a rigid certificate.
class PileEmbeddingProblem {
 public:
  PileEmbeddingProblem(PileMorphism phi, PileMorphism alpha);

  const PileMorphism& phi() const { return phi_; }
  const PileMorphism& alpha() const { return alpha_; }
  const RigidCertificate& certificate() const { return cert_; }

 private:
  PileMorphism phi_;
  PileMorphism alpha_;
  RigidCertificate cert_;
};

struct PileSolution {
  std::optional<PileMorphism> solution;
  std::size_t candidates_examined = 0;
};

/// Enumerates group homomorphisms G -> B in lexicographic order and attempts
/// the completion for each; unsolvable verdicts carry the candidate count.
PileSolution solve_pile_ep_bruteforce(const PileEmbeddingProblem& ep);

/// A basic pile at the symbolic level: finitely many finite p-group factors
/// plus a free part; its space is the standard extension of the labels.
struct BasicPile {
  std::vector<std::pair<std::string, GroupPtr>> factors;
  int free_rank = 0;
  int prime = 2;

  BasicPile(std::vector<std::pair<std::string, GroupPtr>> f, int rank, int p);
};

/// Morphism data from a basic pile into a finite pile A: one homomorphism
/// per factor, images of the free generators, and the assigned point of
/// each factor label.
struct BasicPhi {
  std::vector<GroupHom> factor_homs;  // into a.group
  std::vector<Elem> free_images;      // in a.group
  std::vector<Point> label_points;    // in a.space
};

struct BasicSolution {
  std::vector<GroupHom> factor_homs;  // into b.group
  std::vector<Elem> free_images;
  std::vector<Point> label_points;    // chosen witnesses in b.space
};

/// Constructive lifting through a rigid epimorphism: factor maps go through
/// the inverse of alpha restricted to the witness stabilizer, free
/// generators take the first alpha-preimage.  Always succeeds on valid
/// input; throws InvalidProblem otherwise.
BasicSolution solve_basic_pile_ep(const BasicPile& g, const BasicPhi& phi,
                                  const Pile& a, const PileMorphism& alpha,
                                  const RigidCertificate& cert);

struct TransferredProblem {
  Pile quotient;
  PileMorphism projection;    // source -> quotient
  PileMorphism phi_factored;  // quotient -> A
};

/// Transports an embedding problem over G to one over G/~N where ~N is the
/// tilde closure of n.  phi must kill ~N (otherwise the problem is
/// unsolvable and an Error with code DoesNotFactor is thrown); any solution
/// of the transported problem composes with the projection to solve the
/// original, and any original solution kills ~N and factors.
TransferredProblem quotient_ep_transfer(const PileEmbeddingProblem& ep,
                                        const Subgroup& n);

}  // namespace pilekit
