#pragma once

#include <string>
#include <vector>

#include "pilekit/pile.hpp"

namespace pilekit {

/// A generator letter of a presentation: an element of one of the finite
/// factor groups, or a free letter with exponent +-1.  Factor elements never
/// carry exponents; their inverses are in-group.
struct Letter {
  enum class Kind { FactorElem, Free };
  Kind kind;
  int a;  // factor index, or free letter index
  int b;  // element index, or exponent +1/-1

  static Letter factor(int f, Elem e) { return {Kind::FactorElem, f, e}; }
  static Letter free(int j, int exp) { return {Kind::Free, j, exp}; }
  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// A finitely presented group over a free product of finite factor groups
/// and free letters, modulo relator words.  Words are stored unreduced;
/// evaluation happens in the counting target.
struct Presentation {
  std::vector<GroupPtr> factors;
  std::vector<std::string> factor_labels;
  int free_letters = 0;
  std::vector<std::string> free_labels;
  std::vector<Word> relators;

  void check_word(const Word& w) const;  // throws InvalidWord
  void check() const;
};

Presentation presentation_of_group(GroupPtr g, std::string label = {});
Presentation free_letters_presentation(int n);

/// Concatenates factors, free letters and relators with reindexing.
Presentation free_product(const std::vector<Presentation>& parts);

/// Appends the words as relators (presentation-level quotient by the normal
/// closure of the words).
Presentation quotient_by_closure(const Presentation& p,
                                 const std::vector<Word>& words);

// ---- HNN builders ------------------------------------------------------

struct StableLetter {
  std::string label;
  Subgroup subgroup;      // of the base group
  std::vector<Elem> phi;  // image in base per subgroup member (by position)
};

/// HNN extension of a single base group: one free letter per stable letter,
/// with relators t^-1 g t phi(g)^-1 over a generating set of each associated
/// subgroup.  Requires each phi injective.
Presentation build_hnn(GroupPtr base, const std::vector<StableLetter>& stable);

struct StableLabel {
  std::string label;
  Subgroup subgroup;  // of g
};

/// HNN': base is g ⨿ L, one free letter per label, relators
/// t^-1 g t rho(g)^-1 with rho(g) in the L factor.  Requires rho injective
/// on every listed subgroup.
Presentation build_hnn_prime(GroupPtr g,
                             const std::vector<StableLabel>& stable,
                             const GroupHom& rho, GroupPtr l);

/// HNN' over a presentation base (the finite realization of free products of
/// factors and free letters).  Stable data lists, per letter, the subgroup
/// generators as base-presentation letters paired with their rho-images
/// in L.
struct StablePresLabel {
  std::string label;
  std::vector<std::pair<Letter, Elem>> gens_with_rho;
};
Presentation build_hnn_prime_pres(const Presentation& base,
                                  const std::vector<StablePresLabel>& stable,
                                  GroupPtr l);

/// Pile HNN: one free letter per point of the pile's space, relators
/// (t^g)^-1 g^-1 t rho(g) for every point and every group generator.
/// Requires rho injective on every point stabilizer.
Presentation build_phnn(const Pile& p, const GroupHom& rho);

/// Normal generators of the kernel of HNN'(T0) -> pHNN as words over the
/// HNN' presentation: (t^g)^-1 g^-1 t rho(g) for t in T0, restricted to
/// pairs whose translated point is again in T0 (others have no letter in
/// the HNN' alphabet and reduce away under the section substitution).
/// T0 must cover every orbit.
std::vector<Word> hnn_to_phnn_kernel(const Pile& p,
                                     const std::vector<Point>& t0,
                                     const GroupHom& rho);

/// Kills the L factor of a pHNN presentation: appends every nonidentity
/// element of that factor as a relator.
Presentation mod_l_quotient(const Presentation& phnn, int l_factor);

// ---- induced maps ------------------------------------------------------

/// A map between presentations, by generator images.
struct PresentationHom {
  std::vector<std::pair<int, GroupHom>> factor_maps;  // target factor + hom
  std::vector<Word> free_images;
};

struct PhnnData {
  Pile pile;
  GroupHom rho;  // pile.group -> L
};

/// The map pHNN(G,T,rho,L) -> pHNN(G',T',rho',L') induced by a pile morphism
/// psi and lambda: L -> L' with lambda.rho = rho'.psi.  Verifies the square
/// and symbolic relator preservation.
PresentationHom induced_hom(const PhnnData& source, const PhnnData& target,
                            const PileMorphism& psi, const GroupHom& lambda);

// ---- hom counting ------------------------------------------------------

/// |Hom(P, Q)|: tuples of factor homomorphisms and free letter images under
/// which every relator evaluates to the identity.  Free letter images are
/// searched by DFS with unit propagation on relators.
unsigned long long hom_count(const Presentation& p, GroupPtr q);

struct HomCountProfile {
  std::vector<std::pair<std::string, unsigned long long>> entries;
  bool operator==(const HomCountProfile&) const = default;
};

struct CatalogEntry {
  std::string name;
  GroupPtr group;
};

HomCountProfile hom_profile(const Presentation& p,
                            const std::vector<CatalogEntry>& catalog);

/// Index of the first differing entry, or -1 when equal.
int first_profile_mismatch(const HomCountProfile& a, const HomCountProfile& b);

}  // namespace pilekit
