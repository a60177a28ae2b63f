#pragma once

#include <string>

#include "pilekit/catalog.hpp"
#include "pilekit/embedding.hpp"

namespace pilekit {

/// Named object registry used by the CLI: resolves inline JSON objects or
/// catalog name references, under a configured prime.
class Workspace {
 public:
  explicit Workspace(int prime = 2);

  int prime() const { return prime_; }

  GroupPtr resolve_group(const json& j) const;  // object or name string
  GSetPtr resolve_gset(const json& j) const;
  Pile resolve_pile(const json& j) const;

 private:
  int prime_;
};

// group: {"order": n, "mul": [[...]], "labels": [...]?, "name": str?}
// the loader rejects tables whose identity is not element 0
json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const json& j);

// gset: {"group": <group|name>, "size": m, "action": [[...]]}
json gset_to_json(const GSet& s);
GSetPtr gset_from_json(const json& j, const Workspace& ws);

// partition: {"blocks": [[...], ...]}
json partition_to_json(const Partition& p);
Partition partition_from_json(const json& j, GSetPtr s);

// pile: {"group": <group|name>, "space": {"size": m, "action": [[...]]}}
json pile_to_json(const Pile& p);
Pile pile_from_json(const json& j, const Workspace& ws);

// morphism: {"group_map": [...], "space_map": [...]}
json morphism_to_json(const PileMorphism& m);
PileMorphism morphism_from_json(const json& j, const Pile& source,
                                const Pile& target);

// presentation: {"factors": [...], "free_letters": k,
//                "relators": [[{"factor": i, "elem": e}|
//                              {"free": j, "exp": 1|-1}, ...], ...]}
json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j, const Workspace& ws);

json word_to_json(const Word& w);
Word word_from_json(const json& j);

// pile EP bundle: {"G": pile, "B": pile, "A": pile,
//                  "phi": morphism, "alpha": morphism}
json pile_ep_to_json(const PileEmbeddingProblem& ep);
PileEmbeddingProblem pile_ep_from_json(const json& j, const Workspace& ws);

json profile_to_json(const HomCountProfile& p);

json subgroup_to_json(const Subgroup& s);
Subgroup subgroup_from_json(const json& j, GroupPtr parent);

json hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const json& j, GroupPtr source, GroupPtr target);

}  // namespace pilekit
