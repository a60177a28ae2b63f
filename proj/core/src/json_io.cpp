#include "pilekit/json_io.hpp"

namespace pilekit {

namespace {

std::vector<std::vector<int>> int_matrix(const json& j, const char* what) {
  if (!j.is_array()) throw Error("InvalidInput", {{"expected", what}});
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error("InvalidInput", {{"expected", what}});
    out.push_back(row.get<std::vector<int>>());
  }
  return out;
}

}  // namespace

Workspace::Workspace(int prime) : prime_(prime) {
  bool ok = prime >= 2;
  for (int d = 2; ok && d * d <= prime; ++d)
    if (prime % d == 0) ok = false;
  if (!ok) throw Error("InvalidInput", {{"reason", "prime"}, {"p", prime}});
}

GroupPtr Workspace::resolve_group(const json& j) const {
  if (j.is_string()) return find_group(j.get<std::string>(), prime_);
  return group_from_json(j);
}

GSetPtr Workspace::resolve_gset(const json& j) const {
  return gset_from_json(j, *this);
}

Pile Workspace::resolve_pile(const json& j) const {
  return pile_from_json(j, *this);
}

json group_to_json(const FiniteGroup& g) {
  json j{{"order", g.order()}, {"mul", g.table()}};
  if (!g.labels().empty()) j["labels"] = g.labels();
  if (!g.name().empty()) j["name"] = g.name();
  return j;
}

GroupPtr group_from_json(const json& j) {
  if (!j.contains("mul")) throw Error("InvalidInput", {{"missing", "mul"}});
  auto table = int_matrix(j.at("mul"), "mul table");
  if (j.contains("order") &&
      j.at("order").get<int>() != static_cast<int>(table.size()))
    throw Error("InvalidInput", {{"reason", "order mismatch"}});
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::string name = j.value("name", std::string{});
  // identity must be element 0; FiniteGroup::validate enforces exactly that
  return FiniteGroup::validate(table, std::move(labels), std::move(name));
}

json gset_to_json(const GSet& s) {
  return json{{"group", group_to_json(*s.group())},
              {"size", s.size()},
              {"action", s.action_table()}};
}

GSetPtr gset_from_json(const json& j, const Workspace& ws) {
  if (!j.contains("group")) throw Error("InvalidInput", {{"missing", "group"}});
  GroupPtr g = ws.resolve_group(j.at("group"));
  auto action = int_matrix(j.value("action", json::array()), "action table");
  if (j.contains("size") &&
      j.at("size").get<int>() != static_cast<int>(action.size()))
    throw Error("InvalidInput", {{"reason", "size mismatch"}});
  return GSet::validate(std::move(g), action);
}

json partition_to_json(const Partition& p) {
  return json{{"blocks", p.blocks()}};
}

Partition partition_from_json(const json& j, GSetPtr s) {
  auto blocks = int_matrix(j.value("blocks", json::array()), "blocks");
  std::vector<std::vector<Point>> b(blocks.begin(), blocks.end());
  return Partition(std::move(s), std::move(b));
}

json pile_to_json(const Pile& p) {
  return json{{"group", group_to_json(*p.group)},
              {"space",
               {{"size", p.space->size()}, {"action", p.space->action_table()}}}};
}

Pile pile_from_json(const json& j, const Workspace& ws) {
  if (!j.contains("group")) throw Error("InvalidInput", {{"missing", "group"}});
  GroupPtr g = ws.resolve_group(j.at("group"));
  if (!j.contains("space")) throw Error("InvalidInput", {{"missing", "space"}});
  const json& sp = j.at("space");
  auto action = int_matrix(sp.value("action", json::array()), "action table");
  if (sp.contains("size") &&
      sp.at("size").get<int>() != static_cast<int>(action.size()))
    throw Error("InvalidInput", {{"reason", "size mismatch"}});
  GSetPtr s = GSet::validate(g, action);
  return Pile(std::move(g), std::move(s));
}

json morphism_to_json(const PileMorphism& m) {
  return json{{"group_map", m.group_map().map()},
              {"space_map", m.space_map()}};
}

PileMorphism morphism_from_json(const json& j, const Pile& source,
                                const Pile& target) {
  GroupHom gm(source.group, target.group,
              j.at("group_map").get<std::vector<int>>());
  return PileMorphism(source, target, std::move(gm),
                      j.value("space_map", std::vector<int>{}));
}

json word_to_json(const Word& w) {
  json out = json::array();
  for (const Letter& l : w) {
    if (l.kind == Letter::Kind::FactorElem)
      out.push_back(json{{"factor", l.a}, {"elem", l.b}});
    else
      out.push_back(json{{"free", l.a}, {"exp", l.b}});
  }
  return out;
}

Word word_from_json(const json& j) {
  Word w;
  for (const auto& lj : j) {
    if (lj.contains("factor"))
      w.push_back(Letter::factor(lj.at("factor").get<int>(),
                                 lj.at("elem").get<int>()));
    else if (lj.contains("free"))
      w.push_back(Letter::free(lj.at("free").get<int>(),
                               lj.value("exp", 1)));
    else
      throw Error("InvalidWord", {{"reason", "letter shape"}});
  }
  return w;
}

json presentation_to_json(const Presentation& p) {
  json factors = json::array();
  for (const auto& f : p.factors) factors.push_back(group_to_json(*f));
  json relators = json::array();
  for (const Word& w : p.relators) relators.push_back(word_to_json(w));
  json j{{"factors", factors},
         {"free_letters", p.free_letters},
         {"relators", relators}};
  if (!p.factor_labels.empty()) j["factor_labels"] = p.factor_labels;
  if (!p.free_labels.empty()) j["free_labels"] = p.free_labels;
  return j;
}

Presentation presentation_from_json(const json& j, const Workspace& ws) {
  Presentation p;
  for (const auto& fj : j.value("factors", json::array()))
    p.factors.push_back(ws.resolve_group(fj));
  p.factor_labels =
      j.value("factor_labels", std::vector<std::string>(p.factors.size()));
  p.free_letters = j.value("free_letters", 0);
  p.free_labels = j.value("free_labels", std::vector<std::string>{});
  for (const auto& wj : j.value("relators", json::array()))
    p.relators.push_back(word_from_json(wj));
  p.check();
  return p;
}

json pile_ep_to_json(const PileEmbeddingProblem& ep) {
  return json{{"G", pile_to_json(ep.phi().source())},
              {"B", pile_to_json(ep.alpha().source())},
              {"A", pile_to_json(ep.alpha().target())},
              {"phi", morphism_to_json(ep.phi())},
              {"alpha", morphism_to_json(ep.alpha())}};
}

PileEmbeddingProblem pile_ep_from_json(const json& j, const Workspace& ws) {
  Pile g = ws.resolve_pile(j.at("G"));
  Pile b = ws.resolve_pile(j.at("B"));
  Pile a = ws.resolve_pile(j.at("A"));
  PileMorphism phi = morphism_from_json(j.at("phi"), g, a);
  PileMorphism alpha = morphism_from_json(j.at("alpha"), b, a);
  return PileEmbeddingProblem(std::move(phi), std::move(alpha));
}

json profile_to_json(const HomCountProfile& p) {
  json counts = json::array();
  for (const auto& [name, count] : p.entries)
    counts.push_back(json{{"target", name}, {"count", count}});
  return json{{"counts", counts}};
}

json subgroup_to_json(const Subgroup& s) {
  return json{{"members", s.members()}};
}

Subgroup subgroup_from_json(const json& j, GroupPtr parent) {
  std::vector<Elem> mem;
  if (j.is_array())
    mem = j.get<std::vector<Elem>>();
  else
    mem = j.at("members").get<std::vector<Elem>>();
  return Subgroup(std::move(parent), std::move(mem));
}

json hom_to_json(const GroupHom& h) { return json{{"map", h.map()}}; }

GroupHom hom_from_json(const json& j, GroupPtr source, GroupPtr target) {
  std::vector<Elem> m;
  if (j.is_array())
    m = j.get<std::vector<Elem>>();
  else
    m = j.at("map").get<std::vector<Elem>>();
  return GroupHom(std::move(source), std::move(target), std::move(m));
}

}  // namespace pilekit
