// pilekit: finite group piles, embedding problems, and HNN presentations.
// All I/O is JSON; arguments accept inline JSON or a file path.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pilekit/verify.hpp"

using namespace pilekit;

namespace {

enum ExitCode {
  kOk = 0,
  kInvalidInput = 2,
  kUnsolvable = 3,
  kProfileMismatch = 4,
  kInternal = 5,
};

struct Globals {
  int prime = 2;
  std::string catalog = "p3";
  std::uint64_t seed = 0;
  std::string out_file;
  bool no_timestamp = false;
};

json load_json(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[' || arg[0] == '"'))
    return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw Error("InvalidInput", {{"reason", "cannot open"}, {"file", arg}});
  json j;
  in >> j;
  return j;
}

int emit(const Globals& g, const json& j) {
  std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!g.out_file.empty()) {
    std::ofstream out(g.out_file);
    out << text << "\n";
  }
  return kOk;
}

/// Group arguments accept inline JSON, a file path, or a bare catalog name.
GroupPtr load_group(const Workspace& ws, const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[' || arg[0] == '"'))
    return ws.resolve_group(json::parse(arg));
  std::ifstream in(arg);
  if (in) {
    json j;
    in >> j;
    return ws.resolve_group(j);
  }
  return ws.resolve_group(json(arg));
}

GroupHom load_rho(const Globals& g, const Workspace& ws,
                  const std::string& arg, const GroupPtr& source) {
  if (arg == "id") return GroupHom::identity(source);
  json j = load_json(arg);
  GroupPtr l = ws.resolve_group(j.at("l"));
  return GroupHom(source, l, j.at("map").get<std::vector<Elem>>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite group piles: actions, embedding problems, "
               "HNN presentations, hom-count oracles"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Globals g;
  app.add_option("--prime", g.prime, "configured prime p")->capture_default_str();
  app.add_option("--catalog", g.catalog, "hom-count catalog: p3 or p4")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "battery seed")->capture_default_str();
  app.add_option("--out", g.out_file, "also write the stdout JSON to a file");
  app.add_flag("--no-timestamp", g.no_timestamp,
               "omit wall time from reports (byte-identical reruns)");

  int rc = kOk;
  auto guard = [&](auto&& fn) {
    try {
      rc = fn();
    } catch (const Error& e) {
      json err{{"error", e.code()}, {"detail", e.detail()}};
      std::cerr << err.dump(2) << "\n";
      if (e.code() == "InternalInvariant")
        rc = kInternal;
      else if (e.code() == "DoesNotFactor")
        rc = kUnsolvable;
      else
        rc = kInvalidInput;
    } catch (const json::exception& e) {
      std::cerr << json{{"error", "InvalidInput"},
                        {"detail", {{"reason", e.what()}}}}
                       .dump(2)
                << "\n";
      rc = kInvalidInput;
    }
    return rc;
  };

  // ---- group ------------------------------------------------------------
  auto* cgroup = app.add_subcommand("group", "finite group core operations");
  {
    static std::string table, gens, sub, target, hom;
    auto* validate = cgroup->add_subcommand("validate", "check group axioms");
    validate->add_option("--table", table, "group JSON or raw table")->required();
    validate->callback([&] {
      guard([&] {
        json j = load_json(table);
        GroupPtr grp = j.is_array()
                           ? FiniteGroup::validate(
                                 j.get<std::vector<std::vector<int>>>())
                           : group_from_json(j);
        return emit(g, group_to_json(*grp));
      });
    });

    auto* subgen = cgroup->add_subcommand("subgroup", "closure of a subset");
    subgen->add_option("--group", table)->required();
    subgen->add_option("--gens", gens, "element list")->required();
    subgen->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr grp = load_group(ws, table);
        auto s = subgroup_generated(grp, load_json(gens).get<std::vector<int>>());
        return emit(g, subgroup_to_json(s));
      });
    });

    auto* nc = cgroup->add_subcommand("normal-closure", "smallest normal subgroup containing a set");
    nc->add_option("--group", table)->required();
    nc->add_option("--set", gens)->required();
    nc->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr grp = load_group(ws, table);
        auto s = normal_closure(grp, load_json(gens).get<std::vector<int>>());
        return emit(g, subgroup_to_json(s));
      });
    });

    auto* quot = cgroup->add_subcommand("quotient", "quotient by a normal subgroup");
    quot->add_option("--group", table)->required();
    quot->add_option("--subgroup", sub)->required();
    quot->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr grp = load_group(ws, table);
        Quotient q = quotient_group(grp, subgroup_from_json(load_json(sub), grp));
        return emit(g, json{{"group", group_to_json(*q.group)},
                            {"projection", q.projection.map()}});
      });
    });

    auto* homs = cgroup->add_subcommand("enum-homs", "all homomorphisms source -> target");
    homs->add_option("--source", table)->required();
    homs->add_option("--target", target)->required();
    homs->add_option("--gens", gens, "optional generating set");
    homs->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr s = load_group(ws, table);
        GroupPtr t = load_group(ws, target);
        auto hs = gens.empty()
                      ? enumerate_homs(s, t)
                      : enumerate_homs(s, load_json(gens).get<std::vector<int>>(), t);
        json maps = json::array();
        for (const auto& h : hs) maps.push_back(h.map());
        return emit(g, json{{"count", hs.size()}, {"homs", maps}});
      });
    });

    auto* inj = cgroup->add_subcommand("is-injective-on", "kernel meets a subgroup trivially");
    inj->add_option("--source", table)->required();
    inj->add_option("--target", target)->required();
    inj->add_option("--hom", hom)->required();
    inj->add_option("--subgroup", sub)->required();
    inj->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr s = load_group(ws, table);
        GroupPtr t = load_group(ws, target);
        GroupHom h = hom_from_json(load_json(hom), s, t);
        bool r = is_injective_on(h, subgroup_from_json(load_json(sub), s));
        return emit(g, json{{"injective", r}});
      });
    });
  }

  // ---- gset ---------------------------------------------------------------
  auto* cgset = app.add_subcommand("gset", "finite right actions");
  {
    static std::string gs, arg, part;
    auto* stab = cgset->add_subcommand("stabilizer", "point stabilizer");
    stab->add_option("--gset", gs)->required();
    stab->add_option("--point", arg)->required();
    stab->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        auto s = ws.resolve_gset(load_json(gs));
        return emit(g, subgroup_to_json(stabilizer(*s, std::stoi(arg))));
      });
    });

    auto* sstab = cgset->add_subcommand("setwise-stabilizer", "setwise stabilizer");
    sstab->add_option("--gset", gs)->required();
    sstab->add_option("--set", arg)->required();
    sstab->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        auto s = ws.resolve_gset(load_json(gs));
        return emit(g, subgroup_to_json(setwise_stabilizer(
                           *s, load_json(arg).get<std::vector<int>>())));
      });
    });

    auto* isg = cgset->add_subcommand("is-g-partition", "blocks map onto blocks");
    isg->add_option("--gset", gs)->required();
    isg->add_option("--partition", part)->required();
    isg->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        auto s = ws.resolve_gset(load_json(gs));
        Partition p = partition_from_json(load_json(part), s);
        return emit(g, json{{"g_partition", is_g_partition(p)}});
      });
    });

    auto* ref = cgset->add_subcommand("refine", "coarsest G-partition refinement");
    ref->add_option("--gset", gs)->required();
    ref->add_option("--partition", part)->required();
    ref->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        auto s = ws.resolve_gset(load_json(gs));
        Partition p = partition_from_json(load_json(part), s);
        return emit(g, partition_to_json(refine_to_g_partition(p)));
      });
    });

    auto* align = cgset->add_subcommand("align", "stabilizer-aligned G-partition with witnesses");
    align->add_option("--gset", gs)->required();
    align->add_option("--partition", part)->required();
    align->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        auto s = ws.resolve_gset(load_json(gs));
        Partition p = partition_from_json(load_json(part), s);
        AlignedPartition a = stabilizer_aligned_g_partition(p);
        return emit(g, json{{"blocks", a.partition.blocks()},
                            {"witnesses", a.witnesses}});
      });
    });
  }

  // ---- pile ---------------------------------------------------------------
  auto* cpile = app.add_subcommand("pile", "pile morphism calculus");
  {
    static std::string src, dst, mor, mor2, grp, subs, sub, part;
    auto* cm = cpile->add_subcommand("check-morphism", "equivariance check");
    cm->add_option("--source", src)->required();
    cm->add_option("--target", dst)->required();
    cm->add_option("--morphism", mor)->required();
    cm->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile s = ws.resolve_pile(load_json(src));
        Pile t = ws.resolve_pile(load_json(dst));
        PileMorphism m = morphism_from_json(load_json(mor), s, t);
        return emit(g, json{{"valid", true}, {"morphism", morphism_to_json(m)}});
      });
    });

    auto* ce = cpile->add_subcommand("check-epi", "epimorphism certificate");
    ce->add_option("--source", src)->required();
    ce->add_option("--target", dst)->required();
    ce->add_option("--morphism", mor)->required();
    ce->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile s = ws.resolve_pile(load_json(src));
        Pile t = ws.resolve_pile(load_json(dst));
        PileMorphism m = morphism_from_json(load_json(mor), s, t);
        auto c = check_epi(m);
        if (!c.ok()) throw Error(c.failure->code, c.failure->detail);
        return emit(g, json{{"epi", true}, {"witness", c.value->witness}});
      });
    });

    auto* cr = cpile->add_subcommand("check-rigid", "rigidity certificate");
    cr->add_option("--source", src)->required();
    cr->add_option("--target", dst)->required();
    cr->add_option("--morphism", mor)->required();
    cr->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile s = ws.resolve_pile(load_json(src));
        Pile t = ws.resolve_pile(load_json(dst));
        PileMorphism m = morphism_from_json(load_json(mor), s, t);
        auto c = check_rigid(m);
        if (!c.ok()) throw Error(c.failure->code, c.failure->detail);
        json orb = json::array();
        for (auto [a, b] : c.value->orbit_bijection)
          orb.push_back(json::array({a, b}));
        return emit(g, json{{"rigid", true},
                            {"witness", c.value->epi.witness},
                            {"orbit_bijection", orb}});
      });
    });

    auto* se = cpile->add_subcommand("standard-ext", "standard extension of subgroups");
    se->add_option("--group", grp)->required();
    se->add_option("--subgroups", subs, "[[label, [members]], ...]")->required();
    se->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr base = load_group(ws, grp);
        std::vector<std::pair<std::string, Subgroup>> reps;
        for (const auto& item : load_json(subs))
          reps.emplace_back(item.at(0).get<std::string>(),
                            Subgroup(base, item.at(1).get<std::vector<int>>()));
        StandardExtension ext = standard_extension(base, reps);
        return emit(g, json{{"pile", pile_to_json(ext.pile)},
                            {"base_points", ext.base_points},
                            {"labels", ext.labels}});
      });
    });

    auto* qp = cpile->add_subcommand("quotient", "quotient pile and projection");
    qp->add_option("--pile", src)->required();
    qp->add_option("--subgroup", sub)->required();
    qp->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile p = ws.resolve_pile(load_json(src));
        QuotientPile q =
            quotient_pile(p, subgroup_from_json(load_json(sub), p.group));
        auto rigid = check_rigid(q.projection);
        return emit(g, json{{"pile", pile_to_json(q.pile)},
                            {"projection", morphism_to_json(q.projection)},
                            {"rigid", rigid.ok()}});
      });
    });

    auto* tc = cpile->add_subcommand("tilde-closure", "normal closure of stabilizer meets");
    tc->add_option("--pile", src)->required();
    tc->add_option("--subgroup", sub)->required();
    tc->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile p = ws.resolve_pile(load_json(src));
        return emit(g, subgroup_to_json(tilde_closure(
                           p, subgroup_from_json(load_json(sub), p.group))));
      });
    });

    auto* fp = cpile->add_subcommand("fiber-product", "pile fibered product");
    fp->add_option("--b", src, "pile of the first leg")->required();
    fp->add_option("--ahat", dst, "pile of the second leg")->required();
    fp->add_option("--a", grp, "shared target pile")->required();
    fp->add_option("--alpha", mor)->required();
    fp->add_option("--phi0", mor2)->required();
    fp->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile b = ws.resolve_pile(load_json(src));
        Pile ahat = ws.resolve_pile(load_json(dst));
        Pile a = ws.resolve_pile(load_json(grp));
        PileMorphism alpha = morphism_from_json(load_json(mor), b, a);
        PileMorphism phi0 = morphism_from_json(load_json(mor2), ahat, a);
        FiberProduct f = fiber_product(alpha, phi0);
        return emit(g, json{{"pile", pile_to_json(f.pile)},
                            {"to_first", morphism_to_json(f.to_first)},
                            {"to_second", morphism_to_json(f.to_second)}});
      });
    });

    auto* cn = cpile->add_subcommand("connect", "factor phi through an epi psi");
    cn->add_option("--source", src)->required();
    cn->add_option("--a", grp)->required();
    cn->add_option("--b", dst)->required();
    cn->add_option("--phi", mor)->required();
    cn->add_option("--psi", mor2)->required();
    cn->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile s = ws.resolve_pile(load_json(src));
        Pile a = ws.resolve_pile(load_json(grp));
        Pile b = ws.resolve_pile(load_json(dst));
        PileMorphism phi = morphism_from_json(load_json(mor), s, a);
        PileMorphism psi = morphism_from_json(load_json(mor2), s, b);
        return emit(g, morphism_to_json(connect(phi, psi)));
      });
    });

    auto* dc = cpile->add_subcommand("decompose", "factor through an aligned finite pile");
    dc->add_option("--source", src)->required();
    dc->add_option("--a", grp)->required();
    dc->add_option("--phi", mor)->required();
    dc->add_option("--n0", sub, "normal subgroup bounding the kernel")->required();
    dc->add_option("--partition", part)->required();
    dc->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile s = ws.resolve_pile(load_json(src));
        Pile a = ws.resolve_pile(load_json(grp));
        PileMorphism phi = morphism_from_json(load_json(mor), s, a);
        Subgroup n0 = subgroup_from_json(load_json(sub), s.group);
        Partition x = partition_from_json(load_json(part), s.space);
        Decomposition d = decompose(phi, n0, x);
        return emit(g, json{{"pile", pile_to_json(d.through)},
                            {"psi", morphism_to_json(d.psi)},
                            {"alpha", morphism_to_json(d.alpha)}});
      });
    });

    auto* sf = cpile->add_subcommand("separate-fibers", "separate stabilizers along phi");
    sf->add_option("--source", src)->required();
    sf->add_option("--a", grp)->required();
    sf->add_option("--phi", mor)->required();
    sf->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile s = ws.resolve_pile(load_json(src));
        Pile a = ws.resolve_pile(load_json(grp));
        PileMorphism phi = morphism_from_json(load_json(mor), s, a);
        FiberSeparation f = separate_fibers(phi);
        return emit(g, json{{"pile", pile_to_json(f.through)},
                            {"phi_hat", morphism_to_json(f.phi_hat)},
                            {"phi0", morphism_to_json(f.phi0)}});
      });
    });
  }

  // ---- ep -----------------------------------------------------------------
  auto* cep = app.add_subcommand("ep", "embedding problems");
  {
    static std::string epf, sub, basic, phid, af, alphaf;
    auto* sp = cep->add_subcommand("solve-pile", "brute-force pile EP solver");
    sp->add_option("--ep", epf, "EP bundle JSON")->required();
    sp->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        PileEmbeddingProblem ep = pile_ep_from_json(load_json(epf), ws);
        PileSolution s = solve_pile_ep_bruteforce(ep);
        json j{{"solved", s.solution.has_value()},
               {"candidates_examined", s.candidates_examined}};
        if (s.solution) j["solution"] = morphism_to_json(*s.solution);
        emit(g, j);
        return s.solution ? kOk : kUnsolvable;
      });
    });

    auto* sq = cep->add_subcommand("transfer-quotient", "transport an EP over the tilde quotient");
    sq->add_option("--ep", epf)->required();
    sq->add_option("--subgroup", sub)->required();
    sq->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        PileEmbeddingProblem ep = pile_ep_from_json(load_json(epf), ws);
        Subgroup n =
            subgroup_from_json(load_json(sub), ep.phi().source().group);
        TransferredProblem t = quotient_ep_transfer(ep, n);
        return emit(g, json{{"quotient", pile_to_json(t.quotient)},
                            {"projection", morphism_to_json(t.projection)},
                            {"phi", morphism_to_json(t.phi_factored)}});
      });
    });

    auto* sb = cep->add_subcommand("solve-basic", "constructive basic-pile solver");
    sb->add_option("--basic", basic, "{factors, free_rank}")->required();
    sb->add_option("--phi", phid, "{factor_homs, free_images, label_points}")->required();
    sb->add_option("--a", af, "target pile")->required();
    sb->add_option("--b", epf, "covering pile")->required();
    sb->add_option("--alpha", alphaf, "rigid epi B -> A")->required();
    sb->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        json bj = load_json(basic);
        std::vector<std::pair<std::string, GroupPtr>> factors;
        for (const auto& item : bj.at("factors"))
          factors.emplace_back(item.at(0).get<std::string>(),
                               ws.resolve_group(item.at(1)));
        BasicPile bp(factors, bj.value("free_rank", 0), g.prime);
        Pile a = ws.resolve_pile(load_json(af));
        Pile b = ws.resolve_pile(load_json(epf));
        PileMorphism alpha = morphism_from_json(load_json(alphaf), b, a);
        auto rigid = check_rigid(alpha);
        if (!rigid.ok()) throw Error(rigid.failure->code, rigid.failure->detail);
        json pj = load_json(phid);
        BasicPhi phi;
        auto homs = pj.at("factor_homs");
        for (size_t i = 0; i < factors.size(); ++i)
          phi.factor_homs.push_back(
              hom_from_json(homs.at(i), factors[i].second, a.group));
        phi.free_images = pj.value("free_images", std::vector<int>{});
        phi.label_points = pj.at("label_points").get<std::vector<int>>();
        BasicSolution s = solve_basic_pile_ep(bp, phi, a, alpha, *rigid.value);
        json fh = json::array();
        for (const auto& h : s.factor_homs) fh.push_back(h.map());
        return emit(g, json{{"factor_homs", fh},
                            {"free_images", s.free_images},
                            {"label_points", s.label_points}});
      });
    });

    auto* pr = cep->add_subcommand("solve-pair", "pair EP by exhaustive search");
    static std::string gf, fam, phif, alf, famb, fama, bf2, af2;
    pr->add_option("--g", gf)->required();
    pr->add_option("--b", bf2)->required();
    pr->add_option("--a", af2)->required();
    pr->add_option("--family", fam, "[[members], ...]")->required();
    pr->add_option("--phi", phif)->required();
    pr->add_option("--alpha", alf)->required();
    pr->add_option("--family-b", famb)->required();
    pr->add_option("--family-a", fama)->required();
    pr->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr gg = load_group(ws, gf);
        GroupPtr bb = load_group(ws, bf2);
        GroupPtr aa = load_group(ws, af2);
        auto mk_family = [&](const std::string& arg, const GroupPtr& parent) {
          std::vector<Subgroup> out;
          for (const auto& item : load_json(arg))
            out.emplace_back(parent, item.get<std::vector<int>>());
          return out;
        };
        PairEmbeddingProblem ep(gg, mk_family(fam, gg),
                                hom_from_json(load_json(phif), gg, aa),
                                hom_from_json(load_json(alf), bb, aa),
                                mk_family(famb, bb), mk_family(fama, aa));
        PairSolution s = solve_pair_ep(ep);
        json j{{"solved", s.solution.has_value()},
               {"candidates_examined", s.candidates_examined}};
        if (s.solution) j["solution"] = s.solution->map();
        emit(g, j);
        return s.solution ? kOk : kUnsolvable;
      });
    });
  }

  // ---- pres ---------------------------------------------------------------
  auto* cpres = app.add_subcommand("pres", "presentations and hom counting");
  {
    static std::string presf, presf2, target, pilef, rhof, stablef, wordsf,
        basef;
    auto* hc = cpres->add_subcommand("hom-count", "|Hom(P, Q)|");
    hc->add_option("--pres", presf)->required();
    hc->add_option("--target", target)->required();
    hc->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Presentation p = presentation_from_json(load_json(presf), ws);
        GroupPtr q = load_group(ws, target);
        return emit(g, json{{"count", hom_count(p, q)}});
      });
    });

    auto* hp = cpres->add_subcommand("hom-profile", "counts over the catalog");
    hp->add_option("--pres", presf)->required();
    hp->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Presentation p = presentation_from_json(load_json(presf), ws);
        auto prof = hom_profile(p, catalog_by_name(g.catalog, g.prime));
        return emit(g, profile_to_json(prof));
      });
    });

    auto* cpf = cpres->add_subcommand("compare-profiles", "entrywise equality over the catalog");
    cpf->add_option("--pres", presf)->required();
    cpf->add_option("--other", presf2)->required();
    cpf->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        auto cat = catalog_by_name(g.catalog, g.prime);
        auto p1 = hom_profile(presentation_from_json(load_json(presf), ws), cat);
        auto p2 = hom_profile(presentation_from_json(load_json(presf2), ws), cat);
        int diff = first_profile_mismatch(p1, p2);
        json j{{"equal", diff < 0}};
        if (diff >= 0) {
          j["first_mismatch"] = cat[diff].name;
          j["left"] = p1.entries[diff].second;
          j["right"] = p2.entries[diff].second;
        }
        emit(g, j);
        return diff < 0 ? kOk : kProfileMismatch;
      });
    });

    auto* fpd = cpres->add_subcommand("free-product", "concatenate presentations");
    static std::vector<std::string> parts;
    fpd->add_option("--part", parts, "presentation (repeatable)")->required();
    fpd->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        std::vector<Presentation> ps;
        for (const auto& arg : parts)
          ps.push_back(presentation_from_json(load_json(arg), ws));
        return emit(g, presentation_to_json(free_product(ps)));
      });
    });

    auto* qc = cpres->add_subcommand("quotient", "append relator words");
    qc->add_option("--pres", presf)->required();
    qc->add_option("--words", wordsf)->required();
    qc->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Presentation p = presentation_from_json(load_json(presf), ws);
        std::vector<Word> words;
        for (const auto& wj : load_json(wordsf)) words.push_back(word_from_json(wj));
        return emit(g, presentation_to_json(quotient_by_closure(p, words)));
      });
    });

    auto* bh = cpres->add_subcommand("build-hnn", "HNN extension of a base group");
    bh->add_option("--base", basef)->required();
    bh->add_option("--stable", stablef,
                   "[{label, members, phi}, ...] with phi per member")
        ->required();
    bh->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr base = load_group(ws, basef);
        std::vector<StableLetter> stable;
        for (const auto& item : load_json(stablef))
          stable.push_back(
              StableLetter{item.at("label").get<std::string>(),
                           Subgroup(base, item.at("members").get<std::vector<int>>()),
                           item.at("phi").get<std::vector<int>>()});
        return emit(g, presentation_to_json(build_hnn(base, stable)));
      });
    });

    auto* bhp = cpres->add_subcommand("build-hnn-prime", "HNN' over G ⨿ L");
    bhp->add_option("--group", basef)->required();
    bhp->add_option("--stable", stablef, "[{label, members}, ...]")->required();
    bhp->add_option("--rho", rhof, "\"id\" or {l, map}")->required();
    bhp->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        GroupPtr base = load_group(ws, basef);
        GroupHom rho = load_rho(g, ws, rhof, base);
        std::vector<StableLabel> stable;
        for (const auto& item : load_json(stablef))
          stable.push_back(StableLabel{
              item.at("label").get<std::string>(),
              Subgroup(base, item.at("members").get<std::vector<int>>())});
        return emit(g, presentation_to_json(
                           build_hnn_prime(base, stable, rho, rho.target())));
      });
    });

    auto* bp = cpres->add_subcommand("build-phnn", "pile HNN extension");
    bp->add_option("--pile", pilef)->required();
    bp->add_option("--rho", rhof)->required();
    bp->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile p = ws.resolve_pile(load_json(pilef));
        GroupHom rho = load_rho(g, ws, rhof, p.group);
        return emit(g, presentation_to_json(build_phnn(p, rho)));
      });
    });

    auto* hk = cpres->add_subcommand("hnn-kernel", "normal generators of HNN' -> pHNN");
    static std::string t0f;
    hk->add_option("--pile", pilef)->required();
    hk->add_option("--rho", rhof)->required();
    hk->add_option("--t0", t0f, "point list covering every orbit")->required();
    hk->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile p = ws.resolve_pile(load_json(pilef));
        GroupHom rho = load_rho(g, ws, rhof, p.group);
        auto words = hnn_to_phnn_kernel(
            p, load_json(t0f).get<std::vector<int>>(), rho);
        json out = json::array();
        for (const Word& w : words) out.push_back(word_to_json(w));
        return emit(g, json{{"words", out}});
      });
    });

    auto* ml = cpres->add_subcommand("mod-l", "kill the L factor of a pHNN");
    static std::string lidx;
    ml->add_option("--pres", presf)->required();
    ml->add_option("--l-factor", lidx)->required();
    ml->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Presentation p = presentation_from_json(load_json(presf), ws);
        return emit(g, presentation_to_json(
                           mod_l_quotient(p, std::stoi(lidx))));
      });
    });

    auto* ih = cpres->add_subcommand("induced-hom", "pHNN functoriality");
    static std::string apile, arho, bpile, brho, psig, psit, lambdaf;
    ih->add_option("--source-pile", apile)->required();
    ih->add_option("--source-rho", arho)->required();
    ih->add_option("--target-pile", bpile)->required();
    ih->add_option("--target-rho", brho)->required();
    ih->add_option("--psi-group", psig)->required();
    ih->add_option("--psi-space", psit)->required();
    ih->add_option("--lambda", lambdaf)->required();
    ih->callback([&] {
      guard([&] {
        Workspace ws(g.prime);
        Pile pa = ws.resolve_pile(load_json(apile));
        Pile pb = ws.resolve_pile(load_json(bpile));
        GroupHom ra = load_rho(g, ws, arho, pa.group);
        GroupHom rb = load_rho(g, ws, brho, pb.group);
        GroupHom psi_g(pa.group, pb.group,
                       load_json(psig).get<std::vector<int>>());
        PileMorphism psi(pa, pb, psi_g,
                         load_json(psit).get<std::vector<int>>());
        GroupHom lambda(ra.target(), rb.target(),
                        load_json(lambdaf).get<std::vector<int>>());
        PresentationHom h =
            induced_hom(PhnnData{pa, ra}, PhnnData{pb, rb}, psi, lambda);
        json fmaps = json::array();
        for (const auto& [idx, hom] : h.factor_maps)
          fmaps.push_back(json{{"target_factor", idx}, {"map", hom.map()}});
        json fimgs = json::array();
        for (const Word& w : h.free_images) fimgs.push_back(word_to_json(w));
        return emit(g, json{{"factor_maps", fmaps}, {"free_images", fimgs}});
      });
    });
  }

  // ---- verify ---------------------------------------------------------------
  auto* cver = app.add_subcommand("verify", "run a named verification suite");
  {
    static std::string suite, pilef, rhof;
    static int count = -1, max_group = -1, max_space = -1;
    cver->add_option("suite", suite, "suite name")->required();
    cver->add_option("--count", count, "battery size");
    cver->add_option("--max-group", max_group, "sweep group order bound");
    cver->add_option("--max-space", max_space, "sweep space size bound");
    cver->add_option("--pile", pilef, "single-instance mode: pile JSON");
    cver->add_option("--rho", rhof, "single-instance mode: \"id\" or {l, map}");
    cver->callback([&] {
      guard([&] {
        SuiteOptions opts;
        opts.seed = g.seed;
        opts.prime = g.prime;
        opts.catalog = g.catalog;
        opts.timestamp = !g.no_timestamp;
        if (count > 0) opts.count = count;
        if (max_group > 0) opts.max_group = max_group;
        if (max_space >= 0) opts.max_space = max_space;
        Report rep;
        if (!pilef.empty()) {
          Workspace ws(g.prime);
          Pile p = ws.resolve_pile(load_json(pilef));
          GroupHom rho = load_rho(g, ws, rhof.empty() ? "id" : rhof, p.group);
          rep = run_single_instance(suite, p, rho, opts);
        } else {
          rep = run_suite(suite, opts);
        }
        emit(g, rep.to_json());
        return rep.all_passed() ? kOk : kInternal;
      });
    });
  }

  CLI11_PARSE(app, argc, argv);
  return rc;
}
