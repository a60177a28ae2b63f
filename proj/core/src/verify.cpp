#include "pilekit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace pilekit {

void Report::record(std::string name, bool ok, json witness) {
  checks.push_back(
      CheckRecord{std::move(name), ok ? "pass" : "fail", std::move(witness)});
  if (ok)
    ++passed;
  else
    ++failed;
}

void Report::skip(std::string name, json note) {
  checks.push_back(CheckRecord{std::move(name), "skip", std::move(note)});
  ++skipped;
}

json Report::to_json() const {
  json jchecks = json::array();
  for (const auto& c : checks) {
    json jc{{"name", c.name}, {"status", c.status}};
    if (!c.witness.is_null()) jc["witness"] = c.witness;
    jchecks.push_back(std::move(jc));
  }
  json out{{"suite", suite},     {"seed", seed},     {"catalog", catalog},
           {"prime", prime},     {"checks", jchecks}, {"passed", passed},
           {"failed", failed},   {"skipped", skipped}};
  if (wall_ms) out["wall_ms"] = *wall_ms;
  return out;
}

namespace {

// ---------- shared helpers ----------------------------------------------

std::vector<Elem> stab_of(const GSet& s, Point t) {
  std::vector<Elem> mem;
  for (Elem g = 0; g < s.group()->order(); ++g)
    if (s.act(t, g) == t) mem.push_back(g);
  return mem;
}

bool subset_of(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Point> image_set(const GSet& s, const std::vector<Point>& z,
                             Elem g) {
  std::vector<Point> im;
  im.reserve(z.size());
  for (Point t : z) im.push_back(s.act(t, g));
  std::sort(im.begin(), im.end());
  return im;
}

/// All set partitions of {0..m-1} via restricted growth strings.
std::vector<std::vector<std::vector<Point>>> all_partitions(int m) {
  std::vector<std::vector<std::vector<Point>>> out;
  if (m == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> rgs(m, 0);
  while (true) {
    int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<Point>> blocks(k);
    for (int t = 0; t < m; ++t) blocks[rgs[t]].push_back(t);
    out.push_back(std::move(blocks));
    // next RGS
    int i = m - 1;
    for (; i > 0; --i) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

// independent G-partition test: blocks map onto blocks (coded apart from
// gset's is_g_partition on purpose; the suites use this as the oracle)
bool gpart_oracle(const GSet& s, const std::vector<std::vector<Point>>& blocks) {
  std::map<std::vector<Point>, int> index;
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    auto b = blocks[i];
    std::sort(b.begin(), b.end());
    index[b] = i;
  }
  for (const auto& b : blocks)
    for (Elem g = 0; g < s.group()->order(); ++g)
      if (!index.count(image_set(s, b, g))) return false;
  return true;
}

bool blockwise_finer(const std::vector<std::vector<Point>>& fine,
                     const std::vector<std::vector<Point>>& coarse, int m) {
  std::vector<int> which(m, -1);
  for (int i = 0; i < static_cast<int>(coarse.size()); ++i)
    for (Point t : coarse[i]) which[t] = i;
  for (const auto& b : fine) {
    for (Point t : b)
      if (which[t] != which[b[0]]) return false;
  }
  return true;
}

// every block contains a point whose stabilizer equals the block's setwise
// stabilizer (independent of gset's aligned construction)
bool witnessed_oracle(const GSet& s, const std::vector<std::vector<Point>>& blocks) {
  for (const auto& b : blocks) {
    std::vector<Elem> setstab;
    auto sorted = b;
    std::sort(sorted.begin(), sorted.end());
    for (Elem g = 0; g < s.group()->order(); ++g)
      if (image_set(s, sorted, g) == sorted) setstab.push_back(g);
    bool found = false;
    for (Point t : b)
      if (stab_of(s, t) == setstab) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// raw morphism checker used to validate solver outputs independently of the
// PileMorphism constructor
bool raw_morphism_ok(const Pile& src, const Pile& dst,
                     const std::vector<Elem>& gmap,
                     const std::vector<Point>& smap) {
  const auto& g = *src.group;
  const auto& h = *dst.group;
  if (static_cast<int>(gmap.size()) != g.order()) return false;
  if (static_cast<int>(smap.size()) != src.space->size()) return false;
  if (g.order() > 0 && gmap[0] != 0) return false;
  for (Elem a = 0; a < g.order(); ++a) {
    if (gmap[a] < 0 || gmap[a] >= h.order()) return false;
    for (Elem b = 0; b < g.order(); ++b)
      if (gmap[g.mul(a, b)] != h.mul(gmap[a], gmap[b])) return false;
  }
  for (Point t = 0; t < src.space->size(); ++t) {
    if (smap[t] < 0 || smap[t] >= dst.space->size()) return false;
    for (Elem b = 0; b < g.order(); ++b)
      if (smap[src.space->act(t, b)] != dst.space->act(smap[t], gmap[b]))
        return false;
  }
  return true;
}

// independently coded homomorphism enumeration: element-by-element
// backtracking over the full map (the second route of the solver audit)
std::vector<std::vector<Elem>> indep_enum_homs(const FiniteGroup& g,
                                               const FiniteGroup& q) {
  std::vector<std::vector<Elem>> out;
  const int n = g.order();
  std::vector<Elem> img(n, -1);
  img[0] = 0;
  std::function<void(int)> go = [&](int e) {
    if (e == n) {
      out.push_back(img);
      return;
    }
    for (Elem v = 0; v < q.order(); ++v) {
      img[e] = v;
      bool ok = true;
      for (int a = 0; a <= e && ok; ++a) {
        if (img[a] < 0) continue;
        for (int b = 0; b <= e && ok; ++b) {
          if (img[b] < 0) continue;
          Elem ab = g.mul(a, b);
          if (ab <= e && img[ab] >= 0 && q.mul(img[a], img[b]) != img[ab])
            ok = false;
        }
      }
      if (ok) go(e + 1);
    }
    img[e] = -1;
  };
  go(1);
  if (n == 1) out.push_back({0});
  return out;
}

// independently coded equivariant space-map search with commutation
// constraints; true iff some completion of psi exists
bool indep_space_map_exists(const Pile& gp, const Pile& bp,
                            const std::vector<Elem>& psi,
                            const PileMorphism& phi,
                            const PileMorphism& alpha) {
  const GSet& t = *gp.space;
  const GSet& y = *bp.space;
  std::vector<Point> map(t.size(), -1);
  std::function<bool(Point)> go = [&](Point p) -> bool {
    if (p == t.size()) return true;
    if (map[p] >= 0) return go(p + 1);
    for (Point w = 0; w < y.size(); ++w) {
      if (alpha.on_point(w) != phi.on_point(p)) continue;
      std::vector<std::pair<Point, Point>> trail;
      bool ok = true;
      std::vector<std::pair<Point, Point>> queue{{p, w}};
      while (!queue.empty() && ok) {
        auto [tp, yp] = queue.back();
        queue.pop_back();
        if (map[tp] >= 0) {
          if (map[tp] != yp) ok = false;
          continue;
        }
        map[tp] = yp;
        trail.emplace_back(tp, yp);
        for (Elem e = 0; e < gp.group->order(); ++e)
          queue.emplace_back(t.act(tp, e), y.act(yp, psi[e]));
      }
      if (ok) {
        // commutation on the propagated points
        for (const auto& [tp, yp] : trail)
          if (alpha.on_point(yp) != phi.on_point(tp)) ok = false;
      }
      if (ok && go(p + 1)) return true;
      for (const auto& [tp, yp] : trail) map[tp] = -1;
    }
    return false;
  };
  return go(0);
}

// ---------- seeded instance generation ----------------------------------

struct Gen {
  std::mt19937_64 rng;
  int prime;
  std::vector<CatalogEntry> small_pool;  // order <= max_group
  std::vector<CatalogEntry> b_pool;      // order <= 16 for EP targets
  std::map<const FiniteGroup*, std::vector<Subgroup>> subgroup_cache;
  std::map<std::pair<const FiniteGroup*, const FiniteGroup*>,
           std::vector<GroupHom>>
      hom_cache;

  Gen(std::uint64_t seed, int p, int max_group) : rng(seed), prime(p) {
    for (auto& e : catalog_p3(p))
      if (e.group->order() <= max_group) small_pool.push_back(e);
    auto big = (p == 2) ? catalog_p4(2) : catalog_p3(p);
    for (auto& e : big)
      if (e.group->order() <= 16) b_pool.push_back(e);
  }

  int pick(int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); }

  GroupPtr group() { return small_pool[pick(small_pool.size())].group; }
  GroupPtr b_group() { return b_pool[pick(b_pool.size())].group; }

  const std::vector<Subgroup>& subgroups(const GroupPtr& g) {
    auto it = subgroup_cache.find(g.get());
    if (it == subgroup_cache.end())
      it = subgroup_cache.emplace(g.get(), all_subgroups(g)).first;
    return it->second;
  }

  const std::vector<GroupHom>& homs(const GroupPtr& s, const GroupPtr& t) {
    auto key = std::make_pair(s.get(), t.get());
    auto it = hom_cache.find(key);
    if (it == hom_cache.end())
      it = hom_cache.emplace(key, enumerate_homs(s, t)).first;
    return it->second;
  }

  /// Random pile: standard extension of randomly chosen subgroups whose
  /// orbit sizes fill the requested space size (orbit stitching).
  Pile pile(GroupPtr g, int max_space) {
    const int target = 1 + pick(max_space);
    const auto& subs = subgroups(g);
    std::vector<std::pair<std::string, Subgroup>> reps;
    int used = 0;
    int label = 0;
    while (used < target) {
      std::vector<const Subgroup*> fits;
      for (const auto& s : subs)
        if (g->order() / s.order() <= target - used) fits.push_back(&s);
      const Subgroup* chosen = fits[pick(fits.size())];
      reps.emplace_back("o" + std::to_string(label++), *chosen);
      used += g->order() / chosen->order();
    }
    return standard_extension(g, reps).pile;
  }

  /// Random normal subgroup meeting every point stabilizer trivially; the
  /// quotient morphism along it is a rigid epimorphism.
  Subgroup rigid_kernel(const Pile& p) {
    std::vector<Subgroup> ok;
    for (const auto& n : subgroups(p.group)) {
      if (!n.is_normal()) continue;
      bool meets = false;
      for (Point t = 0; t < p.space->size() && !meets; ++t)
        for (Elem e : stab_of(*p.space, t))
          if (e != 0 && n.contains(e)) {
            meets = true;
            break;
          }
      if (!meets) ok.push_back(n);
    }
    return ok[pick(ok.size())];
  }

  std::vector<std::vector<Point>> partition(int m) {
    if (m == 0) return {};
    int k = 1 + pick(m);
    std::vector<std::vector<Point>> blocks(k);
    for (Point t = 0; t < m; ++t) blocks[pick(k)].push_back(t);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.empty(); }),
                 blocks.end());
    return blocks;
  }

  Pile trivial_pile() {
    auto c1 = cyclic_group(1);
    return Pile(c1, GSet::validate(c1, {{0}}));
  }

  /// A pile morphism source -> target with the given group map, if one
  /// exists (completion against the trivial pile).
  std::optional<PileMorphism> any_morphism(const Pile& src, const Pile& dst,
                                           const GroupHom& h) {
    Pile tp = trivial_pile();
    PileMorphism phi_t(src, tp, GroupHom::trivial(src.group, tp.group),
                       std::vector<Point>(src.space->size(), 0));
    PileMorphism alpha_t(dst, tp, GroupHom::trivial(dst.group, tp.group),
                         std::vector<Point>(dst.space->size(), 0));
    auto res = complete_to_pile_morphism(h, src, dst, phi_t, alpha_t);
    if (!res.morphism) return std::nullopt;
    return std::move(res.morphism);
  }
};

// ---------- sweep suites (criteria 1 and 2) ------------------------------

void sweep_actions(const SuiteOptions& opts,
                   const std::function<void(const std::string&, const GSet&)>&
                       visit) {
  std::map<int, GroupPtr> syms;
  for (int m = 0; m <= opts.max_space; ++m) syms[m] = symmetric_group(m);
  for (const auto& entry : catalog_p3(opts.prime)) {
    if (entry.group->order() > opts.max_group) continue;
    for (int m = 0; m <= opts.max_space; ++m) {
      auto hs = enumerate_homs(entry.group, syms[m]);
      int idx = 0;
      for (const auto& h : hs) {
        std::vector<std::vector<int>> action(m,
                                             std::vector<int>(entry.group->order()));
        for (int t = 0; t < m; ++t)
          for (Elem g = 0; g < entry.group->order(); ++g)
            action[t][g] = sym_apply(*syms[m], h(g), t);
        auto gs = GSet::validate(entry.group, action);
        visit(entry.name + " m=" + std::to_string(m) + " #" +
                  std::to_string(idx++),
              *gs);
      }
    }
  }
}

Report suite_stab(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "stab";
  long long instances = 0, failures = 0;
  json first_fail;
  sweep_actions(opts, [&](const std::string& tag, const GSet& s) {
    ++instances;
    const int m = s.size();
    // all G-blocks among nonempty subsets
    std::vector<std::vector<Point>> blocks;
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<Point> z;
      for (int t = 0; t < m; ++t)
        if (mask & (1 << t)) z.push_back(t);
      if (is_block(s, z)) blocks.push_back(std::move(z));
    }
    bool ok = true;
    // (e): Stab(Z) <= Stab(U) for nonempty Z inside a block U
    for (const auto& u : blocks) {
      auto stab_u = setwise_stabilizer(s, u).members();
      const int k = static_cast<int>(u.size());
      for (int zmask = 1; zmask < (1 << k) && ok; ++zmask) {
        std::vector<Point> z;
        for (int i = 0; i < k; ++i)
          if (zmask & (1 << i)) z.push_back(u[i]);
        if (!subset_of(setwise_stabilizer(s, z).members(), stab_u)) ok = false;
      }
      if (!ok) break;
    }
    // (f): G_t equals the intersection of Stab(U) over blocks containing t
    for (int t = 0; t < m && ok; ++t) {
      std::vector<bool> meet(s.group()->order(), true);
      for (const auto& u : blocks) {
        if (!std::binary_search(u.begin(), u.end(), t)) continue;
        std::vector<bool> in(s.group()->order(), false);
        auto stab_u = setwise_stabilizer(s, u);
        for (Elem e : stab_u.members()) in[e] = true;
        for (Elem e = 0; e < s.group()->order(); ++e)
          if (!in[e]) meet[e] = false;
      }
      auto st = stab_of(s, t);
      std::vector<Elem> inter;
      for (Elem e = 0; e < s.group()->order(); ++e)
        if (meet[e]) inter.push_back(e);
      if (inter != st) ok = false;
    }
    if (!ok) {
      ++failures;
      if (first_fail.is_null())
        first_fail = json{{"instance", tag}, {"gset", gset_to_json(s)}};
    }
  });
  rep.record("stab properties over sweep (" + std::to_string(instances) +
                 " actions)",
             failures == 0, first_fail);
  return rep;
}

Report suite_g_partition(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "g-partition";
  long long cases = 0, failures = 0;
  json first_fail;
  sweep_actions(opts, [&](const std::string& tag, const GSet& s) {
    GSetPtr sp = GSet::validate(s.group(), s.action_table());
    auto parts = all_partitions(s.size());
    // candidate validity is seed-independent: G-partition + witnesses
    std::vector<char> valid0(parts.size(), 0);
    for (size_t i = 0; i < parts.size(); ++i)
      valid0[i] = gpart_oracle(s, parts[i]) && witnessed_oracle(s, parts[i]);
    for (const auto& seed_blocks : parts) {
      ++cases;
      Partition p(sp, seed_blocks);
      AlignedPartition out = stabilizer_aligned_g_partition(p);
      bool ok = is_g_partition(out.partition) && refines(out.partition, p);
      if (ok) {
        for (int b = 0; b < out.partition.block_count() && ok; ++b) {
          const auto& blk = out.partition.blocks()[b];
          Point w = out.witnesses[b];
          if (!std::binary_search(blk.begin(), blk.end(), w)) ok = false;
          if (ok && setwise_stabilizer(s, blk).members() !=
                        stabilizer(s, w).members())
            ok = false;
        }
      }
      if (ok) {
        // brute-force oracle: some valid aligned G-partition finer than p
        bool exists = false;
        for (size_t i = 0; i < parts.size() && !exists; ++i)
          if (valid0[i] && blockwise_finer(parts[i], seed_blocks, s.size()))
            exists = true;
        if (!exists) ok = false;
      }
      if (!ok) {
        ++failures;
        if (first_fail.is_null())
          first_fail = json{{"instance", tag},
                            {"gset", gset_to_json(s)},
                            {"seed_partition", seed_blocks}};
      }
    }
  });
  rep.record("aligned G-partition over sweep (" + std::to_string(cases) +
                 " seed partitions)",
             failures == 0, first_fail);
  return rep;
}

// ---------- random batteries ---------------------------------------------

Report suite_cartesian_rigid(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "cartesian-rigid";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  for (int i = 0; i < opts.count; ++i) {
    Pile b = gen.pile(gen.group(), 6);
    Subgroup k = gen.rigid_kernel(b);
    QuotientPile qa = quotient_pile(b, k);
    auto rigid = check_rigid(qa.projection);
    if (!rigid.ok()) {
      rep.record("instance " + std::to_string(i), false,
                 json{{"stage", "bottom edge not rigid"},
                      {"failure", rigid.failure->to_json()}});
      continue;
    }
    // random second leg into A, retrying a few times
    std::optional<PileMorphism> phi0;
    for (int attempt = 0; attempt < 8 && !phi0; ++attempt) {
      Pile ahat = gen.pile(gen.group(), 6);
      const auto& pool = gen.homs(ahat.group, qa.pile.group);
      if (pool.empty()) continue;
      phi0 = gen.any_morphism(ahat, qa.pile, pool[gen.pick(pool.size())]);
    }
    if (!phi0) phi0 = PileMorphism::identity(qa.pile);
    FiberProduct fp = fiber_product(qa.projection, *phi0);
    auto pulled = check_rigid(fp.to_second);
    rep.record("instance " + std::to_string(i), pulled.ok(),
               pulled.ok() ? json()
                           : json{{"failure", pulled.failure->to_json()},
                                  {"B", pile_to_json(b)},
                                  {"K", k.members()}});
  }
  return rep;
}

Report suite_completion(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "completion";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  for (int i = 0; i < opts.count; ++i) {
    // resample until the composed group map extends to a pile morphism
    std::optional<Pile> g_opt, b_opt;
    std::optional<QuotientPile> qa_opt;
    std::optional<GroupHom> psi_opt;
    std::optional<PileMorphism> phi;
    for (int attempt = 0; attempt < 50 && !phi; ++attempt) {
      g_opt = gen.pile(gen.group(), opts.max_space);
      b_opt = gen.pile(gen.group(), 6);
      const auto& normals = gen.subgroups(b_opt->group);
      std::vector<const Subgroup*> nrm;
      for (const auto& n : normals)
        if (n.is_normal()) nrm.push_back(&n);
      qa_opt = quotient_pile(*b_opt, *nrm[gen.pick(nrm.size())]);
      const auto& pool = gen.homs(g_opt->group, b_opt->group);
      psi_opt = pool[gen.pick(pool.size())];
      GroupHom phi_grp = compose(qa_opt->projection.group_map(), *psi_opt);
      phi = gen.any_morphism(*g_opt, qa_opt->pile, phi_grp);
    }
    if (!phi) {
      rep.record("instance " + std::to_string(i), false,
                 json{{"stage", "generator could not build a square"}});
      continue;
    }
    Pile g = *g_opt;
    Pile b = *b_opt;
    QuotientPile& qa = *qa_opt;
    const GroupHom& psi = *psi_opt;
    // the iff condition, computed independently
    bool basic_holds = true;
    Point first_violation = -1;
    for (Point t = 0; t < g.space->size() && basic_holds; ++t) {
      std::vector<Elem> psi_stab;
      for (Elem e : stab_of(*g.space, t)) psi_stab.push_back(psi(e));
      std::sort(psi_stab.begin(), psi_stab.end());
      psi_stab.erase(std::unique(psi_stab.begin(), psi_stab.end()),
                     psi_stab.end());
      bool some = false;
      for (Point y = 0; y < b.space->size() && !some; ++y)
        if (qa.projection.on_point(y) == phi->on_point(t) &&
            subset_of(psi_stab, stab_of(*b.space, y)))
          some = true;
      if (!some) {
        basic_holds = false;
        first_violation = t;
      }
    }
    auto res = complete_to_pile_morphism(psi, g, b, *phi, qa.projection);
    bool ok;
    json witness;
    if (basic_holds) {
      ok = res.morphism.has_value();
      if (ok)
        ok = raw_morphism_ok(g, b, res.morphism->group_map().map(),
                             res.morphism->space_map());
      if (ok) {
        for (Point t = 0; t < g.space->size() && ok; ++t)
          if (qa.projection.on_point(res.morphism->on_point(t)) !=
              phi->on_point(t))
            ok = false;
      }
      if (!ok) witness = json{{"stage", "completion should succeed"}};
    } else {
      ok = !res.morphism.has_value() &&
           res.no_witness_point.has_value() &&
           *res.no_witness_point == first_violation;
      if (!ok) witness = json{{"stage", "completion should fail"},
                              {"expected_point", first_violation}};
    }
    rep.record("instance " + std::to_string(i), ok, witness);

    // refinement clause: floor satisfied by construction
    Pile tp = gen.trivial_pile();
    std::vector<std::vector<Point>> pblocks = gen.partition(g.space->size());
    Partition goal(g.space, pblocks);
    AlignedPartition aligned = stabilizer_aligned_g_partition(goal);
    const int floor_n = aligned.partition.block_count();
    // kernel of the action on the aligned blocks
    std::vector<Elem> kact;
    for (Elem e = 0; e < g.group->order(); ++e) {
      bool fixes = true;
      for (Point t = 0; t < g.space->size() && fixes; ++t)
        if (aligned.partition.block_of(g.space->act(t, e)) !=
            aligned.partition.block_of(t))
          fixes = false;
      if (fixes) kact.push_back(e);
    }
    Subgroup kact_sub(g.group, kact);
    std::vector<const Subgroup*> inside;
    for (const auto& n : gen.subgroups(g.group))
      if (n.is_normal() && subset_of(n.members(), kact_sub.members()))
        inside.push_back(&n);
    Quotient q2 = quotient_group(g.group, *inside[gen.pick(inside.size())]);
    // block-orbit representatives
    std::vector<int> block_orbit(floor_n, -1);
    std::vector<int> reps;
    for (int bidx = 0; bidx < floor_n; ++bidx) {
      if (block_orbit[bidx] >= 0) continue;
      reps.push_back(bidx);
      for (Elem e = 0; e < g.group->order(); ++e) {
        int img = aligned.partition.block_of(
            g.space->act(aligned.partition.blocks()[bidx][0], e));
        block_orbit[img] = bidx;
      }
    }
    std::vector<std::pair<std::string, Subgroup>> ext;
    for (int r : reps) {
      std::vector<Elem> im;
      for (Elem e : stab_of(*g.space, aligned.witnesses[r]))
        im.push_back(q2.projection(e));
      std::sort(im.begin(), im.end());
      im.erase(std::unique(im.begin(), im.end()), im.end());
      Subgroup h(q2.group, im);
      for (int c = 0; c < floor_n; ++c)
        ext.emplace_back("b" + std::to_string(r) + "c" + std::to_string(c), h);
    }
    if (ext.empty()) ext.emplace_back("pt", whole_subgroup(q2.group));
    Pile bprime = standard_extension(q2.group, ext).pile;
    PileMorphism phi_t(g, tp, GroupHom::trivial(g.group, tp.group),
                       std::vector<Point>(g.space->size(), 0));
    PileMorphism alpha_t(bprime, tp, GroupHom::trivial(bprime.group, tp.group),
                         std::vector<Point>(bprime.space->size(), 0));
    CompletionConfig cfg;
    cfg.target_partition = goal;
    cfg.multiplicity_floor = std::max(floor_n, 1);
    auto res2 = complete_to_pile_morphism(q2.projection, g, bprime, phi_t,
                                          alpha_t, cfg);
    bool ok2 = res2.morphism.has_value() && res2.refined;
    if (ok2)
      ok2 = raw_morphism_ok(g, bprime, res2.morphism->group_map().map(),
                            res2.morphism->space_map());
    rep.record("refinement " + std::to_string(i), ok2,
               ok2 ? json()
                   : json{{"partition", pblocks},
                          {"floor", cfg.multiplicity_floor}});
  }
  return rep;
}

Report suite_basic_ep(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "basic-ep";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  for (int i = 0; i < opts.count; ++i) {
    // |B| <= 16 with the quotient target |A| <= 8
    std::optional<Pile> b_opt;
    std::optional<Subgroup> k_opt;
    for (int attempt = 0; attempt < 20 && !k_opt; ++attempt) {
      b_opt = gen.pile(gen.b_group(), 6);
      std::vector<Subgroup> ok;
      for (const auto& n : gen.subgroups(b_opt->group)) {
        if (!n.is_normal()) continue;
        if (b_opt->group->order() / n.order() > 8) continue;
        bool meets = false;
        for (Point t = 0; t < b_opt->space->size() && !meets; ++t)
          for (Elem e : stab_of(*b_opt->space, t))
            if (e != 0 && n.contains(e)) {
              meets = true;
              break;
            }
        if (!meets) ok.push_back(n);
      }
      if (!ok.empty()) k_opt = ok[gen.pick(ok.size())];
    }
    if (!k_opt) {
      rep.record("instance " + std::to_string(i), false,
                 json{{"stage", "no admissible rigid kernel"}});
      continue;
    }
    Pile b = *b_opt;
    QuotientPile qa = quotient_pile(b, *k_opt);
    auto rigid = check_rigid(qa.projection);
    if (!rigid.ok()) {
      rep.record("instance " + std::to_string(i), false,
                 json{{"stage", "alpha not rigid"}});
      continue;
    }
    const Pile& a = qa.pile;
    int nfac = 1 + gen.pick(2);
    std::vector<std::pair<std::string, GroupPtr>> factors;
    for (int f = 0; f < nfac; ++f)
      factors.emplace_back("g" + std::to_string(f), gen.group());
    int free_rank = gen.pick(3);
    BasicPile basic(factors, free_rank, opts.prime);
    BasicPhi phi;
    bool feasible = true;
    for (int f = 0; f < nfac; ++f) {
      Point x = gen.pick(a.space->size());
      auto ax = subgroup_as_group(
          Subgroup(a.group, stab_of(*a.space, x)));
      const auto& pool = gen.homs(factors[f].second, ax.group);
      if (pool.empty()) {
        feasible = false;
        break;
      }
      const GroupHom& h = pool[gen.pick(pool.size())];
      std::vector<Elem> up(factors[f].second->order());
      for (Elem e = 0; e < factors[f].second->order(); ++e)
        up[e] = ax.to_parent[h(e)];
      phi.factor_homs.emplace_back(factors[f].second, a.group, std::move(up));
      phi.label_points.push_back(x);
    }
    if (!feasible) {
      rep.skip("instance " + std::to_string(i),
               json{{"reason", "no factor hom into the point stabilizer"}});
      continue;
    }
    for (int j = 0; j < free_rank; ++j)
      phi.free_images.push_back(gen.pick(a.group->order()));

    bool ok = true;
    json witness;
    try {
      BasicSolution sol =
          solve_basic_pile_ep(basic, phi, a, qa.projection, *rigid.value);
      for (int f = 0; f < nfac && ok; ++f) {
        for (Elem e = 0; e < factors[f].second->order() && ok; ++e)
          if (qa.projection.on_elem(sol.factor_homs[f](e)) !=
              phi.factor_homs[f](e))
            ok = false;
        if (ok && qa.projection.on_point(sol.label_points[f]) !=
                      phi.label_points[f])
          ok = false;
        if (ok) {
          auto by = stab_of(*b.space, sol.label_points[f]);
          for (Elem e = 0; e < factors[f].second->order() && ok; ++e)
            if (!std::binary_search(by.begin(), by.end(),
                                    sol.factor_homs[f](e)))
              ok = false;
        }
      }
      for (int j = 0; j < free_rank && ok; ++j)
        if (qa.projection.on_elem(sol.free_images[j]) != phi.free_images[j])
          ok = false;
      if (!ok) witness = json{{"stage", "checker rejected solution"}};
    } catch (const Error& e) {
      ok = false;
      witness = json{{"stage", "solver threw"}, {"code", e.code()}};
    }
    rep.record("instance " + std::to_string(i), ok, witness);
  }
  return rep;
}

// shared generator for the profile batteries: a standard-extension pile with
// rho injective on every point stabilizer, sized to keep counting tractable
struct PhnnInstance {
  Pile pile;
  std::vector<std::pair<std::string, Subgroup>> reps;
  std::vector<Point> base_points;
  GroupHom rho;
};

std::optional<PhnnInstance> random_phnn_instance(Gen& gen, int max_orbits,
                                                 int budget_points) {
  GroupPtr g = gen.group();
  const auto& subs = gen.subgroups(g);
  int k = 1 + gen.pick(max_orbits);
  std::vector<std::pair<std::string, Subgroup>> reps;
  int points = 0;
  for (int i = 0; i < k; ++i) {
    const Subgroup& s = subs[gen.pick(subs.size())];
    int orbit = g->order() / s.order();
    if (points + orbit > budget_points) continue;
    points += orbit;
    reps.emplace_back("t" + std::to_string(reps.size()), s);
  }
  if (reps.empty()) reps.emplace_back("t0", whole_subgroup(g));
  StandardExtension ext = standard_extension(g, reps);
  // rho injective on every point stabilizer
  std::vector<const GroupHom*> good;
  GroupPtr l = gen.group();
  for (const auto& h : gen.homs(g, l)) {
    bool inj = true;
    for (Point t = 0; t < ext.pile.space->size() && inj; ++t)
      for (Elem e : stab_of(*ext.pile.space, t))
        if (e != 0 && h(e) == 0) {
          inj = false;
          break;
        }
    if (inj) good.push_back(&h);
  }
  if (good.empty()) {
    l = g;
    return PhnnInstance{ext.pile, reps, ext.base_points,
                        GroupHom::identity(g)};
  }
  return PhnnInstance{ext.pile, reps, ext.base_points,
                      *good[gen.pick(good.size())]};
}

// rough counting cost bound so batteries stay inside the time budget
unsigned long long profile_cost(Gen& gen, const Presentation& p,
                                const std::vector<CatalogEntry>& cat) {
  unsigned long long worst = 0;
  for (const auto& e : cat) {
    unsigned long long c = 1;
    for (const auto& f : p.factors) {
      c *= gen.homs(f, e.group).size();
      if (c > (1ULL << 40)) return c;
    }
    // free letters collapse to at most one choice per G-orbit under unit
    // propagation; bound by |Q|^letters capped
    unsigned long long letters = 1;
    for (int i = 0; i < std::min(p.free_letters, 3); ++i)
      letters *= e.group->order();
    c *= letters;
    worst = std::max(worst, c);
  }
  return worst;
}

Report suite_with_section(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "with-section";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  auto cat = catalog_by_name(opts.catalog, opts.prime);
  int done = 0, tries = 0;
  while (done < opts.count && tries < opts.count * 20) {
    ++tries;
    auto inst = random_phnn_instance(gen, 2, 6);
    if (!inst) continue;
    std::vector<StableLabel> stable;
    for (const auto& [label, sub] : inst->reps) stable.push_back({label, sub});
    Presentation hnnp = build_hnn_prime(inst->pile.group, stable, inst->rho,
                                        inst->rho.target());
    Presentation phnn = build_phnn(inst->pile, inst->rho);
    if (profile_cost(gen, phnn, cat) > 30000000ULL) continue;
    auto p1 = hom_profile(hnnp, cat);
    auto p2 = hom_profile(phnn, cat);
    int diff = first_profile_mismatch(p1, p2);
    rep.record("instance " + std::to_string(done), diff < 0,
               diff < 0 ? json()
                        : json{{"first_mismatch", cat[diff].name},
                               {"pile", pile_to_json(inst->pile)},
                               {"rho", inst->rho.map()}});
    ++done;
  }
  if (done < opts.count)
    rep.record("battery size", false,
               json{{"requested", opts.count}, {"generated", done}});
  return rep;
}

Report suite_hnn_kernel(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "hnn-kernel";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  auto cat = catalog_by_name(opts.catalog, opts.prime);
  int done = 0, tries = 0;
  while (done < opts.count && tries < opts.count * 20) {
    ++tries;
    auto inst = random_phnn_instance(gen, 2, 5);
    if (!inst) continue;
    // HNN' with a stable letter for every point
    std::vector<StableLabel> stable;
    std::vector<Point> t0;
    for (Point t = 0; t < inst->pile.space->size(); ++t) {
      stable.push_back({"t" + std::to_string(t),
                        Subgroup(inst->pile.group, stab_of(*inst->pile.space, t))});
      t0.push_back(t);
    }
    Presentation full = build_hnn_prime(inst->pile.group, stable, inst->rho,
                                        inst->rho.target());
    Presentation phnn = build_phnn(inst->pile, inst->rho);
    if (profile_cost(gen, phnn, cat) > 30000000ULL) continue;
    auto words = hnn_to_phnn_kernel(inst->pile, t0, inst->rho);
    Presentation quotiented = quotient_by_closure(full, words);
    auto p1 = hom_profile(quotiented, cat);
    auto p2 = hom_profile(phnn, cat);
    int diff = first_profile_mismatch(p1, p2);
    rep.record("instance " + std::to_string(done), diff < 0,
               diff < 0 ? json()
                        : json{{"first_mismatch", cat[diff].name},
                               {"pile", pile_to_json(inst->pile)},
                               {"rho", inst->rho.map()}});
    ++done;
  }
  if (done < opts.count)
    rep.record("battery size", false,
               json{{"requested", opts.count}, {"generated", done}});
  return rep;
}

Report suite_mod_l(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "mod-l";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  auto cat = catalog_by_name(opts.catalog, opts.prime);

  // hand-checkable instance: G = G_t = L = C2 over a single fixed point;
  // both sides must count exactly |Q| per catalog group
  {
    auto c2 = cyclic_group(2);
    StandardExtension ext =
        standard_extension(c2, {{"t", whole_subgroup(c2)}});
    Presentation phnn = build_phnn(ext.pile, GroupHom::identity(c2));
    Presentation modl = mod_l_quotient(phnn, 1);
    auto prof = hom_profile(modl, cat);
    bool ok = true;
    for (const auto& [name, count] : prof.entries) {
      auto q = find_group(name, opts.prime);
      if (count != static_cast<unsigned long long>(q->order())) ok = false;
    }
    rep.record("worked instance C2 fixed point", ok, profile_to_json(prof));
  }

  int done = 0, tries = 0;
  while (done < opts.count && tries < opts.count * 20) {
    ++tries;
    auto inst = random_phnn_instance(gen, 2, 6);
    if (!inst) continue;
    Presentation phnn = build_phnn(inst->pile, inst->rho);
    if (profile_cost(gen, phnn, cat) > 30000000ULL) continue;
    Presentation modl = mod_l_quotient(phnn, 1);
    // predicted: G / <all stabilizers>  ⨿  F(#orbits)
    std::vector<Elem> gens;
    for (Point t = 0; t < inst->pile.space->size(); ++t)
      for (Elem e : stab_of(*inst->pile.space, t)) gens.push_back(e);
    Quotient q = quotient_group(inst->pile.group,
                                normal_closure(inst->pile.group, gens));
    const int orbits = static_cast<int>(inst->pile.space->orbits().size());
    Presentation predicted = free_product(
        {presentation_of_group(q.group), free_letters_presentation(orbits)});
    auto p1 = hom_profile(modl, cat);
    auto p2 = hom_profile(predicted, cat);
    int diff = first_profile_mismatch(p1, p2);
    rep.record("instance " + std::to_string(done), diff < 0,
               diff < 0 ? json()
                        : json{{"first_mismatch", cat[diff].name},
                               {"pile", pile_to_json(inst->pile)},
                               {"rho", inst->rho.map()}});
    ++done;
  }
  if (done < opts.count)
    rep.record("battery size", false,
               json{{"requested", opts.count}, {"generated", done}});
  return rep;
}

// basic-pile data for the structure suites: factors with injective maps
// into L, realized as the HNN' presentation on the label transversal
struct BasicHnnInstance {
  std::vector<std::pair<std::string, GroupPtr>> factors;
  int free_rank;
  GroupPtr l;
  std::vector<std::vector<Elem>> rho;  // per factor: element -> L image
  Presentation base;                   // ⨿ factors ⨿ F(free_rank)
  Presentation hnnp;
};

std::optional<BasicHnnInstance> random_basic_instance(Gen& gen) {
  BasicHnnInstance out;
  int nfac = 1 + gen.pick(2);
  out.l = gen.group();
  for (int f = 0; f < nfac; ++f) {
    GroupPtr cand = gen.group();
    std::vector<const GroupHom*> inj;
    for (const auto& h : gen.homs(cand, out.l))
      if (h.is_injective()) inj.push_back(&h);
    if (inj.empty()) return std::nullopt;
    out.factors.emplace_back("g" + std::to_string(f), cand);
    out.rho.push_back(inj[gen.pick(inj.size())]->map());
  }
  out.free_rank = gen.pick(3);
  std::vector<Presentation> parts;
  for (const auto& [label, grp] : out.factors)
    parts.push_back(presentation_of_group(grp, label));
  parts.push_back(free_letters_presentation(out.free_rank));
  out.base = free_product(parts);
  std::vector<StablePresLabel> stable;
  for (int f = 0; f < nfac; ++f) {
    StablePresLabel spl;
    spl.label = "s" + std::to_string(f);
    for (Elem e : small_generating_set(*out.factors[f].second))
      spl.gens_with_rho.emplace_back(Letter::factor(f, e), out.rho[f][e]);
    stable.push_back(std::move(spl));
  }
  out.hnnp = build_hnn_prime_pres(out.base, stable, out.l);
  return out;
}

Report suite_section(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "section";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  auto cat = catalog_by_name(opts.catalog, opts.prime);
  int done = 0, tries = 0;
  while (done < opts.count && tries < opts.count * 30) {
    ++tries;
    auto inst = random_basic_instance(gen);
    if (!inst) continue;
    if (profile_cost(gen, inst->hnnp, cat) > 30000000ULL) continue;
    // E computed as the base presentation with every factor killed
    std::vector<Word> kill;
    for (size_t f = 0; f < inst->factors.size(); ++f)
      for (Elem e = 1; e < inst->factors[f].second->order(); ++e)
        kill.push_back(Word{Letter::factor(static_cast<int>(f), e)});
    Presentation e_side = quotient_by_closure(inst->base, kill);
    Presentation predicted = free_product(
        {e_side, presentation_of_group(inst->l),
         free_letters_presentation(static_cast<int>(inst->factors.size()))});
    auto p1 = hom_profile(inst->hnnp, cat);
    auto p2 = hom_profile(predicted, cat);
    int diff = first_profile_mismatch(p1, p2);
    rep.record("instance " + std::to_string(done), diff < 0,
               diff < 0 ? json() : json{{"first_mismatch", cat[diff].name}});
    ++done;
  }
  if (done < opts.count)
    rep.record("battery size", false,
               json{{"requested", opts.count}, {"generated", done}});
  return rep;
}

Report suite_pile_hnn_structure(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "pile-hnn-structure";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  auto cat = catalog_by_name(opts.catalog, opts.prime);

  // worked instance: G = C_p = G_t, one point, rho = id, L = C_p; the
  // profile must equal that of C_p ⨿ F(1)
  {
    auto cp = cyclic_group(opts.prime);
    StandardExtension ext =
        standard_extension(cp, {{"t", whole_subgroup(cp)}});
    Presentation phnn = build_phnn(ext.pile, GroupHom::identity(cp));
    bool ok = true;
    for (const auto& e : cat) {
      unsigned long long expect =
          gen.homs(cp, e.group).size() *
          static_cast<unsigned long long>(e.group->order());
      if (hom_count(phnn, e.group) != expect) ok = false;
    }
    rep.record("worked instance C_p one point", ok);
  }

  int done = 0, tries = 0;
  while (done < opts.count && tries < opts.count * 30) {
    ++tries;
    auto inst = random_basic_instance(gen);
    if (!inst) continue;
    if (profile_cost(gen, inst->hnnp, cat) > 30000000ULL) continue;
    Presentation predicted = free_product(
        {presentation_of_group(inst->l),
         free_letters_presentation(inst->free_rank +
                                   static_cast<int>(inst->factors.size()))});
    auto p1 = hom_profile(inst->hnnp, cat);
    auto p2 = hom_profile(predicted, cat);
    int diff = first_profile_mismatch(p1, p2);
    rep.record("instance " + std::to_string(done), diff < 0,
               diff < 0 ? json() : json{{"first_mismatch", cat[diff].name}});
    ++done;
  }
  if (done < opts.count)
    rep.record("battery size", false,
               json{{"requested", opts.count}, {"generated", done}});
  return rep;
}

Report suite_zeta_injective(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "zeta-injective";
  Gen gen(opts.seed, opts.prime, opts.max_group);
  if (opts.prime != 2) {
    rep.skip("witness search", json{{"reason", "catalog p4 needs p = 2"}});
    return rep;
  }
  auto cat = catalog_p4(2);
  for (int i = 0; i < opts.count; ++i) {
    // projective pile: one fixed point with full stabilizer plus free orbits
    GroupPtr g = gen.group();
    std::vector<std::pair<std::string, Subgroup>> reps;
    reps.emplace_back("fix", whole_subgroup(g));
    int extra = gen.pick(3);
    for (int j = 0; j < extra; ++j)
      reps.emplace_back("free" + std::to_string(j), trivial_subgroup(g));
    StandardExtension ext = standard_extension(g, reps);
    // rho must be injective on the full stabilizer, hence on G
    GroupPtr l = gen.group();
    std::vector<const GroupHom*> inj;
    for (const auto& h : gen.homs(g, l))
      if (h.is_injective()) inj.push_back(&h);
    GroupHom rho = inj.empty() ? GroupHom::identity(g)
                               : *inj[gen.pick(inj.size())];
    if (inj.empty()) l = g;
    Presentation phnn = build_phnn(ext.pile, rho);

    // witness search: a catalog-p4 hom of the presentation injective on the
    // G factor.  The fixed-point relators force lambda.rho = conj(sigma),
    // so scan (Q, sigma, conjugator) and solve for lambda.
    const GSet& space = *ext.pile.space;
    bool found = false;
    json witness;
    for (const auto& entry : cat) {
      if (found) break;
      GroupPtr q = entry.group;
      if (q->order() < g->order()) continue;
      for (const auto& sigma : gen.homs(g, q)) {
        if (found) break;
        if (!sigma.is_injective()) continue;
        for (Elem x0 = 0; x0 < q->order() && !found; ++x0) {
          // lambda on rho(G) is forced; build and check it extends
          std::vector<Elem> lmap(l->order(), -1);
          bool consistent = true;
          for (Elem e = 0; e < g->order() && consistent; ++e) {
            Elem lv = q->conj(sigma(e), q->inv(x0));  // x0 sigma(e) x0^-1
            Elem at = rho(e);
            if (lmap[at] < 0)
              lmap[at] = lv;
            else if (lmap[at] != lv)
              consistent = false;
          }
          if (!consistent) continue;
          std::vector<std::vector<Elem>> lambdas;
          if (std::none_of(lmap.begin(), lmap.end(),
                           [](Elem v) { return v < 0; })) {
            lambdas.push_back(lmap);
          } else {
            for (const auto& h : gen.homs(l, q)) {
              bool fits = true;
              for (Elem e = 0; e < l->order() && fits; ++e)
                if (lmap[e] >= 0 && h(e) != lmap[e]) fits = false;
              if (fits) lambdas.push_back(h.map());
            }
          }
          for (const auto& lam : lambdas) {
            // full letter assignment: propagate per orbit from identity reps
            std::vector<Elem> timg(space.size(), -1);
            timg[ext.base_points[0]] = x0;
            for (size_t r = 1; r < ext.base_points.size(); ++r)
              timg[ext.base_points[r]] = 0;
            for (size_t r = 0; r < ext.base_points.size(); ++r) {
              Point bp = ext.base_points[r];
              for (Elem e = 0; e < g->order(); ++e) {
                Point moved = space.act(bp, e);
                Elem val = q->mul(q->mul(q->inv(sigma(e)), timg[bp]),
                                  lam[rho(e)]);
                if (timg[moved] < 0) timg[moved] = val;
              }
            }
            // independent validation: lambda is a hom and all relators hold
            bool valid = true;
            for (Elem a = 0; a < l->order() && valid; ++a)
              for (Elem b = 0; b < l->order() && valid; ++b)
                if (lam[l->mul(a, b)] != q->mul(lam[a], lam[b])) valid = false;
            for (Point t = 0; t < space.size() && valid; ++t)
              for (Elem e = 0; e < g->order() && valid; ++e) {
                Elem lhs = q->mul(q->mul(q->inv(sigma(e)), timg[t]),
                                  lam[rho(e)]);
                if (lhs != timg[space.act(t, e)]) valid = false;
              }
            if (valid) {
              found = true;
              witness = json{{"target", entry.name},
                             {"sigma", sigma.map()},
                             {"lambda", lam},
                             {"letters", timg}};
              break;
            }
          }
        }
      }
    }
    rep.record("instance " + std::to_string(i), found,
               found ? witness
                     : json{{"pile", pile_to_json(ext.pile)},
                            {"rho", rho.map()}});
    (void)phnn;
  }
  return rep;
}

}  // namespace

Report run_ep_audit(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "ep-audit";
  rep.seed = opts.seed;
  rep.catalog = opts.catalog;
  rep.prime = opts.prime;
  Gen gen(opts.seed, opts.prime, opts.max_group);
  for (int i = 0; i < opts.count; ++i) {
    Pile g = gen.pile(gen.group(), opts.max_space);
    Pile b = gen.pile(gen.b_group(), 6);
    Subgroup k = gen.rigid_kernel(b);
    QuotientPile qa = quotient_pile(b, k);
    std::optional<PileMorphism> phi;
    for (int attempt = 0; attempt < 8 && !phi; ++attempt) {
      const auto& pool = gen.homs(g.group, qa.pile.group);
      if (pool.empty()) break;
      phi = gen.any_morphism(g, qa.pile, pool[gen.pick(pool.size())]);
    }
    if (!phi) {
      rep.skip("instance " + std::to_string(i),
               json{{"reason", "no morphism into the quotient"}});
      continue;
    }
    PileEmbeddingProblem ep(*phi, qa.projection);
    PileSolution sol = solve_pile_ep_bruteforce(ep);
    bool ok;
    json witness;
    if (sol.solution) {
      ok = raw_morphism_ok(g, b, sol.solution->group_map().map(),
                           sol.solution->space_map());
      for (Elem e = 0; e < g.group->order() && ok; ++e)
        if (qa.projection.on_elem(sol.solution->on_elem(e)) !=
            phi->on_elem(e))
          ok = false;
      for (Point t = 0; t < g.space->size() && ok; ++t)
        if (qa.projection.on_point(sol.solution->on_point(t)) !=
            phi->on_point(t))
          ok = false;
      if (!ok) witness = json{{"stage", "checker rejected solution"}};
    } else {
      // independent confirmation of exhaustion
      ok = true;
      for (const auto& gmap : indep_enum_homs(*g.group, *b.group)) {
        bool commutes = true;
        for (Elem e = 0; e < g.group->order() && commutes; ++e)
          if (qa.projection.on_elem(gmap[e]) != phi->on_elem(e))
            commutes = false;
        if (!commutes) continue;
        std::vector<Elem> psi_vec(gmap.begin(), gmap.end());
        if (indep_space_map_exists(g, b, psi_vec, *phi, qa.projection)) {
          ok = false;
          witness = json{{"stage", "independent enumeration found a solution"},
                         {"group_map", gmap}};
          break;
        }
      }
    }
    rep.record("instance " + std::to_string(i), ok, witness);
  }
  return rep;
}

Report run_single_instance(const std::string& name, const Pile& pile,
                           const GroupHom& rho, const SuiteOptions& opts) {
  Report rep;
  rep.suite = name;
  rep.seed = opts.seed;
  rep.catalog = opts.catalog;
  rep.prime = opts.prime;
  Gen gen(opts.seed, opts.prime, opts.max_group);
  auto cat = catalog_by_name(opts.catalog, opts.prime);

  if (name == "with-section") {
    auto orbs = pile.space->orbits();
    std::vector<StableLabel> stable;
    for (size_t i = 0; i < orbs.size(); ++i)
      stable.push_back({"t" + std::to_string(i),
                        Subgroup(pile.group, stab_of(*pile.space, orbs[i][0]))});
    Presentation hnnp =
        build_hnn_prime(pile.group, stable, rho, rho.target());
    Presentation phnn = build_phnn(pile, rho);
    int diff = first_profile_mismatch(hom_profile(hnnp, cat),
                                      hom_profile(phnn, cat));
    rep.record("with-section instance", diff < 0,
               diff < 0 ? json() : json{{"first_mismatch", cat[diff].name}});
  } else if (name == "hnn-kernel") {
    std::vector<StableLabel> stable;
    std::vector<Point> t0;
    for (Point t = 0; t < pile.space->size(); ++t) {
      stable.push_back({"t" + std::to_string(t),
                        Subgroup(pile.group, stab_of(*pile.space, t))});
      t0.push_back(t);
    }
    Presentation full =
        build_hnn_prime(pile.group, stable, rho, rho.target());
    Presentation phnn = build_phnn(pile, rho);
    auto words = hnn_to_phnn_kernel(pile, t0, rho);
    int diff = first_profile_mismatch(
        hom_profile(quotient_by_closure(full, words), cat),
        hom_profile(phnn, cat));
    rep.record("hnn-kernel instance", diff < 0,
               diff < 0 ? json() : json{{"first_mismatch", cat[diff].name}});
  } else if (name == "mod-l") {
    Presentation phnn = build_phnn(pile, rho);
    Presentation modl = mod_l_quotient(phnn, 1);
    std::vector<Elem> gens;
    for (Point t = 0; t < pile.space->size(); ++t)
      for (Elem e : stab_of(*pile.space, t)) gens.push_back(e);
    Quotient q =
        quotient_group(pile.group, normal_closure(pile.group, gens));
    const int orbits = static_cast<int>(pile.space->orbits().size());
    Presentation predicted = free_product(
        {presentation_of_group(q.group), free_letters_presentation(orbits)});
    int diff = first_profile_mismatch(hom_profile(modl, cat),
                                      hom_profile(predicted, cat));
    rep.record("mod-l instance", diff < 0,
               diff < 0 ? json() : json{{"first_mismatch", cat[diff].name}});
  } else if (name == "zeta-injective") {
    if (opts.prime != 2) {
      rep.skip("witness search", json{{"reason", "catalog p4 needs p = 2"}});
      return rep;
    }
    build_phnn(pile, rho);  // validates the rho precondition
    auto p4 = catalog_p4(2);
    const GSet& space = *pile.space;
    GroupPtr gG = pile.group;
    GroupPtr l = rho.target();
    auto orbs = space.orbits();
    bool found = false;
    json witness;
    for (const auto& entry : p4) {
      if (found) break;
      GroupPtr q = entry.group;
      if (q->order() < gG->order()) continue;
      for (const auto& sigma : gen.homs(gG, q)) {
        if (found) break;
        if (!sigma.is_injective()) continue;
        for (const auto& lamh : gen.homs(l, q)) {
          if (found) break;
          // assign orbit reps by DFS against the stabilizer constraints
          std::vector<Elem> timg(space.size(), -1);
          std::function<bool(size_t)> place = [&](size_t r) -> bool {
            if (r == orbs.size()) return true;
            Point rep_pt = orbs[r][0];
            for (Elem x = 0; x < q->order(); ++x) {
              bool ok = true;
              for (Elem e : stab_of(space, rep_pt))
                if (q->mul(q->mul(q->inv(sigma(e)), x), lamh(rho(e))) != x) {
                  ok = false;
                  break;
                }
              if (!ok) continue;
              timg[rep_pt] = x;
              for (Elem e = 0; e < gG->order(); ++e) {
                Point moved = space.act(rep_pt, e);
                if (timg[moved] < 0)
                  timg[moved] =
                      q->mul(q->mul(q->inv(sigma(e)), x), lamh(rho(e)));
              }
              bool valid = true;
              for (Point t = 0; t < space.size() && valid; ++t) {
                if (timg[t] < 0) continue;
                for (Elem e = 0; e < gG->order() && valid; ++e) {
                  Point mv = space.act(t, e);
                  if (timg[mv] < 0) continue;
                  if (q->mul(q->mul(q->inv(sigma(e)), timg[t]),
                             lamh(rho(e))) != timg[mv])
                    valid = false;
                }
              }
              if (valid && place(r + 1)) return true;
              for (Point t : orbs[r]) timg[t] = -1;
            }
            return false;
          };
          if (place(0)) {
            found = true;
            witness = json{{"target", entry.name},
                           {"sigma", sigma.map()},
                           {"lambda", lamh.map()},
                           {"letters", timg}};
          }
        }
      }
    }
    rep.record("zeta witness", found, witness);
  } else {
    throw Error("UnknownSuite",
                {{"suite", name}, {"reason", "no single-instance mode"}});
  }
  return rep;
}

Report run_suite(const std::string& name, const SuiteOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  if (name == "stab")
    rep = suite_stab(opts);
  else if (name == "g-partition")
    rep = suite_g_partition(opts);
  else if (name == "cartesian-rigid")
    rep = suite_cartesian_rigid(opts);
  else if (name == "completion")
    rep = suite_completion(opts);
  else if (name == "basic-ep")
    rep = suite_basic_ep(opts);
  else if (name == "with-section")
    rep = suite_with_section(opts);
  else if (name == "hnn-kernel")
    rep = suite_hnn_kernel(opts);
  else if (name == "mod-l")
    rep = suite_mod_l(opts);
  else if (name == "section")
    rep = suite_section(opts);
  else if (name == "pile-hnn-structure")
    rep = suite_pile_hnn_structure(opts);
  else if (name == "zeta-injective")
    rep = suite_zeta_injective(opts);
  else
    throw Error("UnknownSuite", {{"suite", name}});
  rep.seed = opts.seed;
  rep.catalog = opts.catalog;
  rep.prime = opts.prime;
  if (opts.timestamp) {
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
            t1 - t0)
            .count();
  }
  return rep;
}

}  // namespace pilekit
