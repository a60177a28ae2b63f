#include "pilekit/embedding.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pilekit {

namespace {

std::vector<Elem> stab_members(const GSet& s, Point t) {
  std::vector<Elem> mem;
  for (Elem g = 0; g < s.group()->order(); ++g)
    if (s.act(t, g) == t) mem.push_back(g);
  return mem;
}

std::vector<Elem> map_members(const GroupHom& h, const std::vector<Elem>& mem) {
  std::vector<Elem> im;
  im.reserve(mem.size());
  for (Elem e : mem) im.push_back(h(e));
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

bool subset_of(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

PairEmbeddingProblem::PairEmbeddingProblem(
    GroupPtr g, std::vector<Subgroup> family, GroupHom phi, GroupHom alpha,
    std::vector<Subgroup> family_b, std::vector<Subgroup> family_a)
    : g_(std::move(g)),
      family_(std::move(family)),
      phi_(std::move(phi)),
      alpha_(std::move(alpha)),
      family_b_(std::move(family_b)),
      family_a_(std::move(family_a)) {
  if (!same_table(*phi_.source(), *g_))
    throw Error("MismatchedTarget", {{"reason", "phi source"}});
  if (!same_table(*phi_.target(), *alpha_.target()))
    throw Error("MismatchedTarget", {{"reason", "shared target"}});
  if (!alpha_.is_surjective())
    throw Error("NotSurjectiveOnGroups", {{"reason", "alpha must be epi"}});
  for (const auto& s : family_)
    if (!same_table(*s.parent(), *g_))
      throw Error("MismatchedTarget", {{"reason", "family parent"}});
  for (const auto& s : family_b_)
    if (!same_table(*s.parent(), *alpha_.source()))
      throw Error("MismatchedTarget", {{"reason", "familyB parent"}});
  for (const auto& s : family_a_)
    if (!same_table(*s.parent(), *alpha_.target()))
      throw Error("MismatchedTarget", {{"reason", "familyA parent"}});

  for (size_t i = 0; i < family_.size(); ++i) {
    auto im = map_members(phi_, family_[i].members());
    bool carried = false;
    for (const auto& da : family_a_)
      if (subset_of(im, da.members())) {
        carried = true;
        break;
      }
    if (!carried)
      throw Error("InvalidProblem",
                  {{"reason", "phi does not carry family"}, {"index", i}});
  }

  // local lifts: for every family member a homomorphism into some familyB
  // member commuting with alpha (exhaustive search, part of the problem
  // definition)
  for (size_t i = 0; i < family_.size(); ++i) {
    auto gamma_grp = subgroup_as_group(family_[i]);
    bool found = false;
    for (const auto& db : family_b_) {
      auto delta_grp = subgroup_as_group(db);
      for (const auto& h : enumerate_homs(gamma_grp.group, delta_grp.group)) {
        bool commutes = true;
        for (Elem e = 0; e < gamma_grp.group->order() && commutes; ++e) {
          Elem up = delta_grp.to_parent[h(e)];
          if (alpha_(up) != phi_(gamma_grp.to_parent[e])) commutes = false;
        }
        if (commutes) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found)
      throw Error("InvalidProblem",
                  {{"reason", "no local lift"}, {"index", i}});
  }
}

PairSolution solve_pair_ep(const PairEmbeddingProblem& ep) {
  PairSolution out;
  auto b = ep.alpha().source();
  for (const auto& gamma : enumerate_homs(ep.g(), b)) {
    ++out.candidates_examined;
    bool ok = true;
    for (Elem e = 0; e < ep.g()->order() && ok; ++e)
      if (ep.alpha()(gamma(e)) != ep.phi()(e)) ok = false;
    for (const auto& sub : ep.family()) {
      if (!ok) break;
      auto im = map_members(gamma, sub.members());
      bool inside = false;
      for (const auto& db : ep.family_b())
        if (subset_of(im, db.members())) {
          inside = true;
          break;
        }
      if (!inside) ok = false;
    }
    if (ok) {
      out.solution = gamma;
      return out;
    }
  }
  return out;
}

int completion_floor(const Partition& p) {
  return stabilizer_aligned_g_partition(p).partition.block_count();
}

CompletionResult complete_to_pile_morphism(const GroupHom& psi,
                                           const Pile& source,
                                           const Pile& target,
                                           const PileMorphism& phi,
                                           const PileMorphism& alpha,
                                           const CompletionConfig& cfg) {
  if (!same_table(*psi.source(), *source.group) ||
      !same_table(*psi.target(), *target.group))
    throw Error("MismatchedTarget", {{"reason", "psi endpoints"}});
  if (!same_pile(phi.source(), source) || !same_pile(alpha.source(), target) ||
      !same_pile(phi.target(), alpha.target()))
    throw Error("MismatchedTarget", {{"reason", "square endpoints"}});
  for (Elem e = 0; e < source.group->order(); ++e)
    if (alpha.on_elem(psi(e)) != phi.on_elem(e))
      throw Error("InvalidProblem",
                  {{"reason", "alpha.psi != phi on groups"}, {"element", e}});

  const GSet& t = *source.space;
  const GSet& y = *target.space;

  std::vector<std::vector<Elem>> psi_stab(t.size());
  for (Point p = 0; p < t.size(); ++p)
    psi_stab[p] = map_members(psi, stab_members(t, p));
  std::vector<std::vector<Elem>> y_stab(y.size());
  for (Point p = 0; p < y.size(); ++p) y_stab[p] = stab_members(y, p);

  auto witness_ok = [&](Point pt, Point w) {
    return alpha.on_point(w) == phi.on_point(pt) &&
           subset_of(psi_stab[pt], y_stab[w]);
  };

  // the iff condition, pointwise; report the smallest violating point
  for (Point p = 0; p < t.size(); ++p) {
    bool any = false;
    for (Point w = 0; w < y.size() && !any; ++w) any = witness_ok(p, w);
    if (!any) return CompletionResult{std::nullopt, p, false};
  }

  std::vector<Point> space_map(t.size(), -1);

  if (cfg.target_partition) {
    const Partition& goal = *cfg.target_partition;
    // fold in phi's point fibers so blocks have constant phi
    std::map<Point, std::vector<Point>> fib;
    for (Point p = 0; p < t.size(); ++p) fib[phi.on_point(p)].push_back(p);
    std::vector<std::vector<Point>> fblocks;
    for (auto& [k, v] : fib) fblocks.push_back(std::move(v));
    Partition phi_fibers(source.space, std::move(fblocks));
    AlignedPartition aligned = stabilizer_aligned_g_partition(
        common_refinement(goal, phi_fibers));
    const Partition& q = aligned.partition;
    if (cfg.multiplicity_floor < q.block_count())
      throw Error("InvalidProblem",
                  {{"reason", "multiplicity floor below part count"},
                   {"floor", cfg.multiplicity_floor},
                   {"parts", q.block_count()}});

    // floor: every stabilizer class of Y has at least `floor` points
    std::map<std::vector<Elem>, int> stab_count;
    for (Point w = 0; w < y.size(); ++w) ++stab_count[y_stab[w]];
    bool floor_met = true;
    for (const auto& [k, c] : stab_count)
      if (c < cfg.multiplicity_floor) floor_met = false;

    if (floor_met && q.block_count() > 0) {
      auto y_orbit = y.orbit_index();
      std::set<int> used_orbits;
      // orbits of blocks under the induced action
      const int nb = q.block_count();
      std::vector<int> block_orbit(nb, -1);
      std::vector<std::vector<std::pair<int, Elem>>> orbit_members(nb);
      int norb = 0;
      for (int b = 0; b < nb; ++b) {
        if (block_orbit[b] >= 0) continue;
        int id = norb++;
        for (Elem g = 0; g < source.group->order(); ++g) {
          int img = q.block_of(t.act(q.blocks()[b][0], g));
          if (block_orbit[img] < 0) {
            block_orbit[img] = id;
            orbit_members[id].emplace_back(img, g);
          }
        }
      }
      std::vector<Point> block_img(nb, -1);
      bool refinable = true;
      for (int id = 0; id < norb && refinable; ++id) {
        const int rep = orbit_members[id][0].first;
        const Point wt = aligned.witnesses[rep];
        // exact witness: alpha(y) = phi(block), psi(Stab(T_rep)) realized
        // exactly inside psi(G)
        Point chosen = -1;
        for (Point w = 0; w < y.size(); ++w) {
          if (!witness_ok(wt, w)) continue;
          if (used_orbits.count(y_orbit[w])) continue;
          // B_w meets psi(G) in exactly psi(G_wt)
          bool exact = true;
          for (Elem bw : y_stab[w]) {
            bool in_psi_g = false;
            for (Elem e = 0; e < source.group->order() && !in_psi_g; ++e)
              if (psi(e) == bw) in_psi_g = true;
            if (in_psi_g &&
                !std::binary_search(psi_stab[wt].begin(), psi_stab[wt].end(),
                                    bw)) {
              exact = false;
              break;
            }
          }
          if (exact) {
            chosen = w;
            break;
          }
        }
        if (chosen < 0) {
          refinable = false;
          break;
        }
        used_orbits.insert(y_orbit[chosen]);
        for (const auto& [blk, g] : orbit_members[id])
          block_img[blk] = y.act(chosen, psi(g));
      }
      if (refinable)
        for (Point p = 0; p < t.size(); ++p) space_map[p] = block_img[q.block_of(p)];
    }
  }

  bool assigned = t.size() == 0 ||
                  std::all_of(space_map.begin(), space_map.end(),
                              [](Point v) { return v >= 0; });
  if (!assigned) {
    std::fill(space_map.begin(), space_map.end(), -1);
    auto orbit_idx = t.orbit_index();
    int norb = 0;
    for (int v : orbit_idx) norb = std::max(norb, v + 1);
    std::vector<Point> rep(norb, -1);
    for (Point p = 0; p < t.size(); ++p)
      if (rep[orbit_idx[p]] < 0) rep[orbit_idx[p]] = p;
    for (int o = 0; o < norb; ++o) {
      Point chosen = -1;
      for (Point w = 0; w < y.size(); ++w)
        if (witness_ok(rep[o], w)) {
          chosen = w;
          break;
        }
      // existence was established pointwise above
      for (Elem g = 0; g < source.group->order(); ++g) {
        Point moved = t.act(rep[o], g);
        if (space_map[moved] < 0) space_map[moved] = y.act(chosen, psi(g));
      }
    }
  }

  PileMorphism m(source, target, psi, space_map);
  for (Point p = 0; p < t.size(); ++p)
    if (alpha.on_point(m.on_point(p)) != phi.on_point(p))
      throw Error("InternalInvariant", {{"reason", "completion commutation"}});

  CompletionResult out;
  out.refined = false;
  if (cfg.target_partition && t.size() > 0) {
    std::map<Point, std::vector<Point>> fib;
    for (Point p = 0; p < t.size(); ++p) fib[m.on_point(p)].push_back(p);
    std::vector<std::vector<Point>> fblocks;
    for (auto& [k, v] : fib) fblocks.push_back(std::move(v));
    Partition fibers(source.space, std::move(fblocks));
    out.refined = refines(fibers, *cfg.target_partition);
  } else if (cfg.target_partition) {
    out.refined = true;
  }
  out.morphism = std::move(m);
  return out;
}

PileEmbeddingProblem::PileEmbeddingProblem(PileMorphism phi,
                                           PileMorphism alpha)
    : phi_(std::move(phi)), alpha_(std::move(alpha)), cert_{} {
  if (!same_pile(phi_.target(), alpha_.target()))
    throw Error("MismatchedTarget", {{"reason", "shared target"}});
  auto rigid = check_rigid(alpha_);
  if (!rigid.ok())
    throw Error(rigid.failure->code, rigid.failure->detail);
  cert_ = std::move(*rigid.value);
}

PileSolution solve_pile_ep_bruteforce(const PileEmbeddingProblem& ep) {
  PileSolution out;
  const Pile& g = ep.phi().source();
  const Pile& b = ep.alpha().source();
  for (const auto& psi : enumerate_homs(g.group, b.group)) {
    ++out.candidates_examined;
    bool commutes = true;
    for (Elem e = 0; e < g.group->order() && commutes; ++e)
      if (ep.alpha().on_elem(psi(e)) != ep.phi().on_elem(e)) commutes = false;
    if (!commutes) continue;
    auto res = complete_to_pile_morphism(psi, g, b, ep.phi(), ep.alpha());
    if (res.morphism) {
      out.solution = std::move(res.morphism);
      return out;
    }
  }
  return out;
}

BasicPile::BasicPile(std::vector<std::pair<std::string, GroupPtr>> f, int rank,
                     int p)
    : factors(std::move(f)), free_rank(rank), prime(p) {
  if (rank < 0) throw Error("InvalidProblem", {{"reason", "free rank"}});
  for (const auto& [label, grp] : factors)
    if (!grp->is_p_group(p))
      throw Error("InvalidProblem",
                  {{"reason", "factor is not a p-group"}, {"label", label}});
}

BasicSolution solve_basic_pile_ep(const BasicPile& g, const BasicPhi& phi,
                                  const Pile& a, const PileMorphism& alpha,
                                  const RigidCertificate& cert) {
  (void)cert;  // rigidity is what makes the inversion below total
  if (!same_pile(alpha.target(), a))
    throw Error("InvalidProblem", {{"reason", "alpha target"}});
  if (phi.factor_homs.size() != g.factors.size() ||
      phi.label_points.size() != g.factors.size() ||
      static_cast<int>(phi.free_images.size()) != g.free_rank)
    throw Error("InvalidProblem", {{"reason", "phi data sizes"}});

  const Pile& b = alpha.source();
  BasicSolution out;

  for (size_t i = 0; i < g.factors.size(); ++i) {
    const GroupHom& fh = phi.factor_homs[i];
    if (!same_table(*fh.source(), *g.factors[i].second) ||
        !same_table(*fh.target(), *a.group))
      throw Error("InvalidProblem",
                  {{"reason", "factor hom endpoints"}, {"index", i}});
    Point x = phi.label_points[i];
    if (x < 0 || x >= a.space->size())
      throw Error("InvalidProblem", {{"reason", "label point"}, {"index", i}});
    auto ax = stab_members(*a.space, x);
    for (Elem e = 0; e < fh.source()->order(); ++e)
      if (!std::binary_search(ax.begin(), ax.end(), fh(e)))
        throw Error("InvalidProblem",
                    {{"reason", "factor image not in point stabilizer"},
                     {"index", i}});

    Point chosen = -1;
    for (Point w = 0; w < b.space->size(); ++w)
      if (alpha.on_point(w) == x) {
        chosen = w;
        break;
      }
    if (chosen < 0)
      throw Error("InvalidProblem", {{"reason", "alpha not onto points"}});

    // invert alpha on the witness stabilizer (an isomorphism onto A_x)
    auto by = stab_members(*b.space, chosen);
    std::vector<Elem> inverse(a.group->order(), -1);
    for (Elem s : by) inverse[alpha.on_elem(s)] = s;
    std::vector<Elem> gmap(fh.source()->order());
    for (Elem e = 0; e < fh.source()->order(); ++e) {
      Elem v = inverse[fh(e)];
      if (v < 0)
        throw Error("InvalidProblem",
                    {{"reason", "alpha not rigid at witness"}, {"point", chosen}});
      gmap[e] = v;
    }
    out.factor_homs.emplace_back(fh.source(), b.group, std::move(gmap));
    out.label_points.push_back(chosen);
  }

  for (int j = 0; j < g.free_rank; ++j) {
    Elem v = phi.free_images[j];
    if (v < 0 || v >= a.group->order())
      throw Error("InvalidProblem", {{"reason", "free image"}, {"index", j}});
    Elem pre = -1;
    for (Elem e = 0; e < b.group->order(); ++e)
      if (alpha.on_elem(e) == v) {
        pre = e;
        break;
      }
    if (pre < 0)
      throw Error("InvalidProblem", {{"reason", "alpha not onto group"}});
    out.free_images.push_back(pre);
  }
  return out;
}

TransferredProblem quotient_ep_transfer(const PileEmbeddingProblem& ep,
                                        const Subgroup& n) {
  const Pile& src = ep.phi().source();
  Subgroup tilde = tilde_closure(src, n);
  QuotientPile qp = quotient_pile(src, tilde);
  PileMorphism factored = [&]() {
    try {
      return connect(ep.phi(), qp.projection);
    } catch (const Error& e) {
      throw Error("DoesNotFactor",
                  {{"reason", "phi does not kill the tilde closure"},
                   {"inner", e.code()},
                   {"detail", e.detail()}});
    }
  }();
  return TransferredProblem{qp.pile, std::move(qp.projection),
                            std::move(factored)};
}

}  // namespace pilekit
