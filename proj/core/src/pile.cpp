#include "pilekit/pile.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pilekit {

bool same_pile(const Pile& a, const Pile& b) {
  if (!same_table(*a.group, *b.group)) return false;
  if (a.space->size() != b.space->size()) return false;
  for (Point t = 0; t < a.space->size(); ++t)
    for (Elem g = 0; g < a.group->order(); ++g)
      if (a.space->act(t, g) != b.space->act(t, g)) return false;
  return true;
}

PileMorphism::PileMorphism(Pile source, Pile target, GroupHom group_map,
                           std::vector<Point> space_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      group_map_(std::move(group_map)),
      space_map_(std::move(space_map)) {
  if (!same_table(*group_map_.source(), *source_.group) ||
      !same_table(*group_map_.target(), *target_.group))
    throw Error("MismatchedTarget", {{"reason", "group map endpoints"}});
  if (static_cast<int>(space_map_.size()) != source_.space->size())
    throw Error("IndexOutOfRange", {{"reason", "space map size"}});
  for (Point x : space_map_)
    if (x < 0 || x >= target_.space->size())
      throw Error("IndexOutOfRange", {{"point", x}});
  for (Point t = 0; t < source_.space->size(); ++t)
    for (Elem b = 0; b < source_.group->order(); ++b)
      if (space_map_[source_.space->act(t, b)] !=
          target_.space->act(space_map_[t], group_map_(b)))
        throw Error("NotEquivariant", {{"point", t}, {"element", b}});
}

PileMorphism PileMorphism::identity(const Pile& p) {
  std::vector<Point> sm(p.space->size());
  std::iota(sm.begin(), sm.end(), 0);
  return PileMorphism(p, p, GroupHom::identity(p.group), std::move(sm));
}

Checked<PileMorphism> check_morphism(const Pile& source, const Pile& target,
                                     const GroupHom& group_map,
                                     const std::vector<Point>& space_map) {
  try {
    return Checked<PileMorphism>::pass(
        PileMorphism(source, target, group_map, space_map));
  } catch (const Error& e) {
    return Checked<PileMorphism>::fail(e.code(), e.detail());
  }
}

namespace {

std::vector<Elem> stabilizer_members(const GSet& s, Point t) {
  std::vector<Elem> mem;
  for (Elem g = 0; g < s.group()->order(); ++g)
    if (s.act(t, g) == t) mem.push_back(g);
  return mem;
}

std::vector<Elem> image_of_members(const GroupHom& h,
                                   const std::vector<Elem>& mem) {
  std::vector<Elem> im;
  im.reserve(mem.size());
  for (Elem e : mem) im.push_back(h(e));
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

}  // namespace

Checked<EpiCertificate> check_epi(const PileMorphism& m) {
  if (!m.group_map().is_surjective())
    return Checked<EpiCertificate>::fail("NotSurjectiveOnGroups",
                                         json::object());
  const GSet& y = *m.source().space;
  const GSet& x = *m.target().space;
  std::vector<bool> hit(x.size(), false);
  for (Point t = 0; t < y.size(); ++t) hit[m.on_point(t)] = true;
  for (Point p = 0; p < x.size(); ++p)
    if (!hit[p])
      return Checked<EpiCertificate>::fail("NotSurjectiveOnPoints",
                                           {{"point", p}});
  EpiCertificate cert;
  cert.witness.assign(x.size(), -1);
  for (Point p = 0; p < x.size(); ++p) {
    auto target_stab = stabilizer_members(x, p);
    for (Point t = 0; t < y.size(); ++t) {
      if (m.on_point(t) != p) continue;
      if (image_of_members(m.group_map(), stabilizer_members(y, t)) ==
          target_stab) {
        cert.witness[p] = t;
        break;
      }
    }
    if (cert.witness[p] < 0)
      return Checked<EpiCertificate>::fail("NoStabilizerWitness",
                                           {{"point", p}});
  }
  return Checked<EpiCertificate>::pass(std::move(cert));
}

Checked<RigidCertificate> check_rigid(const PileMorphism& m,
                                      const EpiCertificate& epi) {
  const GSet& y = *m.source().space;
  const GSet& x = *m.target().space;
  for (Point t = 0; t < y.size(); ++t) {
    auto stab = stabilizer_members(y, t);
    std::set<Elem> images;
    for (Elem e : stab) {
      if (e != 0 && m.on_elem(e) == 0)
        return Checked<RigidCertificate>::fail("StabilizerNotInjective",
                                               {{"point", t}, {"element", e}});
      images.insert(m.on_elem(e));
    }
    auto target_stab = stabilizer_members(x, m.on_point(t));
    if (images.size() != target_stab.size())
      return Checked<RigidCertificate>::fail("StabilizerNotOnto",
                                             {{"point", t}});
  }
  auto src_orbits = y.orbit_index();
  auto tgt_orbits = x.orbit_index();
  int n_src = 0;
  for (int v : src_orbits) n_src = std::max(n_src, v + 1);
  std::vector<int> induced(n_src, -1);
  for (Point t = 0; t < y.size(); ++t) {
    int so = src_orbits[t];
    if (induced[so] == -1) induced[so] = tgt_orbits[m.on_point(t)];
  }
  std::map<int, int> preimage;
  for (int so = 0; so < n_src; ++so) {
    auto [it, fresh] = preimage.emplace(induced[so], so);
    if (!fresh)
      return Checked<RigidCertificate>::fail(
          "OrbitMapNotInjective",
          {{"orbit_a", it->second}, {"orbit_b", so}});
  }
  RigidCertificate cert;
  cert.epi = epi;
  for (int so = 0; so < n_src; ++so)
    cert.orbit_bijection.emplace_back(so, induced[so]);
  return Checked<RigidCertificate>::pass(std::move(cert));
}

Checked<RigidCertificate> check_rigid(const PileMorphism& m) {
  auto epi = check_epi(m);
  if (!epi.ok())
    return Checked<RigidCertificate>::fail(epi.failure->code,
                                           epi.failure->detail);
  return check_rigid(m, *epi.value);
}

StandardExtension standard_extension(
    GroupPtr g, const std::vector<std::pair<std::string, Subgroup>>& reps) {
  const int n = g->order();
  struct OrbitData {
    std::vector<int> coset_of;      // group element -> coset id
    std::vector<Elem> coset_rep;    // coset id -> representative
    int offset = 0;
  };
  std::vector<OrbitData> orbits;
  int total = 0;
  for (const auto& [label, sub] : reps) {
    if (!same_table(*sub.parent(), *g))
      throw Error("MismatchedTarget", {{"reason", "subgroup of other group"}});
    OrbitData od;
    od.coset_of.assign(n, -1);
    for (Elem e = 0; e < n; ++e) {
      if (od.coset_of[e] >= 0) continue;
      int id = static_cast<int>(od.coset_rep.size());
      od.coset_rep.push_back(e);
      for (Elem m : sub.members()) od.coset_of[g->mul(m, e)] = id;
    }
    od.offset = total;
    total += static_cast<int>(od.coset_rep.size());
    orbits.push_back(std::move(od));
  }
  std::vector<std::vector<int>> action(total, std::vector<int>(n));
  for (size_t i = 0; i < orbits.size(); ++i) {
    const auto& od = orbits[i];
    for (int c = 0; c < static_cast<int>(od.coset_rep.size()); ++c)
      for (Elem s = 0; s < n; ++s)
        action[od.offset + c][s] =
            od.offset + od.coset_of[g->mul(od.coset_rep[c], s)];
  }
  StandardExtension out{Pile(g, GSet::validate(g, action)), {}, {}};
  for (size_t i = 0; i < orbits.size(); ++i) {
    out.base_points.push_back(orbits[i].offset);  // coset of identity
    out.labels.push_back(reps[i].first);
  }
  return out;
}

QuotientPile quotient_pile(const Pile& p, const Subgroup& n) {
  if (!n.is_normal()) throw Error("NotNormal", json::object());
  Quotient q = quotient_group(p.group, n);
  const GSet& t = *p.space;
  std::vector<int> cls(t.size(), -1);
  int k = 0;
  for (Point a = 0; a < t.size(); ++a) {
    if (cls[a] >= 0) continue;
    for (Elem m : n.members()) cls[t.act(a, m)] = k;
    ++k;
  }
  std::vector<Point> rep(k, -1);
  for (Point a = t.size() - 1; a >= 0; --a) rep[cls[a]] = a;
  std::vector<std::vector<int>> action(k, std::vector<int>(q.group->order()));
  // class(rep^g) is independent of the choices since n is normal
  std::vector<Elem> coset_rep(q.group->order(), -1);
  for (Elem e = p.group->order() - 1; e >= 0; --e)
    coset_rep[q.projection(e)] = e;
  for (int c = 0; c < k; ++c)
    for (Elem e = 0; e < q.group->order(); ++e)
      action[c][e] = cls[t.act(rep[c], coset_rep[e])];
  Pile qp(q.group, GSet::validate(q.group, action));
  PileMorphism proj(p, qp, q.projection, cls);
  return QuotientPile{qp, std::move(proj)};
}

Subgroup tilde_closure(const Pile& p, const Subgroup& n) {
  if (!n.is_normal()) throw Error("NotNormal", json::object());
  std::vector<Elem> gens;
  for (Point t = 0; t < p.space->size(); ++t)
    for (Elem e : stabilizer_members(*p.space, t))
      if (n.contains(e)) gens.push_back(e);
  return normal_closure(p.group, gens);
}

FiberProduct fiber_product(const PileMorphism& alpha,
                           const PileMorphism& phi0) {
  if (!same_pile(alpha.target(), phi0.target()))
    throw Error("MismatchedTarget", json::object());
  const auto& b = *alpha.source().group;
  const auto& ah = *phi0.source().group;

  std::vector<std::pair<Elem, Elem>> elems;
  std::map<std::pair<Elem, Elem>, int> eidx;
  for (Elem x = 0; x < b.order(); ++x)
    for (Elem y = 0; y < ah.order(); ++y)
      if (alpha.on_elem(x) == phi0.on_elem(y)) {
        eidx[{x, y}] = static_cast<int>(elems.size());
        elems.emplace_back(x, y);
      }
  const int ord = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(ord, std::vector<int>(ord));
  for (int i = 0; i < ord; ++i)
    for (int j = 0; j < ord; ++j)
      table[i][j] = eidx.at({b.mul(elems[i].first, elems[j].first),
                             ah.mul(elems[i].second, elems[j].second)});
  GroupPtr fg = FiniteGroup::validate(table);

  const GSet& ys = *alpha.source().space;
  const GSet& xs = *phi0.source().space;
  std::vector<std::pair<Point, Point>> pts;
  std::map<std::pair<Point, Point>, int> pidx;
  for (Point y = 0; y < ys.size(); ++y)
    for (Point x = 0; x < xs.size(); ++x)
      if (alpha.on_point(y) == phi0.on_point(x)) {
        pidx[{y, x}] = static_cast<int>(pts.size());
        pts.emplace_back(y, x);
      }
  std::vector<std::vector<int>> action(pts.size(), std::vector<int>(ord));
  for (size_t p = 0; p < pts.size(); ++p)
    for (int e = 0; e < ord; ++e)
      action[p][e] = pidx.at({ys.act(pts[p].first, elems[e].first),
                              xs.act(pts[p].second, elems[e].second)});
  Pile fp(fg, GSet::validate(fg, action));

  std::vector<Elem> gm1(ord), gm2(ord);
  for (int e = 0; e < ord; ++e) {
    gm1[e] = elems[e].first;
    gm2[e] = elems[e].second;
  }
  std::vector<Point> sm1(pts.size()), sm2(pts.size());
  for (size_t p = 0; p < pts.size(); ++p) {
    sm1[p] = pts[p].first;
    sm2[p] = pts[p].second;
  }
  PileMorphism to_first(fp, alpha.source(),
                        GroupHom(fg, alpha.source().group, gm1), sm1);
  PileMorphism to_second(fp, phi0.source(),
                         GroupHom(fg, phi0.source().group, gm2), sm2);
  return FiberProduct{fp, std::move(to_first), std::move(to_second)};
}

PileMorphism connect(const PileMorphism& phi, const PileMorphism& psi) {
  if (!same_pile(phi.source(), psi.source()))
    throw Error("MismatchedTarget", {{"reason", "sources differ"}});
  if (!psi.group_map().is_surjective())
    throw Error("NotSurjectiveOnGroups", {{"reason", "psi must be epi"}});
  const auto& g = *phi.source().group;
  const GSet& t = *phi.source().space;
  const int border = psi.target().group->order();

  for (Elem e = 0; e < g.order(); ++e)
    if (psi.on_elem(e) == 0 && phi.on_elem(e) != 0)
      throw Error("KernelNotContained", {{"element", e}});

  std::vector<Elem> gm(border, -1);
  for (Elem e = 0; e < g.order(); ++e)
    if (gm[psi.on_elem(e)] < 0) gm[psi.on_elem(e)] = phi.on_elem(e);

  std::vector<Point> sm(psi.target().space->size(), -1);
  std::vector<Point> fiber_first(psi.target().space->size(), -1);
  for (Point p = 0; p < t.size(); ++p) {
    Point y = psi.on_point(p);
    if (sm[y] < 0) {
      sm[y] = phi.on_point(p);
      fiber_first[y] = p;
    } else if (sm[y] != phi.on_point(p)) {
      throw Error("FibersNotFiner",
                  {{"point_a", fiber_first[y]}, {"point_b", p}});
    }
  }
  for (Point y = 0; y < psi.target().space->size(); ++y)
    if (sm[y] < 0)
      throw Error("NotSurjectiveOnPoints", {{"reason", "psi must be epi"}});

  return PileMorphism(psi.target(), phi.target(),
                      GroupHom(psi.target().group, phi.target().group, gm),
                      std::move(sm));
}

Decomposition decompose(const PileMorphism& phi, const Subgroup& n0,
                        const Partition& x) {
  if (!n0.is_normal()) throw Error("NotNormal", json::object());
  const Pile& src = phi.source();
  const auto& g = *src.group;

  // phi's point fibers as a partition
  std::map<Point, std::vector<Point>> fib;
  for (Point t = 0; t < src.space->size(); ++t)
    fib[phi.on_point(t)].push_back(t);
  std::vector<std::vector<Point>> fblocks;
  for (auto& [k, v] : fib) fblocks.push_back(std::move(v));
  Partition phi_fibers(src.space, std::move(fblocks));

  AlignedPartition aligned =
      stabilizer_aligned_g_partition(common_refinement(x, phi_fibers));
  const Partition& yp = aligned.partition;

  // kernel of the action on the blocks
  std::vector<Elem> kact;
  for (Elem e = 0; e < g.order(); ++e) {
    bool fixes = true;
    for (Point t = 0; t < src.space->size() && fixes; ++t)
      if (yp.block_of(src.space->act(t, e)) != yp.block_of(t)) fixes = false;
    if (fixes) kact.push_back(e);
  }
  Subgroup n = intersect(intersect(n0, phi.group_map().kernel()),
                         Subgroup(src.group, kact));

  Quotient q = quotient_group(src.group, n);
  std::vector<std::vector<int>> action(yp.block_count(),
                                       std::vector<int>(q.group->order()));
  std::vector<Elem> coset_rep(q.group->order(), -1);
  for (Elem e = g.order() - 1; e >= 0; --e) coset_rep[q.projection(e)] = e;
  for (int blk = 0; blk < yp.block_count(); ++blk)
    for (Elem e = 0; e < q.group->order(); ++e)
      action[blk][e] =
          yp.block_of(src.space->act(yp.blocks()[blk][0], coset_rep[e]));
  Pile through(q.group, GSet::validate(q.group, action));

  std::vector<Point> sm(src.space->size());
  for (Point t = 0; t < src.space->size(); ++t) sm[t] = yp.block_of(t);
  PileMorphism psi(src, through, q.projection, std::move(sm));
  PileMorphism alpha = connect(phi, psi);
  return Decomposition{through, std::move(psi), std::move(alpha)};
}

FiberSeparation separate_fibers(const PileMorphism& phi) {
  const Pile& src = phi.source();
  const GSet& t = *src.space;
  const auto& g = *src.group;

  std::vector<std::vector<Elem>> stab(t.size());
  for (Point p = 0; p < t.size(); ++p) stab[p] = stabilizer_members(t, p);
  for (Point a = 0; a < t.size(); ++a)
    for (Point b = a + 1; b < t.size(); ++b) {
      std::vector<Elem> meet;
      std::set_intersection(stab[a].begin(), stab[a].end(), stab[b].begin(),
                            stab[b].end(), std::back_inserter(meet));
      if (meet.size() > 1)
        throw Error("StabilizersNotDisjoint", {{"point_a", a}, {"point_b", b}});
    }

  const Subgroup kphi = phi.group_map().kernel();
  auto product_set = [&](const std::vector<Elem>& a,
                         const std::vector<Elem>& b) {
    std::vector<bool> in(g.order(), false);
    for (Elem x : a)
      for (Elem y : b) in[g.mul(x, y)] = true;
    return in;
  };

  auto candidates = all_normal_subgroups(src.group);
  std::sort(candidates.begin(), candidates.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.order() != b.order()) return a.order() > b.order();
              return a.members() < b.members();
            });
  for (const auto& n : candidates) {
    bool ok = true;
    std::vector<std::vector<bool>> prods(t.size());
    for (Point p = 0; p < t.size(); ++p)
      prods[p] = product_set(stab[p], n.members());
    for (Point a = 0; a < t.size() && ok; ++a)
      for (Point b = 0; b < t.size() && ok; ++b) {
        if (phi.on_point(a) == phi.on_point(b)) continue;
        for (Elem e = 0; e < g.order() && ok; ++e)
          if (prods[a][e] && prods[b][e] && !kphi.contains(e)) ok = false;
      }
    if (!ok) continue;
    Decomposition d = decompose(phi, n, Partition::one_block(src.space));
    // verify the separation property on the factorization
    const GSet& xhat = *d.through.space;
    std::vector<std::vector<Elem>> hstab(xhat.size());
    for (Point p = 0; p < xhat.size(); ++p)
      hstab[p] = stabilizer_members(xhat, p);
    Subgroup k0 = d.alpha.group_map().kernel();
    for (Point a = 0; a < xhat.size(); ++a)
      for (Point b = 0; b < xhat.size(); ++b) {
        if (d.alpha.on_point(a) == d.alpha.on_point(b)) continue;
        for (Elem e : hstab[a])
          if (std::binary_search(hstab[b].begin(), hstab[b].end(), e) &&
              !k0.contains(e))
            throw Error("InternalInvariant",
                        {{"reason", "separation failed"},
                         {"point_a", a},
                         {"point_b", b}});
      }
    return FiberSeparation{d.through, std::move(d.psi), std::move(d.alpha)};
  }
  throw Error("InternalInvariant", {{"reason", "no separating subgroup"}});
}

}  // namespace pilekit
