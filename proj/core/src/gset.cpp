#include "pilekit/gset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pilekit {

GSetPtr GSet::validate(GroupPtr group,
                       const std::vector<std::vector<int>>& action) {
  const int n = group->order();
  const int m = static_cast<int>(action.size());
  for (int t = 0; t < m; ++t) {
    if (static_cast<int>(action[t].size()) != n)
      throw Error("NotAction", {{"point", t}, {"reason", "row size"}});
    for (int g = 0; g < n; ++g)
      if (action[t][g] < 0 || action[t][g] >= m)
        throw Error("NotAction", {{"point", t}, {"element", g}});
  }
  for (int t = 0; t < m; ++t)
    if (action[t][0] != t)
      throw Error("NotAction", {{"point", t}, {"reason", "identity moves"}});
  for (int t = 0; t < m; ++t)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        if (action[action[t][g]][h] != action[t][group->mul(g, h)])
          throw Error("NotAction", {{"point", t}, {"g", g}, {"h", h}});

  auto s = std::shared_ptr<GSet>(new GSet());
  s->group_ = std::move(group);
  s->size_ = m;
  s->action_.resize(static_cast<size_t>(m) * n);
  for (int t = 0; t < m; ++t)
    for (int g = 0; g < n; ++g) s->action_[t * n + g] = action[t][g];
  return s;
}

std::vector<std::vector<Point>> GSet::orbits() const {
  std::vector<bool> seen(size_, false);
  std::vector<std::vector<Point>> out;
  for (Point t = 0; t < size_; ++t) {
    if (seen[t]) continue;
    std::vector<Point> orb;
    for (Elem g = 0; g < group_->order(); ++g) {
      Point u = act(t, g);
      if (!seen[u]) {
        seen[u] = true;
        orb.push_back(u);
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<int> GSet::orbit_index() const {
  std::vector<int> idx(size_, -1);
  auto orbs = orbits();
  for (int i = 0; i < static_cast<int>(orbs.size()); ++i)
    for (Point t : orbs[i]) idx[t] = i;
  return idx;
}

std::vector<std::vector<int>> GSet::action_table() const {
  std::vector<std::vector<int>> t(size_,
                                  std::vector<int>(group_->order()));
  for (int p = 0; p < size_; ++p)
    for (int g = 0; g < group_->order(); ++g) t[p][g] = act(p, g);
  return t;
}

Partition::Partition(GSetPtr gset, std::vector<std::vector<Point>> blocks)
    : gset_(std::move(gset)), blocks_(std::move(blocks)) {
  const int m = gset_->size();
  block_of_.assign(m, -1);
  for (auto& b : blocks_) {
    if (b.empty()) throw Error("InvalidPartition", {{"reason", "empty block"}});
    std::sort(b.begin(), b.end());
    for (Point t : b) {
      if (t < 0 || t >= m) throw Error("IndexOutOfRange", {{"point", t}});
      if (block_of_[t] != -1)
        throw Error("InvalidPartition", {{"reason", "overlap"}, {"point", t}});
      block_of_[t] = 0;  // provisional
    }
  }
  for (int t = 0; t < m; ++t)
    if (block_of_[t] == -1)
      throw Error("InvalidPartition", {{"reason", "uncovered"}, {"point", t}});
  std::sort(blocks_.begin(), blocks_.end());
  for (int i = 0; i < static_cast<int>(blocks_.size()); ++i)
    for (Point t : blocks_[i]) block_of_[t] = i;
}

Partition Partition::singletons(GSetPtr s) {
  std::vector<std::vector<Point>> b;
  for (Point t = 0; t < s->size(); ++t) b.push_back({t});
  return Partition(std::move(s), std::move(b));
}

Partition Partition::one_block(GSetPtr s) {
  std::vector<std::vector<Point>> b;
  if (s->size() > 0) {
    std::vector<Point> all(s->size());
    std::iota(all.begin(), all.end(), 0);
    b.push_back(std::move(all));
  }
  return Partition(std::move(s), std::move(b));
}

bool refines(const Partition& p, const Partition& q) {
  for (const auto& b : p.blocks()) {
    int target = q.block_of(b[0]);
    for (Point t : b)
      if (q.block_of(t) != target) return false;
  }
  return true;
}

Partition common_refinement(const Partition& a, const Partition& b) {
  std::map<std::pair<int, int>, std::vector<Point>> cls;
  for (Point t = 0; t < a.gset()->size(); ++t)
    cls[{a.block_of(t), b.block_of(t)}].push_back(t);
  std::vector<std::vector<Point>> blocks;
  for (auto& [k, v] : cls) blocks.push_back(std::move(v));
  return Partition(a.gset(), std::move(blocks));
}

Subgroup stabilizer(const GSet& s, Point t) {
  if (t < 0 || t >= s.size()) throw Error("IndexOutOfRange", {{"point", t}});
  std::vector<Elem> mem;
  for (Elem g = 0; g < s.group()->order(); ++g)
    if (s.act(t, g) == t) mem.push_back(g);
  return Subgroup(s.group(), std::move(mem));
}

namespace {

std::vector<Point> sorted_image(const GSet& s, const std::vector<Point>& z,
                                Elem g) {
  std::vector<Point> im;
  im.reserve(z.size());
  for (Point t : z) im.push_back(s.act(t, g));
  std::sort(im.begin(), im.end());
  return im;
}

}  // namespace

Subgroup setwise_stabilizer(const GSet& s, const std::vector<Point>& z) {
  if (z.empty()) throw Error("EmptySet", json::object());
  std::vector<Point> zs(z);
  std::sort(zs.begin(), zs.end());
  for (Point t : zs)
    if (t < 0 || t >= s.size()) throw Error("IndexOutOfRange", {{"point", t}});
  std::vector<Elem> mem;
  for (Elem g = 0; g < s.group()->order(); ++g)
    if (sorted_image(s, zs, g) == zs) mem.push_back(g);
  return Subgroup(s.group(), std::move(mem));
}

bool is_block(const GSet& s, const std::vector<Point>& z) {
  std::vector<Point> zs(z);
  std::sort(zs.begin(), zs.end());
  for (Elem g = 0; g < s.group()->order(); ++g) {
    auto im = sorted_image(s, zs, g);
    if (im == zs) continue;
    std::vector<Point> meet;
    std::set_intersection(im.begin(), im.end(), zs.begin(), zs.end(),
                          std::back_inserter(meet));
    if (!meet.empty()) return false;
  }
  return true;
}

bool is_g_partition(const Partition& p) {
  // Blocks must map onto blocks (the induced action on the block set is
  // what every downstream construction uses).
  const GSet& s = *p.gset();
  for (const auto& b : p.blocks()) {
    for (Elem g = 0; g < s.group()->order(); ++g) {
      int target = p.block_of(s.act(b[0], g));
      if (static_cast<int>(p.blocks()[target].size()) !=
          static_cast<int>(b.size()))
        return false;
      for (Point t : b)
        if (p.block_of(s.act(t, g)) != target) return false;
    }
  }
  return true;
}

Partition refine_to_g_partition(const Partition& p) {
  const GSet& s = *p.gset();
  const int n = s.group()->order();
  std::map<std::vector<int>, std::vector<Point>> cls;
  for (Point t = 0; t < s.size(); ++t) {
    std::vector<int> sig(n);
    for (Elem g = 0; g < n; ++g) sig[g] = p.block_of(s.act(t, g));
    cls[sig].push_back(t);
  }
  std::vector<std::vector<Point>> blocks;
  for (auto& [k, v] : cls) blocks.push_back(std::move(v));
  return Partition(p.gset(), std::move(blocks));
}

namespace {

std::vector<Elem> conjugate_members(const FiniteGroup& g,
                                    const std::vector<Elem>& mem, Elem x) {
  std::vector<Elem> out;
  out.reserve(mem.size());
  for (Elem m : mem) out.push_back(g.conj(m, x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

AlignedPartition stabilizer_aligned_g_partition(const Partition& p) {
  const GSetPtr gsp = p.gset();
  const GSet& s = *gsp;
  const FiniteGroup& g = *s.group();
  const int n = g.order();

  Partition P = refine_to_g_partition(p);

  std::vector<bool> remaining(s.size(), true);
  int remaining_count = s.size();

  std::vector<std::vector<Elem>> stab(s.size());
  for (Point t = 0; t < s.size(); ++t) {
    for (Elem x = 0; x < n; ++x)
      if (s.act(t, x) == t) stab[t].push_back(x);
  }

  std::vector<std::pair<std::vector<Point>, Point>> result;  // block, witness

  auto subset = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };

  while (remaining_count > 0) {
    // maximal stabilizer realized by the smallest point index
    Point tstar = -1;
    for (Point t = 0; t < s.size(); ++t) {
      if (!remaining[t]) continue;
      bool maximal = true;
      for (Point u = 0; u < s.size() && maximal; ++u) {
        if (!remaining[u] || u == t) continue;
        if (stab[u] != stab[t] && subset(stab[t], stab[u])) maximal = false;
      }
      if (maximal) {
        tstar = t;
        break;
      }
    }
    const std::vector<Elem> gamma = stab[tstar];

    // constancy locus of the chosen stabilizer, within the remaining points
    std::vector<Point> locus;
    for (Point t = 0; t < s.size(); ++t)
      if (remaining[t] && stab[t] == gamma) locus.push_back(t);

    // normalizer of gamma
    std::vector<Elem> norm;
    for (Elem x = 0; x < n; ++x)
      if (conjugate_members(g, gamma, x) == gamma) norm.push_back(x);

    // S-partition of the locus refining P: refine by signatures over norm
    std::map<std::vector<int>, std::vector<Point>> cls;
    for (Point t : locus) {
      std::vector<int> sig;
      sig.reserve(norm.size());
      for (Elem x : norm) sig.push_back(P.block_of(s.act(t, x)));
      cls[sig].push_back(t);
    }
    std::vector<std::vector<Point>> pieces;
    for (auto& [k, v] : cls) pieces.push_back(std::move(v));

    // keep pieces whose setwise stabilizer inside norm is exactly gamma;
    // split the rest into singletons (always aligned)
    std::vector<std::vector<Point>> blocks;
    for (auto& d : pieces) {
      std::sort(d.begin(), d.end());
      std::vector<Elem> st;
      for (Elem x : norm)
        if (sorted_image(s, d, x) == d) st.push_back(x);
      if (st == gamma) {
        blocks.push_back(std::move(d));
      } else {
        for (Point t : d) blocks.push_back({t});
      }
    }

    // translate along a right transversal of the normalizer
    std::vector<bool> coset_seen(n, false);
    for (Elem x = 0; x < n; ++x) {
      if (coset_seen[x]) continue;
      for (Elem m : norm) coset_seen[g.mul(m, x)] = true;
      for (const auto& d : blocks) {
        auto im = sorted_image(s, d, x);
        result.emplace_back(im, im[0]);
        for (Point t : im) {
          if (remaining[t]) {
            remaining[t] = false;
            --remaining_count;
          }
        }
      }
    }
  }

  std::sort(result.begin(), result.end());
  std::vector<std::vector<Point>> blocks;
  std::vector<Point> witnesses;
  blocks.reserve(result.size());
  for (auto& [b, w] : result) {
    blocks.push_back(std::move(b));
    witnesses.push_back(w);
  }
  return AlignedPartition{Partition(gsp, std::move(blocks)),
                          std::move(witnesses)};
}

}  // namespace pilekit
