#include "pilekit/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace pilekit {

GroupPtr FiniteGroup::validate(const std::vector<std::vector<int>>& table,
                               std::vector<std::string> labels,
                               std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("NoIdentity", {{"reason", "empty table"}});
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(table[r].size()) != n)
      throw Error("NotLatinSquare", {{"row", r}, {"reason", "not square"}});
    for (int c = 0; c < n; ++c)
      if (table[r][c] < 0 || table[r][c] >= n)
        throw Error("NotLatinSquare",
                    {{"row", r}, {"col", c}, {"value", table[r][c]}});
  }
  // rows and columns are permutations
  for (int r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    for (int c = 0; c < n; ++c) {
      if (seen[table[r][c]])
        throw Error("NotLatinSquare", {{"row", r}, {"col", c}});
      seen[table[r][c]] = true;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (int r = 0; r < n; ++r) {
      if (seen[table[r][c]])
        throw Error("NotLatinSquare", {{"row", r}, {"col", c}});
      seen[table[r][c]] = true;
    }
  }
  // element 0 is a two-sided identity
  for (int x = 0; x < n; ++x) {
    if (table[0][x] != x || table[x][0] != x)
      throw Error("NoIdentity", {{"element", x}});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error("NotAssociative", {{"a", a}, {"b", b}, {"c", c}});

  std::vector<Elem> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table[a][b] == 0 && table[b][a] == 0) {
        inv[a] = b;
        break;
      }
    }
    if (inv[a] < 0) throw Error("NoInverse", {{"element", a}});
  }

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->mul_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->mul_[a * n + b] = table[a][b];
  g->inv_ = std::move(inv);
  g->labels_ = std::move(labels);
  g->name_ = std::move(name);
  return g;
}

int FiniteGroup::element_order(Elem a) const {
  int k = 1;
  Elem x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_p_group(int p) const {
  if (p < 2) return false;
  int n = order_;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
  if (&a == &b) return true;
  if (a.order() != b.order()) return false;
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  for (Elem e : members_)
    if (e < 0 || e >= parent_->order())
      throw Error("IndexOutOfRange", {{"element", e}});
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  if (members_.empty() || members_[0] != 0)
    throw Error("NoIdentity", {{"reason", "subgroup misses identity"}});
  for (Elem a : members_) {
    if (!contains(parent_->inv(a))) throw Error("NoInverse", {{"element", a}});
    for (Elem b : members_)
      if (!contains(parent_->mul(a, b)))
        throw Error("NotClosed", {{"a", a}, {"b", b}});
  }
}

bool Subgroup::contains(Elem e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

bool Subgroup::is_normal() const {
  const auto& g = *parent_;
  for (Elem m : members_)
    for (Elem x = 0; x < g.order(); ++x)
      if (!contains(g.conj(m, x))) return false;
  return true;
}

bool same_members(const Subgroup& a, const Subgroup& b) {
  return a.members() == b.members();
}

Subgroup trivial_subgroup(GroupPtr g) { return Subgroup(std::move(g), {0}); }

Subgroup whole_subgroup(GroupPtr g) {
  std::vector<Elem> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(g), std::move(all));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  std::set_intersection(a.members().begin(), a.members().end(),
                        b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return Subgroup(a.parent(), std::move(out));
}

SubgroupGroup subgroup_as_group(const Subgroup& s) {
  const auto& g = *s.parent();
  const auto& mem = s.members();
  const int k = static_cast<int>(mem.size());
  std::vector<int> from_parent(g.order(), -1);
  for (int i = 0; i < k; ++i) from_parent[mem[i]] = i;
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      table[i][j] = from_parent[g.mul(mem[i], mem[j])];
  SubgroupGroup out;
  out.group = FiniteGroup::validate(table);
  out.to_parent = mem;
  out.from_parent = std::move(from_parent);
  return out;
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map)
    : source_(std::move(source)),
      target_(std::move(target)),
      map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != source_->order())
    throw Error("IndexOutOfRange", {{"reason", "map size"}});
  for (Elem v : map_)
    if (v < 0 || v >= target_->order())
      throw Error("IndexOutOfRange", {{"value", v}});
  if (map_[0] != 0)
    throw Error("NotHomomorphism", {{"reason", "identity not preserved"}});
  for (int a = 0; a < source_->order(); ++a)
    for (int b = 0; b < source_->order(); ++b)
      if (map_[source_->mul(a, b)] != target_->mul(map_[a], map_[b]))
        throw Error("NotHomomorphism", {{"a", a}, {"b", b}});
}

bool GroupHom::is_injective() const {
  std::vector<bool> seen(target_->order(), false);
  for (Elem v : map_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool GroupHom::is_surjective() const {
  std::vector<bool> seen(target_->order(), false);
  int c = 0;
  for (Elem v : map_)
    if (!seen[v]) {
      seen[v] = true;
      ++c;
    }
  return c == target_->order();
}

Subgroup GroupHom::kernel() const {
  std::vector<Elem> k;
  for (int e = 0; e < source_->order(); ++e)
    if (map_[e] == 0) k.push_back(e);
  return Subgroup(source_, std::move(k));
}

std::vector<Elem> GroupHom::image_members() const {
  std::vector<Elem> im(map_);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

GroupHom GroupHom::identity(GroupPtr g) {
  std::vector<Elem> m(g->order());
  std::iota(m.begin(), m.end(), 0);
  return GroupHom(g, g, std::move(m));
}

GroupHom GroupHom::trivial(GroupPtr source, GroupPtr target) {
  std::vector<Elem> m(source->order(), 0);
  return GroupHom(std::move(source), std::move(target), std::move(m));
}

GroupHom compose(const GroupHom& after, const GroupHom& before) {
  if (!same_table(*before.target(), *after.source()))
    throw Error("MismatchedTarget", {{"reason", "hom composition"}});
  std::vector<Elem> m(before.source()->order());
  for (int e = 0; e < before.source()->order(); ++e) m[e] = after(before(e));
  return GroupHom(before.source(), after.target(), std::move(m));
}

bool same_map(const GroupHom& a, const GroupHom& b) {
  return a.map() == b.map();
}

Subgroup subgroup_generated(GroupPtr g, const std::vector<Elem>& gens) {
  for (Elem e : gens)
    if (e < 0 || e >= g->order())
      throw Error("IndexOutOfRange", {{"element", e}});
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> mem{0};
  in[0] = true;
  std::vector<Elem> todo{0};
  for (Elem e : gens)
    if (!in[e]) {
      in[e] = true;
      mem.push_back(e);
      todo.push_back(e);
    }
  while (!todo.empty()) {
    Elem a = todo.back();
    todo.pop_back();
    for (Elem s : gens) {
      for (Elem p : {g->mul(a, s), g->mul(s, a)}) {
        if (!in[p]) {
          in[p] = true;
          mem.push_back(p);
          todo.push_back(p);
        }
      }
    }
  }
  return Subgroup(g, std::move(mem));
}

Subgroup normal_closure(GroupPtr g, const std::vector<Elem>& s) {
  for (Elem e : s)
    if (e < 0 || e >= g->order())
      throw Error("IndexOutOfRange", {{"element", e}});
  std::vector<Elem> conjugates;
  for (Elem e : s)
    for (Elem x = 0; x < g->order(); ++x) conjugates.push_back(g->conj(e, x));
  return subgroup_generated(g, conjugates);
}

Quotient quotient_group(GroupPtr g, const Subgroup& n) {
  if (!same_table(*n.parent(), *g))
    throw Error("MismatchedTarget", {{"reason", "subgroup of another group"}});
  if (!n.is_normal()) throw Error("NotNormal", json::object());
  const int ord = g->order();
  std::vector<int> coset(ord, -1);
  int k = 0;
  for (Elem e = 0; e < ord; ++e) {
    if (coset[e] >= 0) continue;
    for (Elem m : n.members()) coset[g->mul(m, e)] = k;
    ++k;
  }
  std::vector<Elem> rep(k, -1);
  for (Elem e = ord - 1; e >= 0; --e) rep[coset[e]] = e;
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) table[a][b] = coset[g->mul(rep[a], rep[b])];
  GroupPtr q = FiniteGroup::validate(table);
  return Quotient{q, GroupHom(g, q, std::move(coset))};
}

std::vector<Elem> small_generating_set(const FiniteGroup& g) {
  // non-owning alias; subgroup_generated only reads the table
  GroupPtr self(&g, [](const FiniteGroup*) {});
  std::vector<Elem> gens;
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  int covered = 1;
  for (Elem e = 1; e < g.order() && covered < g.order(); ++e) {
    if (in[e]) continue;
    gens.push_back(e);
    Subgroup s = subgroup_generated(self, gens);
    covered = s.order();
    for (Elem m : s.members()) in[m] = true;
  }
  return gens;
}

namespace {

// BFS word tree: each element is reached as parent*gen, identity first.
struct WordTree {
  std::vector<int> parent;
  std::vector<int> gen;
  std::vector<int> bfs;       // derivation order
  std::vector<int> need_gen;  // max generator index on the path, -1 for id
  bool covers_all = false;
};

WordTree build_word_tree(const FiniteGroup& g, const std::vector<Elem>& gens) {
  const int n = g.order();
  WordTree t;
  t.parent.assign(n, -1);
  t.gen.assign(n, -1);
  t.need_gen.assign(n, -1);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  t.bfs.push_back(0);
  for (size_t head = 0; head < t.bfs.size(); ++head) {
    Elem a = t.bfs[head];
    for (int k = 0; k < static_cast<int>(gens.size()); ++k) {
      Elem b = g.mul(a, gens[k]);
      if (!seen[b]) {
        seen[b] = true;
        t.parent[b] = a;
        t.gen[b] = k;
        t.need_gen[b] = std::max(t.need_gen[a], k);
        t.bfs.push_back(b);
      }
    }
  }
  t.covers_all = static_cast<int>(t.bfs.size()) == n;
  return t;
}

}  // namespace

std::vector<GroupHom> enumerate_homs(GroupPtr source,
                                     const std::vector<Elem>& gens,
                                     GroupPtr target) {
  for (Elem e : gens)
    if (e < 0 || e >= source->order())
      throw Error("IndexOutOfRange", {{"element", e}});
  const auto& g = *source;
  const auto& q = *target;
  WordTree tree = build_word_tree(g, gens);
  if (!tree.covers_all) throw Error("GensDoNotGenerate", json::object());

  const int n = g.order();
  // elements derivable once gens 0..k-1 have images, per wave k
  std::vector<std::vector<Elem>> wave(gens.size() + 1);
  for (Elem e : tree.bfs)
    wave[static_cast<size_t>(tree.need_gen[e] + 1)].push_back(e);

  std::vector<Elem> img(n, -1);
  std::vector<int> pos(n, -1);  // position in `derived`, -1 if unset
  std::vector<Elem> derived;
  std::vector<GroupHom> out;
  std::vector<Elem> gen_img(gens.size(), 0);

  // Derive wave `level` and check every product a*b whose factors and value
  // are all derived and at least one participant is new.
  auto extend = [&](size_t level) -> bool {
    const size_t first_new = derived.size();
    for (Elem e : wave[level]) {
      img[e] = (level == 0)
                   ? 0
                   : q.mul(img[tree.parent[e]],
                           gen_img[static_cast<size_t>(tree.gen[e])]);
      pos[e] = static_cast<int>(derived.size());
      derived.push_back(e);
    }
    for (size_t i = first_new; i < derived.size(); ++i) {
      Elem a = derived[i];
      for (Elem b : derived) {
        Elem ab = g.mul(a, b), ba = g.mul(b, a);
        if (pos[ab] >= 0 && q.mul(img[a], img[b]) != img[ab]) return false;
        if (pos[ba] >= 0 && q.mul(img[b], img[a]) != img[ba]) return false;
      }
    }
    // old*old products that land on a new element
    for (size_t i = 0; i < first_new; ++i) {
      Elem a = derived[i];
      for (size_t j = 0; j < first_new; ++j) {
        Elem b = derived[j];
        Elem ab = g.mul(a, b);
        if (pos[ab] >= static_cast<int>(first_new) &&
            q.mul(img[a], img[b]) != img[ab])
          return false;
      }
    }
    return true;
  };
  auto rollback_to = [&](size_t size) {
    while (derived.size() > size) {
      img[derived.back()] = -1;
      pos[derived.back()] = -1;
      derived.pop_back();
    }
  };

  std::function<void(size_t)> dfs = [&](size_t k) {
    if (k == gens.size()) {
      out.emplace_back(source, target, img);
      return;
    }
    const size_t mark = derived.size();
    for (Elem v = 0; v < q.order(); ++v) {
      gen_img[k] = v;
      if (extend(k + 1)) dfs(k + 1);
      rollback_to(mark);
    }
  };

  extend(0);
  dfs(0);
  rollback_to(0);
  return out;
}

std::vector<GroupHom> enumerate_homs(GroupPtr source, GroupPtr target) {
  return enumerate_homs(source, small_generating_set(*source),
                        std::move(target));
}

bool is_injective_on(const GroupHom& h, const Subgroup& s) {
  for (Elem e : s.members())
    if (e != 0 && h(e) == 0) return false;
  return true;
}

std::vector<Subgroup> all_subgroups(GroupPtr g) {
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> frontier;
  seen.insert({0});
  frontier.push_back({0});
  while (!frontier.empty()) {
    std::vector<std::vector<Elem>> next;
    for (const auto& mem : frontier) {
      for (Elem e = 1; e < g->order(); ++e) {
        if (std::binary_search(mem.begin(), mem.end(), e)) continue;
        std::vector<Elem> gens(mem);
        gens.push_back(e);
        auto s = subgroup_generated(g, gens);
        if (seen.insert(s.members()).second) next.push_back(s.members());
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Elem>> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(sorted.size());
  for (auto& m : sorted) out.emplace_back(g, std::move(m));
  return out;
}

std::vector<Subgroup> all_normal_subgroups(GroupPtr g) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g))
    if (s.is_normal()) out.push_back(std::move(s));
  return out;
}

GroupPtr cyclic_group(int n) {
  if (n < 1) throw Error("IndexOutOfRange", {{"order", n}});
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::validate(t, {}, "C" + std::to_string(n));
}

GroupPtr direct_product(GroupPtr a, GroupPtr b, std::string name) {
  const int na = a->order(), nb = b->order();
  auto idx = [nb](int x, int y) { return x * nb + y; };
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          t[idx(x1, y1)][idx(x2, y2)] = idx(a->mul(x1, x2), b->mul(y1, y2));
  if (name.empty()) name = a->name() + "x" + b->name();
  return FiniteGroup::validate(t, {}, std::move(name));
}

GroupPtr semidirect_product(GroupPtr n, GroupPtr h,
                            const std::vector<std::vector<Elem>>& action,
                            std::string name) {
  const int nn = n->order(), nh = h->order();
  if (static_cast<int>(action.size()) != nh)
    throw Error("IndexOutOfRange", {{"reason", "action size"}});
  auto idx = [nh](int x, int y) { return x * nh + y; };
  std::vector<std::vector<int>> t(nn * nh, std::vector<int>(nn * nh));
  for (int x1 = 0; x1 < nn; ++x1)
    for (int y1 = 0; y1 < nh; ++y1)
      for (int x2 = 0; x2 < nn; ++x2)
        for (int y2 = 0; y2 < nh; ++y2)
          t[idx(x1, y1)][idx(x2, y2)] =
              idx(n->mul(x1, action[y1][x2]), h->mul(y1, y2));
  return FiniteGroup::validate(t, {}, std::move(name));
}

GroupPtr symmetric_group(int m) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(m);
      for (int x = 0; x < m; ++x) c[x] = perms[b][perms[a][x]];  // a then b
      t[a][b] = index[c];
    }
  return FiniteGroup::validate(t, {}, "S" + std::to_string(m));
}

int sym_apply(const FiniteGroup& sym, Elem perm, int point) {
  // unrank the lexicographic permutation (factorial number system)
  int m = 1, fact = 1;
  while (fact < sym.order()) fact *= ++m;
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> pv(m);
  int r = perm;
  for (int i = m; i >= 1; --i) {
    fact /= i;
    int d = r / fact;
    r %= fact;
    pv[m - i] = pool[d];
    pool.erase(pool.begin() + d);
  }
  return pv[point];
}

}  // namespace pilekit
