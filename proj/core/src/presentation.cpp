#include "pilekit/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace pilekit {

void Presentation::check_word(const Word& w) const {
  for (const Letter& l : w) {
    if (l.kind == Letter::Kind::FactorElem) {
      if (l.a < 0 || l.a >= static_cast<int>(factors.size()))
        throw Error("InvalidWord", {{"factor", l.a}});
      if (l.b < 0 || l.b >= factors[l.a]->order())
        throw Error("InvalidWord", {{"factor", l.a}, {"elem", l.b}});
    } else {
      if (l.a < 0 || l.a >= free_letters)
        throw Error("InvalidWord", {{"free", l.a}});
      if (l.b != 1 && l.b != -1)
        throw Error("InvalidWord", {{"free", l.a}, {"exp", l.b}});
    }
  }
}

void Presentation::check() const {
  for (const Word& w : relators) check_word(w);
}

Presentation presentation_of_group(GroupPtr g, std::string label) {
  Presentation p;
  if (label.empty()) label = g->name();
  p.factors.push_back(std::move(g));
  p.factor_labels.push_back(std::move(label));
  return p;
}

Presentation free_letters_presentation(int n) {
  Presentation p;
  p.free_letters = n;
  for (int i = 0; i < n; ++i) p.free_labels.push_back("x" + std::to_string(i));
  return p;
}

Presentation free_product(const std::vector<Presentation>& parts) {
  Presentation out;
  for (const auto& part : parts) {
    const int foff = static_cast<int>(out.factors.size());
    const int loff = out.free_letters;
    out.factors.insert(out.factors.end(), part.factors.begin(),
                       part.factors.end());
    for (size_t i = 0; i < part.factors.size(); ++i)
      out.factor_labels.push_back(
          i < part.factor_labels.size() ? part.factor_labels[i] : "");
    out.free_letters += part.free_letters;
    for (int i = 0; i < part.free_letters; ++i)
      out.free_labels.push_back(i < static_cast<int>(part.free_labels.size())
                                    ? part.free_labels[i]
                                    : "x" + std::to_string(loff + i));
    for (const Word& w : part.relators) {
      Word moved;
      moved.reserve(w.size());
      for (const Letter& l : w)
        moved.push_back(l.kind == Letter::Kind::FactorElem
                            ? Letter::factor(l.a + foff, l.b)
                            : Letter::free(l.a + loff, l.b));
      out.relators.push_back(std::move(moved));
    }
  }
  return out;
}

Presentation quotient_by_closure(const Presentation& p,
                                 const std::vector<Word>& words) {
  for (const Word& w : words) p.check_word(w);
  Presentation out = p;
  out.relators.insert(out.relators.end(), words.begin(), words.end());
  return out;
}

namespace {

std::vector<Elem> subgroup_generators(const Subgroup& s) {
  auto sg = subgroup_as_group(s);
  std::vector<Elem> gens;
  for (Elem e : small_generating_set(*sg.group))
    gens.push_back(sg.to_parent[e]);
  return gens;
}

}  // namespace

Presentation build_hnn(GroupPtr base,
                       const std::vector<StableLetter>& stable) {
  Presentation p = presentation_of_group(base);
  for (const auto& st : stable) {
    if (!same_table(*st.subgroup.parent(), *base))
      throw Error("MismatchedTarget", {{"label", st.label}});
    const auto& mem = st.subgroup.members();
    if (st.phi.size() != mem.size())
      throw Error("IndexOutOfRange", {{"label", st.label}});
    // phi must be an injective homomorphism on the subgroup
    std::vector<bool> seen(base->order(), false);
    std::vector<int> pos(base->order(), -1);
    for (size_t i = 0; i < mem.size(); ++i) pos[mem[i]] = static_cast<int>(i);
    for (size_t i = 0; i < mem.size(); ++i) {
      if (st.phi[i] < 0 || st.phi[i] >= base->order())
        throw Error("IndexOutOfRange", {{"label", st.label}});
      if (seen[st.phi[i]]) throw Error("PhiNotInjective", {{"label", st.label}});
      seen[st.phi[i]] = true;
      for (size_t j = 0; j < mem.size(); ++j) {
        Elem prod = base->mul(mem[i], mem[j]);
        if (base->mul(st.phi[i], st.phi[j]) !=
            st.phi[static_cast<size_t>(pos[prod])])
          throw Error("NotHomomorphism", {{"label", st.label}});
      }
    }
    const int t = p.free_letters++;
    p.free_labels.push_back(st.label);
    for (Elem g : subgroup_generators(st.subgroup)) {
      Word w{Letter::free(t, -1), Letter::factor(0, g), Letter::free(t, 1),
             Letter::factor(0, base->inv(st.phi[pos[g]]))};
      p.relators.push_back(std::move(w));
    }
  }
  return p;
}

Presentation build_hnn_prime(GroupPtr g,
                             const std::vector<StableLabel>& stable,
                             const GroupHom& rho, GroupPtr l) {
  if (!same_table(*rho.source(), *g) || !same_table(*rho.target(), *l))
    throw Error("MismatchedTarget", {{"reason", "rho endpoints"}});
  std::vector<StablePresLabel> pres_stable;
  for (const auto& st : stable) {
    if (!is_injective_on(rho, st.subgroup))
      throw Error("RhoNotInjectiveOn", {{"label", st.label}});
    StablePresLabel spl;
    spl.label = st.label;
    for (Elem e : subgroup_generators(st.subgroup))
      spl.gens_with_rho.emplace_back(Letter::factor(0, e), rho(e));
    pres_stable.push_back(std::move(spl));
  }
  return build_hnn_prime_pres(presentation_of_group(std::move(g)), pres_stable,
                              std::move(l));
}

Presentation build_hnn_prime_pres(const Presentation& base,
                                  const std::vector<StablePresLabel>& stable,
                                  GroupPtr l) {
  Presentation p = base;
  const int l_factor = static_cast<int>(p.factors.size());
  p.factors.push_back(l);
  p.factor_labels.push_back(l->name().empty() ? "L" : l->name());
  for (const auto& st : stable) {
    const int t = p.free_letters++;
    p.free_labels.push_back(st.label);
    for (const auto& [gen, rho_img] : st.gens_with_rho) {
      base.check_word({gen});
      Word w{Letter::free(t, -1), gen, Letter::free(t, 1),
             Letter::factor(l_factor, l->inv(rho_img))};
      p.relators.push_back(std::move(w));
    }
  }
  return p;
}

Presentation build_phnn(const Pile& pile, const GroupHom& rho) {
  if (!same_table(*rho.source(), *pile.group))
    throw Error("MismatchedTarget", {{"reason", "rho source"}});
  const GSet& t = *pile.space;
  for (Point pt = 0; pt < t.size(); ++pt) {
    std::vector<Elem> stab;
    for (Elem e = 0; e < pile.group->order(); ++e)
      if (t.act(pt, e) == pt) stab.push_back(e);
    if (!is_injective_on(rho, Subgroup(pile.group, stab)))
      throw Error("RhoNotInjectiveOn", {{"point", pt}});
  }
  GroupPtr l = rho.target();
  Presentation p;
  p.factors = {pile.group, l};
  p.factor_labels = {pile.group->name().empty() ? "G" : pile.group->name(),
                     l->name().empty() ? "L" : l->name()};
  p.free_letters = t.size();
  for (Point pt = 0; pt < t.size(); ++pt)
    p.free_labels.push_back("t" + std::to_string(pt));
  for (Point pt = 0; pt < t.size(); ++pt)
    for (Elem g : small_generating_set(*pile.group)) {
      Word w{Letter::free(t.act(pt, g), -1),
             Letter::factor(0, pile.group->inv(g)), Letter::free(pt, 1),
             Letter::factor(1, rho(g))};
      p.relators.push_back(std::move(w));
    }
  return p;
}

std::vector<Word> hnn_to_phnn_kernel(const Pile& pile,
                                     const std::vector<Point>& t0,
                                     const GroupHom& rho) {
  const GSet& t = *pile.space;
  std::vector<int> letter_of(t.size(), -1);
  for (size_t i = 0; i < t0.size(); ++i) {
    if (t0[i] < 0 || t0[i] >= t.size())
      throw Error("IndexOutOfRange", {{"point", t0[i]}});
    letter_of[t0[i]] = static_cast<int>(i);
  }
  // every orbit must meet t0
  auto orbit_idx = t.orbit_index();
  int orbit_count = 0;
  for (int v : orbit_idx) orbit_count = std::max(orbit_count, v + 1);
  std::vector<bool> covered(orbit_count, false);
  for (Point pt : t0) covered[orbit_idx[pt]] = true;
  for (int o = 0; o < orbit_count; ++o)
    if (!covered[o]) throw Error("NotTransversal", {{"orbit", o}});

  std::vector<Word> words;
  for (Point pt : t0)
    for (Elem g = 0; g < pile.group->order(); ++g) {
      Point moved = t.act(pt, g);
      if (letter_of[moved] < 0) continue;  // no letter in the HNN' alphabet
      Word w{Letter::free(letter_of[moved], -1),
             Letter::factor(0, pile.group->inv(g)),
             Letter::free(letter_of[pt], 1), Letter::factor(1, rho(g))};
      words.push_back(std::move(w));
    }
  return words;
}

Presentation mod_l_quotient(const Presentation& phnn, int l_factor) {
  if (l_factor < 0 || l_factor >= static_cast<int>(phnn.factors.size()))
    throw Error("BadFactorIndex", {{"factor", l_factor}});
  std::vector<Word> words;
  for (Elem e = 1; e < phnn.factors[l_factor]->order(); ++e)
    words.push_back(Word{Letter::factor(l_factor, e)});
  return quotient_by_closure(phnn, words);
}

PresentationHom induced_hom(const PhnnData& source, const PhnnData& target,
                            const PileMorphism& psi, const GroupHom& lambda) {
  if (!same_pile(psi.source(), source.pile) ||
      !same_pile(psi.target(), target.pile))
    throw Error("MismatchedTarget", {{"reason", "psi endpoints"}});
  // square: lambda . rho = rho' . psi_G
  for (Elem g = 0; g < source.pile.group->order(); ++g)
    if (lambda(source.rho(g)) != target.rho(psi.on_elem(g)))
      throw Error("SquareDoesNotCommute", {{"element", g}});

  // relator preservation, symbolically: the image of the relator for
  // (t, g) must be the target relator instance for (psi t, psi g)
  const GSet& ts = *source.pile.space;
  const GSet& tt = *target.pile.space;
  for (Point pt = 0; pt < ts.size(); ++pt)
    for (Elem g = 0; g < source.pile.group->order(); ++g) {
      Point lhs = psi.on_point(ts.act(pt, g));
      Point rhs = tt.act(psi.on_point(pt), psi.on_elem(g));
      if (lhs != rhs)
        throw Error("RelatorNotPreserved", {{"point", pt}, {"element", g}});
    }

  PresentationHom out;
  out.factor_maps.emplace_back(0, psi.group_map());
  out.factor_maps.emplace_back(1, lambda);
  for (Point pt = 0; pt < ts.size(); ++pt)
    out.free_images.push_back(Word{Letter::free(psi.on_point(pt), 1)});
  return out;
}

// ---- hom counting ------------------------------------------------------

namespace {

struct RelatorInfo {
  const Word* word;
  std::vector<int> free_used;  // distinct free letters occurring
  int max_factor = -1;         // highest factor index occurring
};

// Evaluates a word under the given factor homs and free images; returns -1
// when some free letter is unassigned.
Elem eval_word(const Word& w, const FiniteGroup& q,
               const std::vector<const GroupHom*>& fh,
               const std::vector<Elem>& free_img) {
  Elem acc = 0;
  for (const Letter& l : w) {
    Elem v;
    if (l.kind == Letter::Kind::FactorElem) {
      v = (*fh[l.a])(l.b);
    } else {
      if (free_img[l.a] < 0) return -1;
      v = l.b == 1 ? free_img[l.a] : q.inv(free_img[l.a]);
    }
    acc = q.mul(acc, v);
  }
  return acc;
}

// If exactly one occurrence of exactly one unassigned letter remains, solve
// for it: prefix * x^e * suffix = 1.  Returns {letter, value} or {-1, 0} if
// not solvable in this shape, {-2, 0} if fully assigned.
std::pair<int, Elem> solve_unit(const Word& w, const FiniteGroup& q,
                                const std::vector<const GroupHom*>& fh,
                                const std::vector<Elem>& free_img) {
  int letter = -1, exp = 0;
  size_t at = 0;
  int unassigned_occurrences = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    const Letter& l = w[i];
    if (l.kind == Letter::Kind::Free && free_img[l.a] < 0) {
      ++unassigned_occurrences;
      letter = l.a;
      exp = l.b;
      at = i;
    }
  }
  if (unassigned_occurrences == 0) return {-2, 0};
  if (unassigned_occurrences != 1) return {-1, 0};
  Elem prefix = 0, suffix = 0;
  for (size_t i = 0; i < at; ++i) {
    const Letter& l = w[i];
    Elem v = l.kind == Letter::Kind::FactorElem
                 ? (*fh[l.a])(l.b)
                 : (l.b == 1 ? free_img[l.a] : q.inv(free_img[l.a]));
    prefix = q.mul(prefix, v);
  }
  for (size_t i = at + 1; i < w.size(); ++i) {
    const Letter& l = w[i];
    Elem v = l.kind == Letter::Kind::FactorElem
                 ? (*fh[l.a])(l.b)
                 : (l.b == 1 ? free_img[l.a] : q.inv(free_img[l.a]));
    suffix = q.mul(suffix, v);
  }
  // prefix * x^e * suffix = 1  =>  x^e = prefix^-1 * suffix^-1
  Elem xe = q.mul(q.inv(prefix), q.inv(suffix));
  return {letter, exp == 1 ? xe : q.inv(xe)};
}

}  // namespace

unsigned long long hom_count(const Presentation& p, GroupPtr q) {
  p.check();
  const FiniteGroup& g = *q;
  const int nf = static_cast<int>(p.factors.size());

  std::vector<std::vector<GroupHom>> factor_homs(nf);
  for (int f = 0; f < nf; ++f) factor_homs[f] = enumerate_homs(p.factors[f], q);

  // classify relators by the factors/letters they use
  std::vector<RelatorInfo> rel;
  for (const Word& w : p.relators) {
    RelatorInfo ri;
    ri.word = &w;
    std::vector<bool> used(p.free_letters, false);
    for (const Letter& l : w) {
      if (l.kind == Letter::Kind::FactorElem)
        ri.max_factor = std::max(ri.max_factor, l.a);
      else if (!used[l.a]) {
        used[l.a] = true;
        ri.free_used.push_back(l.a);
      }
    }
    rel.push_back(std::move(ri));
  }
  std::vector<std::vector<int>> rel_of_letter(p.free_letters);
  for (int r = 0; r < static_cast<int>(rel.size()); ++r)
    for (int l : rel[r].free_used) rel_of_letter[l].push_back(r);

  std::vector<const GroupHom*> fh(nf, nullptr);
  std::vector<Elem> free_img(p.free_letters, -1);
  unsigned long long total = 0;

  // count free-letter assignments by DFS with unit propagation
  std::function<unsigned long long()> count_free = [&]() -> unsigned long long {
    int next = -1;
    for (int l = 0; l < p.free_letters; ++l)
      if (free_img[l] < 0) {
        next = l;
        break;
      }
    if (next < 0) {
      for (const auto& ri : rel)
        if (!ri.free_used.empty() &&
            eval_word(*ri.word, g, fh, free_img) != 0)
          return 0;
      return 1;
    }
    unsigned long long sub = 0;
    for (Elem v = 0; v < g.order(); ++v) {
      std::vector<std::pair<int, Elem>> trail;
      auto assign = [&](int letter, Elem val) {
        free_img[letter] = val;
        trail.emplace_back(letter, val);
      };
      assign(next, v);
      // propagate forced letters
      bool contradiction = false;
      size_t head = 0;
      while (head < trail.size() && !contradiction) {
        int l = trail[head++].first;
        for (int r : rel_of_letter[l]) {
          auto [letter, val] = solve_unit(*rel[r].word, g, fh, free_img);
          if (letter == -2) {
            if (eval_word(*rel[r].word, g, fh, free_img) != 0) {
              contradiction = true;
              break;
            }
          } else if (letter >= 0) {
            assign(letter, val);
          }
        }
      }
      if (!contradiction) sub += count_free();
      for (auto& [letter, val] : trail) free_img[letter] = -1;
    }
    return sub;
  };

  // iterate factor hom tuples, pruning on relators that involve only the
  // factors chosen so far and no free letters
  std::function<void(int)> pick_factor = [&](int f) {
    if (f == nf) {
      total += count_free();
      return;
    }
    for (const GroupHom& h : factor_homs[f]) {
      fh[f] = &h;
      bool ok = true;
      for (const auto& ri : rel)
        if (ri.free_used.empty() && ri.max_factor == f &&
            eval_word(*ri.word, g, fh, free_img) != 0) {
          ok = false;
          break;
        }
      if (ok) pick_factor(f + 1);
    }
    fh[f] = nullptr;
  };
  pick_factor(0);
  return total;
}

HomCountProfile hom_profile(const Presentation& p,
                            const std::vector<CatalogEntry>& catalog) {
  if (catalog.empty()) throw Error("InvalidInput", {{"reason", "empty catalog"}});
  HomCountProfile out;
  for (const auto& e : catalog)
    out.entries.emplace_back(e.name, hom_count(p, e.group));
  return out;
}

int first_profile_mismatch(const HomCountProfile& a,
                           const HomCountProfile& b) {
  const size_t n = std::min(a.entries.size(), b.entries.size());
  for (size_t i = 0; i < n; ++i)
    if (a.entries[i] != b.entries[i]) return static_cast<int>(i);
  if (a.entries.size() != b.entries.size()) return static_cast<int>(n);
  return -1;
}

}  // namespace pilekit
