#include "pilekit/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace pilekit {

namespace {

GroupPtr from_rule(int n, const std::string& name,
                   const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = mul(a, b);
  return FiniteGroup::validate(t, {}, name);
}

GroupPtr rename(GroupPtr g, const std::string& name) {
  return FiniteGroup::validate(g->table(), g->labels(), name);
}

/// C_{p^2} x| C_p with the generator acting as x -> x^(1+p); the nonabelian
/// group of order p^3 and exponent p^2 (for p = 2 this is D4).
GroupPtr modular_pcube(int p) {
  auto n = cyclic_group(p * p);
  auto h = cyclic_group(p);
  std::vector<std::vector<Elem>> action(p, std::vector<Elem>(p * p));
  for (int k = 0; k < p; ++k) {
    // x -> x^{(1+p)^k}
    long long e = 1;
    for (int i = 0; i < k; ++i) e = (e * (1 + p)) % (p * p);
    for (int x = 0; x < p * p; ++x)
      action[k][x] = static_cast<int>((x * e) % (p * p));
  }
  return semidirect_product(n, h, action,
                            "C" + std::to_string(p * p) + ":C" +
                                std::to_string(p));
}

GroupPtr cyclic_semidirect(int nord, int hord, long long mult,
                           const std::string& name) {
  auto n = cyclic_group(nord);
  auto h = cyclic_group(hord);
  std::vector<std::vector<Elem>> action(hord, std::vector<Elem>(nord));
  for (int k = 0; k < hord; ++k) {
    long long e = 1;
    for (int i = 0; i < k; ++i) e = (e * mult) % nord;
    for (int x = 0; x < nord; ++x)
      action[k][x] = static_cast<int>((x * e) % nord);
  }
  return semidirect_product(n, h, action, name);
}

}  // namespace

GroupPtr dihedral_group(int n) {
  // r^i s^j with i < n, j < 2; index i + n*j
  return from_rule(2 * n, "D" + std::to_string(n), [n](int a, int b) {
    int i = a % n, j = a / n, k = b % n, l = b / n;
    int rot = j == 0 ? (i + k) % n : ((i - k) % n + n) % n;
    return rot + n * ((j + l) % 2);
  });
}

GroupPtr generalized_quaternion(int n) {
  // a^i b^j with i < 2n, j < 2; b^2 = a^n, a^b = a^-1
  const int m = 2 * n;
  return from_rule(4 * n, "Q" + std::to_string(4 * n), [n, m](int a, int b) {
    int i = a % m, j = a / m, k = b % m, l = b / m;
    int rot = j == 0 ? (i + k) % m : ((i - k) % m + m) % m;
    if (j + l == 2) return (rot + n) % m;  // b^2 = a^n
    return rot + m * ((j + l) % 2);
  });
}

GroupPtr heisenberg_group(int p) {
  // upper unitriangular 3x3 matrices over F_p: (a,b,c), index a*p^2+b*p+c
  return from_rule(p * p * p, "He" + std::to_string(p), [p](int x, int y) {
    int a1 = x / (p * p), b1 = (x / p) % p, c1 = x % p;
    int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
    int a = (a1 + a2) % p, b = (b1 + b2) % p, c = (c1 + c2 + a1 * b2) % p;
    return a * p * p + b * p + c;
  });
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::vector<CatalogEntry> catalog_p3(int p) {
  if (!is_prime(p)) throw Error("InvalidInput", {{"reason", "prime"}, {"p", p}});
  std::vector<CatalogEntry> out;
  auto add = [&](GroupPtr g) { out.push_back({g->name(), g}); };
  auto cp = cyclic_group(p);
  add(rename(cyclic_group(1), "C1"));
  add(cp);
  add(cyclic_group(p * p));
  add(direct_product(cp, cp));
  add(cyclic_group(p * p * p));
  add(direct_product(cyclic_group(p * p), cp));
  {
    const std::string cs = "C" + std::to_string(p);
    add(rename(direct_product(direct_product(cp, cp), cp),
               cs + "x" + cs + "x" + cs));
  }
  if (p == 2) {
    add(rename(dihedral_group(4), "D4"));
    add(rename(generalized_quaternion(2), "Q8"));
  } else {
    add(heisenberg_group(p));
    add(modular_pcube(p));
  }
  return out;
}

std::vector<CatalogEntry> catalog_p4(int p) {
  if (p != 2)
    throw Error("InvalidInput",
                {{"reason", "catalog p4 is implemented for p = 2 only"}});
  // TODO: odd-prime order-p^4 catalog (15 isomorphism classes)
  auto out = catalog_p3(2);
  auto add = [&](GroupPtr g) { out.push_back({g->name(), g}); };
  auto c2 = cyclic_group(2);
  auto c4 = cyclic_group(4);
  add(cyclic_group(16));
  add(direct_product(cyclic_group(8), c2));
  add(direct_product(c4, c4));
  add(rename(direct_product(direct_product(c4, c2), c2), "C4xC2xC2"));
  add(rename(direct_product(direct_product(c2, c2),
                            direct_product(c2, c2)),
             "C2xC2xC2xC2"));
  add(rename(dihedral_group(8), "D8"));
  add(generalized_quaternion(4));  // Q16
  add(cyclic_semidirect(8, 2, 3, "SD16"));
  add(cyclic_semidirect(8, 2, 5, "M4(2)"));
  add(rename(direct_product(dihedral_group(4), c2), "D4xC2"));
  add(rename(direct_product(generalized_quaternion(2), c2), "Q8xC2"));
  add(cyclic_semidirect(4, 4, 3, "C4:C4"));
  {
    // (C2xC2) x| C4, the generator of C4 swapping the two C2 coordinates
    auto v4 = direct_product(c2, c2);
    std::vector<std::vector<Elem>> action(4, std::vector<Elem>(4));
    for (int k = 0; k < 4; ++k)
      for (int x = 0; x < 4; ++x) {
        int a = x / 2, b = x % 2;
        action[k][x] = (k % 2 == 0) ? x : b * 2 + a;
      }
    add(semidirect_product(v4, c4, action, "(C2xC2):C4"));
  }
  {
    // central product D4 o C4 = (D4 x C4) / <(r^2, z^2)>
    auto dp = direct_product(dihedral_group(4), c4);
    // r^2 has index 2 in D4 (i + 4j indexing), z^2 has index 2 in C4;
    // the pair (2,2) has index 2*4 + 2 = 10
    Subgroup center(dp, {0, 10});
    auto q = quotient_group(dp, center);
    add(rename(q.group, "D4oC4"));
  }
  return out;
}

std::vector<CatalogEntry> catalog_by_name(const std::string& name, int p) {
  if (name == "p3") return catalog_p3(p);
  if (name == "p4") return catalog_p4(p);
  throw Error("InvalidInput", {{"reason", "unknown catalog"}, {"name", name}});
}

GroupPtr find_group(const std::string& name, int p) {
  auto cat = (p == 2) ? catalog_p4(2) : catalog_p3(p);
  for (const auto& e : cat)
    if (e.name == name) return e.group;
  if (name.size() > 1 && name[0] == 'C') {
    int n = std::atoi(name.c_str() + 1);
    if (n >= 1 && "C" + std::to_string(n) == name) return cyclic_group(n);
  }
  if (name.size() > 1 && name[0] == 'S') {
    int m = std::atoi(name.c_str() + 1);
    if (m >= 1 && m <= 7 && "S" + std::to_string(m) == name)
      return symmetric_group(m);
  }
  throw Error("InvalidInput", {{"reason", "unknown group"}, {"name", name}});
}

}  // namespace pilekit
