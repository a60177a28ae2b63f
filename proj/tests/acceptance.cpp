// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Scales and tolerances are fixed here; every comparison is exact.

#include <cstdio>
#include <string>

#include "pilekit/verify.hpp"

using namespace pilekit;

namespace {

int failures = 0;

void line(int idx, const std::string& name, bool ok, const std::string& note) {
  std::printf("[%2d] %s %s (%s)\n", idx, ok ? "PASS" : "FAIL", name.c_str(),
              note.c_str());
  if (!ok) ++failures;
}

void run(int idx, const std::string& name, const std::string& suite,
         SuiteOptions opts) {
  try {
    Report rep = run_suite(suite, opts);
    line(idx, name, rep.all_passed(),
         "passed=" + std::to_string(rep.passed) +
             " failed=" + std::to_string(rep.failed) +
             " skipped=" + std::to_string(rep.skipped));
    if (!rep.all_passed()) {
      for (const auto& c : rep.checks)
        if (c.status == "fail") {
          std::printf("     first failure: %s\n     witness: %s\n",
                      c.name.c_str(), c.witness.dump().c_str());
          break;
        }
    }
  } catch (const Error& e) {
    line(idx, name, false, "error " + e.code());
  }
}

}  // namespace

int main() {
  SuiteOptions sweep;
  sweep.max_group = 8;
  sweep.max_space = 5;

  run(1, "block stabilizer properties, exhaustive sweep", "stab", sweep);
  run(2, "stabilizer-aligned G-partitions vs brute force", "g-partition",
      sweep);

  SuiteOptions battery;
  battery.seed = 1;
  battery.count = 100;
  run(3, "cartesian squares preserve rigidity (100 seeded)",
      "cartesian-rigid", battery);
  run(4, "completion iff pointwise witnesses; floors refine (100 seeded)",
      "completion", battery);
  run(5, "basic piles solve every rigid EP (100 seeded)", "basic-ep",
      battery);

  SuiteOptions profiles;
  profiles.seed = 1;
  profiles.count = 25;
  run(6, "HNN' on a transversal matches pile HNN (>=25)", "with-section",
      profiles);
  run(7, "kernel words turn HNN' into pile HNN (>=25)", "hnn-kernel",
      profiles);
  run(8, "mod-L quotient matches G/<stabilizers> * F(orbits) (>=25)",
      "mod-l", profiles);

  // criterion 8 also pins the hand-checkable instance to frozen counts
  {
    auto c2 = cyclic_group(2);
    StandardExtension ext =
        standard_extension(c2, {{"t", whole_subgroup(c2)}});
    Presentation modl =
        mod_l_quotient(build_phnn(ext.pile, GroupHom::identity(c2)), 1);
    const unsigned long long expect[9] = {1, 2, 4, 4, 8, 8, 8, 8, 8};
    auto cat = catalog_p3(2);
    bool ok = true;
    for (size_t i = 0; i < cat.size(); ++i)
      if (hom_count(modl, cat[i].group) != expect[i]) ok = false;
    line(8, "frozen counts for the C2 fixed-point instance", ok,
         "profile = |Q| per catalog group");
  }

  run(9, "pile HNN of basic piles is L * F(rank + labels) (>=25)",
      "pile-hnn-structure", profiles);
  run(9, "the E factor computed by killing the factors (>=25)", "section",
      profiles);

  // criterion 9's worked instance with frozen counts: C_2 = G = G_t = L,
  // rho = id predicts the profile of C2 * F(1)
  {
    auto c2 = cyclic_group(2);
    StandardExtension ext =
        standard_extension(c2, {{"t", whole_subgroup(c2)}});
    Presentation phnn = build_phnn(ext.pile, GroupHom::identity(c2));
    const unsigned long long expect[9] = {1, 4, 8, 16, 16, 32, 64, 48, 16};
    auto cat = catalog_p3(2);
    bool ok = true;
    for (size_t i = 0; i < cat.size(); ++i)
      if (hom_count(phnn, cat[i].group) != expect[i]) ok = false;
    line(9, "frozen counts for the C_p one-point instance", ok,
         "count = |Hom(C2,Q)|*|Q|");
  }

  SuiteOptions zeta;
  zeta.seed = 1;
  zeta.count = 25;
  zeta.catalog = "p4";
  run(10, "zeta_G injectivity witnesses in catalog p4", "zeta-injective",
      zeta);

  {
    SuiteOptions audit;
    audit.seed = 1;
    audit.count = 50;
    try {
      Report rep = run_ep_audit(audit);
      line(11, "pile EP solver audited against independent enumeration",
           rep.all_passed(),
           "passed=" + std::to_string(rep.passed) +
               " failed=" + std::to_string(rep.failed) +
               " skipped=" + std::to_string(rep.skipped));
    } catch (const Error& e) {
      line(11, "pile EP solver audit", false, "error " + e.code());
    }
  }

  if (failures == 0) std::printf("acceptance: all criteria passed\n");
  return failures;
}
