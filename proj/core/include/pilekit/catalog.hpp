#pragma once

#include <string>
#include <vector>

#include "pilekit/presentation.hpp"

namespace pilekit {

/// All groups of order dividing p^3 (nine for every prime: three abelian of
/// order p^3, the two extraspecial groups, and the smaller orders).
std::vector<CatalogEntry> catalog_p3(int p);

/// All groups of order dividing p^4.  Implemented for p = 2 (the fourteen
/// groups of order 16 on top of catalog p3).
std::vector<CatalogEntry> catalog_p4(int p);

std::vector<CatalogEntry> catalog_by_name(const std::string& name, int p);

/// Lookup by exact name in the p4 catalog (p = 2) or p3 otherwise; also
/// accepts "C<n>" for any cyclic order and "S<m>" for symmetric groups.
GroupPtr find_group(const std::string& name, int p);

GroupPtr dihedral_group(int n);              // order 2n
GroupPtr generalized_quaternion(int n);      // order 4n, Q8 = n 2
GroupPtr heisenberg_group(int p);            // order p^3, exponent p (p odd)

}  // namespace pilekit
