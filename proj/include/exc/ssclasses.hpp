// Semisimple conjugacy classes of exact order n in simply connected F4/E6/E7,
// enumerated as Weyl orbits on the n-torsion points of a maximal torus, with
// their eigenvalue multisets on a chosen module.
//
// Two enumeration backends:
//  * flood fill over all n^rank points in coroot coordinates (the default;
//    canonical representative = lexicographically minimal orbit member);
//  * affine-alcove (Kac coordinate) enumeration, one point per orbit without
//    touching the full torus, for moduli where n^rank exceeds the budget
//    (canonical representative = the alcove point itself).
// Both agree on counts, orders and eigenvalue data; the unit tests
// cross-validate them wherever both run.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "exc/cyclotomic.hpp"
#include "exc/rootdata.hpp"

namespace exc {

struct TorusElement {
  GroupType group;
  int n = 1;                    // order modulus
  std::vector<int64_t> coords;  // rank entries in [0, n), simple-coroot coordinates

  bool operator==(const TorusElement&) const = default;
};

// Order of the torus element: n / gcd(n, gcd of coordinates).
int64_t element_order(const TorusElement& t);

// Order read off a faithful-module eigenvalue multiset:
// lcm over eigenvalues zeta^i of n / gcd(n, i).
int64_t order_from_eigenvalues(const EigenvalueMultiset& m);

// Eigenvalues of t on the module: index j receives every weight mu with
// <mu, t> = j (mod n).  Requires gcd(n, p) = 1.
EigenvalueMultiset eigenvalues(const TorusElement& t, const WeightSystem& ws);

struct ClassEntry {
  TorusElement rep;
  EigenvalueMultiset eigs;
  bool exact_order = false;  // true iff the element's order is exactly n
};

struct ClassTable {
  GroupType group;
  int n = 1;
  ModuleId module_id;
  int p = 0;
  std::vector<ClassEntry> entries;
};

// Default ceiling on n^rank for the flood-fill backend (E7 at n=17 is about
// 4.1e8 points and is the largest supported configuration).
constexpr uint64_t kDefaultPointBudget = 500'000'000;

// Flood-fill enumeration over all n^rank torus points.  If exact_order is
// true only classes of order exactly n are kept (the identity and other
// proper-divisor orders are dropped).  Throws ResourceError when n^rank
// exceeds max_points.
ClassTable enumerate_classes(GroupType g, int n, ModuleId module_id, int p,
                             bool exact_order = true,
                             uint64_t max_points = kDefaultPointBudget);

// Alcove-point enumeration: solutions of s_0 + sum marks[i]*s_i = n over
// non-negative integers, restricted to the coroot lattice (simply connected
// form), one solution per class.  Memory use is O(classes).
ClassTable enumerate_classes_alcove(GroupType g, int n, ModuleId module_id, int p,
                                    bool exact_order = true);

// Deduplicated traces of all entries.
std::set<CyclotomicInteger> trace_set(const ClassTable& table);

// Text cache with header + FNV-1a checksum; see store() for the exact format.
void store(const ClassTable& table, const std::string& path);
ClassTable load(GroupType g, int n, ModuleId module_id, int p, const std::string& path);

}  // namespace exc
