// Lifting a torus class of order n to classes of order kn and testing whether
// some lift of large order keeps the same number of distinct eigenvalues.
// When it does ("blueprint"), the large-order class powers onto the small one
// without merging eigenvalue structure, so centralizer statements proved in
// the large-order regime descend; the remaining classes are the ones needing
// individual treatment, and the split report shows exactly which eigenvalues
// every lift is forced to refine.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "exc/rootdata.hpp"
#include "exc/ssclasses.hpp"

namespace exc {

// Largest element order that escapes the general-position regime: 18 for F4
// and E6, 75 for E7.  Lifts only count as witnesses above this bound.
int blueprint_order_bound(GroupType g);

// The k^rank lifts of t under the reduction Z_{kn} -> Z_n: coordinates
// c + n*j for j in [0,k)^rank, odometer order (last coordinate fastest).
std::vector<TorusElement> preimages(const TorusElement& t, int k);

// Default lift factors for order n in characteristic p: the smallest k with
// kn > bound and gcd(k, pn) = 1, plus each of 2, 3, 5 coprime to pn.
// Ascending, deduplicated.
std::vector<int> default_k_options(GroupType g, int n, int p);

enum class BlueprintVerdict { Blueprint, NotBlueprint, OutOfBound };

// One lift together with the eigenvalue indices it refines: exponent i of t
// (mod n) is refined when the weights landing on i spread over more than one
// exponent mod kn.
struct PreimageSplit {
  TorusElement preimage;         // over Z_{kn}
  int64_t order = 0;
  std::vector<int64_t> refined;  // ascending, exponents mod n
};

struct BlueprintResult {
  BlueprintVerdict verdict = BlueprintVerdict::NotBlueprint;
  int witness_k = 0;                    // set when verdict == Blueprint
  std::optional<TorusElement> witness;  // lift of order > bound refining nothing
  // When the verdict is NotBlueprint: one representative lift per distinct
  // minimal refined-index set among lifts of order > bound, for the k that
  // attains the minimum.
  int best_k = 0;
  std::vector<PreimageSplit> best_splits;
};

// Verdict for t acting on the module in characteristic p.  Lift factors
// divisible by p are an error; factors with kn <= bound cannot produce a
// witness and are skipped.  Empty k_options means default_k_options.
// OutOfBound marks classes whose eigenvalue multiset is not closed under
// inversion (non-real classes, where power arguments do not apply); among
// the modules here that only happens for E6 Vmin.
BlueprintResult is_blueprint(const TorusElement& t, ModuleId module_id, int p,
                             std::vector<int> k_options = {});

// Every lift of t at one factor k, with order and refined indices, plus the
// positions of the lifts refining no protected exponent.
struct SplitReport {
  int k = 0;
  std::vector<PreimageSplit> preimages;  // odometer order
  std::vector<size_t> compatible;        // positions with refined ∩ protected = empty
};
SplitReport split_report(const TorusElement& t, int k, ModuleId module_id, int p,
                         const std::vector<int64_t>& protected_indices = {});

// Exact partition of a class table by the single-factor blueprint test.
struct CensusResult {
  GroupType group = GroupType::F4;
  int n = 1;
  ModuleId module_id = ModuleId::Vmin;
  int p = 0;
  int k = 1;
  int64_t blueprint_count = 0;
  int64_t non_blueprint_count = 0;
  int64_t out_of_bound_count = 0;
  std::vector<TorusElement> non_blueprints;   // representatives, table order
  std::vector<TorusElement> out_of_bounds;    // representatives, table order
};

// threads = 0 uses the hardware concurrency.
CensusResult census(const ClassTable& table, int k, int threads = 0);
// Convenience: enumerate the exact-order-n classes, then run the census.
CensusResult census(GroupType g, int n, ModuleId module_id, int p, int k,
                    int threads = 0, uint64_t max_points = kDefaultPointBudget);

}  // namespace exc
