// Search for multisets of SL2(p^a) composition factors whose evaluations at
// semisimple elements match conjugacy-class data of the ambient exceptional
// group.  A candidate multiset survives when, for each listed element order,
// some class of that exact order agrees with a generator evaluation of the
// candidate in trace (trace mode) or full eigenvalue multiset (multiset
// mode) simultaneously at the order itself and at every power of the
// generator, i.e. at each divisor of the order, with one consistent choice
// of twist.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exc/cyclotomic.hpp"
#include "exc/rootdata.hpp"
#include "exc/sl2rep.hpp"
#include "exc/ssclasses.hpp"

namespace exc {

enum class MatchMode { Trace, Multiset };

// Ceiling on the number of labelled candidates a single search may evaluate.
constexpr int64_t kDefaultCandidateBudget = 100'000'000;

// What to search for.  Dimension-shape constraints (minimum counts of given
// factor dimensions, forbidden dimensions, minimum pressure) restrict the
// candidates before any trace is evaluated; an exact shape is expressed by
// forbidding every other dimension and bounding the allowed ones from below.
struct SearchSpec {
  GroupType group = GroupType::F4;
  int p = 2;
  int a = 1;
  ModuleId module_id = ModuleId::Vmin;
  // How the rank-1 subgroup meets the centre; SLWithCenter is E7-only and
  // selects faithful factors on Vmin (trivial ones on the adjoint module)
  // together with full-torus element orders.
  EmbeddingType embedding = EmbeddingType::PSL;
  MatchMode mode = MatchMode::Trace;
  // Element orders to check; empty means default_orders(p, a, embedding).
  // Every divisor > 1 of a listed order is checked as well.
  std::vector<int64_t> orders;
  std::vector<std::pair<int64_t, int64_t>> min_dim_counts;  // (dim, at least)
  std::vector<int64_t> forbidden_dims;
  std::optional<int64_t> min_pressure;
  int64_t candidate_budget = kDefaultCandidateBudget;
  int threads = 0;  // 0 = hardware concurrency
};

// The maximal semisimple element orders: (p^a -+ 1)/2 for odd p with a PSL
// embedding, p^a -+ 1 otherwise, dropping values <= 1.
std::vector<int64_t> default_orders(int p, int a, EmbeddingType embedding);

// Every element order the search constrains: all divisors > 1 of the listed
// (or defaulted) orders, sorted increasing.  Class tables are only needed
// for the listed orders themselves; divisor data comes from powering the
// listed-order classes.
std::vector<int64_t> required_orders(const SearchSpec& spec);

// Read-only bundle of class tables keyed by (module, order).
class ClassTables {
 public:
  void put(ClassTable table);
  bool has(ModuleId module_id, int64_t n) const;
  const ClassTable& get(ModuleId module_id, int64_t n) const;  // MissingTableError if absent

 private:
  std::map<std::pair<int, int64_t>, ClassTable> tables_;
};

// Lexicographic minimum of the factor multiset over the a cyclic rotations
// of twist indices (the field-automorphism action); idempotent.
FactorMultiset canonicalize(const FactorMultiset& m);

// Number of distinct twist rotations of a multiset (the length of its
// field-automorphism orbit); divides a.
int64_t rotation_orbit_size(const FactorMultiset& m);

// For one listed order, the first class of that exact order matching the
// survivor (by trace or by eigenvalue multiset, per the search mode).
struct MatchRef {
  int64_t order = 0;
  int64_t class_index = 0;  // index into the (module, order) class table
};

struct Survivor {
  FactorMultiset factors;  // canonical under twist rotation
  int64_t orbit_size = 1;
  std::vector<MatchRef> matches;  // one per listed order, ascending order
};

// Per dimension-multiset tallies, mirroring the count tables the searches
// reproduce: `number` counts labelled candidates up to twist rotation
// (computed by Burnside's lemma without enumeration), `tested` counts the
// labelled candidates that underwent full evaluation, `survivors` counts
// canonical survivors with this shape.
struct ShardCount {
  std::string shape;  // e.g. "16^2,8,4^3,2^2", dimensions decreasing
  int64_t number = 0;
  int64_t tested = 0;
  int64_t survivors = 0;
};

struct SearchCounters {
  int64_t dimension_multisets = 0;
  int64_t candidates_tested = 0;
  int64_t survivors_labeled = 0;
  int64_t survivors_folded = 0;
};

struct SearchReport {
  SearchSpec spec;
  std::vector<Survivor> survivors;  // canonical, sorted
  std::vector<ShardCount> shards;   // in shape-enumeration order
  SearchCounters counters;
};

// Enumerate all factor multisets of the module's dimension with the central
// character demanded by the embedding, subject to the shape constraints, and
// keep those matching a class at every listed order (jointly over the
// order's divisors).  Shards (one per dimension multiset) run independently
// and are merged deterministically.  Throws MissingTableError when a listed
// order has no table, ResourceError when the labelled-candidate count
// exceeds the budget, NotTabulatedError when a pressure constraint needs
// unknown Ext data.
SearchReport search(const SearchSpec& spec, const ClassTables& tables);

// All adjoint-module factor multisets compatible with a surviving Vmin
// candidate: at every listed order, one class choice must match both the
// Vmin candidate and the adjoint candidate simultaneously, in full
// eigenvalue multisets (the match mode is ignored; the pairing always uses
// the stricter comparison).  The spec is the Vmin search spec; shape
// constraints are not applied to the adjoint side.  Results are sorted but
// not folded under twist rotation, because the admissible class sets are
// pinned to the given candidate's evaluation.
std::vector<FactorMultiset> conspicuous_pair(const SearchSpec& spec,
                                             const FactorMultiset& vmin_candidate,
                                             const ClassTables& tables);

// Decide whether a candidate's evaluation at order k * base.n is realised by
// a semisimple element of that exact order, by scanning the k^rank preimages
// of every class in the base table (every element of order k * n powers into
// some base class, so the scan is exhaustive).  Comparison is by trace or by
// eigenvalue multiset per the mode.  This answers conspicuousness at orders
// whose full class table is too large to enumerate.
bool matches_lifted_order(const FactorMultiset& candidate, const SearchSpec& spec,
                          const ClassTable& base, int k);

// For a characteristic-2 F4 search report: the index of the survivor whose
// traces are the graph-automorphism images of survivor i's at every checked
// order covered by the encoded small-order swap data (orders 3, 5, 7, 9), or
// nullopt when the data does not single out an image.  The relation reported
// is symmetric; a survivor whose traces admit no swap maps to itself.
std::vector<std::optional<int64_t>> f4_graph_pairing(const SearchReport& report);

}  // namespace exc
