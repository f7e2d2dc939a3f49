// Implementation of the composition-factor search: candidates are multisets
// of simple SL2(p^a) modules of the right total dimension and central
// character; a candidate survives when its generator evaluation matches a
// class of the ambient group at every required element order.  Enumeration
// shards by dimension multiset; inside a shard, labels are assigned per
// dimension either by direct recursion or by a meet-in-the-middle join on
// the most selective order's match keys.
#include "exc/conspicuous.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "exc/blueprint.hpp"
#include "exc/common.hpp"

namespace exc {

namespace {

std::vector<int64_t> divisors_greater_than_one(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 2; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Key vectors: the per-order quantity whose equality defines a match.  In
// trace mode this is the reduced trace (phi(n) coefficients); in multiset
// mode it is the full eigenvalue multiplicity vector (n entries).  Both are
// additive over composition factors.
using KeyVec = std::vector<int64_t>;

struct KeyVecHash {
  size_t operator()(const KeyVec& v) const {
    uint64_t h = 14695981039346656037ull;
    for (int64_t x : v) {
      h ^= static_cast<uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

KeyVec key_of(const EigenvalueMultiset& m, MatchMode mode) {
  if (mode == MatchMode::Multiset) return m.mult;
  return reduce(m).coeffs;
}

// Eigenvalues of one simple factor at a generator of a cyclic subgroup of
// the given order, under the embedding's evaluation convention.
EigenvalueMultiset factor_eigenvalues(const SimpleLabel& label, int64_t order,
                                      EmbeddingType embedding, int p) {
  if (p == 2 || embedding == EmbeddingType::PSL)
    return sl2_eigenvalues(label, 1, static_cast<int>(order));
  // Full-torus convention: odd orders are reached as squares of elements of
  // twice the order, which keeps the faithful-factor parity bookkeeping in
  // one place.
  if (order % 2 == 0) return sl2_torus_eigenvalues(label, 1, static_cast<int>(order));
  return power_multiset(sl2_torus_eigenvalues(label, 1, static_cast<int>(2 * order)), 2);
}

CentralChar required_central_char(const SearchSpec& spec) {
  if (spec.p == 2 || spec.embedding == EmbeddingType::PSL) return CentralChar::Trivial;
  return spec.module_id == ModuleId::Vmin ? CentralChar::Faithful : CentralChar::Trivial;
}

void validate_spec(const SearchSpec& spec) {
  if (!is_prime(spec.p)) fail("search: p must be prime");
  if (spec.a < 1) fail("search: a must be at least 1");
  if (spec.embedding == EmbeddingType::SLWithCenter && spec.group != GroupType::E7)
    fail("search: the SL-with-centre embedding only applies to E7");
  if (spec.candidate_budget < 1) fail("search: candidate budget must be positive");
  for (auto& [d, c] : spec.min_dim_counts)
    if (d < 1 || c < 0) fail("search: malformed minimum dimension count");
}

std::vector<int64_t> listed_orders(const SearchSpec& spec) {
  std::vector<int64_t> orders =
      spec.orders.empty() ? default_orders(spec.p, spec.a, spec.embedding) : spec.orders;
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  for (int64_t o : orders) {
    if (o < 2) fail("search: element orders must be at least 2");
    if (o % spec.p == 0) fail("search: order " + std::to_string(o) + " is not semisimple");
  }
  return orders;
}

SimpleLabel rotate_label(const SimpleLabel& l, int s) {
  std::vector<std::pair<int, int>> fs;
  fs.reserve(l.factors.size());
  for (auto& [j, r] : l.factors) fs.emplace_back((j + s) % l.a, r);
  return SimpleLabel(l.p, l.a, std::move(fs));
}

FactorMultiset rotate_multiset(const FactorMultiset& m, int s) {
  std::vector<std::pair<SimpleLabel, int64_t>> es;
  es.reserve(m.entries.size());
  for (auto& [l, mult] : m.entries) es.emplace_back(rotate_label(l, s), mult);
  return FactorMultiset(m.p, m.a, std::move(es));
}

// ---------------------------------------------------------------------------
// Core enumeration: labelled multiset assignment over dimension groups.

struct DimGroup {
  int64_t dim = 0;
  int64_t count = 0;               // slots in the shape
  std::vector<int> labels;         // indices into the global label list
};

// Per listed order O: a candidate's key is the concatenation, over the
// divisors o > 1 of O, of its key at order o; a class of exact order O
// contributes the concatenation of its powered eigenvalue keys.  Equality of
// tuples is exactly "one class matches at O and at every power".
struct OrderData {
  int64_t order = 0;                        // listed order
  std::vector<int64_t> divisors;            // divisors > 1, ascending
  std::set<KeyVec> members;                 // admissible candidate tuples
  std::vector<KeyVec> label_keys;           // per global label index
};

KeyVec label_tuple(const SimpleLabel& label, const OrderData& od, EmbeddingType embedding,
                   int p, MatchMode mode) {
  KeyVec tuple;
  for (int64_t o : od.divisors) {
    KeyVec block = key_of(factor_eigenvalues(label, o, embedding, p), mode);
    tuple.insert(tuple.end(), block.begin(), block.end());
  }
  return tuple;
}

KeyVec class_tuple(const EigenvalueMultiset& eigs, const OrderData& od, MatchMode mode) {
  KeyVec tuple;
  for (int64_t o : od.divisors) {
    KeyVec block = key_of(power_multiset(eigs, static_cast<int>(od.order / o)), mode);
    tuple.insert(tuple.end(), block.begin(), block.end());
  }
  return tuple;
}

// A shape: (dimension, multiplicity) pairs, dimensions decreasing.
using Shape = std::vector<std::pair<int64_t, int64_t>>;

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  bool first = true;
  for (auto& [d, m] : shape) {
    if (!first) os << ',';
    first = false;
    os << d;
    if (m > 1) os << '^' << m;
  }
  return os.str();
}

int64_t binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  __int128 r = 1;
  for (int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) fail("binomial overflow");
  }
  return static_cast<int64_t>(r);
}

// Number of multisets of the given size over the labels, counted saturated:
// C(n + m - 1, m), clamped to INT64_MAX on overflow.
int64_t multichoose_clamped(int64_t n, int64_t m) {
  if (n == 0) return m == 0 ? 1 : 0;
  __int128 r = 1;
  for (int64_t i = 1; i <= m; ++i) {
    r = r * (n - 1 + i) / i;
    if (r > INT64_MAX) return INT64_MAX;
  }
  return static_cast<int64_t>(r);
}

// Burnside count of label multisets with the given shape up to the cyclic
// twist-rotation group: (1/a) * sum over rotations of the invariant
// multisets, computed per dimension by a knapsack over rotation orbits.
int64_t burnside_number(const Shape& shape, const std::vector<DimGroup>& groups,
                        const std::vector<SimpleLabel>& labels, int a) {
  __int128 total = 0;
  for (int s = 0; s < a; ++s) {
    __int128 fix = 1;
    for (auto& [d, m] : shape) {
      const DimGroup* grp = nullptr;
      for (auto& g : groups)
        if (g.dim == d) grp = &g;
      if (grp == nullptr) fail("burnside: shape uses an unavailable dimension");
      // Orbit sizes of this dimension's labels under rotation by s.
      std::vector<int64_t> orbit_sizes;
      std::set<SimpleLabel> seen;
      for (int id : grp->labels) {
        const SimpleLabel& l = labels[id];
        if (seen.count(l)) continue;
        int64_t size = 0;
        SimpleLabel cur = l;
        do {
          seen.insert(cur);
          cur = rotate_label(cur, s);
          ++size;
        } while (!(cur == l));
        orbit_sizes.push_back(size);
      }
      // Invariant multisets take whole orbits: count solutions of
      // sum(c_i * orbit_sizes[i]) = m with c_i >= 0.
      std::vector<int64_t> ways(static_cast<size_t>(m) + 1, 0);
      ways[0] = 1;
      for (int64_t w : orbit_sizes)
        for (int64_t t = w; t <= m; ++t) {
          if (ways[t] > INT64_MAX - ways[t - w]) fail("burnside overflow");
          ways[t] += ways[t - w];
        }
      fix *= ways[m];
      if (fix > INT64_MAX) fail("burnside overflow");
    }
    total += fix;
  }
  if (total % a != 0) fail("burnside: total not divisible by the rotation count");
  total /= a;
  if (total > INT64_MAX) fail("burnside overflow");
  return static_cast<int64_t>(total);
}

// Shared read-only context for one search.
struct SearchContext {
  int p = 2;
  int a = 1;
  MatchMode mode = MatchMode::Trace;
  std::optional<int64_t> min_pressure;
  std::vector<SimpleLabel> labels;
  std::vector<OrderData> orders;  // ascending order
};

struct ShardOutput {
  int64_t tested = 0;
  std::vector<FactorMultiset> survivors;  // labelled, in enumeration order
};

FactorMultiset multiset_from_ids(const SearchContext& ctx, const std::vector<int>& ids) {
  std::map<int, int64_t> counts;
  for (int id : ids) ++counts[id];
  std::vector<std::pair<SimpleLabel, int64_t>> entries;
  entries.reserve(counts.size());
  for (auto& [id, c] : counts) entries.emplace_back(ctx.labels[id], c);
  return FactorMultiset(ctx.p, ctx.a, std::move(entries));
}

// Full membership test over every required order, optionally skipping one
// order already guaranteed by a join.  `sums` holds the candidate's key per
// order, aligned with ctx.orders.
bool passes_all_orders(const SearchContext& ctx, const std::vector<KeyVec>& sums,
                       size_t skip_index) {
  for (size_t i = 0; i < ctx.orders.size(); ++i) {
    if (i == skip_index) continue;
    if (!ctx.orders[i].members.count(sums[i])) return false;
  }
  return true;
}

bool passes_pressure(const SearchContext& ctx, const FactorMultiset& fm) {
  if (!ctx.min_pressure) return true;
  return pressure(fm) >= *ctx.min_pressure;
}

void add_label_keys(const SearchContext& ctx, std::vector<KeyVec>& sums, int id, int sign) {
  for (size_t i = 0; i < ctx.orders.size(); ++i) {
    const KeyVec& k = ctx.orders[i].label_keys[id];
    KeyVec& s = sums[i];
    for (size_t j = 0; j < k.size(); ++j) s[j] += sign * k[j];
  }
}

// Enumerate label multisets for groups [begin, end), non-decreasing label
// index within a group, invoking cb(ids) with the accumulated key sums.
template <typename Cb>
void enumerate_assignments(const SearchContext& ctx, const std::vector<DimGroup>& groups,
                           size_t begin, size_t end, std::vector<KeyVec>& sums,
                           std::vector<int>& ids, const Cb& cb) {
  if (begin == end) {
    cb(ids, sums);
    return;
  }
  const DimGroup& g = groups[begin];
  // Recursive multiset choice within the group.
  auto choose = [&](auto&& self, size_t slot, size_t min_pos) -> void {
    if (slot == static_cast<size_t>(g.count)) {
      enumerate_assignments(ctx, groups, begin + 1, end, sums, ids, cb);
      return;
    }
    for (size_t pos = min_pos; pos < g.labels.size(); ++pos) {
      int id = g.labels[pos];
      ids.push_back(id);
      add_label_keys(ctx, sums, id, +1);
      self(self, slot + 1, pos);
      add_label_keys(ctx, sums, id, -1);
      ids.pop_back();
    }
  };
  choose(choose, 0, 0);
}

std::vector<KeyVec> zero_sums(const SearchContext& ctx) {
  std::vector<KeyVec> sums;
  sums.reserve(ctx.orders.size());
  for (auto& od : ctx.orders) sums.emplace_back(od.label_keys.empty()
                                                    ? KeyVec{}
                                                    : KeyVec(od.label_keys[0].size(), 0));
  return sums;
}

// Direct path: enumerate every assignment and test it.
void run_shard_plain(const SearchContext& ctx, const std::vector<DimGroup>& groups,
                     ShardOutput& out) {
  std::vector<KeyVec> sums = zero_sums(ctx);
  std::vector<int> ids;
  enumerate_assignments(ctx, groups, 0, groups.size(), sums, ids,
                        [&](const std::vector<int>& cand, const std::vector<KeyVec>& s) {
                          ++out.tested;
                          if (!passes_all_orders(ctx, s, ctx.orders.size())) return;
                          FactorMultiset fm = multiset_from_ids(ctx, cand);
                          if (!passes_pressure(ctx, fm)) return;
                          out.survivors.push_back(std::move(fm));
                        });
}

// Meet-in-the-middle path: enumerate the suffix groups once, bucket them by
// their key at the join order, then for each prefix assignment look up the
// residual key against every admissible join-order key.
void run_shard_join(const SearchContext& ctx, const std::vector<DimGroup>& groups,
                    size_t split, size_t join_index, ShardOutput& out) {
  struct SuffixItem {
    std::vector<int> ids;
    std::vector<KeyVec> sums;
  };
  std::vector<SuffixItem> suffix;
  std::unordered_map<KeyVec, std::vector<size_t>, KeyVecHash> buckets;
  {
    std::vector<KeyVec> sums = zero_sums(ctx);
    std::vector<int> ids;
    enumerate_assignments(ctx, groups, split, groups.size(), sums, ids,
                          [&](const std::vector<int>& cand, const std::vector<KeyVec>& s) {
                            buckets[s[join_index]].push_back(suffix.size());
                            suffix.push_back(SuffixItem{cand, s});
                          });
  }
  const OrderData& join_order = ctx.orders[join_index];
  std::vector<KeyVec> sums = zero_sums(ctx);
  std::vector<int> ids;
  enumerate_assignments(
      ctx, groups, 0, split, sums, ids,
      [&](const std::vector<int>& prefix, const std::vector<KeyVec>& s) {
        for (const KeyVec& target : join_order.members) {
          KeyVec residual(target.size());
          bool ok = true;
          for (size_t j = 0; j < target.size(); ++j) {
            residual[j] = target[j] - s[join_index][j];
            // Multiset keys are multiplicity vectors; a negative residual
            // cannot be completed.
            if (ctx.mode == MatchMode::Multiset && residual[j] < 0) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          auto it = buckets.find(residual);
          if (it == buckets.end()) continue;
          for (size_t idx : it->second) {
            const SuffixItem& item = suffix[idx];
            ++out.tested;
            std::vector<KeyVec> total(s.size());
            for (size_t i = 0; i < s.size(); ++i) {
              total[i] = s[i];
              const KeyVec& add = item.sums[i];
              for (size_t j = 0; j < add.size(); ++j) total[i][j] += add[j];
            }
            if (!passes_all_orders(ctx, total, join_index)) continue;
            std::vector<int> cand = prefix;
            cand.insert(cand.end(), item.ids.begin(), item.ids.end());
            FactorMultiset fm = multiset_from_ids(ctx, cand);
            if (!passes_pressure(ctx, fm)) continue;
            out.survivors.push_back(std::move(fm));
          }
        }
      });
  // Each full assignment is reached exactly once (prefix and suffix are
  // disjoint dimension groups), so only a deterministic ordering is needed.
  std::sort(out.survivors.begin(), out.survivors.end(),
            [](const FactorMultiset& x, const FactorMultiset& y) { return x.entries < y.entries; });
}

int64_t raw_assignment_count(const std::vector<DimGroup>& groups) {
  __int128 r = 1;
  for (auto& g : groups) {
    r *= multichoose_clamped(static_cast<int64_t>(g.labels.size()), g.count);
    if (r > INT64_MAX) return INT64_MAX;
  }
  return static_cast<int64_t>(r);
}

void run_shard(const SearchContext& ctx, const std::vector<DimGroup>& groups,
               ShardOutput& out) {
  // Pick the most selective order for a potential join.
  size_t join_index = 0;
  for (size_t i = 1; i < ctx.orders.size(); ++i)
    if (ctx.orders[i].members.size() < ctx.orders[join_index].members.size()) join_index = i;
  // Balance the split by choice-count products.
  int64_t raw = raw_assignment_count(groups);
  size_t best_split = groups.size();
  int64_t best_suffix = 1;
  {
    __int128 suffix_count = 1;
    for (size_t split = groups.size(); split-- > 0;) {
      suffix_count *= multichoose_clamped(static_cast<int64_t>(groups[split].labels.size()),
                                          groups[split].count);
      if (suffix_count > 4'000'000) break;
      __int128 prefix_count = 1;
      for (size_t i = 0; i < split; ++i)
        prefix_count *= multichoose_clamped(static_cast<int64_t>(groups[i].labels.size()),
                                            groups[i].count);
      // Join work ~ prefix * |members| + suffix; direct work ~ prefix * suffix.
      __int128 join_cost =
          prefix_count * static_cast<int64_t>(ctx.orders[join_index].members.size()) +
          suffix_count;
      __int128 direct_cost = prefix_count * suffix_count;
      if (join_cost * 4 < direct_cost) {
        best_split = split;
        best_suffix = static_cast<int64_t>(suffix_count);
      }
    }
  }
  if (best_split < groups.size() && raw > 50'000 && best_suffix > 1)
    run_shard_join(ctx, groups, best_split, join_index, out);
  else
    run_shard_plain(ctx, groups, out);
}

// ---------------------------------------------------------------------------
// Shape (dimension multiset) enumeration.

std::vector<Shape> enumerate_shapes(const SearchSpec& spec, int64_t target,
                                    const std::vector<DimGroup>& groups) {
  std::set<int64_t> forbidden(spec.forbidden_dims.begin(), spec.forbidden_dims.end());
  std::map<int64_t, int64_t> min_count;
  for (auto& [d, c] : spec.min_dim_counts) min_count[d] = std::max(min_count[d], c);
  for (auto& [d, c] : min_count) {
    bool available = false;
    for (auto& g : groups) available = available || g.dim == d;
    if (c > 0 && (!available || forbidden.count(d)))
      return {};  // a required dimension cannot appear at all
  }
  std::vector<Shape> shapes;
  Shape current;
  auto rec = [&](auto&& self, size_t gi, int64_t remaining) -> void {
    if (remaining == 0) {
      // Verify minimum counts (dimensions never reached count as zero).
      for (auto& [d, c] : min_count) {
        int64_t have = 0;
        for (auto& [sd, sm] : current)
          if (sd == d) have = sm;
        if (have < c) return;
      }
      shapes.push_back(current);
      return;
    }
    if (gi == groups.size()) return;
    const DimGroup& g = groups[gi];
    int64_t max_m = forbidden.count(g.dim) ? 0 : remaining / g.dim;
    for (int64_t m = max_m; m >= 0; --m) {
      auto need = min_count.find(g.dim);
      if (need != min_count.end() && m < need->second) break;
      if (m > 0) current.emplace_back(g.dim, m);
      self(self, gi + 1, remaining - m * g.dim);
      if (m > 0) current.pop_back();
    }
  };
  rec(rec, 0, target);
  return shapes;
}

std::vector<DimGroup> groups_for_shape(const Shape& shape, const std::vector<DimGroup>& all) {
  std::vector<DimGroup> out;
  for (auto& [d, m] : shape) {
    for (auto& g : all)
      if (g.dim == d) {
        out.push_back(g);
        out.back().count = m;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search context assembly.

std::vector<DimGroup> group_labels_by_dim(const std::vector<SimpleLabel>& labels) {
  std::map<int64_t, std::vector<int>, std::greater<>> by_dim;
  for (size_t i = 0; i < labels.size(); ++i)
    by_dim[labels[i].dim()].push_back(static_cast<int>(i));
  std::vector<DimGroup> groups;
  for (auto& [d, ids] : by_dim) groups.push_back(DimGroup{d, 0, ids});
  return groups;
}

void fill_label_keys(SearchContext& ctx, EmbeddingType embedding) {
  for (auto& od : ctx.orders) {
    od.label_keys.reserve(ctx.labels.size());
    for (auto& l : ctx.labels) od.label_keys.push_back(label_tuple(l, od, embedding, ctx.p, ctx.mode));
  }
}

const ClassTable& checked_table(const ClassTables& tables, const SearchSpec& spec,
                                int64_t order) {
  const ClassTable& t = tables.get(spec.module_id, order);
  if (t.group != spec.group) fail("class table was built for a different group");
  if (t.p != spec.p) fail("class table was built for a different characteristic");
  return t;
}

struct CoreResult {
  std::vector<Shape> shapes;
  std::vector<ShardOutput> shards;  // aligned with shapes
  int64_t tested_total = 0;
};

// Run the sharded enumeration over all shapes against the context's member
// sets.  Throws ResourceError if the saturated raw count exceeds the budget.
CoreResult run_core(const SearchSpec& spec, const SearchContext& ctx,
                    const std::vector<DimGroup>& all_groups, int64_t target) {
  CoreResult result;
  result.shapes = enumerate_shapes(spec, target, all_groups);
  __int128 raw_total = 0;
  std::vector<std::vector<DimGroup>> shard_groups;
  shard_groups.reserve(result.shapes.size());
  for (auto& shape : result.shapes) {
    shard_groups.push_back(groups_for_shape(shape, all_groups));
    raw_total += raw_assignment_count(shard_groups.back());
  }
  if (raw_total > spec.candidate_budget) {
    std::ostringstream os;
    os << "search: about " << static_cast<double>(raw_total)
       << " labelled candidates exceed the budget of " << spec.candidate_budget;
    throw ResourceError(os.str());
  }
  result.shards.assign(result.shapes.size(), ShardOutput{});
  unsigned hw = std::thread::hardware_concurrency();
  int threads = spec.threads > 0 ? spec.threads : (hw == 0 ? 1 : static_cast<int>(hw));
  threads = std::min<int>(threads, std::max<size_t>(result.shapes.size(), 1));
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= result.shapes.size()) return;
      try {
        run_shard(ctx, shard_groups[i], result.shards[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (threads <= 1 || result.shapes.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  for (auto& s : result.shards) result.tested_total += s.tested;
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API.

std::vector<int64_t> default_orders(int p, int a, EmbeddingType embedding) {
  if (!is_prime(p)) fail("default_orders: p must be prime");
  if (a < 1) fail("default_orders: a must be at least 1");
  int64_t q = ipow(p, a);
  int64_t div = (p == 2 || embedding == EmbeddingType::SLWithCenter) ? 1 : 2;
  std::vector<int64_t> out;
  for (int64_t o : {(q - 1) / div, (q + 1) / div})
    if (o > 1) out.push_back(o);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int64_t> required_orders(const SearchSpec& spec) {
  validate_spec(spec);
  std::set<int64_t> all;
  for (int64_t o : listed_orders(spec))
    for (int64_t d : divisors_greater_than_one(o)) all.insert(d);
  return std::vector<int64_t>(all.begin(), all.end());
}

void ClassTables::put(ClassTable table) {
  tables_[{static_cast<int>(table.module_id), table.n}] = std::move(table);
}

bool ClassTables::has(ModuleId module_id, int64_t n) const {
  return tables_.count({static_cast<int>(module_id), n}) > 0;
}

const ClassTable& ClassTables::get(ModuleId module_id, int64_t n) const {
  auto it = tables_.find({static_cast<int>(module_id), n});
  if (it == tables_.end())
    throw MissingTableError("no class table for module " + module_name(module_id) +
                            " at order " + std::to_string(n));
  return it->second;
}

FactorMultiset canonicalize(const FactorMultiset& m) {
  FactorMultiset best = m;
  for (int s = 1; s < m.a; ++s) {
    FactorMultiset cand = rotate_multiset(m, s);
    if (cand.entries < best.entries) best = std::move(cand);
  }
  return best;
}

int64_t rotation_orbit_size(const FactorMultiset& m) {
  std::set<std::vector<std::pair<SimpleLabel, int64_t>>> distinct;
  for (int s = 0; s < m.a; ++s) distinct.insert(rotate_multiset(m, s).entries);
  return static_cast<int64_t>(distinct.size());
}

SearchReport search(const SearchSpec& spec, const ClassTables& tables) {
  validate_spec(spec);
  WeightSystem ws = module_weights(spec.group, spec.module_id, spec.p);
  int64_t target = ws.dimension();

  SearchContext ctx;
  ctx.p = spec.p;
  ctx.a = spec.a;
  ctx.mode = spec.mode;
  ctx.min_pressure = spec.min_pressure;
  ctx.labels = simples_up_to(spec.p, spec.a, target, required_central_char(spec));

  std::vector<int64_t> listed = listed_orders(spec);
  for (int64_t o : listed) {
    OrderData od;
    od.order = o;
    od.divisors = divisors_greater_than_one(o);
    const ClassTable& t = checked_table(tables, spec, o);
    for (auto& entry : t.entries)
      if (entry.exact_order) od.members.insert(class_tuple(entry.eigs, od, spec.mode));
    ctx.orders.push_back(std::move(od));
  }
  fill_label_keys(ctx, spec.embedding);

  std::vector<DimGroup> all_groups = group_labels_by_dim(ctx.labels);
  CoreResult core = run_core(spec, ctx, all_groups, target);

  // Fold labelled survivors under twist rotation; the canonical
  // representative of a surviving orbit is itself enumerated, so every
  // orbit is seen in full.  Matches are recomputed for canonical reps only.
  std::map<std::vector<std::pair<SimpleLabel, int64_t>>, int64_t> orbit_seen;
  std::map<std::vector<std::pair<SimpleLabel, int64_t>>, FactorMultiset> canon_forms;
  SearchReport report;
  report.spec = spec;
  report.spec.orders = listed;
  report.counters.dimension_multisets = static_cast<int64_t>(core.shapes.size());
  report.counters.candidates_tested = core.tested_total;
  for (size_t i = 0; i < core.shapes.size(); ++i) {
    std::set<std::vector<std::pair<SimpleLabel, int64_t>>> shard_canon;
    for (auto& fm : core.shards[i].survivors) {
      ++report.counters.survivors_labeled;
      FactorMultiset canon = canonicalize(fm);
      shard_canon.insert(canon.entries);
      ++orbit_seen[canon.entries];
      canon_forms.emplace(canon.entries, canon);
    }
    ShardCount sc;
    sc.shape = shape_string(core.shapes[i]);
    sc.number = burnside_number(core.shapes[i], all_groups, ctx.labels, spec.a);
    sc.tested = core.shards[i].tested;
    sc.survivors = static_cast<int64_t>(shard_canon.size());
    report.shards.push_back(std::move(sc));
  }
  report.counters.survivors_folded = static_cast<int64_t>(orbit_seen.size());

  // Per-entry tuples at listed orders, for match references.
  std::map<int64_t, std::vector<KeyVec>> entry_keys;
  for (size_t oi = 0; oi < ctx.orders.size(); ++oi) {
    const OrderData& od = ctx.orders[oi];
    const ClassTable& t = checked_table(tables, spec, od.order);
    std::vector<KeyVec> keys;
    keys.reserve(t.entries.size());
    for (auto& entry : t.entries)
      keys.push_back(entry.exact_order ? class_tuple(entry.eigs, od, spec.mode) : KeyVec{});
    entry_keys[od.order] = std::move(keys);
  }
  for (auto& [entries, canon] : canon_forms) {
    Survivor s;
    s.factors = canon;
    s.orbit_size = rotation_orbit_size(canon);
    if (s.orbit_size != orbit_seen[entries])
      fail("search: rotation orbit of a survivor was not fully enumerated");
    // Candidate keys per listed order.
    for (int64_t o : listed) {
      size_t oi = 0;
      while (ctx.orders[oi].order != o) ++oi;
      KeyVec sum(ctx.orders[oi].label_keys.empty() ? 0 : ctx.orders[oi].label_keys[0].size(), 0);
      for (auto& [l, mult] : canon.entries) {
        size_t id = 0;
        while (!(ctx.labels[id] == l)) ++id;
        const KeyVec& k = ctx.orders[oi].label_keys[id];
        for (size_t j = 0; j < k.size(); ++j) sum[j] += mult * k[j];
      }
      const std::vector<KeyVec>& keys = entry_keys[o];
      int64_t index = -1;
      for (size_t e = 0; e < keys.size(); ++e)
        if (!keys[e].empty() && keys[e] == sum) {
          index = static_cast<int64_t>(e);
          break;
        }
      if (index < 0) fail("search: survivor lost its matching class");
      s.matches.push_back(MatchRef{o, index});
    }
    report.survivors.push_back(std::move(s));
  }
  std::sort(report.survivors.begin(), report.survivors.end(),
            [](const Survivor& x, const Survivor& y) {
              return x.factors.entries < y.factors.entries;
            });
  return report;
}

std::vector<FactorMultiset> conspicuous_pair(const SearchSpec& in_spec,
                                             const FactorMultiset& vmin_candidate,
                                             const ClassTables& tables) {
  // The pairing requires full eigenvalue agreement on both modules whatever
  // the search mode was, so the stricter comparison is forced here.
  SearchSpec spec = in_spec;
  spec.mode = MatchMode::Multiset;
  validate_spec(spec);
  if (spec.module_id != ModuleId::Vmin) fail("conspicuous_pair: spec must target the minimal module");
  if (vmin_candidate.p != spec.p || vmin_candidate.a != spec.a)
    fail("conspicuous_pair: candidate belongs to a different group");
  WeightSystem vmin_ws = module_weights(spec.group, ModuleId::Vmin, spec.p);
  if (vmin_candidate.dimension() != vmin_ws.dimension())
    fail("conspicuous_pair: candidate has the wrong total dimension");
  WeightSystem adj_ws = module_weights(spec.group, ModuleId::Adjoint, spec.p);

  SearchSpec adj_spec = spec;
  adj_spec.module_id = ModuleId::Adjoint;
  adj_spec.min_dim_counts.clear();
  adj_spec.forbidden_dims.clear();
  adj_spec.min_pressure.reset();

  SearchContext ctx;
  ctx.p = spec.p;
  ctx.a = spec.a;
  ctx.mode = spec.mode;
  ctx.labels = simples_up_to(spec.p, spec.a, adj_ws.dimension(), required_central_char(adj_spec));

  // Candidate tuples on Vmin per listed order; the classes they pin down
  // supply the admissible adjoint tuples.
  for (int64_t o : listed_orders(spec)) {
    OrderData od;
    od.order = o;
    od.divisors = divisors_greater_than_one(o);
    KeyVec cand_tuple;
    for (auto& [l, mult] : vmin_candidate.entries) {
      KeyVec t = label_tuple(l, od, spec.embedding, spec.p, spec.mode);
      if (cand_tuple.empty()) cand_tuple.assign(t.size(), 0);
      for (size_t j = 0; j < t.size(); ++j) cand_tuple[j] += mult * t[j];
    }
    const ClassTable& t = checked_table(tables, spec, o);
    for (auto& entry : t.entries) {
      if (!entry.exact_order) continue;
      if (class_tuple(entry.eigs, od, spec.mode) != cand_tuple) continue;
      od.members.insert(class_tuple(eigenvalues(entry.rep, adj_ws), od, spec.mode));
    }
    if (od.members.empty()) return {};
    ctx.orders.push_back(std::move(od));
  }
  fill_label_keys(ctx, adj_spec.embedding);

  std::vector<DimGroup> all_groups = group_labels_by_dim(ctx.labels);
  CoreResult core = run_core(adj_spec, ctx, all_groups, adj_ws.dimension());
  std::vector<FactorMultiset> out;
  for (auto& shard : core.shards)
    for (auto& fm : shard.survivors) out.push_back(fm);
  std::sort(out.begin(), out.end(), [](const FactorMultiset& x, const FactorMultiset& y) {
    return x.entries < y.entries;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const FactorMultiset& x, const FactorMultiset& y) {
                          return x.entries == y.entries;
                        }),
            out.end());
  return out;
}

bool matches_lifted_order(const FactorMultiset& candidate, const SearchSpec& spec,
                          const ClassTable& base, int k) {
  validate_spec(spec);
  if (k < 2) fail("matches_lifted_order: k must be at least 2");
  if (base.group != spec.group) fail("matches_lifted_order: table group mismatch");
  if (base.p != spec.p) fail("matches_lifted_order: table characteristic mismatch");
  int64_t kn = static_cast<int64_t>(k) * base.n;
  if (kn % spec.p == 0) fail("matches_lifted_order: lifted order is not semisimple");
  WeightSystem ws = module_weights(spec.group, spec.module_id, spec.p);
  if (candidate.dimension() != ws.dimension())
    fail("matches_lifted_order: candidate has the wrong total dimension");

  OrderData od;
  od.order = kn;
  od.divisors = divisors_greater_than_one(kn);
  KeyVec cand_tuple;
  for (auto& [l, mult] : candidate.entries) {
    KeyVec t = label_tuple(l, od, spec.embedding, spec.p, spec.mode);
    if (cand_tuple.empty()) cand_tuple.assign(t.size(), 0);
    for (size_t j = 0; j < t.size(); ++j) cand_tuple[j] += mult * t[j];
  }

  std::atomic<bool> found{false};
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    try {
      for (;;) {
        if (found.load()) return;
        size_t i = next.fetch_add(1);
        if (i >= base.entries.size()) return;
        const ClassEntry& entry = base.entries[i];
        if (!entry.exact_order) continue;
        for (const TorusElement& lift : preimages(entry.rep, k)) {
          if (element_order(lift) != kn) continue;
          if (class_tuple(eigenvalues(lift, ws), od, spec.mode) == cand_tuple) {
            found.store(true);
            return;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  unsigned hw = std::thread::hardware_concurrency();
  int threads = spec.threads > 0 ? spec.threads : (hw == 0 ? 1 : static_cast<int>(hw));
  if (threads <= 1 || base.entries.size() < 8) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return found.load();
}

namespace {

bool is_integer_trace(const KeyVec& coeffs, int64_t& value) {
  if (coeffs.empty()) {
    value = 0;
    return true;
  }
  for (size_t i = 1; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return false;
  value = coeffs[0];
  return true;
}

}  // namespace

std::vector<std::optional<int64_t>> f4_graph_pairing(const SearchReport& report) {
  const SearchSpec& spec = report.spec;
  if (spec.group != GroupType::F4 || spec.p != 2)
    fail("f4_graph_pairing: only defined for F4 in characteristic 2");
  std::vector<int64_t> covered;
  for (int64_t o : required_orders(spec))
    if (o == 3 || o == 5 || o == 7 || o == 9) covered.push_back(o);

  struct TraceInfo {
    bool integral = false;
    int64_t value = 0;
  };
  size_t n = report.survivors.size();
  std::map<int64_t, std::vector<TraceInfo>> traces;
  for (int64_t o : covered) {
    std::vector<TraceInfo> col(n);
    for (size_t i = 0; i < n; ++i) {
      KeyVec sum;
      for (auto& [l, mult] : report.survivors[i].factors.entries) {
        KeyVec k = reduce(factor_eigenvalues(l, o, spec.embedding, spec.p)).coeffs;
        if (sum.empty()) sum.assign(k.size(), 0);
        for (size_t j = 0; j < k.size(); ++j) sum[j] += mult * k[j];
      }
      col[i].integral = is_integer_trace(sum, col[i].value);
    }
    traces[o] = std::move(col);
  }

  // Possible traces of the graph-automorphism image of survivor i at order
  // o, from the exchange behaviour of integral traces on the 26-dimensional
  // module: at order 3 the value 8 must become -1 while -1 either stays or
  // becomes 8; at order 7 the values -2 and 5 exchange (no integral trace is
  // stable there); at order 9 the values -1 and 2 exchange exactly when the
  // cube has trace -1; order 5 leaves every trace in place.  A non-integral
  // trace gives no constraint.
  auto possible_images = [&](size_t i, int64_t o) -> std::optional<std::set<int64_t>> {
    const TraceInfo& ti = traces[o][i];
    if (!ti.integral) return std::nullopt;
    int64_t t = ti.value;
    switch (o) {
      case 3:
        if (t == 8) return std::set<int64_t>{-1};
        if (t == -1) return std::set<int64_t>{-1, 8};
        return std::set<int64_t>{t};
      case 7:
        if (t == -2) return std::set<int64_t>{5};
        if (t == 5) return std::set<int64_t>{-2};
        return std::set<int64_t>{t};
      case 9: {
        bool cube_minus_one =
            traces.count(3) && traces[3][i].integral && traces[3][i].value == -1;
        if (cube_minus_one && t == -1) return std::set<int64_t>{2};
        if (cube_minus_one && t == 2) return std::set<int64_t>{-1};
        return std::set<int64_t>{t};
      }
      default:
        return std::set<int64_t>{t};
    }
  };

  // j is a viable image of i when every constrained order allows the trace
  // of j as an image trace of i.
  auto viable = [&](size_t i, size_t j) {
    for (int64_t o : covered) {
      auto allowed = possible_images(i, o);
      if (!allowed) continue;
      if (!traces[o][j].integral || !allowed->count(traces[o][j].value)) return false;
    }
    return true;
  };

  std::vector<std::optional<int64_t>> image(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<size_t> matches;
    for (size_t j = 0; j < n; ++j)
      if (viable(i, j) && viable(j, i)) matches.push_back(j);
    if (matches.size() == 1) image[i] = static_cast<int64_t>(matches[0]);
  }
  return image;
}

}  // namespace exc
