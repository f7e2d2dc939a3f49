// Lift-and-refine analysis of torus classes: enumerate the k^rank lifts of a
// class of order n to order kn, track which eigenvalue exponents each lift
// splits, and classify classes by whether some large-order lift splits
// nothing.  The inner loop walks lifts in odometer order and updates every
// weight exponent by a precomputed per-coordinate delta, so one step costs
// O(#weights) instead of a full re-evaluation.
#include "exc/blueprint.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "exc/common.hpp"

namespace exc {

namespace {

constexpr int64_t kLiftMaterializeCap = 10'000'000;

int64_t lift_count(int k, int rank) {
  int64_t total = 1;
  for (int i = 0; i < rank; ++i) {
    if (total > kLiftMaterializeCap) return total;
    total *= k;
  }
  return total;
}

void check_characteristic(const TorusElement& t, int p) {
  if (!is_prime(p)) fail("blueprint: p = " + std::to_string(p) + " is not prime");
  if (t.n % p == 0)
    fail("blueprint: order modulus " + std::to_string(t.n) +
         " is divisible by the characteristic " + std::to_string(p));
}

void check_lift_factor(int k, int p) {
  if (k < 1) fail("blueprint: lift factor " + std::to_string(k) + " must be positive");
  if (k % p == 0)
    fail("blueprint: lift factor " + std::to_string(k) + " is divisible by the characteristic " +
         std::to_string(p));
}

// Walks the k^rank lifts of one class in odometer order (last coordinate
// fastest), maintaining every deduplicated weight's exponent mod kn.
class PreimageScanner {
 public:
  PreimageScanner(const TorusElement& t, int k, const WeightSystem& ws)
      : n_(t.n), k_(k), kn_(int64_t(k) * t.n), rank_(static_cast<int>(t.coords.size())) {
    for (const auto& [w, mult] : ws.weights) {
      if (mult <= 0) continue;
      if (std::find(weights_.begin(), weights_.end(), w) == weights_.end())
        weights_.push_back(w);
    }
    const size_t W = weights_.size();
    cur_.resize(W);
    group_of_.resize(W);
    delta_.assign(rank_, std::vector<int64_t>(W));
    std::vector<int64_t> group_exponent;  // group id -> exponent mod n
    for (size_t w = 0; w < W; ++w) {
      int64_t s = 0;
      for (int i = 0; i < rank_; ++i) s += weights_[w][i] * t.coords[i];
      cur_[w] = pos_mod(s, kn_);
      for (int i = 0; i < rank_; ++i) delta_[i][w] = pos_mod(n_ * weights_[w][i], kn_);
      const int64_t e = pos_mod(s, n_);
      size_t g = 0;
      while (g < group_exponent.size() && group_exponent[g] != e) ++g;
      if (g == group_exponent.size()) group_exponent.push_back(e);
      group_of_[w] = g;
    }
    gexp_ = std::move(group_exponent);
    distinct_n_ = static_cast<int64_t>(gexp_.size());
    stamp_.assign(kn_, 0);
    gstamp_.assign(gexp_.size(), 0);
    gfirst_.assign(gexp_.size(), 0);
    gsplit_.assign(gexp_.size(), 0);
    j_.assign(rank_, 0);
    lift_ = t.coords;
  }

  // Advance to the next lift; false once all k^rank lifts have been seen.
  bool advance() {
    for (int i = rank_ - 1; i >= 0; --i) {
      const auto& d = delta_[i];
      // Both an increment of j_i and its wrap from k-1 to 0 shift every
      // exponent by delta once (k*delta vanishes mod kn).
      for (size_t w = 0; w < cur_.size(); ++w) {
        cur_[w] += d[w];
        if (cur_[w] >= kn_) cur_[w] -= kn_;
      }
      if (++j_[i] < k_) {
        lift_[i] += n_;
        return true;
      }
      j_[i] = 0;
      lift_[i] -= int64_t(k_ - 1) * n_;
    }
    return false;
  }

  // True when the lift has exactly as many distinct exponents as the class.
  bool no_refinement() {
    ++stamp_id_;
    int64_t distinct = 0;
    for (int64_t e : cur_)
      if (stamp_[e] != stamp_id_) {
        stamp_[e] = stamp_id_;
        ++distinct;
      }
    return distinct == distinct_n_;
  }

  // The exponents of the class (mod n) whose weights split mod kn.
  std::vector<int64_t> refined() {
    ++stamp_id_;
    std::vector<int64_t> out;
    for (size_t w = 0; w < cur_.size(); ++w) {
      const size_t g = group_of_[w];
      if (gstamp_[g] != stamp_id_) {
        gstamp_[g] = stamp_id_;
        gfirst_[g] = cur_[w];
        gsplit_[g] = 0;
      } else if (cur_[w] != gfirst_[g] && !gsplit_[g]) {
        gsplit_[g] = 1;
        out.push_back(gexp_[g]);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int64_t order() const {
    int64_t g = kn_;
    for (int64_t c : lift_) g = std::gcd(g, c);
    return kn_ / g;
  }

  const std::vector<int64_t>& lift() const { return lift_; }
  int64_t kn() const { return kn_; }

 private:
  int64_t n_;
  int k_;
  int64_t kn_;
  int rank_;
  std::vector<std::vector<int64_t>> weights_;
  std::vector<std::vector<int64_t>> delta_;  // per coordinate, per weight
  std::vector<int64_t> cur_;                 // exponent mod kn per weight
  std::vector<size_t> group_of_;             // weight -> exponent group of t
  std::vector<int64_t> gexp_;                // group -> exponent mod n
  int64_t distinct_n_ = 0;
  std::vector<int64_t> stamp_;
  std::vector<int64_t> gstamp_, gfirst_;
  std::vector<char> gsplit_;
  int64_t stamp_id_ = 0;
  std::vector<int> j_;
  std::vector<int64_t> lift_;
};

// First lift with order above the bound splitting nothing, if any.
std::optional<TorusElement> find_witness(const TorusElement& t, int k, const WeightSystem& ws,
                                         int64_t bound) {
  PreimageScanner scan(t, k, ws);
  for (bool more = true; more; more = scan.advance()) {
    if (!scan.no_refinement()) continue;
    if (scan.order() <= bound) continue;
    return TorusElement{t.group, static_cast<int>(scan.kn()), scan.lift()};
  }
  return std::nullopt;
}

}  // namespace

int blueprint_order_bound(GroupType g) { return g == GroupType::E7 ? 75 : 18; }

std::vector<TorusElement> preimages(const TorusElement& t, int k) {
  if (k < 1) fail("preimages: lift factor " + std::to_string(k) + " must be positive");
  const int rank = static_cast<int>(t.coords.size());
  const int64_t total = lift_count(k, rank);
  if (total > kLiftMaterializeCap)
    throw ResourceError("preimages: " + std::to_string(k) + "^" + std::to_string(rank) +
                        " lifts exceed the materialization cap");
  const int64_t kn = int64_t(k) * t.n;
  std::vector<TorusElement> out;
  out.reserve(total);
  std::vector<int> j(rank, 0);
  for (;;) {
    TorusElement lift{t.group, static_cast<int>(kn), t.coords};
    for (int i = 0; i < rank; ++i) lift.coords[i] += int64_t(t.n) * j[i];
    out.push_back(std::move(lift));
    int i = rank - 1;
    while (i >= 0 && ++j[i] == k) j[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::vector<int> default_k_options(GroupType g, int n, int p) {
  if (n < 1) fail("default_k_options: n must be positive");
  if (!is_prime(p)) fail("default_k_options: p = " + std::to_string(p) + " is not prime");
  const int64_t bound = blueprint_order_bound(g);
  const int64_t pn = int64_t(p) * n;
  std::vector<int> ks;
  for (int k = 1;; ++k)
    if (int64_t(k) * n > bound && std::gcd(int64_t(k), pn) == 1) {
      ks.push_back(k);
      break;
    }
  for (int k : {2, 3, 5})
    if (std::gcd(int64_t(k), pn) == 1) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

BlueprintResult is_blueprint(const TorusElement& t, ModuleId module_id, int p,
                             std::vector<int> k_options) {
  check_characteristic(t, p);
  const WeightSystem ws = module_weights(t.group, module_id, p);
  const int64_t bound = blueprint_order_bound(t.group);

  BlueprintResult res;
  if (!eigenvalues(t, ws).is_real()) {
    res.verdict = BlueprintVerdict::OutOfBound;
    return res;
  }
  if (k_options.empty()) k_options = default_k_options(t.group, t.n, p);
  std::sort(k_options.begin(), k_options.end());
  k_options.erase(std::unique(k_options.begin(), k_options.end()), k_options.end());
  for (int k : k_options) check_lift_factor(k, p);

  for (int k : k_options) {
    if (int64_t(k) * t.n <= bound) continue;
    if (auto witness = find_witness(t, k, ws, bound)) {
      res.verdict = BlueprintVerdict::Blueprint;
      res.witness_k = k;
      res.witness = std::move(witness);
      return res;
    }
  }

  // Not a blueprint: report one lift per distinct minimal refined set among
  // the large-order lifts, for the factor attaining the minimum.
  res.verdict = BlueprintVerdict::NotBlueprint;
  size_t best_size = SIZE_MAX;
  for (int k : k_options) {
    if (int64_t(k) * t.n <= bound) continue;
    PreimageScanner scan(t, k, ws);
    for (bool more = true; more; more = scan.advance()) {
      if (scan.order() <= bound) continue;
      std::vector<int64_t> refined = scan.refined();
      if (refined.size() > best_size) continue;
      if (refined.size() < best_size) {
        best_size = refined.size();
        res.best_k = k;
        res.best_splits.clear();
      } else if (res.best_k != k) {
        continue;  // an earlier factor already attained this minimum
      }
      const bool seen = std::any_of(res.best_splits.begin(), res.best_splits.end(),
                                    [&](const PreimageSplit& s) { return s.refined == refined; });
      if (seen) continue;
      PreimageSplit split;
      split.preimage = TorusElement{t.group, static_cast<int>(scan.kn()), scan.lift()};
      split.order = scan.order();
      split.refined = std::move(refined);
      res.best_splits.push_back(std::move(split));
    }
  }
  return res;
}

SplitReport split_report(const TorusElement& t, int k, ModuleId module_id, int p,
                         const std::vector<int64_t>& protected_indices) {
  check_characteristic(t, p);
  check_lift_factor(k, p);
  const int rank = static_cast<int>(t.coords.size());
  if (lift_count(k, rank) > kLiftMaterializeCap)
    throw ResourceError("split_report: " + std::to_string(k) + "^" + std::to_string(rank) +
                        " lifts exceed the materialization cap");
  const WeightSystem ws = module_weights(t.group, module_id, p);

  std::vector<int64_t> guarded;
  guarded.reserve(protected_indices.size());
  for (int64_t i : protected_indices) guarded.push_back(pos_mod(i, t.n));
  std::sort(guarded.begin(), guarded.end());

  SplitReport report;
  report.k = k;
  PreimageScanner scan(t, k, ws);
  for (bool more = true; more; more = scan.advance()) {
    PreimageSplit split;
    split.preimage = TorusElement{t.group, static_cast<int>(scan.kn()), scan.lift()};
    split.order = scan.order();
    split.refined = scan.refined();
    const bool clean = std::none_of(split.refined.begin(), split.refined.end(), [&](int64_t e) {
      return std::binary_search(guarded.begin(), guarded.end(), e);
    });
    if (clean) report.compatible.push_back(report.preimages.size());
    report.preimages.push_back(std::move(split));
  }
  return report;
}

CensusResult census(const ClassTable& table, int k, int threads) {
  if (table.n % table.p == 0)
    fail("census: order modulus " + std::to_string(table.n) +
         " is divisible by the characteristic " + std::to_string(table.p));
  check_lift_factor(k, table.p);
  const WeightSystem ws = module_weights(table.group, table.module_id, table.p);
  const int64_t bound = blueprint_order_bound(table.group);

  CensusResult result;
  result.group = table.group;
  result.n = table.n;
  result.module_id = table.module_id;
  result.p = table.p;
  result.k = k;

  enum class Verdict : char { Blueprint, NotBlueprint, OutOfBound };
  std::vector<Verdict> verdicts(table.entries.size());

  int nthreads = threads;
  if (nthreads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    nthreads = hw ? static_cast<int>(hw) : 1;
  }
  nthreads = std::min<int>(nthreads, std::max<size_t>(table.entries.size(), 1));

  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= table.entries.size()) return;
      const ClassEntry& entry = table.entries[i];
      if (!entry.eigs.is_real()) {
        verdicts[i] = Verdict::OutOfBound;
        continue;
      }
      verdicts[i] = find_witness(entry.rep, k, ws, bound) ? Verdict::Blueprint
                                                          : Verdict::NotBlueprint;
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (size_t i = 0; i < table.entries.size(); ++i) {
    switch (verdicts[i]) {
      case Verdict::Blueprint:
        ++result.blueprint_count;
        break;
      case Verdict::NotBlueprint:
        ++result.non_blueprint_count;
        result.non_blueprints.push_back(table.entries[i].rep);
        break;
      case Verdict::OutOfBound:
        ++result.out_of_bound_count;
        result.out_of_bounds.push_back(table.entries[i].rep);
        break;
    }
  }
  return result;
}

CensusResult census(GroupType g, int n, ModuleId module_id, int p, int k, int threads,
                    uint64_t max_points) {
  const ClassTable table = enumerate_classes(g, n, module_id, p, /*exact_order=*/true, max_points);
  return census(table, k, threads);
}

}  // namespace exc
