// Modular representation arithmetic for SL2(p^a): label algebra, eigenvalues,
// cohomology tables, tensor/restriction calculus and indecomposables.
#include "exc/sl2rep.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "exc/common.hpp"

namespace exc {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; (int64_t)d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_pa(int p, int a) {
  if (!is_prime(p)) fail("sl2rep: p = " + std::to_string(p) + " is not prime");
  if (a < 1 || a > 20) fail("sl2rep: field exponent a = " + std::to_string(a) + " out of range");
}

}  // namespace

// ---------------------------------------------------------------------------
// SimpleLabel basics

SimpleLabel::SimpleLabel(int p_, int a_, std::vector<std::pair<int, int>> factors_)
    : p(p_), a(a_), factors(std::move(factors_)) {
  check_pa(p, a);
  std::sort(factors.begin(), factors.end());
  std::set<int> twists;
  for (auto& [j, r] : factors) {
    if (j < 0 || j >= a) fail("simple label: twist " + std::to_string(j) + " out of range");
    if (r < 1 || r > p - 1) fail("simple label: weight " + std::to_string(r) + " out of range");
    if (!twists.insert(j).second) fail("simple label: repeated twist " + std::to_string(j));
  }
}

int64_t SimpleLabel::dim() const {
  int64_t d = 1;
  for (auto& [j, r] : factors) d *= r + 1;
  return d;
}

CentralChar SimpleLabel::central_char() const {
  if (p == 2) return CentralChar::Trivial;  // the centre itself is trivial
  int s = 0;
  for (auto& [j, r] : factors) s += r;
  return (s % 2 == 0) ? CentralChar::Trivial : CentralChar::Faithful;
}

namespace {

// Factor-dimension sequence and matching 0-based twist sequence, ordered by
// (dimension, twist) ascending: the printing order of subscripts.
static std::pair<std::vector<int>, std::vector<int>> print_order(const SimpleLabel& l) {
  std::vector<std::pair<int, int>> ds;  // (dim, twist)
  for (auto& [j, r] : l.factors) ds.push_back({r + 1, j});
  std::sort(ds.begin(), ds.end());
  std::vector<int> dims, twists;
  for (auto& [d, j] : ds) {
    dims.push_back(d);
    twists.push_back(j);
  }
  return {dims, twists};
}

// All labels of the given exact dimension.
static void labels_with_dim_rec(int p, int a, int64_t target, int twist, SimpleLabel cur,
                                std::vector<SimpleLabel>& out) {
  if (target == 1) {
    out.push_back(cur);
    return;
  }
  if (twist >= a) return;
  // Leave this twist empty.
  labels_with_dim_rec(p, a, target, twist + 1, cur, out);
  for (int r = 1; r <= p - 1; ++r) {
    if (target % (r + 1) != 0) continue;
    SimpleLabel next = cur;
    next.factors.push_back({twist, r});
    labels_with_dim_rec(p, a, target / (r + 1), twist + 1, std::move(next), out);
  }
}

static std::vector<SimpleLabel> labels_with_dim(int p, int a, int64_t d) {
  if (d < 1) fail("labels_with_dim: dimension must be positive");
  SimpleLabel seed;
  seed.p = p;
  seed.a = a;
  std::vector<SimpleLabel> out;
  labels_with_dim_rec(p, a, d, 0, seed, out);
  for (auto& l : out) std::sort(l.factors.begin(), l.factors.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Labels colliding with `l` in the printed form (same dim and twist list).
static std::vector<SimpleLabel> print_collisions(const SimpleLabel& l) {
  auto [dims, twists] = print_order(l);
  std::vector<SimpleLabel> hits;
  for (const auto& cand : labels_with_dim(l.p, l.a, l.dim())) {
    auto [cd, ct] = print_order(cand);
    if (ct == twists) hits.push_back(cand);
  }
  // Rank collisions by their factor-dimension sequence, lexicographically.
  std::sort(hits.begin(), hits.end(), [](const SimpleLabel& x, const SimpleLabel& y) {
    return print_order(x).first < print_order(y).first;
  });
  return hits;
}

}  // namespace

std::string SimpleLabel::to_string() const {
  if (factors.empty()) return "1";
  std::string s = std::to_string(dim());
  if (a == 1) return s;  // single possible twist: bare dimension
  auto [dims, twists] = print_order(*this);
  s += "_{";
  for (size_t i = 0; i < twists.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(twists[i] + 1);
  }
  s += "}";
  auto hits = print_collisions(*this);
  if (hits.size() > 1) {
    size_t rank = 0;
    while (rank < hits.size() && !(hits[rank] == *this)) ++rank;
    if (rank == hits.size()) fail("simple label printing: collision scan failed");
    s += "^{(" + std::to_string(rank + 1) + ")}";
  }
  return s;
}

SimpleLabel SimpleLabel::parse(int p, int a, const std::string& text) {
  check_pa(p, a);
  size_t pos = 0;
  auto parse_int = [&](const char* what) {
    size_t start = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start) fail(std::string("simple label parse: expected ") + what + " in '" + text + "'");
    return std::stoll(text.substr(start, pos - start));
  };
  int64_t d = parse_int("dimension");
  std::vector<int> twists;
  bool have_subscripts = false;
  if (pos + 1 < text.size() && text[pos] == '_' && text[pos + 1] == '{') {
    have_subscripts = true;
    pos += 2;
    while (true) {
      int64_t t = parse_int("twist");
      if (t < 1 || t > a) fail("simple label parse: twist " + std::to_string(t) + " out of range in '" + text + "'");
      twists.push_back((int)t - 1);
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      fail("simple label parse: malformed twist list in '" + text + "'");
    }
  }
  int64_t super = 0;
  if (pos < text.size() && text[pos] == '^') {
    if (text.compare(pos, 3, "^{(") != 0) fail("simple label parse: malformed superscript in '" + text + "'");
    pos += 3;
    super = parse_int("superscript");
    if (text.compare(pos, 2, ")}") != 0) fail("simple label parse: malformed superscript in '" + text + "'");
    pos += 2;
  }
  if (pos != text.size()) fail("simple label parse: trailing characters in '" + text + "'");

  if (!have_subscripts) {
    if (super != 0) fail("simple label parse: superscript without twist list in '" + text + "'");
    auto cands = labels_with_dim(p, a, d);
    if (cands.empty()) fail("simple label parse: no module of dimension " + std::to_string(d));
    if (cands.size() > 1)
      fail("simple label parse: '" + text + "' is ambiguous; give the twist list");
    return cands[0];
  }

  // Candidates: ascending factor-dimension sequences multiplying to d whose
  // printed twist order matches the given list.
  std::vector<SimpleLabel> cands;
  std::vector<int> dims(twists.size());
  auto valid_assignment = [&]() {
    // Within equal-dimension runs the printed twists must ascend.
    for (size_t i = 0; i + 1 < dims.size(); ++i)
      if (dims[i] == dims[i + 1] && twists[i] >= twists[i + 1]) return false;
    std::set<int> seen(twists.begin(), twists.end());
    return seen.size() == twists.size();
  };
  std::function<void(size_t, int64_t, int)> rec = [&](size_t idx, int64_t rem, int min_d) {
    if (idx == dims.size()) {
      if (rem != 1 || !valid_assignment()) return;
      std::vector<std::pair<int, int>> fs;
      for (size_t i = 0; i < dims.size(); ++i) fs.push_back({twists[i], dims[i] - 1});
      cands.push_back(SimpleLabel(p, a, fs));
      return;
    }
    for (int f = min_d; f <= p; ++f) {
      if (rem % f != 0) continue;
      dims[idx] = f;
      rec(idx + 1, rem / f, f);
    }
  };
  rec(0, d, 2);
  std::sort(cands.begin(), cands.end(), [](const SimpleLabel& x, const SimpleLabel& y) {
    return print_order(x).first < print_order(y).first;
  });
  if (cands.empty()) fail("simple label parse: '" + text + "' matches no module");
  if (super == 0) {
    if (cands.size() > 1) fail("simple label parse: '" + text + "' is ambiguous; give a superscript");
    return cands[0];
  }
  if (super < 1 || (size_t)super > cands.size())
    fail("simple label parse: superscript out of range in '" + text + "'");
  return cands[super - 1];
}

std::vector<SimpleLabel> simples_up_to(int p, int a, int64_t max_dim, CentralChar cc) {
  check_pa(p, a);
  if (max_dim < 1) fail("simples_up_to: bound must be positive");
  std::vector<SimpleLabel> out;
  SimpleLabel seed;
  seed.p = p;
  seed.a = a;
  std::function<void(int, int64_t, SimpleLabel&)> rec = [&](int twist, int64_t dim, SimpleLabel& cur) {
    if (twist == a) {
      if (cur.central_char() == cc) out.push_back(cur);
      return;
    }
    rec(twist + 1, dim, cur);
    for (int r = 1; r <= p - 1; ++r) {
      if (dim * (r + 1) > max_dim) break;
      cur.factors.push_back({twist, r});
      rec(twist + 1, dim * (r + 1), cur);
      cur.factors.pop_back();
    }
  };
  rec(0, 1, seed);
  for (auto& l : out) std::sort(l.factors.begin(), l.factors.end());
  std::sort(out.begin(), out.end(), [](const SimpleLabel& x, const SimpleLabel& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    return x < y;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Eigenvalues

namespace {

// All weight exponents (with multiplicity) of the Steinberg tensor factors:
// sums over factors (j, r) of p^j * (r - 2k), 0 <= k <= r.
std::vector<int64_t> weight_exponents(const SimpleLabel& label) {
  std::vector<int64_t> sums = {0};
  for (auto& [j, r] : label.factors) {
    int64_t scale = ipow(label.p, j);
    std::vector<int64_t> next;
    next.reserve(sums.size() * (r + 1));
    for (int64_t s : sums)
      for (int k = 0; k <= r; ++k) next.push_back(s + scale * (r - 2 * k));
    sums = std::move(next);
  }
  return sums;
}

}  // namespace

EigenvalueMultiset sl2_eigenvalues(const SimpleLabel& label, int64_t e, int n) {
  if (n < 1) fail("sl2_eigenvalues: order must be positive");
  EigenvalueMultiset out = EigenvalueMultiset::empty(n);
  if (label.p == 2) {
    // Trivial centre: the natural eigenvalues are omega^{+-e} with omega of
    // order n, so a weight-s vector contributes exponent e*s directly.
    for (int64_t s : weight_exponents(label)) out.add(pos_mod(e * s, n), 1);
    return out;
  }
  // Odd p: natural eigenvalues xi^{+-e} with xi of order 2n.
  for (int64_t s : weight_exponents(label)) {
    int64_t ee = pos_mod(e * s, 2 * n);
    if (ee % 2 != 0)
      fail("sl2_eigenvalues: weight exponent parity mismatch for label " + label.to_string() +
           " (module does not descend to this torus)");
    out.add(ee / 2, 1);
  }
  return out;
}

EigenvalueMultiset sl2_torus_eigenvalues(const SimpleLabel& label, int64_t e, int M) {
  if (M < 1) fail("sl2_torus_eigenvalues: order must be positive");
  if (label.faithful() && M % 2 != 0)
    fail("sl2_torus_eigenvalues: faithful label " + label.to_string() +
         " needs an even torus order");
  EigenvalueMultiset out = EigenvalueMultiset::empty(M);
  for (int64_t s : weight_exponents(label)) out.add(pos_mod(e * s, M), 1);
  return out;
}

// ---------------------------------------------------------------------------
// H^1 and Ext^1

namespace {

// Does the label consist of the two factors (j, p-2) and (j+1 mod a, 1)?
// For p = 2 the first factor degenerates away, leaving a single (j+1, 1).
static bool is_h1_shape(const SimpleLabel& l, int j) {
  int p = l.p, a = l.a;
  std::vector<std::pair<int, int>> want;
  if (p > 2) want.push_back({j, p - 2});
  want.push_back({(j + 1) % a, 1});
  std::sort(want.begin(), want.end());
  return l.factors == want;
}

}  // namespace

int h1_dim(const SimpleLabel& label) {
  int p = label.p, a = label.a;
  if (a == 1) {
    if (p == 2) return label.trivial() ? 1 : 0;
    return label.dim() == p - 2 ? 1 : 0;
  }
  if (p == 3 && a == 2) return label.dim() == 4 ? 2 : 0;
  // Shape (j, p-2) (x) (j+1, 1): every twist for p = 2, 3 but only the
  // non-wrapping ones (j <= a-2) for p >= 5.
  int jmax = (p <= 3) ? a - 1 : a - 2;
  for (int j = 0; j <= jmax; ++j)
    if (is_h1_shape(label, j)) return 1;
  return 0;
}

namespace {

using LabelPair = std::pair<SimpleLabel, SimpleLabel>;

static LabelPair norm_pair(SimpleLabel x, SimpleLabel y) {
  if (y < x) std::swap(x, y);
  return {std::move(x), std::move(y)};
}

static SimpleLabel mk(int p, int a, std::initializer_list<std::pair<int, int>> fs) {
  return SimpleLabel(p, a, std::vector<std::pair<int, int>>(fs));
}

// Known nonzero Ext^1 pairs between simple modules of trivial central
// character for small odd p and a >= 2, with their dimensions.
static std::map<LabelPair, int> small_ext_table(int p, int a) {
  std::map<LabelPair, int> t;
  auto put = [&](const SimpleLabel& x, const SimpleLabel& y, int v) { t[norm_pair(x, y)] = v; };
  auto triv = mk(p, a, {});
  if (p == 3) {
    auto four = [&](int u, int v) {
      return mk(p, a, {{pos_mod(u, a), 1}, {pos_mod(v, a), 1}});
    };
    auto three = [&](int u) { return mk(p, a, {{pos_mod(u, a), 2}}); };
    if (a == 2) {
      put(triv, four(0, 1), 2);
      put(three(0), four(0, 1), 1);
      put(three(1), four(0, 1), 1);
      return t;
    }
    for (int u = 0; u < a; ++u) {
      put(triv, four(u, u + 1), 1);
      put(three(u), four(u - 1, u), 1);
      for (int v = 0; v < a; ++v) {
        if (u == v) continue;
        for (int dv : {-1, 1}) {
          // Shift one index of {u, v} by one step.
          int u2 = pos_mod(u + dv, a);
          if (u2 == v) continue;
          put(four(u, v), four(u2, v), 1);
        }
      }
    }
    return t;
  }
  auto one_factor = [&](int u, int r) { return mk(p, a, {{pos_mod(u, a), r}}); };
  auto two_factor = [&](int u, int ru, int v, int rv) {
    return mk(p, a, {{pos_mod(u, a), ru}, {pos_mod(v, a), rv}});
  };
  if (p == 5 && a == 2) {
    auto e8_21 = two_factor(0, 3, 1, 1);  // 8_{2,1}
    auto e8_12 = two_factor(0, 1, 1, 3);  // 8_{1,2}
    auto four = two_factor(0, 1, 1, 1);
    put(triv, e8_21, 1);
    put(one_factor(0, 2), four, 1);
    put(one_factor(1, 2), four, 1);
    put(one_factor(0, 2), e8_12, 1);
    put(one_factor(1, 2), e8_21, 1);
    return t;
  }
  if (p == 5 && a == 3) {
    // Non-wrapping trivial pairs, matching 1-cohomology.
    put(triv, two_factor(0, 3, 1, 1), 1);
    put(triv, two_factor(1, 3, 2, 1), 1);
    for (int u = 0; u < a; ++u) {
      put(one_factor(u, 2), two_factor(u, 1, u + 1, 1), 1);
      put(one_factor(u, 2), two_factor(u, 1, u - 1, 3), 1);
      put(two_factor(u, 1, u + 1, 1), two_factor(u + 1, 1, u - 1, 3), 1);
    }
    return t;
  }
  if (p == 7 && a == 2) {
    put(one_factor(0, 2), two_factor(0, 3, 1, 1), 1);  // 3_1, 8_{2,1}
    put(one_factor(1, 2), two_factor(0, 1, 1, 3), 1);  // 3_2, 8_{1,2}
    put(two_factor(0, 1, 1, 1), one_factor(0, 4), 1);  // 4_{1,2}, 5_1
    put(two_factor(0, 1, 1, 1), one_factor(1, 4), 1);  // 4_{1,2}, 5_2
    put(two_factor(0, 1, 1, 3), two_factor(0, 2, 1, 2), 1);  // 8_{1,2}, 9_{1,2}
    put(two_factor(0, 3, 1, 1), two_factor(0, 2, 1, 2), 1);  // 8_{2,1}, 9_{1,2}
    return t;
  }
  fail("small_ext_table: no table for p = " + std::to_string(p) + ", a = " + std::to_string(a));
}

static bool is_full_steinberg(const SimpleLabel& l) {
  if ((int)l.factors.size() != l.a) return false;
  for (auto& [j, r] : l.factors)
    if (r != l.p - 1) return false;
  return true;
}

// Maximum dimension covered by the small ext tables, per (p, a).
static int64_t ext_table_bound(int p, int a) {
  if (p == 3 && a >= 2 && a <= 6) return 9;
  if (p == 5 && (a == 2 || a == 3)) return 8;
  if (p == 7 && a == 2) return 9;
  return 0;
}

}  // namespace

std::optional<int> ext1_dim(const SimpleLabel& A, const SimpleLabel& B) {
  if (A.p != B.p || A.a != B.a) fail("ext1_dim: labels for different groups");
  int p = A.p, a = A.a;
  if (A.central_char() != B.central_char()) return 0;  // distinct blocks
  if (is_full_steinberg(A) || is_full_steinberg(B)) return 0;  // projective
  if (p == 2) {
    if (a == 1) return (A.trivial() && B.trivial()) ? 1 : 0;
    // Cyclic successor criterion on the twist supports.
    std::set<int> I, J;
    for (auto& [j, r] : A.factors) I.insert(j);
    for (auto& [j, r] : B.factors) J.insert(j);
    std::set<int> un, in;
    std::set_union(I.begin(), I.end(), J.begin(), J.end(), std::inserter(un, un.end()));
    std::set_intersection(I.begin(), I.end(), J.begin(), J.end(), std::inserter(in, in.end()));
    if (un.size() != in.size() + 1 || (int)un.size() >= a) return 0;
    for (int i : un) {
      int s = (i + 1) % a;
      if (un.count(s) && !in.count(s)) return 0;
    }
    return 1;
  }
  if (a == 1) {
    int64_t i = A.dim(), j = B.dim();
    if (i == p || j == p) return 0;  // Steinberg, already handled, kept for clarity
    if (i + j == p - 1) return 1;
    if (i + j == p + 1 && i >= 2 && j >= 2) return 1;
    return 0;
  }
  int64_t bound = ext_table_bound(p, a);
  if (bound == 0 || A.dim() > bound || B.dim() > bound) return std::nullopt;
  if (A.central_char() == CentralChar::Faithful) return std::nullopt;
  auto table = small_ext_table(p, a);
  auto it = table.find(norm_pair(A, B));
  return it == table.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Factor multisets and pressure

FactorMultiset::FactorMultiset(int p_, int a_, std::vector<std::pair<SimpleLabel, int64_t>> entries_)
    : p(p_), a(a_), entries(std::move(entries_)) {
  check_pa(p, a);
  std::optional<CentralChar> cc;
  for (auto& [l, m] : entries) {
    if (l.p != p || l.a != a) fail("factor multiset: label for a different group");
    if (m < 1) fail("factor multiset: multiplicity must be positive");
    if (!cc) cc = l.central_char();
    if (*cc != l.central_char()) fail("factor multiset: mixed central characters");
  }
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    if (x.first.dim() != y.first.dim()) return x.first.dim() > y.first.dim();
    return x.first < y.first;
  });
  for (size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].first == entries[i + 1].first) fail("factor multiset: repeated label entry");
}

int64_t FactorMultiset::dimension() const {
  int64_t d = 0;
  for (auto& [l, m] : entries) d += l.dim() * m;
  return d;
}

CentralChar FactorMultiset::central_char() const {
  return entries.empty() ? CentralChar::Trivial : entries.front().first.central_char();
}

std::string FactorMultiset::to_string() const {
  if (entries.empty()) return "0";
  std::string s;
  for (auto& [l, m] : entries) {
    if (!s.empty()) s += ",";
    s += l.to_string();
    if (m > 1) s += "^" + std::to_string(m);
  }
  return s;
}

int64_t pressure(const FactorMultiset& v) {
  int64_t total = 0;
  for (auto& [l, m] : v.entries) total += m * (int64_t)(h1_dim(l) - (l.trivial() ? 1 : 0));
  return total;
}

int64_t pressure(const FactorMultiset& v, const std::vector<SimpleLabel>& mset) {
  if (mset.empty()) fail("pressure: empty module set");
  for (auto& M : mset)
    if (M.p != v.p || M.a != v.a) fail("pressure: module set label for a different group");
  auto need = [&](const SimpleLabel& x, const SimpleLabel& y) {
    auto e = ext1_dim(x, y);
    if (!e)
      throw NotTabulatedError("pressure: Ext^1(" + x.to_string() + ", " + y.to_string() +
                              ") is not tabulated");
    return *e;
  };
  // Hypotheses: Ext^1 vanishes within the module set, and is symmetric
  // against every composition factor.
  for (auto& M : mset)
    for (auto& M2 : mset)
      if (need(M, M2) != 0)
        fail("pressure: Ext^1 does not vanish within the module set (" + M.to_string() + ", " +
             M2.to_string() + ")");
  int64_t total = 0;
  for (auto& [A, mult] : v.entries) {
    for (auto& M : mset) {
      int e1 = need(M, A), e2 = need(A, M);
      if (e1 != e2)
        fail("pressure: Ext^1 asymmetry between " + M.to_string() + " and " + A.to_string());
      total += mult * (int64_t)(e1 - (M == A ? 1 : 0));
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Indecomposables for SL2(p)

namespace {

void check_odd_p(int p) {
  if (!is_prime(p) || p < 3) fail("SL2(p) module calculus requires an odd prime");
}

}  // namespace

IndecomposableSL2p IndecomposableSL2p::simple(int p, int dim) {
  check_odd_p(p);
  if (dim < 1 || dim > p) fail("indecomposable: simple dimension out of range");
  IndecomposableSL2p m;
  m.p = p;
  m.kind = Kind::Simple;
  m.i = m.j = dim;
  return m;
}

IndecomposableSL2p IndecomposableSL2p::projective(int p, int dim) {
  check_odd_p(p);
  if (dim < 1 || dim > p - 1) fail("indecomposable: projective label out of range");
  IndecomposableSL2p m;
  m.p = p;
  m.kind = Kind::Projective;
  m.i = m.j = dim;
  return m;
}

IndecomposableSL2p IndecomposableSL2p::zigzag(int p, int i, int j, int eps, int del) {
  check_odd_p(p);
  IndecomposableSL2p m;
  m.p = p;
  m.kind = Kind::Zigzag;
  m.i = i;
  m.j = j;
  m.eps = eps;
  m.del = del;
  if (i < 1 || j > p - 1 || i > j || (j - i) % 2 != 0) fail("zigzag: bad socle range");
  if (std::abs(eps) != 1 || std::abs(del) != 1) fail("zigzag: signs must be +-1");
  if (del == 1 && i == 1) fail("zigzag: top would contain a Steinberg layer");
  if (eps == -1 && j == p - 1) fail("zigzag: top would contain a zero layer");
  if (i == j && eps > del) fail("zigzag: empty top");
  return m;
}

std::vector<int> IndecomposableSL2p::socle_dims() const {
  if (kind != Kind::Zigzag) fail("socle_dims: only meaningful for zigzags");
  std::vector<int> out;
  for (int d = i; d <= j; d += 2) out.push_back(d);
  return out;
}

std::vector<int> IndecomposableSL2p::top_dims() const {
  if (kind != Kind::Zigzag) fail("top_dims: only meaningful for zigzags");
  std::vector<int> out;
  for (int d = p - j + eps; d <= p - i + del; d += 2) out.push_back(d);
  return out;
}

int64_t IndecomposableSL2p::dim() const {
  switch (kind) {
    case Kind::Simple:
      return i;
    case Kind::Projective:
      return i == 1 ? p : 2 * p;
    case Kind::Zigzag: {
      int64_t d = 0;
      for (int x : socle_dims()) d += x;
      for (int x : top_dims()) d += x;
      return d;
    }
  }
  fail("indecomposable: bad kind");
}

CentralChar IndecomposableSL2p::central_char() const {
  return (i % 2 == 1) ? CentralChar::Trivial : CentralChar::Faithful;
}

std::vector<int> IndecomposableSL2p::composition_factor_dims() const {
  std::vector<int> out;
  switch (kind) {
    case Kind::Simple:
      out = {i};
      break;
    case Kind::Projective:
      if (i == 1)
        out = {1, p - 2, 1};
      else {
        out = {i, i, p + 1 - i};
        if (p - 1 - i >= 1) out.push_back(p - 1 - i);
      }
      break;
    case Kind::Zigzag:
      out = socle_dims();
      for (int d : top_dims()) out.push_back(d);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool IndecomposableSL2p::self_dual() const {
  if (kind != Kind::Zigzag) return true;
  if (eps != del) return false;
  return i + j == p + eps;
}

std::string IndecomposableSL2p::to_string() const {
  switch (kind) {
    case Kind::Simple:
      return std::to_string(i);
    case Kind::Projective:
      return "P(" + std::to_string(i) + ")";
    case Kind::Zigzag: {
      auto join = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) {
          if (!s.empty()) s += ",";
          s += std::to_string(x);
        }
        return s;
      };
      return join(top_dims()) + "/" + join(socle_dims());
    }
  }
  fail("indecomposable: bad kind");
}

// ---------------------------------------------------------------------------
// Tensor products over SL2(p)

std::vector<IndecomposableSL2p> tensor_sl2p(int p, int lambda, int mu) {
  check_odd_p(p);
  if (lambda < 0 || lambda > p - 1 || mu < 0 || mu > p - 1)
    fail("tensor_sl2p: weights must lie in [0, p-1]");
  // Clebsch-Gordan weights, processed from the top; each weight w >= p pairs
  // with 2p-2-w to form a projective block.
  std::vector<int> weights;
  for (int w = lambda + mu; w >= std::abs(lambda - mu); w -= 2) weights.push_back(w);
  std::multiset<int> S(weights.begin(), weights.end());
  std::vector<IndecomposableSL2p> out;
  while (!S.empty()) {
    int w = *S.rbegin();
    if (w <= p - 1) {
      for (int x : S) out.push_back(IndecomposableSL2p::simple(p, x + 1));
      break;
    }
    int v = 2 * p - 2 - w;
    S.erase(std::prev(S.end()));
    auto it = S.find(v);
    if (it == S.end()) fail("tensor_sl2p: internal pairing error");
    S.erase(it);
    if (v == 0) {
      out.push_back(IndecomposableSL2p::projective(p, 1));
      out.push_back(IndecomposableSL2p::simple(p, p));
    } else {
      out.push_back(IndecomposableSL2p::projective(p, v + 1));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Projective decomposition from composition factors

namespace {

// Solve A x = b exactly over the integers (A square, nonsingular, integral
// solution expected) by fraction-free elimination.
static std::vector<int64_t> solve_int_system(std::vector<std::vector<__int128>> A,
                                             std::vector<__int128> b) {
  size_t n = A.size();
  for (size_t k = 0; k < n; ++k) A[k].push_back(b[k]);
  __int128 prev = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && A[piv][k] == 0) ++piv;
    if (piv == n) fail("solve_int_system: singular matrix");
    std::swap(A[piv], A[k]);
    for (size_t r = k + 1; r < n; ++r) {
      for (size_t c = k + 1; c <= n; ++c) A[r][c] = (A[k][k] * A[r][c] - A[r][k] * A[k][c]) / prev;
      A[r][k] = 0;
    }
    prev = A[k][k];
  }
  std::vector<__int128> x(n);
  for (size_t ii = n; ii-- > 0;) {
    __int128 num = A[ii][n];
    for (size_t c = ii + 1; c < n; ++c) num -= A[ii][c] * x[c];
    if (A[ii][ii] == 0 || num % A[ii][ii] != 0) fail("solve_int_system: non-integral solution");
    x[ii] = num / A[ii][ii];
  }
  std::vector<int64_t> out(n);
  for (size_t ii = 0; ii < n; ++ii) out[ii] = (int64_t)x[ii];
  return out;
}

// Decompose a projective SL2(p)-module, given by the multiset of its
// composition-factor dimensions, into projective covers and Steinbergs.
static std::map<IndecomposableSL2p, int64_t> decompose_projective(
    int p, const std::map<int, int64_t>& factor_counts) {
  if (factor_counts.empty()) return {};
  int parity = factor_counts.begin()->first % 2;
  std::vector<int> dims;  // P-labels of this central character
  for (int d = parity == 1 ? 1 : 2; d <= p - 1; d += 2) dims.push_back(d);
  for (auto& [d, c] : factor_counts)
    if (d % 2 != parity || d < 1 || d > p)
      fail("decompose_projective: inconsistent factor dimensions");

  int64_t steinbergs = 0;
  if (auto it = factor_counts.find(p); it != factor_counts.end()) steinbergs = it->second;

  size_t nvars = dims.size();
  std::vector<std::vector<__int128>> A(nvars, std::vector<__int128>(nvars, 0));
  std::vector<__int128> b(nvars, 0);
  for (size_t col = 0; col < nvars; ++col) {
    auto fs = IndecomposableSL2p::projective(p, dims[col]).composition_factor_dims();
    for (int f : fs) {
      size_t row = std::find(dims.begin(), dims.end(), f) - dims.begin();
      if (row == nvars) fail("decompose_projective: factor outside character range");
      A[row][col] += 1;
    }
  }
  for (size_t row = 0; row < nvars; ++row) {
    auto it = factor_counts.find(dims[row]);
    b[row] = it == factor_counts.end() ? 0 : it->second;
  }
  auto sol = solve_int_system(std::move(A), std::move(b));
  std::map<IndecomposableSL2p, int64_t> out;
  int64_t total = steinbergs * p;
  for (size_t c = 0; c < nvars; ++c) {
    if (sol[c] < 0) fail("decompose_projective: negative multiplicity (module not projective)");
    if (sol[c] > 0) out[IndecomposableSL2p::projective(p, dims[c])] = sol[c];
    total += sol[c] * IndecomposableSL2p::projective(p, dims[c]).dim();
  }
  if (steinbergs > 0) out[IndecomposableSL2p::simple(p, p)] = steinbergs;
  int64_t want = 0;
  for (auto& [d, cnt] : factor_counts) want += (int64_t)d * cnt;
  if (total != want) fail("decompose_projective: dimension bookkeeping failed");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Restriction to SL2(p)

int64_t Restriction::dimension() const {
  int64_t d = 0;
  for (auto& [m, mult] : summands) d += m.dim() * mult;
  return d;
}

Restriction restrict_to_sl2p(const SimpleLabel& label) {
  int p = label.p;
  check_odd_p(p);
  std::map<IndecomposableSL2p, int64_t> current;
  current[IndecomposableSL2p::simple(p, 1)] = 1;
  for (auto& [twist, r] : label.factors) {
    std::map<IndecomposableSL2p, int64_t> next;
    for (auto& [m, mult] : current) {
      if (m.kind == IndecomposableSL2p::Kind::Simple) {
        for (auto& part : tensor_sl2p(p, m.i - 1, r)) next[part] += mult;
      } else {
        // Projective (x) simple stays projective; recover the summands from
        // the composition factors.
        std::map<int, int64_t> counts;
        for (int f : m.composition_factor_dims())
          for (auto& part : tensor_sl2p(p, f - 1, r))
            for (int g : part.composition_factor_dims()) counts[g] += 1;
        for (auto& [part, c] : decompose_projective(p, counts)) next[part] += c * mult;
      }
    }
    current = std::move(next);
  }
  Restriction out;
  for (auto& [m, mult] : current) out.summands.push_back({m, mult});
  std::sort(out.summands.begin(), out.summands.end(), [](const auto& x, const auto& y) {
    if (x.first.dim() != y.first.dim()) return x.first.dim() > y.first.dim();
    return x.first < y.first;
  });
  std::map<int, int64_t> counts;
  for (auto& [m, mult] : out.summands)
    for (int f : m.composition_factor_dims()) counts[f] += mult;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    out.factor_dims.push_back({it->first, it->second});
  return out;
}

// ---------------------------------------------------------------------------
// Indecomposable catalogue

std::vector<IndecomposableSL2p> indecomposables(int p, CentralChar cc) {
  check_odd_p(p);
  int lo = cc == CentralChar::Trivial ? 1 : 2;
  std::vector<IndecomposableSL2p> out;
  for (int d = lo; d <= p - 1; d += 2) out.push_back(IndecomposableSL2p::simple(p, d));
  for (int d = lo; d <= p - 1; d += 2) out.push_back(IndecomposableSL2p::projective(p, d));
  for (int i = lo; i <= p - 1; i += 2)
    for (int j = i; j <= p - 1; j += 2)
      for (int eps : {-1, 1})
        for (int del : {-1, 1}) {
          if (del == 1 && i == 1) continue;
          if (eps == -1 && j == p - 1) continue;
          if (i == j && eps > del) continue;
          out.push_back(IndecomposableSL2p::zigzag(p, i, j, eps, del));
        }
  return out;
}

std::vector<IndecomposableSL2p> self_dual_indecomposables(int p, CentralChar cc) {
  std::vector<IndecomposableSL2p> out;
  for (auto& m : indecomposables(p, cc))
    if (m.self_dual()) out.push_back(m);
  return out;
}

std::vector<int> jordan_blocks(const IndecomposableSL2p& m) {
  std::vector<int> out;
  switch (m.kind) {
    case IndecomposableSL2p::Kind::Simple:
      out = {m.i};
      break;
    case IndecomposableSL2p::Kind::Projective:
      out.assign(m.dim() / m.p, m.p);
      break;
    case IndecomposableSL2p::Kind::Zigzag: {
      int64_t d = m.dim();
      int r = (int)(d % m.p);
      if (r == 0) fail("jordan_blocks: zigzag dimension divisible by p");
      out.assign((d - r) / m.p, m.p);
      out.push_back(r);
      break;
    }
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// ---------------------------------------------------------------------------
// Matrix oracle for Jordan types of tensor products

namespace {

using Mat = std::vector<std::vector<int>>;

static Mat mat_mul(const Mat& A, const Mat& B, int p) {
  size_t n = A.size();
  Mat C(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (A[i][k] == 0) continue;
      int64_t aik = A[i][k];
      for (size_t j = 0; j < n; ++j) C[i][j] = (int)((C[i][j] + aik * B[k][j]) % p);
    }
  return C;
}

static size_t mat_rank(Mat A, int p) {
  size_t n = A.size(), rank = 0;
  for (size_t col = 0; col < n && rank < n; ++col) {
    size_t piv = rank;
    while (piv < n && A[piv][col] % p == 0) ++piv;
    if (piv == n) continue;
    std::swap(A[piv], A[rank]);
    // Normalize pivot to 1.
    int inv = 1, base = pos_mod(A[rank][col], p), e = p - 2;
    int64_t acc = base;
    while (e) {
      if (e & 1) inv = (int)((int64_t)inv * acc % p);
      acc = acc * acc % p;
      e >>= 1;
    }
    for (size_t j = col; j < n; ++j) A[rank][j] = (int)((int64_t)A[rank][j] * inv % p);
    for (size_t r = 0; r < n; ++r) {
      if (r == rank || A[r][col] % p == 0) continue;
      int64_t f = pos_mod(A[r][col], p);
      for (size_t j = col; j < n; ++j) A[r][j] = (int)pos_mod(A[r][j] - f * A[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<int> jordan_tensor_oracle(int p, int a, int b) {
  check_odd_p(p);
  if (a < 1 || b < 1 || a > p || b > p) fail("jordan_tensor_oracle: block sizes must lie in [1, p]");
  size_t n = (size_t)a * b;
  if (n > 40000) throw ResourceError("jordan_tensor_oracle: tensor dimension too large");
  // N = U (x) U' - I for unipotent Jordan blocks U, U'.
  Mat N(n, std::vector<int>(n, 0));
  auto idx = [&](int r, int c) { return (size_t)r * b + c; };
  for (int r1 = 0; r1 < a; ++r1)
    for (int c1 = 0; c1 < b; ++c1)
      for (int dr = 0; dr <= 1; ++dr)
        for (int dc = 0; dc <= 1; ++dc) {
          if (r1 + dr >= a || c1 + dc >= b) continue;
          int v = 1;
          if (dr == 0 && dc == 0) v = 0;  // subtract identity
          if (v) N[idx(r1, c1)][idx(r1 + dr, c1 + dc)] = 1;
        }
  std::vector<size_t> ranks = {n};
  Mat power = N;
  while (true) {
    size_t r = mat_rank(power, p);
    ranks.push_back(r);
    if (r == 0) break;
    power = mat_mul(power, N, p);
  }
  // Number of blocks of size >= k is rank(N^{k-1}) - rank(N^k).
  std::vector<int> out;
  for (size_t k = 1; k + 1 <= ranks.size(); ++k) {
    size_t at_least_k = ranks[k - 1] - ranks[k];
    size_t at_least_k1 = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (size_t c = 0; c < at_least_k - at_least_k1; ++c) out.push_back((int)k);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

EigenvalueMultiset indec_eigenvalues(const IndecomposableSL2p& m, int64_t e, int n) {
  EigenvalueMultiset out = EigenvalueMultiset::empty(n);
  for (int f : m.composition_factor_dims()) {
    SimpleLabel l = f == 1 ? SimpleLabel(m.p, 1, {})
                           : SimpleLabel(m.p, 1, {{0, f - 1}});
    EigenvalueMultiset part = sl2_eigenvalues(l, e, n);
    for (int k = 0; k < n; ++k) out.add(k, part.at(k));
  }
  return out;
}

std::pair<int64_t, int64_t> eigenspace_signature(const SimpleLabel& label, int64_t torus_order) {
  if (label.p == 2) fail("eigenspace_signature: requires odd characteristic");
  if (torus_order % 2 != 0) fail("eigenspace_signature: torus order must be even");
  int64_t q = ipow(label.p, label.a);
  if (torus_order != q - 1 && torus_order != q + 1)
    fail("eigenspace_signature: torus order must be q-1 or q+1");
  if (label.faithful()) return {0, label.dim()};
  EigenvalueMultiset m = sl2_eigenvalues(label, 1, 2);
  return {m.at(0), m.at(1)};
}

std::pair<EigenvalueMultiset, EigenvalueMultiset> sym2_alt2(const EigenvalueMultiset& m) {
  return {sym2_multiset(m), alt2_multiset(m)};
}

}  // namespace exc
