// Weyl-orbit enumeration of torus n-torsion.  The flood fill walks the whole
// of (Z_n)^rank with a visited bitset; simple reflections change a single
// coroot coordinate, so each step is a sparse integer update.  The alcove
// backend instead enumerates Kac coordinates (s_0, ..., s_rank) with
// s_0 + sum marks[i] * s_i = n, one tuple per Weyl orbit.
#include "exc/ssclasses.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>

namespace exc {

int64_t element_order(const TorusElement& t) {
  int64_t g = t.n;
  for (int64_t c : t.coords) g = std::gcd(g, c);
  return t.n / g;
}

int64_t order_from_eigenvalues(const EigenvalueMultiset& m) {
  int64_t g = m.n;
  for (int i = 0; i < m.n; ++i)
    if (m.mult[i] != 0) g = std::gcd(g, static_cast<int64_t>(i));
  return m.n / g;
}

EigenvalueMultiset eigenvalues(const TorusElement& t, const WeightSystem& ws) {
  if (std::gcd(static_cast<int64_t>(t.n), static_cast<int64_t>(ws.p)) != 1)
    fail("eigenvalues: characteristic " + std::to_string(ws.p) + " divides the order modulus " +
         std::to_string(t.n));
  if (t.group != ws.group) fail("eigenvalues: group mismatch between element and weight system");
  EigenvalueMultiset out = EigenvalueMultiset::empty(t.n);
  for (const auto& [w, mult] : ws.weights) {
    int64_t dot = 0;
    for (size_t i = 0; i < w.size(); ++i) dot += w[i] * t.coords[i];
    out.mult[pos_mod(dot, t.n)] += mult;
  }
  return out;
}

namespace {

struct SparseRow {
  // Nonzero off-diagonal entries of one Cartan row, as (column, value).
  std::vector<std::pair<int, int>> entries;
};

// Shared per-enumeration context for the flood fill.
struct FloodContext {
  int rank;
  int n;
  std::vector<SparseRow> rows;       // off-diagonal Cartan structure
  std::vector<uint64_t> pow;        // pow[i] = n^(rank-1-i): lexicographic packing
};

uint64_t pack(const FloodContext& ctx, const std::vector<int64_t>& c) {
  uint64_t idx = 0;
  for (int i = 0; i < ctx.rank; ++i) idx += static_cast<uint64_t>(c[i]) * ctx.pow[i];
  return idx;
}

void unpack(const FloodContext& ctx, uint64_t idx, std::vector<int64_t>& c) {
  for (int i = 0; i < ctx.rank; ++i) {
    c[i] = static_cast<int64_t>(idx / ctx.pow[i]);
    idx %= ctx.pow[i];
  }
}

}  // namespace

ClassTable enumerate_classes(GroupType g, int n, ModuleId module_id, int p, bool exact_order,
                             uint64_t max_points) {
  if (n < 1) fail("enumerate_classes: order modulus must be positive");
  if (std::gcd(static_cast<int64_t>(n), static_cast<int64_t>(p)) != 1)
    fail("enumerate_classes: characteristic divides the order modulus");
  const RootSystem rs = build_root_system(g);
  const WeightSystem ws = module_weights(g, module_id, p);

  uint64_t total = 1;
  for (int i = 0; i < rs.rank; ++i) {
    if (total > max_points / static_cast<uint64_t>(n) + 1) total = UINT64_MAX;
    else total *= static_cast<uint64_t>(n);
  }
  if (total == UINT64_MAX || total > max_points)
    throw ResourceError("enumerate_classes: " + std::to_string(n) + "^" +
                        std::to_string(rs.rank) + " torus points exceed the budget of " +
                        std::to_string(max_points) +
                        " (use the alcove backend for large moduli)");

  FloodContext ctx;
  ctx.rank = rs.rank;
  ctx.n = n;
  ctx.rows.resize(rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      if (j != i && rs.cartan[i][j] != 0) ctx.rows[i].entries.emplace_back(j, rs.cartan[i][j]);
  ctx.pow.resize(rs.rank);
  uint64_t pw = 1;
  for (int i = rs.rank - 1; i >= 0; --i) {
    ctx.pow[i] = pw;
    pw *= static_cast<uint64_t>(n);
  }

  std::vector<uint64_t> visited((total + 63) / 64, 0);
  auto test_and_set = [&](uint64_t idx) {
    uint64_t& word = visited[idx >> 6];
    const uint64_t bit = 1ull << (idx & 63);
    if (word & bit) return false;
    word |= bit;
    return true;
  };

  ClassTable table{g, n, module_id, p, {}};
  std::vector<uint64_t> frontier;
  std::vector<int64_t> c(rs.rank), img(rs.rank);
  uint64_t covered = 0;

  for (uint64_t start = 0; start < total; ++start) {
    if (!test_and_set(start)) continue;
    // First unvisited index in scan order is the lexicographic minimum of a
    // fresh orbit (indices are packed with coordinate 0 most significant).
    uint64_t orbit_size = 1;
    frontier.clear();
    frontier.push_back(start);
    while (!frontier.empty()) {
      const uint64_t idx = frontier.back();
      frontier.pop_back();
      unpack(ctx, idx, c);
      for (int i = 0; i < ctx.rank; ++i) {
        // s_i: c_i -> c_i - sum_j A[i][j] c_j = -c_i - (off-diagonal part).
        int64_t dot = 2 * c[i];
        for (const auto& [j, a] : ctx.rows[i].entries) dot += a * c[j];
        const int64_t ci_new = pos_mod(c[i] - dot, n);
        if (ci_new == c[i]) continue;
        const uint64_t idx2 = idx + (static_cast<uint64_t>(ci_new) - static_cast<uint64_t>(c[i])) * ctx.pow[i];
        if (test_and_set(idx2)) {
          frontier.push_back(idx2);
          ++orbit_size;
        }
      }
    }
    covered += orbit_size;

    TorusElement rep{g, n, {}};
    rep.coords.resize(rs.rank);
    unpack(ctx, start, rep.coords);
    const bool exact = (element_order(rep) == n);
    if (exact_order && !exact) continue;
    table.entries.push_back(ClassEntry{rep, eigenvalues(rep, ws), exact});
  }

  if (covered != total)
    fail("enumerate_classes: orbit sizes covered " + std::to_string(covered) + " of " +
         std::to_string(total) + " points");
  return table;
}

ClassTable enumerate_classes_alcove(GroupType g, int n, ModuleId module_id, int p,
                                    bool exact_order) {
  if (n < 1) fail("enumerate_classes_alcove: order modulus must be positive");
  if (std::gcd(static_cast<int64_t>(n), static_cast<int64_t>(p)) != 1)
    fail("enumerate_classes_alcove: characteristic divides the order modulus");
  const RootSystem rs = build_root_system(g);
  const WeightSystem ws = module_weights(g, module_id, p);
  const std::vector<int> marks = rs.highest_root();
  const CartanInverse ci = cartan_adjugate(rs);

  ClassTable table{g, n, module_id, p, {}};
  std::vector<int64_t> s(rs.rank, 0);

  // Depth-first over Kac coordinates s_1..s_rank; s_0 = n - sum marks[i]*s_i
  // is forced and only needs to be non-negative.
  std::function<void(int, int64_t)> rec = [&](int i, int64_t remaining) {
    if (i == rs.rank) {
      // Restrict to the coroot lattice: sum_i s_i * adj[j][i] must be
      // divisible by det for every j (fundamental coweights assembled from
      // the inverse-transpose Cartan matrix).
      std::vector<int64_t> coords(rs.rank);
      for (int j = 0; j < rs.rank; ++j) {
        int64_t acc = 0;
        for (int k = 0; k < rs.rank; ++k) acc += s[k] * ci.adj[j][k];
        if (acc % ci.det != 0) return;
        coords[j] = pos_mod(acc / ci.det, n);
      }
      TorusElement rep{g, n, std::move(coords)};
      const bool exact = (element_order(rep) == n);
      if (exact_order && !exact) return;
      table.entries.push_back(ClassEntry{rep, eigenvalues(rep, ws), exact});
      return;
    }
    for (int64_t v = 0; v * marks[i] <= remaining; ++v) {
      s[i] = v;
      rec(i + 1, remaining - v * marks[i]);
    }
    s[i] = 0;
  };
  rec(0, n);
  std::sort(table.entries.begin(), table.entries.end(),
            [](const ClassEntry& a, const ClassEntry& b) { return a.rep.coords < b.rep.coords; });
  return table;
}

std::set<CyclotomicInteger> trace_set(const ClassTable& table) {
  std::set<CyclotomicInteger> out;
  for (const auto& e : table.entries) out.insert(reduce(e.eigs));
  return out;
}

namespace {

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char byte : data) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  return h;
}

std::string table_body(const ClassTable& table) {
  std::string body;
  for (const auto& e : table.entries) {
    std::string line;
    for (size_t i = 0; i < e.rep.coords.size(); ++i) {
      if (i) line += ',';
      line += std::to_string(e.rep.coords[i]);
    }
    line += '\t';
    line += e.exact_order ? '1' : '0';
    line += '\t';
    line += e.eigs.to_string();
    line += '\n';
    body += line;
  }
  return body;
}

}  // namespace

void store(const ClassTable& table, const std::string& path) {
  const std::string body = table_body(table);
  char checksum[17];
  std::snprintf(checksum, sizeof checksum, "%016llx",
                static_cast<unsigned long long>(fnv1a(body)));
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("store: cannot open \"" + path + "\" for writing");
  out << "# sstable v1 group=" << group_name(table.group) << " n=" << table.n
      << " module=" << module_name(table.module_id) << " p=" << table.p
      << " count=" << table.entries.size() << " checksum=" << checksum << "\n";
  out << body;
  if (!out) fail("store: write to \"" + path + "\" failed");
}

ClassTable load(GroupType g, int n, ModuleId module_id, int p, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingTableError("load: cannot open \"" + path + "\"");
  std::string header;
  if (!std::getline(in, header)) throw MissingTableError("load: empty file \"" + path + "\"");

  char grp[16] = {0}, mod[16] = {0}, ck[32] = {0};
  int hn = 0, hp = 0;
  unsigned long long count = 0;
  if (std::sscanf(header.c_str(), "# sstable v1 group=%15s n=%d module=%15s p=%d count=%llu checksum=%31s",
                  grp, &hn, mod, &hp, &count, ck) != 6)
    fail("load: unrecognized header/version in \"" + path + "\": " + header);
  if (std::string(grp) != group_name(g) || hn != n || std::string(mod) != module_name(module_id) ||
      hp != p)
    fail("load: header mismatch in \"" + path + "\": have " + header + ", want group=" +
         group_name(g) + " n=" + std::to_string(n) + " module=" + module_name(module_id) +
         " p=" + std::to_string(p));

  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char expect[17];
  std::snprintf(expect, sizeof expect, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  if (std::string(expect) != ck)
    fail("load: checksum mismatch in \"" + path + "\" (file truncated or edited)");

  const RootSystem rs = build_root_system(g);
  ClassTable table{g, n, module_id, p, {}};
  size_t pos = 0;
  while (pos < body.size()) {
    size_t eol = body.find('\n', pos);
    if (eol == std::string::npos) eol = body.size();
    const std::string line = body.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      fail("load: malformed line in \"" + path + "\": " + line);
    ClassEntry e;
    e.rep.group = g;
    e.rep.n = n;
    size_t p0 = 0;
    const std::string coords = line.substr(0, t1);
    while (p0 <= coords.size()) {
      size_t comma = coords.find(',', p0);
      const std::string tok =
          coords.substr(p0, comma == std::string::npos ? std::string::npos : comma - p0);
      try {
        size_t used = 0;
        e.rep.coords.push_back(std::stoll(tok, &used));
        if (used != tok.size() || tok.empty()) fail("junk");
      } catch (const std::exception&) {
        fail("load: bad coordinate \"" + tok + "\" in \"" + path + "\"");
      }
      if (comma == std::string::npos) break;
      p0 = comma + 1;
    }
    if (static_cast<int>(e.rep.coords.size()) != rs.rank)
      fail("load: wrong coordinate count in \"" + path + "\": " + line);
    const std::string flag = line.substr(t1 + 1, t2 - t1 - 1);
    if (flag != "0" && flag != "1") fail("load: bad exact-order flag in \"" + path + "\": " + line);
    e.exact_order = (flag == "1");
    e.eigs = EigenvalueMultiset::parse(line.substr(t2 + 1));
    if (e.eigs.n != n) fail("load: eigenvalue order mismatch in \"" + path + "\": " + line);
    table.entries.push_back(std::move(e));
  }
  if (table.entries.size() != count)
    fail("load: header count " + std::to_string(count) + " does not match " +
         std::to_string(table.entries.size()) + " entries in \"" + path + "\"");
  return table;
}

}  // namespace exc
