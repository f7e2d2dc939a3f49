// Root system construction by reflection closure from the Cartan matrix,
// Weyl group orders by orbit-stabilizer recursion, and the weight systems of
// the minimal and adjoint modules.
#include "exc/rootdata.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace exc {

std::string group_name(GroupType g) {
  switch (g) {
    case GroupType::F4: return "F4";
    case GroupType::E6: return "E6";
    case GroupType::E7: return "E7";
  }
  fail("group_name: bad enum");
}

GroupType parse_group(const std::string& s) {
  if (s == "F4") return GroupType::F4;
  if (s == "E6") return GroupType::E6;
  if (s == "E7") return GroupType::E7;
  fail("unknown group \"" + s + "\" (expected F4, E6 or E7)");
}

std::string module_name(ModuleId m) {
  switch (m) {
    case ModuleId::Vmin: return "Vmin";
    case ModuleId::Adjoint: return "Adjoint";
  }
  fail("module_name: bad enum");
}

ModuleId parse_module(const std::string& s) {
  if (s == "Vmin" || s == "vmin" || s == "min") return ModuleId::Vmin;
  if (s == "Adjoint" || s == "adjoint" || s == "adj") return ModuleId::Adjoint;
  fail("unknown module \"" + s + "\" (expected Vmin or Adjoint)");
}

std::vector<int64_t> RootSystem::reflect_weight(int i, std::vector<int64_t> w) const {
  const int64_t wi = w[i];
  if (wi != 0)
    for (int j = 0; j < rank; ++j) w[j] -= wi * cartan[i][j];
  return w;
}

void RootSystem::reflect_coroot_inplace(int i, std::vector<int64_t>& c, int64_t modulus) const {
  int64_t dot = 0;
  for (int j = 0; j < rank; ++j) dot += static_cast<int64_t>(cartan[i][j]) * c[j];
  c[i] -= dot;
  if (modulus > 0) c[i] = pos_mod(c[i], modulus);
}

std::vector<int> RootSystem::highest_root() const {
  const std::vector<int>* best = nullptr;
  int best_height = INT32_MIN;
  for (const auto& r : roots) {
    int h = 0;
    for (int k : r) h += k;
    if (h > best_height) {
      best_height = h;
      best = &r;
    }
  }
  if (!best) fail("highest_root: empty root system");
  return *best;
}

namespace {

std::vector<std::vector<int>> cartan_matrix(const std::string& type) {
  auto chain = [](int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      a[i][i] = 2;
      if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
    }
    return a;
  };
  if (type.size() < 2) fail("unknown root system type \"" + type + "\"");
  const char family = type[0];
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(type.substr(1), &used);
    if (used != type.size() - 1) fail("junk");
  } catch (const std::exception&) {
    fail("unknown root system type \"" + type + "\"");
  }
  if (n < 1) fail("root system rank must be positive: \"" + type + "\"");
  switch (family) {
    case 'A':
      return chain(n);
    case 'B': {
      // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2.
      if (n < 2) fail("B_n needs n >= 2");
      auto a = chain(n);
      a[n - 2][n - 1] = -2;
      return a;
    }
    case 'C': {
      if (n < 2) fail("C_n needs n >= 2");
      auto a = chain(n);
      a[n - 1][n - 2] = -2;
      return a;
    }
    case 'D': {
      if (n < 3) fail("D_n needs n >= 3");
      auto a = chain(n);
      // Fork: node n-1 attaches to node n-3 instead of n-2.
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
      return a;
    }
    case 'E': {
      if (n < 6 || n > 8) fail("E_n needs n in {6,7,8}");
      // Bourbaki: chain 1-3-4-5-...-n with node 2 attached to node 4.
      std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      return a;
    }
    case 'F': {
      if (n != 4) fail("F_n needs n = 4");
      // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
      return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    }
    case 'G': {
      if (n != 2) fail("G_n needs n = 2");
      return {{2, -1}, {-3, 2}};
    }
    default:
      fail("unknown root system type \"" + type + "\"");
  }
}

}  // namespace

RootSystem build_root_system(const std::string& type) {
  RootSystem rs;
  rs.type = type;
  rs.cartan = cartan_matrix(type);
  rs.rank = static_cast<int>(rs.cartan.size());

  // Close the simple roots under all simple reflections.  A root beta with
  // simple-root coordinates k transforms under s_i by
  // k_i -= sum_j A[j][i] * k_j (column i of the Cartan matrix).
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < rs.rank; ++i) {
    std::vector<int> e(rs.rank, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(std::move(e));
  }
  while (!queue.empty()) {
    std::vector<int> k = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < rs.rank; ++i) {
      int dot = 0;
      for (int j = 0; j < rs.rank; ++j) dot += rs.cartan[j][i] * k[j];
      std::vector<int> img = k;
      img[i] -= dot;
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  rs.roots.assign(seen.begin(), seen.end());
  return rs;
}

RootSystem build_root_system(GroupType g) { return build_root_system(group_name(g)); }

namespace {

// |W| for the (possibly reducible) system given by a Cartan matrix, by
// |W| = |orbit of omega_0| * |W of the system with node 0 removed|.
uint64_t weyl_order_rec(const std::vector<std::vector<int>>& cartan) {
  const int rank = static_cast<int>(cartan.size());
  if (rank == 0) return 1;

  std::set<std::vector<int64_t>> orbit;
  std::vector<std::vector<int64_t>> queue;
  std::vector<int64_t> w0(rank, 0);
  w0[0] = 1;
  orbit.insert(w0);
  queue.push_back(std::move(w0));
  while (!queue.empty()) {
    std::vector<int64_t> w = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < rank; ++i) {
      if (w[i] == 0) continue;
      std::vector<int64_t> img = w;
      const int64_t wi = img[i];
      for (int j = 0; j < rank; ++j) img[j] -= wi * cartan[i][j];
      if (orbit.insert(img).second) queue.push_back(std::move(img));
    }
  }

  std::vector<std::vector<int>> sub(rank - 1, std::vector<int>(rank - 1));
  for (int i = 1; i < rank; ++i)
    for (int j = 1; j < rank; ++j) sub[i - 1][j - 1] = cartan[i][j];
  return static_cast<uint64_t>(orbit.size()) * weyl_order_rec(sub);
}

}  // namespace

uint64_t weyl_order(const RootSystem& rs) { return weyl_order_rec(rs.cartan); }

CartanInverse cartan_adjugate(const RootSystem& rs) {
  const int n = rs.rank;
  // Adjugate via cofactors; ranks here are at most 8 so this is immediate.
  auto minor_det = [&](int skip_row, int skip_col) {
    std::vector<std::vector<int64_t>> m;
    for (int i = 0; i < n; ++i) {
      if (i == skip_row) continue;
      std::vector<int64_t> row;
      for (int j = 0; j < n; ++j)
        if (j != skip_col) row.push_back(rs.cartan[i][j]);
      m.push_back(std::move(row));
    }
    // Fraction-free Gaussian elimination (Bareiss) for an exact determinant.
    const int k = static_cast<int>(m.size());
    if (k == 0) return static_cast<int64_t>(1);
    int64_t prev = 1;
    int64_t sign = 1;
    for (int col = 0; col < k - 1; ++col) {
      if (m[col][col] == 0) {
        int piv = -1;
        for (int r = col + 1; r < k; ++r)
          if (m[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) return static_cast<int64_t>(0);
        std::swap(m[col], m[piv]);
        sign = -sign;
      }
      for (int r = col + 1; r < k; ++r) {
        for (int c = col + 1; c < k; ++c)
          m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) / prev;
        m[r][col] = 0;
      }
      prev = m[col][col];
    }
    return sign * m[k - 1][k - 1];
  };
  CartanInverse inv;
  inv.adj.assign(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int64_t c = minor_det(j, i);
      inv.adj[i][j] = ((i + j) % 2 == 0) ? c : -c;
    }
  int64_t det = 0;
  for (int j = 0; j < n; ++j) det += static_cast<int64_t>(rs.cartan[0][j]) * inv.adj[j][0];
  inv.det = det;
  return inv;
}

int64_t WeightSystem::dimension() const {
  int64_t d = 0;
  for (const auto& [w, m] : weights) d += m;
  return d;
}

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

// Weyl orbit of a weight given in fundamental-weight coordinates.
std::vector<std::vector<int64_t>> weight_orbit(const RootSystem& rs, std::vector<int64_t> start) {
  std::set<std::vector<int64_t>> orbit;
  std::vector<std::vector<int64_t>> queue;
  orbit.insert(start);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    std::vector<int64_t> w = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < rs.rank; ++i) {
      if (w[i] == 0) continue;
      std::vector<int64_t> img = rs.reflect_weight(i, w);
      if (orbit.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return std::vector<std::vector<int64_t>>(orbit.begin(), orbit.end());
}

}  // namespace

WeightSystem module_weights(GroupType g, ModuleId mod, int p) {
  if (!is_prime(p)) fail("module_weights: characteristic must be prime");
  const RootSystem rs = build_root_system(g);
  WeightSystem ws;
  ws.group = g;
  ws.module_id = mod;
  ws.p = p;

  int64_t zero_mult = 0;
  if (mod == ModuleId::Adjoint) {
    // Nonzero weights are the roots, each with multiplicity 1.
    for (const auto& r : rs.roots) {
      std::vector<int64_t> fund(rs.rank, 0);
      for (int j = 0; j < rs.rank; ++j)
        for (int i = 0; i < rs.rank; ++i) fund[j] += static_cast<int64_t>(r[i]) * rs.cartan[i][j];
      ws.weights.emplace_back(std::move(fund), 1);
    }
    switch (g) {
      case GroupType::F4: zero_mult = 4; break;
      case GroupType::E6: zero_mult = 6 - (p == 3 ? 1 : 0); break;
      case GroupType::E7: zero_mult = 7 - (p == 2 ? 1 : 0); break;
    }
  } else {
    std::vector<int64_t> hw(rs.rank, 0);
    switch (g) {
      case GroupType::F4:
        hw[3] = 1;  // 26-dimensional module, highest weight omega_4
        zero_mult = 2 - (p == 3 ? 1 : 0);
        break;
      case GroupType::E6:
        hw[0] = 1;  // 27, highest weight omega_1
        break;
      case GroupType::E7:
        hw[6] = 1;  // 56, highest weight omega_7
        break;
    }
    for (auto& w : weight_orbit(rs, hw)) ws.weights.emplace_back(std::move(w), 1);
  }
  if (zero_mult > 0) ws.weights.emplace_back(std::vector<int64_t>(rs.rank, 0), zero_mult);
  return ws;
}

WeightSystem dual(const WeightSystem& ws) {
  WeightSystem out = ws;
  for (auto& [w, m] : out.weights)
    for (auto& c : w) c = -c;
  return out;
}

}  // namespace exc
