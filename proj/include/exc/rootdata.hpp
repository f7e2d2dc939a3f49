// Root systems, Weyl groups, and the weight systems (with multiplicities) of
// the minimal and adjoint modules of F4, E6 and E7.
//
// Conventions: Cartan matrix A[i][j] = <alpha_i, alpha_j^vee>, Bourbaki node
// numbering.  Weights are stored in fundamental-weight coordinates, so the
// pairing of a weight with a torus point given in coroot coordinates is a
// plain integer dot product.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "exc/common.hpp"

namespace exc {

enum class GroupType { F4, E6, E7 };
enum class ModuleId { Vmin, Adjoint };

std::string group_name(GroupType g);
GroupType parse_group(const std::string& s);
std::string module_name(ModuleId m);
ModuleId parse_module(const std::string& s);

struct RootSystem {
  std::string type;  // "A3", "F4", "E7", ...
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // rank x rank
  std::vector<std::vector<int>> roots;   // all roots, simple-root coordinates

  // s_i on a weight in fundamental-weight coordinates: w_j -= w_i * A[i][j].
  std::vector<int64_t> reflect_weight(int i, std::vector<int64_t> w) const;
  // s_i on a point in coroot coordinates: only coordinate i changes,
  // c_i -= sum_j A[i][j] * c_j.  Entries are reduced mod `modulus` if > 0.
  void reflect_coroot_inplace(int i, std::vector<int64_t>& c, int64_t modulus = 0) const;

  // The highest root in simple-root coordinates (irreducible systems only).
  std::vector<int> highest_root() const;
};

// Build from a type string: "A<n>", "B<n>", "C<n>", "D<n>", "E6", "E7", "F4", "G2".
RootSystem build_root_system(const std::string& type);
RootSystem build_root_system(GroupType g);

// |W|, computed by iterated orbit-stabilizer on fundamental-weight orbits.
uint64_t weyl_order(const RootSystem& rs);

// Integer inverse-transpose data for the Cartan matrix: adj = adjugate of A,
// det = det(A), so that (A^{-1})_{ij} = adj[i][j] / det exactly.
struct CartanInverse {
  std::vector<std::vector<int64_t>> adj;
  int64_t det = 1;
};
CartanInverse cartan_adjugate(const RootSystem& rs);

struct WeightSystem {
  GroupType group;
  ModuleId module_id;
  int p = 0;
  // (weight in fundamental-weight coordinates, multiplicity)
  std::vector<std::pair<std::vector<int64_t>, int64_t>> weights;

  int64_t dimension() const;
};

// Weight system of V_min or the adjoint module in characteristic p.  Nonzero
// weights are the characteristic-zero ones; the zero-weight multiplicity
// carries the characteristic adjustment (F4 Vmin: 2 - [p=3]; E6 adjoint:
// 6 - [p=3]; E7 adjoint: 7 - [p=2]).
WeightSystem module_weights(GroupType g, ModuleId mod, int p);

// The dual weight system (all weights negated).  Identity for every module
// here except E6 Vmin, whose dual is the other 27-dimensional module.
WeightSystem dual(const WeightSystem& ws);

bool is_prime(int64_t p);

}  // namespace exc
