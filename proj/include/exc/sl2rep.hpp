// Modular representation arithmetic for SL2(p^a) and PSL2(p^a): simple-module
// labels and their Brauer eigenvalues, Ext^1 / H^1 data, pressure, tensor
// products over SL2(p), restriction from SL2(p^a) to SL2(p), and the complete
// indecomposable / projective calculus for SL2(p).
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exc/cyclotomic.hpp"

namespace exc {

enum class CentralChar { Trivial, Faithful };

// How a rank-1 subgroup sits relative to the centre: a PSL2 image (central
// involution trivial) or an SL2 whose central involution survives in the
// ambient group.  Irrelevant in characteristic 2, where the two coincide.
enum class EmbeddingType { PSL, SLWithCenter };

// A simple module for SL2(p^a) in Steinberg tensor form: the tensor product
// over its factors (j, r) of L(r)^{Frob^j}, with 0 <= j < a and 1 <= r <= p-1.
// The empty factor list is the trivial module.
struct SimpleLabel {
  int p = 2;
  int a = 1;
  std::vector<std::pair<int, int>> factors;  // (twist, weight), sorted by twist

  SimpleLabel() = default;
  SimpleLabel(int p_, int a_, std::vector<std::pair<int, int>> factors_);

  int64_t dim() const;  // product of (r + 1)
  bool trivial() const { return factors.empty(); }
  // Parity of the weight sum for odd p; always Trivial for p = 2, where the
  // centre itself is trivial.
  CentralChar central_char() const;
  bool faithful() const { return central_char() == CentralChar::Faithful; }

  bool operator==(const SimpleLabel&) const = default;
  auto operator<=>(const SimpleLabel&) const = default;

  // Text form: "1", bare "<dim>" when a = 1, otherwise "<dim>_{t1,...,tk}"
  // with 1-based twists listed by increasing factor dimension, plus "^{(m)}"
  // when distinct factorizations share dimension and twist list.
  std::string to_string() const;
  static SimpleLabel parse(int p, int a, const std::string& text);
};

// All simple labels of dimension <= max_dim with the given central character,
// ordered by (dimension, label).
std::vector<SimpleLabel> simples_up_to(int p, int a, int64_t max_dim, CentralChar cc);

// Eigenvalues over Z_n of a semisimple element acting on the module, where
// for odd p the element acts on the natural SL2 module with eigenvalues
// xi^{+-e} for a fixed root of unity xi of order 2n (weight exponents are
// then always even for consistent (label, e) combinations; an odd exponent
// is a parity error).  For p = 2 the group has trivial centre and torus
// orders are odd, so the element acts with eigenvalues omega^{+-e} for omega
// of order n and weight exponents are taken directly mod n.
EigenvalueMultiset sl2_eigenvalues(const SimpleLabel& label, int64_t e, int n);

// Eigenvalues over Z_M of an element of the full SL2(p^a) torus of order M
// acting with eigenvalues eta^{+-e} on the natural module, eta of order M.
// No halving: a weight-s vector contributes exponent e*s mod M.  Faithful
// labels require M even (the central involution is eta^{M/2}).
EigenvalueMultiset sl2_torus_eigenvalues(const SimpleLabel& label, int64_t e, int M);

// dim H^1(H, label).
int h1_dim(const SimpleLabel& label);

// dim Ext^1(A, B) where known exactly: all of p = 2, all of a = 1, and static
// tables for p = 3 (a <= 6, dims <= 9), p = 5 (a = 2,3, dims <= 8) and p = 7
// (a = 2, dims <= 9).  Modules of different central character or involving
// the full Steinberg always give 0.  Anything else is std::nullopt.
std::optional<int> ext1_dim(const SimpleLabel& A, const SimpleLabel& B);

// A multiset of composition factors sharing one central character.
struct FactorMultiset {
  int p = 2;
  int a = 1;
  std::vector<std::pair<SimpleLabel, int64_t>> entries;  // (label, multiplicity >= 1)

  FactorMultiset() = default;
  FactorMultiset(int p_, int a_, std::vector<std::pair<SimpleLabel, int64_t>> entries_);
  int64_t dimension() const;
  CentralChar central_char() const;
  std::string to_string() const;  // "5^2,3^3,1" style, decreasing dimension
};

// Plain pressure: sum over factors of (dim H^1 - [factor is trivial]).
int64_t pressure(const FactorMultiset& v);
// Mset-pressure: sum over factors A and M in Mset of (Ext^1(M,A) - [M = A]).
// Verifies the hypotheses (Ext vanishes inside Mset, Ext symmetric against
// all factors); throws NotTabulatedError if a needed value is not tabulated.
int64_t pressure(const FactorMultiset& v, const std::vector<SimpleLabel>& mset);

// An indecomposable module for SL2(p): a simple (including Steinberg), a
// projective cover P(i) of the i-dimensional simple, or a two-socle-layer
// "zigzag" with socle dimensions i, i+2, ..., j and top dimensions
// p-j+eps, ..., p-i+del for endpoint signs eps, del in {-1, +1}.
struct IndecomposableSL2p {
  enum class Kind { Simple, Projective, Zigzag };
  int p = 2;
  Kind kind = Kind::Simple;
  int i = 1;            // simple/projective: dimension label; zigzag: socle start
  int j = 1;            // zigzag: socle end (i <= j, same parity)
  int eps = 0, del = 0; // zigzag endpoint signs

  static IndecomposableSL2p simple(int p, int dim);
  static IndecomposableSL2p projective(int p, int dim);
  static IndecomposableSL2p zigzag(int p, int i, int j, int eps, int del);

  int64_t dim() const;
  CentralChar central_char() const;
  std::vector<int> socle_dims() const;  // zigzag socle (or the single layer)
  std::vector<int> top_dims() const;
  std::vector<int> composition_factor_dims() const;  // multiset, ascending
  bool self_dual() const;
  std::string to_string() const;  // "P(3)", "3/1,3", "5", ...

  bool operator==(const IndecomposableSL2p&) const = default;
  auto operator<=>(const IndecomposableSL2p&) const = default;
};

// L(lambda) (x) L(mu) over SL2(p) as a list of indecomposable summands
// (simples, projectives, Steinbergs), 0 <= mu, lambda <= p-1.
std::vector<IndecomposableSL2p> tensor_sl2p(int p, int lambda, int mu);

// Restriction of a simple SL2(p^a)-module to SL2(p): exact indecomposable
// summands plus the composition-factor dimension multiset.
struct Restriction {
  std::vector<std::pair<IndecomposableSL2p, int64_t>> summands;  // canonical order
  std::vector<std::pair<int, int64_t>> factor_dims;              // (dim, mult), dim desc
  int64_t dimension() const;
};
Restriction restrict_to_sl2p(const SimpleLabel& label);

// Every indecomposable except the full Steinberg, for one central character:
// non-Steinberg simples, non-simple projectives, and all zigzags.
std::vector<IndecomposableSL2p> indecomposables(int p, CentralChar cc);
// The self-dual ones (simples, projectives, zigzags with dim(N_1)+dim(N_r)
// = p +- 1 and matching endpoint signs).
std::vector<IndecomposableSL2p> self_dual_indecomposables(int p, CentralChar cc);

// Jordan block sizes (descending) of an order-p unipotent element.
std::vector<int> jordan_blocks(const IndecomposableSL2p& m);

// Jordan type of J_a (x) J_b over F_p computed by explicit matrix rank
// arithmetic; independent oracle for the tensor calculus.
std::vector<int> jordan_tensor_oracle(int p, int a, int b);

// Eigenvalue multiset of an indecomposable on a torus element (sum over its
// composition factors), for the same (e, n) convention as sl2_eigenvalues.
EigenvalueMultiset indec_eigenvalues(const IndecomposableSL2p& m, int64_t e, int n);

// Dimensions of the +1 and -1 eigenspaces of the torus involution.
// Faithful labels see only the central involution, acting as -1.
std::pair<int64_t, int64_t> eigenspace_signature(const SimpleLabel& label, int64_t torus_order);

// Character-level symmetric and exterior square.
std::pair<EigenvalueMultiset, EigenvalueMultiset> sym2_alt2(const EigenvalueMultiset& m);

}  // namespace exc
