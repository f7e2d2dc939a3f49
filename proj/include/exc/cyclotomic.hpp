// Exact arithmetic with multisets of n-th roots of unity and their traces,
// working in Z[zeta_n] = Z[x]/Phi_n(x).  No floating point anywhere: every
// comparison of traces is an exact equality of algebraic integers.
#pragma once

#include <compare>
#include <string>
#include <vector>

#include "exc/common.hpp"

namespace exc {

// A multiset of n-th roots of unity.  mult[i] is the multiplicity of zeta^i
// where zeta = exp(2*pi*i/n) (any fixed primitive n-th root; everything here
// is Galois-equivariant so the choice never matters).
struct EigenvalueMultiset {
  int n = 1;
  std::vector<int64_t> mult{0};

  EigenvalueMultiset() = default;
  EigenvalueMultiset(int n_, std::vector<int64_t> mult_);
  // Empty multiset (all multiplicities zero) of the given order.
  static EigenvalueMultiset empty(int n_);

  int64_t dimension() const;           // sum of multiplicities
  int64_t distinct_count() const;      // number of nonzero entries
  bool is_real() const;                // mult[i] == mult[n-i] for all i
  // Multiplicity of zeta^i with i taken mod n (handles negatives).
  int64_t at(int64_t i) const { return mult[pos_mod(i, n)]; }
  void add(int64_t i, int64_t count) { mult[pos_mod(i, n)] += count; }

  bool operator==(const EigenvalueMultiset&) const = default;
  auto operator<=>(const EigenvalueMultiset&) const = default;

  // Wire format "n=<n>;m0,m1,...,m{n-1}" used by the class-table cache.
  std::string to_string() const;
  static EigenvalueMultiset parse(const std::string& s);
};

// Element of Z[zeta_n] in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
struct CyclotomicInteger {
  int n = 1;
  std::vector<int64_t> coeffs{0};  // length phi(n)

  bool is_zero() const;
  bool operator==(const CyclotomicInteger&) const = default;
  auto operator<=>(const CyclotomicInteger&) const = default;
  std::string to_string() const;
};

int euler_phi(int n);

// Coefficient list of the n-th cyclotomic polynomial, low degree first;
// monic of degree phi(n).
std::vector<int64_t> cyclotomic_polynomial(int n);

// Trace: sum of mult[i] * zeta^i reduced modulo Phi_n.
CyclotomicInteger reduce(const EigenvalueMultiset& m);

// All images of m under i -> t*i (mod n), gcd(t, n) = 1, sorted and deduplicated.
std::vector<EigenvalueMultiset> galois_orbit(const EigenvalueMultiset& m);

// Eigenvalues of x^k given those of x; result has order n / gcd(n, k).
EigenvalueMultiset power_multiset(const EigenvalueMultiset& m, int64_t k);

// Eigenvalues of a tensor product / symmetric square / exterior square of the
// underlying diagonalizable action.
EigenvalueMultiset tensor_multiset(const EigenvalueMultiset& a, const EigenvalueMultiset& b);
EigenvalueMultiset sym2_multiset(const EigenvalueMultiset& m);
EigenvalueMultiset alt2_multiset(const EigenvalueMultiset& m);

}  // namespace exc
