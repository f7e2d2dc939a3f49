// Exact cyclotomic arithmetic: Phi_n via iterated exact division of x^n - 1,
// trace reduction modulo Phi_n, Galois orbits and power maps on multisets.
#include "exc/cyclotomic.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace exc {

EigenvalueMultiset::EigenvalueMultiset(int n_, std::vector<int64_t> mult_)
    : n(n_), mult(std::move(mult_)) {
  if (n < 1) fail("EigenvalueMultiset: order must be positive");
  if (static_cast<int>(mult.size()) != n)
    fail("EigenvalueMultiset: multiplicity vector length must equal the order");
  for (int64_t m : mult)
    if (m < 0) fail("EigenvalueMultiset: negative multiplicity");
}

EigenvalueMultiset EigenvalueMultiset::empty(int n_) {
  if (n_ < 1) fail("EigenvalueMultiset: order must be positive");
  EigenvalueMultiset m;
  m.n = n_;
  m.mult.assign(n_, 0);
  return m;
}

int64_t EigenvalueMultiset::dimension() const {
  int64_t s = 0;
  for (int64_t m : mult) s += m;
  return s;
}

int64_t EigenvalueMultiset::distinct_count() const {
  int64_t s = 0;
  for (int64_t m : mult) s += (m != 0);
  return s;
}

bool EigenvalueMultiset::is_real() const {
  for (int i = 0; i < n; ++i)
    if (mult[i] != mult[(n - i) % n]) return false;
  return true;
}

std::string EigenvalueMultiset::to_string() const {
  std::string s = "n=" + std::to_string(n) + ";";
  for (int i = 0; i < n; ++i) {
    if (i) s += ',';
    s += std::to_string(mult[i]);
  }
  return s;
}

EigenvalueMultiset EigenvalueMultiset::parse(const std::string& s) {
  if (s.rfind("n=", 0) != 0) fail("EigenvalueMultiset::parse: expected \"n=\" prefix: " + s);
  size_t semi = s.find(';');
  if (semi == std::string::npos) fail("EigenvalueMultiset::parse: missing ';': " + s);
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(s.substr(2, semi - 2), &used);
    if (used != semi - 2) fail("trailing junk");
  } catch (const std::exception&) {
    fail("EigenvalueMultiset::parse: bad order in: " + s);
  }
  if (n < 1) fail("EigenvalueMultiset::parse: order must be positive: " + s);
  std::vector<int64_t> mult;
  mult.reserve(n);
  size_t pos = semi + 1;
  while (pos <= s.size()) {
    size_t next = s.find(',', pos);
    std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      size_t used = 0;
      mult.push_back(std::stoll(tok, &used));
      if (used != tok.size() || tok.empty()) fail("trailing junk");
    } catch (const std::exception&) {
      fail("EigenvalueMultiset::parse: bad multiplicity \"" + tok + "\" in: " + s);
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (static_cast<int>(mult.size()) != n)
    fail("EigenvalueMultiset::parse: expected " + std::to_string(n) + " entries in: " + s);
  return EigenvalueMultiset(n, std::move(mult));
}

bool CyclotomicInteger::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int64_t c) { return c == 0; });
}

std::string CyclotomicInteger::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coeffs[i]);
  }
  return s + "]";
}

int euler_phi(int n) {
  if (n < 1) fail("euler_phi: n must be positive");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of polynomials with integer coefficients (low degree first).
// Requires the divisor to be monic and the division to be exact.
std::vector<int64_t> exact_divide(std::vector<int64_t> num, const std::vector<int64_t>& den) {
  if (den.empty() || den.back() != 1) fail("exact_divide: divisor must be monic");
  if (num.size() < den.size()) fail("exact_divide: degree underflow");
  std::vector<int64_t> quot(num.size() - den.size() + 1, 0);
  for (size_t i = quot.size(); i-- > 0;) {
    int64_t c = num[i + den.size() - 1];
    quot[i] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (int64_t c : num)
    if (c != 0) fail("exact_divide: nonzero remainder");
  return quot;
}

}  // namespace

std::vector<int64_t> cyclotomic_polynomial(int n) {
  if (n < 1) fail("cyclotomic_polynomial: n must be positive");
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) poly = exact_divide(std::move(poly), cyclotomic_polynomial(d));
  return poly;
}

CyclotomicInteger reduce(const EigenvalueMultiset& m) {
  std::vector<int64_t> v = m.mult;
  const std::vector<int64_t> phi = cyclotomic_polynomial(m.n);
  const size_t deg = phi.size() - 1;
  for (size_t i = v.size(); i-- > deg;) {
    int64_t c = v[i];
    if (c == 0) continue;
    v[i] = 0;
    for (size_t j = 0; j < deg; ++j) v[i - deg + j] -= c * phi[j];
  }
  v.resize(deg);
  CyclotomicInteger out;
  out.n = m.n;
  out.coeffs = std::move(v);
  return out;
}

std::vector<EigenvalueMultiset> galois_orbit(const EigenvalueMultiset& m) {
  std::set<EigenvalueMultiset> orbit;
  for (int t = 1; t < m.n || t == 1; ++t) {
    if (std::gcd(t, m.n) != 1) continue;
    EigenvalueMultiset img = EigenvalueMultiset::empty(m.n);
    for (int i = 0; i < m.n; ++i)
      img.mult[static_cast<int>((static_cast<int64_t>(t) * i) % m.n)] += m.mult[i];
    orbit.insert(std::move(img));
  }
  return std::vector<EigenvalueMultiset>(orbit.begin(), orbit.end());
}

EigenvalueMultiset power_multiset(const EigenvalueMultiset& m, int64_t k) {
  const int64_t kk = pos_mod(k, m.n);
  const int64_t g = std::gcd(kk == 0 ? static_cast<int64_t>(m.n) : kk, static_cast<int64_t>(m.n));
  const int nn = static_cast<int>(m.n / g);
  EigenvalueMultiset out = EigenvalueMultiset::empty(nn);
  for (int i = 0; i < m.n; ++i)
    if (m.mult[i] != 0) out.mult[static_cast<int>((kk * i % m.n) / g)] += m.mult[i];
  return out;
}

EigenvalueMultiset tensor_multiset(const EigenvalueMultiset& a, const EigenvalueMultiset& b) {
  if (a.n != b.n) fail("tensor_multiset: mismatched orders");
  EigenvalueMultiset out = EigenvalueMultiset::empty(a.n);
  for (int i = 0; i < a.n; ++i) {
    if (a.mult[i] == 0) continue;
    for (int j = 0; j < b.n; ++j)
      if (b.mult[j] != 0) out.mult[(i + j) % a.n] += a.mult[i] * b.mult[j];
  }
  return out;
}

EigenvalueMultiset sym2_multiset(const EigenvalueMultiset& m) {
  EigenvalueMultiset out = EigenvalueMultiset::empty(m.n);
  for (int i = 0; i < m.n; ++i) {
    if (m.mult[i] == 0) continue;
    out.mult[(2 * i) % m.n] += m.mult[i] * (m.mult[i] + 1) / 2;
    for (int j = i + 1; j < m.n; ++j)
      if (m.mult[j] != 0) out.mult[(i + j) % m.n] += m.mult[i] * m.mult[j];
  }
  return out;
}

EigenvalueMultiset alt2_multiset(const EigenvalueMultiset& m) {
  EigenvalueMultiset out = EigenvalueMultiset::empty(m.n);
  for (int i = 0; i < m.n; ++i) {
    if (m.mult[i] == 0) continue;
    out.mult[(2 * i) % m.n] += m.mult[i] * (m.mult[i] - 1) / 2;
    for (int j = i + 1; j < m.n; ++j)
      if (m.mult[j] != 0) out.mult[(i + j) % m.n] += m.mult[i] * m.mult[j];
  }
  return out;
}

}  // namespace exc
