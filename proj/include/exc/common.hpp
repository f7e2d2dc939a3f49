// Shared small utilities: error reporting and exact integer helpers.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace exc {

using std::int64_t;
using std::uint64_t;

// All recoverable errors in this library are reported as std::runtime_error.
[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

// Enumeration would exceed the configured memory budget.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A required precomputed table (cache file) is absent or unreadable.
struct MissingTableError : std::runtime_error {
  explicit MissingTableError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested fact is outside the encoded/tabulated range.
struct NotTabulatedError : std::runtime_error {
  explicit NotTabulatedError(const std::string& msg) : std::runtime_error(msg) {}
};

// The queried (group, characteristic, module) triple has no encoded
// unipotent-action data at all.
struct NotEncodedError : std::runtime_error {
  explicit NotEncodedError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }
inline int64_t lcm64(int64_t a, int64_t b) { return std::lcm(a, b); }

// Floor-positive remainder: result in [0, m) for m > 0.
inline int64_t pos_mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// a^e for small exact integer work; traps on overflow.
inline int64_t ipow(int64_t a, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (a != 0 && (r > INT64_MAX / (a < 0 ? -a : a))) fail("ipow overflow");
    r *= a;
  }
  return r;
}

}  // namespace exc
