#pragma once

// Small-integer number theory used throughout the library. Everything here
// is trial-division scale: field sizes are capped well below 2^63.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lrsub {

// Violated precondition on a public operation.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured search or enumeration budget was exceeded. Distinct from a
// negative result: the search did not finish.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A contract that is mathematically guaranteed failed to hold.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b != 0) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr uint64_t lcm_u64(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Prime factorization by trial division, (prime, exponent) pairs in
// ascending prime order.
inline std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  for (uint64_t d = 2; d * d <= n; d += (d == 2) ? 1 : 2) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

// Decomposes q = p^s with p prime, s >= 1.
inline std::optional<std::pair<uint64_t, unsigned>> prime_power(uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return std::make_pair(f[0].first, static_cast<unsigned>(f[0].second));
}

// b^e, throwing on 64-bit overflow.
inline uint64_t ipow_u64(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e > 0) {
    if (e & 1) {
      if (b != 0 && r > std::numeric_limits<uint64_t>::max() / b)
        throw DomainError("ipow_u64: overflow");
      r *= b;
    }
    e >>= 1;
    if (e == 0) break;
    if (b > std::numeric_limits<uint64_t>::max() / b)
      throw DomainError("ipow_u64: overflow");
    b *= b;
  }
  return r;
}

inline std::vector<uint64_t> divisors(uint64_t n) {
  std::vector<uint64_t> out{1};
  for (auto& [p, e] : factorize(n)) {
    size_t sz = out.size();
    uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline uint64_t binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All prime powers in [2, bound], ascending.
inline std::vector<uint64_t> prime_powers_upto(uint64_t bound) {
  std::vector<uint64_t> out;
  for (uint64_t q = 2; q <= bound; ++q)
    if (prime_power(q)) out.push_back(q);
  return out;
}

}  // namespace lrsub
