#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "torsiondeg/errors.hpp"

namespace torsiondeg {

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r > std::numeric_limits<std::uint64_t>::max())
    throw ArgumentError("integer overflow in 64-bit product");
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Inverse of a mod m, for gcd(a, m) = 1. Extended Euclid.
inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m) {
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = static_cast<std::int64_t>(a % m);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1)
    throw ArgumentError("not a unit mod " + std::to_string(m) + ": " +
                        std::to_string(a));
  if (t0 < 0) t0 += m;
  return static_cast<std::uint32_t>(t0);
}

// A prime-power modulus p^N. All residue arithmetic happens relative to one of
// these; two contexts are interchangeable exactly when p and N agree.
struct PrimePower {
  std::uint32_t p = 2;
  std::uint32_t exponent = 1;
  std::uint32_t modulus = 2;

  PrimePower() = default;

  PrimePower(std::uint32_t prime, std::uint32_t n) : p(prime), exponent(n) {
    if (!is_prime(prime))
      throw ArgumentError("not a prime: " + std::to_string(prime));
    if (n < 1) throw ArgumentError("level must be at least 1");
    std::uint64_t m = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      m *= prime;
      if (m > (std::uint64_t{1} << 31))
        throw ArgumentError("modulus " + std::to_string(prime) + "^" +
                            std::to_string(n) + " exceeds 2^31");
    }
    modulus = static_cast<std::uint32_t>(m);
  }

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.p == b.p && a.exponent == b.exponent;
  }
  friend bool operator!=(const PrimePower& a, const PrimePower& b) {
    return !(a == b);
  }

  std::string str() const {
    return std::to_string(p) + "^" + std::to_string(exponent);
  }
};

// p^k for k <= exponent, as a uint32.
inline std::uint32_t prime_power_to(const PrimePower& ctx, std::uint32_t k) {
  if (k > ctx.exponent)
    throw ArgumentError("power exceeds context level");
  std::uint32_t m = 1;
  for (std::uint32_t i = 0; i < k; ++i) m *= ctx.p;
  return m;
}

}  // namespace torsiondeg
