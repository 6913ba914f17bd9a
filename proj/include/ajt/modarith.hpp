#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace ajt::mod {

/// 2^61 - 1; multiplicative group order 2^61 - 2 has no tiny subgroup traps for random bases.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e != 0) {
    if (e & 1U) r = mul(r, base, p);
    base = mul(base, base, p);
    e >>= 1U;
  }
  return r;
}

/// p must be prime and a nonzero mod p.
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

/// base^e for signed e (base invertible).
inline std::uint64_t spow(std::uint64_t base, std::int64_t e, std::uint64_t p) {
  if (e >= 0) return pow(base, static_cast<std::uint64_t>(e), p);
  // base^(p-1) = 1, so base^-k = base^((p-1) - k mod (p-1))
  const std::uint64_t order = p - 1;
  const std::uint64_t k = static_cast<std::uint64_t>(-(e + 1)) % order + 1;
  return pow(base, (order - k) % order, p);
}

inline std::uint64_t from_mpz(const mpz_class& c, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
  return r.get_ui();
}

inline std::uint64_t from_int(std::int64_t c, std::uint64_t p) {
  if (c >= 0) return static_cast<std::uint64_t>(c) % p;
  const std::uint64_t m = static_cast<std::uint64_t>(-(c + 1)) % p + 1;
  return m == p ? 0 : p - m;
}

}  // namespace ajt::mod
