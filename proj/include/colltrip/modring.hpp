#pragma once

#include <cstdint>
#include <string>

#include "colltrip/errors.hpp"

namespace colltrip {

// Residues and intermediate products are held in 64 bits; with n <= 10^6
// a product of two residues stays below 10^12.
using Residue = std::int64_t;

constexpr Residue gcd(Residue a, Residue b) noexcept {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Residue t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr bool is_prime(Residue n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (Residue d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

// The modulus n of Z_n. Construction validates n >= 1; all arithmetic
// returns canonical residues in [0, n).
class Modulus {
 public:
  constexpr explicit Modulus(Residue n) : n_(n), prime_(is_prime(n)) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1, got " + std::to_string(n));
  }

  constexpr Residue value() const noexcept { return n_; }
  constexpr bool prime() const noexcept { return prime_; }

  constexpr Residue reduce(Residue a) const noexcept {
    Residue r = a % n_;
    return r < 0 ? r + n_ : r;
  }
  constexpr Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }
  constexpr Residue sub(Residue a, Residue b) const noexcept { return reduce(a - b); }
  constexpr Residue mul(Residue a, Residue b) const noexcept { return reduce(reduce(a) * reduce(b)); }
  constexpr Residue neg(Residue a) const noexcept { return reduce(-a); }

  friend constexpr bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.n_ == b.n_; }

 private:
  Residue n_;
  bool prime_;
};

inline void require_prime(const Modulus& n) {
  if (!n.prime()) throw Error(ErrorKind::NonPrimeModulus, "n = " + std::to_string(n.value()) + " is not prime");
}

// Inverse by extended Euclid; valid for any modulus where a is a unit.
inline Residue mod_inverse(Residue a, const Modulus& n) {
  const Residue m = n.value();
  if (a < 0 || a >= m) throw Error(ErrorKind::InvalidArgument, "residue out of range");
  if (m == 1) return 0;
  Residue old_r = a, r = m;
  Residue old_s = 1, s = 0;
  while (r != 0) {
    const Residue q = old_r / r;
    Residue t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw Error(ErrorKind::NotInvertible,
                std::to_string(a) + " has no inverse mod " + std::to_string(m) + " (gcd " + std::to_string(old_r) + ")");
  }
  return n.reduce(old_s);
}

// Binomial coefficient for small arguments; exact while the result fits.
constexpr std::int64_t choose(std::int64_t k, std::int64_t r) noexcept {
  if (r < 0 || k < r) return 0;
  if (r > k - r) r = k - r;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= r; ++i) out = out * (k - r + i) / i;
  return out;
}

}  // namespace colltrip
