#pragma once

#include <string>
#include <vector>

#include "colltrip/census.hpp"

namespace colltrip {

struct MobiusParams {
  Residue a = 0;
  Residue b = 0;
  Residue c = 0;
  Residue d = 0;
};

namespace detail {

inline void require_odd_prime(const Modulus& n) {
  require_prime(n);
  if (n.value() == 2) throw Error(ErrorKind::InvalidArgument, "n > 2 required");
}

}  // namespace detail

// x -> x^{-1}, 0 -> 0. Exactly (n-1)/2 collinear triples, all of the form
// {0, y, -y} in abscissa.
inline Transversal inverse_permutation(const Modulus& n) {
  detail::require_odd_prime(n);
  std::vector<Residue> s(static_cast<std::size_t>(n.value()), 0);
  for (Residue x = 1; x < n.value(); ++x) s[static_cast<std::size_t>(x)] = mod_inverse(x, n);
  return Transversal(std::move(s));
}

// x -> (ax + b)/(cx + d), with the pole -d/c sent to a/c.
inline Transversal mobius_permutation(const Modulus& n, MobiusParams p) {
  detail::require_odd_prime(n);
  p = {n.reduce(p.a), n.reduce(p.b), n.reduce(p.c), n.reduce(p.d)};
  if (p.c == 0) throw Error(ErrorKind::DegenerateParams, "c != 0 required");
  if (n.sub(n.mul(p.a, p.d), n.mul(p.b, p.c)) == 0) throw Error(ErrorKind::DegenerateParams, "ad - bc != 0 required");
  const Residue c_inv = mod_inverse(p.c, n);
  const Residue pole = n.mul(n.neg(p.d), c_inv);
  std::vector<Residue> s(static_cast<std::size_t>(n.value()));
  for (Residue x = 0; x < n.value(); ++x) {
    if (x == pole) {
      s[static_cast<std::size_t>(x)] = n.mul(p.a, c_inv);
    } else {
      const Residue num = n.add(n.mul(p.a, x), p.b);
      const Residue den = n.add(n.mul(p.c, x), p.d);
      s[static_cast<std::size_t>(x)] = n.mul(num, mod_inverse(den, n));
    }
  }
  return Transversal(std::move(s));
}

// x -> x^3, a permutation exactly when n = 2 mod 3. Bijectivity is checked by
// the Transversal constructor.
inline Transversal cubic_permutation(const Modulus& n) {
  detail::require_odd_prime(n);
  if (n.value() % 3 != 2) {
    throw Error(ErrorKind::BadResidueClass,
                "n = 2 mod 3 required (n = " + std::to_string(n.value()) + " is " +
                    std::to_string(n.value() % 3) + " mod 3)");
  }
  std::vector<Residue> s(static_cast<std::size_t>(n.value()));
  for (Residue x = 0; x < n.value(); ++x) s[static_cast<std::size_t>(x)] = n.mul(n.mul(x, x), x);
  return Transversal(std::move(s));
}

// x -> x/(x-1), with 1 -> 1.
inline Transversal g_permutation(const Modulus& n) { return mobius_permutation(n, {1, 0, 1, -1}); }

inline std::int64_t predicted_mobius_triples(const Modulus& n) { return (n.value() - 1) / 2; }

inline std::int64_t predicted_cubic_triples(const Modulus& n) { return (n.value() - 1) * (n.value() - 2) / 6; }

}  // namespace colltrip
