#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colltrip/modring.hpp"

namespace colltrip {

struct GridPoint {
  Residue x = 0;
  Residue y = 0;

  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Which (a, b) pairs count as the direction of a line ax + by = c over Z_n.
// AnyLine accepts every (a, b) != (0, 0). UnitLine also requires
// gcd(a, b, n) = 1. The two agree when n is prime.
enum class CollinearityMode { AnyLine, UnitLine };

// UnitLine is the only reading under which the composite rows of the
// published table (psi(6) = psi(8) = 0, psi(9) = 5) come out; AnyLine gives
// psi(6) = 8 and psi(9) = 12. See README for the experiment.
inline constexpr CollinearityMode kDefaultMode = CollinearityMode::UnitLine;

constexpr std::string_view to_string(CollinearityMode mode) {
  return mode == CollinearityMode::AnyLine ? "any" : "unit";
}

inline std::optional<CollinearityMode> parse_mode(std::string_view s) {
  if (s == "any") return CollinearityMode::AnyLine;
  if (s == "unit") return CollinearityMode::UnitLine;
  return std::nullopt;
}

inline bool admissible_direction(Residue a, Residue b, const Modulus& n, CollinearityMode mode) {
  if (a == 0 && b == 0) return false;
  return mode == CollinearityMode::AnyLine || gcd(gcd(a, b), n.value()) == 1;
}

// A slope is either a residue or infinity (vertical pairs).
class SlopeValue {
 public:
  static constexpr SlopeValue infinity() { return SlopeValue(-1); }
  static constexpr SlopeValue finite(Residue s) { return SlopeValue(s); }

  constexpr bool is_infinite() const noexcept { return raw_ < 0; }
  constexpr Residue value() const noexcept { return raw_; }

  std::string str() const { return is_infinite() ? std::string("inf") : std::to_string(raw_); }

  friend constexpr auto operator<=>(const SlopeValue&, const SlopeValue&) = default;

 private:
  constexpr explicit SlopeValue(Residue raw) : raw_(raw) {}
  Residue raw_;
};

struct ModularLine {
  Residue a = 0;
  Residue b = 0;
  Residue c = 0;
  Residue n = 1;

  bool contains(const GridPoint& p) const noexcept {
    const Modulus m(n);
    return m.reduce(a * p.x + b * p.y - c) == 0;
  }

  friend constexpr auto operator<=>(const ModularLine&, const ModularLine&) = default;
};

inline GridPoint reduce_point(const GridPoint& p, const Modulus& n) {
  return {n.reduce(p.x), n.reduce(p.y)};
}

// Rise over run, dy * dx^{-1}.
inline SlopeValue pair_slope(const GridPoint& p, const GridPoint& q, const Modulus& n) {
  require_prime(n);
  if (p == q) throw Error(ErrorKind::DegeneratePair, "slope of a point with itself");
  if (p.x == q.x) return SlopeValue::infinity();
  return SlopeValue::finite(n.mul(n.sub(q.y, p.y), mod_inverse(n.sub(q.x, p.x), n)));
}

// Canonical form over a prime modulus: b = 1 unless the line is vertical,
// in which case (a, b) = (1, 0).
inline ModularLine line_through(const GridPoint& p, const GridPoint& q, const Modulus& n) {
  require_prime(n);
  if (p == q) throw Error(ErrorKind::DegeneratePair, "line through a point and itself");
  const Residue m = n.value();
  if (p.x == q.x) return {1, 0, n.reduce(p.x), m};
  const Residue slope = pair_slope(p, q, n).value();
  const Residue a = n.neg(slope);
  return {a, 1, n.add(n.mul(a, p.x), p.y), m};
}

namespace detail {

// Collinearity of base + span{d_1..d_k} in closed form. For integer lifts of
// the difference vectors, let g be the gcd of all entries and D the gcd of
// all 2x2 minors; the Smith form of the difference matrix is diag(g, D/g).
// A direction (a, b) != 0 annihilating every difference exists iff D/g
// shares a factor with n; a primitive one exists iff n divides D/g.
inline bool differences_collinear(std::span<const GridPoint> diffs, const Modulus& n, CollinearityMode mode) {
  Residue g = 0;
  for (const auto& d : diffs) g = gcd(gcd(g, d.x), d.y);
  if (g == 0) return true;
  Residue minors = 0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    for (std::size_t j = i + 1; j < diffs.size(); ++j) {
      minors = gcd(minors, diffs[i].x * diffs[j].y - diffs[j].x * diffs[i].y);
    }
  }
  const Residue second = minors / g;
  if (mode == CollinearityMode::AnyLine) return gcd(second, n.value()) > 1;
  return second % n.value() == 0;
}

inline void require_distinct(std::span<const GridPoint> points, std::size_t min_size) {
  if (points.size() < min_size) {
    throw Error(ErrorKind::DegenerateInput, "need at least " + std::to_string(min_size) + " points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) {
        throw Error(ErrorKind::DegenerateInput, "duplicate point (" + std::to_string(points[i].x) + "," +
                                                    std::to_string(points[i].y) + ")");
      }
    }
  }
}

}  // namespace detail

inline bool collinear_set(std::span<const GridPoint> points, const Modulus& n, CollinearityMode mode) {
  std::vector<GridPoint> reduced;
  reduced.reserve(points.size());
  for (const auto& p : points) reduced.push_back(reduce_point(p, n));
  detail::require_distinct(reduced, 2);
  std::vector<GridPoint> diffs;
  diffs.reserve(reduced.size() - 1);
  for (std::size_t i = 1; i < reduced.size(); ++i) {
    diffs.push_back({n.sub(reduced[i].x, reduced[0].x), n.sub(reduced[i].y, reduced[0].y)});
  }
  return detail::differences_collinear(diffs, n, mode);
}

inline bool collinear_triple(const GridPoint& p1, const GridPoint& p2, const GridPoint& p3, const Modulus& n,
                             CollinearityMode mode) {
  const GridPoint pts[] = {p1, p2, p3};
  return collinear_set(pts, n, mode);
}

// Reference semantics: scan every admissible direction (a, b), force c from
// the first point, and test every point by substitution. O(n^2 k).
inline bool collinear_set_exhaustive(std::span<const GridPoint> points, const Modulus& n, CollinearityMode mode) {
  std::vector<GridPoint> reduced;
  for (const auto& p : points) reduced.push_back(reduce_point(p, n));
  detail::require_distinct(reduced, 2);
  const Residue m = n.value();
  for (Residue a = 0; a < m; ++a) {
    for (Residue b = 0; b < m; ++b) {
      if (!admissible_direction(a, b, n, mode)) continue;
      const ModularLine line{a, b, n.reduce(a * reduced[0].x + b * reduced[0].y), m};
      bool all = true;
      for (const auto& p : reduced) {
        if (!line.contains(p)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return false;
}

// Translation-invariant triple predicate tabulated over difference vectors:
// entry (d2, d3) answers collinear_triple(p, p + d2, p + d3) for every p.
class CollinearityKernel {
 public:
  static constexpr Residue kDefaultBound = 64;

  CollinearityKernel(const Modulus& n, CollinearityMode mode, Residue bound = kDefaultBound)
      : n_(n), mode_(mode) {
    const Residue m = n.value();
    if (m > bound) {
      throw Error(ErrorKind::BoundExceeded,
                  "kernel table requested for n = " + std::to_string(m) + " > " + std::to_string(bound));
    }
    const auto cells = static_cast<std::size_t>(m * m);
    table_.assign(cells * cells, 0);
    for (Residue x2 = 0; x2 < m; ++x2) {
      for (Residue y2 = 0; y2 < m; ++y2) {
        if (x2 == 0 && y2 == 0) continue;
        for (Residue x3 = 0; x3 < m; ++x3) {
          for (Residue y3 = 0; y3 < m; ++y3) {
            if ((x3 == 0 && y3 == 0) || (x3 == x2 && y3 == y2)) continue;
            const GridPoint diffs[] = {{x2, y2}, {x3, y3}};
            table_[index(x2, y2, x3, y3)] = detail::differences_collinear(diffs, n, mode) ? 1 : 0;
          }
        }
      }
    }
  }

  const Modulus& modulus() const noexcept { return n_; }
  CollinearityMode mode() const noexcept { return mode_; }

  // Differences must already be reduced into [0, n).
  bool diff(Residue x2, Residue y2, Residue x3, Residue y3) const noexcept {
    return table_[index(x2, y2, x3, y3)] != 0;
  }

  bool operator()(const GridPoint& p1, const GridPoint& p2, const GridPoint& p3) const noexcept {
    return diff(n_.sub(p2.x, p1.x), n_.sub(p2.y, p1.y), n_.sub(p3.x, p1.x), n_.sub(p3.y, p1.y));
  }

 private:
  std::size_t index(Residue x2, Residue y2, Residue x3, Residue y3) const noexcept {
    const Residue m = n_.value();
    return static_cast<std::size_t>(((x2 * m + y2) * m + x3) * m + y3);
  }

  Modulus n_;
  CollinearityMode mode_;
  std::vector<std::uint8_t> table_;
};

}  // namespace colltrip
