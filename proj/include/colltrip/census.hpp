#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "colltrip/geometry.hpp"

namespace colltrip {

using PointSet = std::vector<GridPoint>;

// A permutation sigma of Z_n, read as the point set {(x, sigma[x])}.
class Transversal {
 public:
  Transversal() = default;

  explicit Transversal(std::vector<Residue> sigma) : sigma_(std::move(sigma)) {
    std::vector<bool> seen(sigma_.size(), false);
    for (Residue v : sigma_) {
      if (v < 0 || v >= static_cast<Residue>(sigma_.size())) {
        throw Error(ErrorKind::InvalidArgument, "value " + std::to_string(v) + " outside [0, n)");
      }
      if (seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::InvalidArgument, "value " + std::to_string(v) + " repeated; not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Transversal identity(Residue n) {
    std::vector<Residue> s(static_cast<std::size_t>(n));
    for (Residue i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i;
    return Transversal(std::move(s));
  }

  Residue size() const noexcept { return static_cast<Residue>(sigma_.size()); }
  Modulus modulus() const { return Modulus(size()); }
  Residue operator[](Residue x) const { return sigma_[static_cast<std::size_t>(x)]; }
  const std::vector<Residue>& values() const noexcept { return sigma_; }

  PointSet points() const {
    PointSet out;
    out.reserve(sigma_.size());
    for (std::size_t x = 0; x < sigma_.size(); ++x) out.push_back({static_cast<Residue>(x), sigma_[x]});
    return out;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < sigma_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(sigma_[i]);
    }
    return s + "]";
  }

  friend auto operator<=>(const Transversal&, const Transversal&) = default;

 private:
  std::vector<Residue> sigma_;
};

struct LineCount {
  ModularLine line;
  std::int64_t points = 0;
};

struct TripleCensus {
  std::int64_t triples = 0;
  std::int64_t quadruples = 0;
  std::vector<LineCount> lines;  // every line meeting the set in >= 2 points
};

namespace detail {

inline PointSet reduced_distinct(std::span<const GridPoint> points, const Modulus& n) {
  PointSet out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(reduce_point(p, n));
  PointSet sorted = out;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw Error(ErrorKind::DegenerateInput,
                "duplicate point (" + std::to_string(dup->x) + "," + std::to_string(dup->y) + ")");
  }
  return out;
}

// Prime n: lines are keyed (slope or vertical, intercept) into one integer.
inline std::int64_t line_key(const ModularLine& l) { return (l.b == 1 ? l.a : l.n) * l.n + l.c; }

inline ModularLine line_from_key(std::int64_t key, Residue n) {
  const Residue head = key / n;
  const Residue c = key % n;
  if (head == n) return {1, 0, c, n};
  return {head, 1, c, n};
}

// Points on each line meeting the set in >= 2 points, for prime n.
inline std::vector<LineCount> bucket_lines(const PointSet& pts, const Modulus& n) {
  std::unordered_map<std::int64_t, std::int64_t> pairs;
  pairs.reserve(pts.size() * pts.size() / 2 + 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) ++pairs[line_key(line_through(pts[i], pts[j], n))];
  }
  std::vector<LineCount> out;
  out.reserve(pairs.size());
  for (const auto& [key, count] : pairs) {
    std::int64_t k = 2;
    while (choose(k, 2) < count) ++k;
    out.push_back({line_from_key(key, n.value()), k});
  }
  std::sort(out.begin(), out.end(), [](const LineCount& a, const LineCount& b) { return a.line < b.line; });
  return out;
}

}  // namespace detail

// Reference O(|S|^3) scan, valid for every modulus and mode.
inline std::int64_t count_triples_naive(std::span<const GridPoint> points, const Modulus& n, CollinearityMode mode) {
  const PointSet pts = detail::reduced_distinct(points, n);
  std::optional<CollinearityKernel> kernel;
  if (n.value() <= CollinearityKernel::kDefaultBound) kernel.emplace(n, mode);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const bool hit = kernel ? (*kernel)(pts[i], pts[j], pts[k]) : collinear_triple(pts[i], pts[j], pts[k], n, mode);
        total += hit ? 1 : 0;
      }
    }
  }
  return total;
}

// Reference scan over 4-subsets; only extends collinear triples.
inline std::int64_t count_quadruples_naive(std::span<const GridPoint> points, const Modulus& n,
                                           CollinearityMode mode) {
  const PointSet pts = detail::reduced_distinct(points, n);
  std::optional<CollinearityKernel> kernel;
  if (n.value() <= CollinearityKernel::kDefaultBound) kernel.emplace(n, mode);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const bool hit = kernel ? (*kernel)(pts[i], pts[j], pts[k]) : collinear_triple(pts[i], pts[j], pts[k], n, mode);
        if (!hit) continue;
        for (std::size_t l = k + 1; l < pts.size(); ++l) {
          const GridPoint quad[] = {pts[i], pts[j], pts[k], pts[l]};
          if (collinear_set(quad, n, mode)) ++total;
        }
      }
    }
  }
  return total;
}

inline TripleCensus line_decomposition(std::span<const GridPoint> points, const Modulus& n) {
  require_prime(n);
  const PointSet pts = detail::reduced_distinct(points, n);
  TripleCensus census;
  census.lines = detail::bucket_lines(pts, n);
  for (const auto& lc : census.lines) {
    census.triples += choose(lc.points, 3);
    census.quadruples += choose(lc.points, 4);
  }
  return census;
}

// Prime moduli take the line-bucketed path; composite moduli always use the
// naive scan because lines through two points need not be unique there.
inline std::int64_t count_triples(std::span<const GridPoint> points, const Modulus& n,
                                  CollinearityMode mode = kDefaultMode) {
  if (n.prime()) return line_decomposition(points, n).triples;
  return count_triples_naive(points, n, mode);
}

inline std::int64_t count_quadruples(std::span<const GridPoint> points, const Modulus& n,
                                     CollinearityMode mode = kDefaultMode) {
  if (n.prime()) return line_decomposition(points, n).quadruples;
  return count_quadruples_naive(points, n, mode);
}

inline std::int64_t count_triples(const Transversal& t, CollinearityMode mode = kDefaultMode) {
  if (t.size() < 3) return 0;
  return count_triples(t.points(), t.modulus(), mode);
}

inline std::int64_t count_quadruples(const Transversal& t, CollinearityMode mode = kDefaultMode) {
  if (t.size() < 4) return 0;
  return count_quadruples(t.points(), t.modulus(), mode);
}

inline std::map<SlopeValue, std::int64_t> slope_histogram(const Transversal& t) {
  const Modulus n = t.modulus();
  require_prime(n);
  std::map<SlopeValue, std::int64_t> hist;
  const PointSet pts = t.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) ++hist[pair_slope(pts[i], pts[j], n)];
  }
  return hist;
}

}  // namespace colltrip
