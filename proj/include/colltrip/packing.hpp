#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "colltrip/modring.hpp"

namespace colltrip {

// Least k with C(k, 2) >= m.
constexpr std::int64_t tau(std::int64_t m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "tau of a negative count");
  if (m == 0) return 0;
  std::int64_t k = 2;
  while (choose(k, 2) < m) ++k;
  return k;
}

// Triples forced by m pairs packed on one line: C(tau(m), 3).
constexpr std::int64_t line_cost(std::int64_t m) { return choose(tau(m), 3); }

constexpr std::int64_t parity_rho(std::int64_t t) noexcept { return t - 2 * (t >= 0 ? t / 2 : (t - 1) / 2); }

constexpr bool is_triangular(std::int64_t m) { return m == 0 || choose(tau(m), 2) == m; }

// Parts (m_1, ..., m_L) of K pairs over L lines, kept nonincreasing.
class PackingPartition {
 public:
  PackingPartition() = default;

  explicit PackingPartition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    for (auto m : parts_) {
      if (m < 0) throw Error(ErrorKind::InvalidArgument, "negative part");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  const std::vector<std::int64_t>& parts() const noexcept { return parts_; }
  std::int64_t lines() const noexcept { return static_cast<std::int64_t>(parts_.size()); }
  std::int64_t pairs() const noexcept {
    std::int64_t s = 0;
    for (auto m : parts_) s += m;
    return s;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const PackingPartition&, const PackingPartition&) = default;

 private:
  std::vector<std::int64_t> parts_;
};

inline std::int64_t trip_cost(const PackingPartition& p) {
  std::int64_t total = 0;
  for (auto m : p.parts()) total += line_cost(m);
  return total;
}

inline std::int64_t t_closed_form(std::int64_t pairs, std::int64_t lines) {
  if (pairs < 0 || lines < 0) throw Error(ErrorKind::InvalidArgument, "K and L must be nonnegative");
  if (pairs > 3 * lines) throw Error(ErrorKind::OutOfRange, "closed form needs K <= 3L");
  const std::int64_t excess = pairs - lines;
  return excess <= 0 ? 0 : (excess + 1) / 2;
}

// floor((K-L)/2) threes, rho(K-L) twos, then ones, then zeros.
inline PackingPartition canonical_optimal_partition(std::int64_t pairs, std::int64_t lines) {
  t_closed_form(pairs, lines);
  std::vector<std::int64_t> parts(static_cast<std::size_t>(lines), 0);
  if (pairs <= lines) {
    std::fill_n(parts.begin(), pairs, 1);
    return PackingPartition(std::move(parts));
  }
  const std::int64_t excess = pairs - lines;
  const std::int64_t threes = excess / 2;
  const std::int64_t twos = parity_rho(excess);
  const std::int64_t ones = pairs - 3 * threes - 2 * twos;
  auto it = parts.begin();
  it = std::fill_n(it, threes, 3);
  it = std::fill_n(it, twos, 2);
  std::fill_n(it, ones, 1);
  return PackingPartition(std::move(parts));
}

struct PackingResult {
  std::int64_t value = 0;
  std::vector<PackingPartition> optima;  // descending lexicographic order
  bool truncated = false;
};

struct PackingLimits {
  std::int64_t max_pairs = 2000;
  std::int64_t max_lines = 200;
  std::size_t max_optima = 64;
};

namespace detail {

// best[l][k]: least trip cost of k pairs over l lines, order ignored.
class PackingTable {
 public:
  PackingTable(std::int64_t pairs, std::int64_t lines) : pairs_(pairs), lines_(lines) {
    constexpr auto inf = std::numeric_limits<std::int64_t>::max() / 4;
    cost_.resize(static_cast<std::size_t>(pairs + 1));
    for (std::int64_t m = 0; m <= pairs; ++m) cost_[static_cast<std::size_t>(m)] = line_cost(m);
    best_.assign(static_cast<std::size_t>((lines + 1) * (pairs + 1)), inf);
    at(0, 0) = 0;
    for (std::int64_t l = 1; l <= lines; ++l) {
      for (std::int64_t k = 0; k <= pairs; ++k) {
        std::int64_t v = inf;
        for (std::int64_t m = 0; m <= k; ++m) {
          const std::int64_t rest = at(l - 1, k - m);
          if (rest == inf) continue;
          v = std::min(v, cost_[static_cast<std::size_t>(m)] + rest);
        }
        at(l, k) = v;
      }
    }
  }

  std::int64_t value(std::int64_t lines, std::int64_t pairs) const { return at(lines, pairs); }
  std::int64_t cost(std::int64_t m) const { return cost_[static_cast<std::size_t>(m)]; }

 private:
  std::int64_t& at(std::int64_t l, std::int64_t k) { return best_[static_cast<std::size_t>(l * (pairs_ + 1) + k)]; }
  std::int64_t at(std::int64_t l, std::int64_t k) const {
    return best_[static_cast<std::size_t>(l * (pairs_ + 1) + k)];
  }

  std::int64_t pairs_;
  std::int64_t lines_;
  std::vector<std::int64_t> cost_;
  std::vector<std::int64_t> best_;
};

// Enumerates nonincreasing optimal partitions. At state (l, k, cap) the
// remaining cost is always table.value(l, k); states proven empty are cached.
class OptimaEnumerator {
 public:
  OptimaEnumerator(const PackingTable& table, std::int64_t pairs, std::size_t limit)
      : table_(table), stride_(pairs + 1), limit_(limit) {}

  void run(std::int64_t lines, std::int64_t pairs) {
    prefix_.clear();
    walk(lines, pairs, pairs);
  }

  std::vector<PackingPartition> found;
  bool truncated = false;

 private:
  bool walk(std::int64_t l, std::int64_t k, std::int64_t cap) {
    if (l == 0) {
      if (k != 0) return false;
      if (found.size() >= limit_) {
        truncated = true;
        return true;
      }
      found.emplace_back(prefix_);
      return true;
    }
    if (k > l * cap) return false;
    const std::int64_t key = (l * stride_ + k) * stride_ + cap;
    if (dead_.count(key)) return false;
    const std::int64_t target = table_.value(l, k);
    bool any = false;
    for (std::int64_t m = std::min(k, cap); m >= 0 && !truncated; --m) {
      if (m * l < k) break;
      if (table_.cost(m) + table_.value(l - 1, k - m) != target) continue;
      prefix_.push_back(m);
      any = walk(l - 1, k - m, m) || any;
      prefix_.pop_back();
    }
    if (!any) dead_.insert(key);
    return any;
  }

  const PackingTable& table_;
  std::int64_t stride_;
  std::size_t limit_;
  std::vector<std::int64_t> prefix_;
  std::unordered_set<std::int64_t> dead_;
};

}  // namespace detail

inline PackingResult t_exact(std::int64_t pairs, std::int64_t lines, const PackingLimits& limits = {}) {
  if (pairs < 0 || lines < 0) throw Error(ErrorKind::InvalidArgument, "K and L must be nonnegative");
  if (pairs > limits.max_pairs || lines > limits.max_lines) {
    throw Error(ErrorKind::BoundExceeded, "K <= " + std::to_string(limits.max_pairs) + " and L <= " +
                                              std::to_string(limits.max_lines) + " required");
  }
  if (lines == 0 && pairs > 0) throw Error(ErrorKind::InvalidArgument, "K > 0 pairs cannot be packed into 0 lines");
  const detail::PackingTable table(pairs, lines);
  PackingResult result;
  result.value = table.value(lines, pairs);
  detail::OptimaEnumerator walk(table, pairs, limits.max_optima);
  walk.run(lines, pairs);
  result.optima = std::move(walk.found);
  result.truncated = walk.truncated;
  return result;
}

// Line i (1-based) takes min{K', C(tau(ceil(K'/(L-i+1))), 2)} of the K'
// pairs still unplaced.
inline PackingPartition greedy_packing(std::int64_t pairs, std::int64_t lines) {
  if (pairs < 0 || lines < 0) throw Error(ErrorKind::InvalidArgument, "K and L must be nonnegative");
  if (lines == 0 && pairs > 0) throw Error(ErrorKind::InvalidArgument, "K > 0 pairs cannot be packed into 0 lines");
  std::vector<std::int64_t> parts;
  std::int64_t left = pairs;
  for (std::int64_t i = 1; i <= lines; ++i) {
    const std::int64_t remaining_lines = lines - i + 1;
    const std::int64_t share = (left + remaining_lines - 1) / remaining_lines;
    const std::int64_t take = std::min(left, choose(tau(share), 2));
    parts.push_back(take);
    left -= take;
  }
  return PackingPartition(std::move(parts));
}

// L * g(K/L) with g(x) = (x/6)(sqrt(1+8x) - 3), clamped at zero. The one
// floating-point quantity in the library; compare with tolerance 1e-9.
inline constexpr double kJensenTolerance = 1e-9;

inline double jensen_lower_bound(std::int64_t pairs, std::int64_t lines) {
  if (lines < 1) throw Error(ErrorKind::InvalidArgument, "L >= 1 required");
  const double x = static_cast<double>(pairs) / static_cast<double>(lines);
  const double g = x / 6.0 * (std::sqrt(1.0 + 8.0 * x) - 3.0);
  return std::max(0.0, static_cast<double>(lines) * g);
}

// ceil((n-1)/4) through the closed form with K = C(n,2), L = (n-1)^2/2.
inline std::int64_t psi_lower_bound(const Modulus& n) {
  require_prime(n);
  if (n.value() == 2) throw Error(ErrorKind::InvalidArgument, "n > 2 required");
  const std::int64_t m = n.value();
  return t_closed_form(choose(m, 2), (m - 1) * (m - 1) / 2);
}

struct SpreadReport {
  std::int64_t min_part = 0;
  std::int64_t max_part = 0;
  double bound = 0.0;  // 2 r^{3/2}
  bool satisfied = false;
};

// Informational: the spread bound is only claimed for large minimum part.
inline SpreadReport spread_report(const PackingPartition& p) {
  if (p.parts().empty() || p.parts().back() <= 0) {
    throw Error(ErrorKind::InvalidArgument, "spread report needs every part positive");
  }
  SpreadReport r;
  r.min_part = p.parts().back();
  r.max_part = p.parts().front();
  r.bound = 2.0 * std::pow(static_cast<double>(r.min_part), 1.5);
  r.satisfied = static_cast<double>(r.max_part) <= r.bound;
  return r;
}

}  // namespace colltrip
