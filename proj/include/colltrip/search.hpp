#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "colltrip/census.hpp"
#include "colltrip/constructions.hpp"

namespace colltrip {

using Seconds = std::chrono::duration<double>;

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<Seconds> max_time;
  unsigned workers = 1;
};

enum class Objective { Minimize, Maximize };

using Witness = std::variant<std::monostate, Transversal, PointSet>;

// When exact is false the value is only a bound: an upper bound for
// minimization, a lower bound for maximization.
struct SearchOutcome {
  std::int64_t value = 0;
  Witness witness;
  Objective objective = Objective::Minimize;
  bool exact = false;
  bool found = true;
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  Seconds elapsed{0};

  const Transversal* transversal() const { return std::get_if<Transversal>(&witness); }
  const PointSet* point_set() const { return std::get_if<PointSet>(&witness); }
};

inline constexpr Residue kMaxSearchModulus = 64;

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  Seconds elapsed() const { return std::chrono::steady_clock::now() - start_; }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void require_search_modulus(const Modulus& n) {
  if (n.value() > kMaxSearchModulus) {
    throw Error(ErrorKind::BoundExceeded, "searches support n <= " + std::to_string(kMaxSearchModulus));
  }
}

// Budget bookkeeping shared by workers. Nodes are flushed in batches so the
// global counter is approximate between flushes.
class BudgetMeter {
 public:
  BudgetMeter(const SearchBudget& budget, const Stopwatch& clock) : budget_(budget), clock_(clock) {}

  // Returns false once the budget is spent.
  bool charge(std::uint64_t nodes) {
    const auto total = nodes_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (budget_.max_nodes && total >= *budget_.max_nodes) exhausted_.store(true, std::memory_order_relaxed);
    if (budget_.max_time && clock_.elapsed() >= *budget_.max_time) exhausted_.store(true, std::memory_order_relaxed);
    return !exhausted();
  }

  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }

 private:
  const SearchBudget& budget_;
  const Stopwatch& clock_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> exhausted_{false};
};

inline constexpr std::uint64_t kFlushEvery = 1024;

// A permutation prefix sigma[0..k) over Z_n with its running triple count.
// Placing value v in column k adds exactly the triples that contain (k, v).
class PartialTransversal {
 public:
  PartialTransversal(const Modulus& n, const CollinearityKernel& kernel)
      : n_(n), kernel_(&kernel), prime_(n.prime()), slope_hits_(static_cast<std::size_t>(n.value()), 0) {
    if (prime_) {
      inverse_.assign(static_cast<std::size_t>(n.value()), 0);
      for (Residue d = 1; d < n.value(); ++d) inverse_[static_cast<std::size_t>(d)] = mod_inverse(d, n);
    }
    sigma_.reserve(static_cast<std::size_t>(n.value()));
  }

  Residue size() const noexcept { return static_cast<Residue>(sigma_.size()); }
  bool used(Residue v) const noexcept { return (used_ >> v) & 1U; }
  std::int64_t count() const noexcept { return count_; }
  const std::vector<Residue>& values() const noexcept { return sigma_; }

  std::int64_t added_by(Residue v) const {
    const Residue k = size();
    const Residue m = n_.value();
    if (prime_) {
      // Over a prime field, placed points collinear with (k, v) share the
      // same slope from it; a bucket of c points contributes C(c, 2).
      std::int64_t added = 0;
      for (Residue i = 0; i < k; ++i) {
        const Residue dy = v - sigma_[static_cast<std::size_t>(i)];
        const Residue s = ((dy < 0 ? dy + m : dy) * inverse_[static_cast<std::size_t>(k - i)]) % m;
        added += slope_hits_[static_cast<std::size_t>(s)]++;
      }
      for (Residue i = 0; i < k; ++i) {
        const Residue dy = v - sigma_[static_cast<std::size_t>(i)];
        slope_hits_[static_cast<std::size_t>(((dy < 0 ? dy + m : dy) * inverse_[static_cast<std::size_t>(k - i)]) % m)] = 0;
      }
      return added;
    }
    std::int64_t added = 0;
    for (Residue i = 0; i < k; ++i) {
      const Residue si = sigma_[static_cast<std::size_t>(i)];
      const Residue dy3 = v >= si ? v - si : v - si + m;
      for (Residue j = i + 1; j < k; ++j) {
        const Residue sj = sigma_[static_cast<std::size_t>(j)];
        const Residue dy2 = sj >= si ? sj - si : sj - si + m;
        added += kernel_->diff(j - i, dy2, k - i, dy3) ? 1 : 0;
      }
    }
    return added;
  }

  void push(Residue v, std::int64_t added) {
    sigma_.push_back(v);
    used_ |= std::uint64_t{1} << v;
    count_ += added;
  }

  void pop(std::int64_t added) {
    used_ &= ~(std::uint64_t{1} << sigma_.back());
    sigma_.pop_back();
    count_ -= added;
  }

 private:
  Modulus n_;
  const CollinearityKernel* kernel_;
  bool prime_;
  std::vector<Residue> inverse_;
  mutable std::vector<std::int64_t> slope_hits_;
  std::vector<Residue> sigma_;
  std::uint64_t used_ = 0;
  std::int64_t count_ = 0;
};

inline void verify_witness(const SearchOutcome& out, const Modulus& n, CollinearityMode mode,
                           const std::function<std::int64_t(const PointSet&)>& statistic) {
  std::int64_t recount = 0;
  if (const auto* t = out.transversal()) {
    recount = statistic(t->points());
  } else if (const auto* s = out.point_set()) {
    recount = statistic(*s);
  } else {
    return;
  }
  (void)n;
  (void)mode;
  if (recount != out.value) {
    throw std::logic_error("witness recount " + std::to_string(recount) + " disagrees with search value " +
                           std::to_string(out.value));
  }
}

inline std::int64_t triples_of(const PointSet& pts, const Modulus& n, CollinearityMode mode) {
  if (pts.size() < 3) return 0;
  return count_triples(pts, n, mode);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// psi(n): least number of collinear triples over all transversals of Z_n.

// Resumable state of a psi search. Work is split into permutation prefixes
// (always starting with sigma(0) = 0); `pending` lists prefixes not yet
// fully explored.
struct PsiState {
  Residue n = 1;
  CollinearityMode mode = kDefaultMode;
  std::optional<std::int64_t> best;  // best value reached by the search itself
  std::vector<Residue> witness;      // transversal achieving best
  std::vector<std::vector<Residue>> pending;
};

struct PsiOptions {
  // Fix sigma(0) = 0. Translating every value by a constant maps lines to
  // lines, so this loses no optimum.
  bool fix_first = true;
  Residue prefix_depth = 3;
  // Called under a lock after each prefix completes.
  std::function<void(const PsiState&)> on_progress;
};

inline PsiState psi_initial_state(Residue n_value, CollinearityMode mode, const PsiOptions& opts = {}) {
  const Modulus n(n_value);
  detail::require_search_modulus(n);
  PsiState state;
  state.n = n_value;
  state.mode = mode;
  const Residue depth = std::clamp<Residue>(opts.prefix_depth, 1, n_value);
  std::vector<Residue> prefix;
  std::vector<bool> used(static_cast<std::size_t>(n_value), false);
  std::function<void()> expand = [&] {
    if (static_cast<Residue>(prefix.size()) == depth) {
      state.pending.push_back(prefix);
      return;
    }
    for (Residue v = 0; v < n_value; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (prefix.empty() && opts.fix_first && v != 0) continue;
      used[static_cast<std::size_t>(v)] = true;
      prefix.push_back(v);
      expand();
      prefix.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  expand();
  return state;
}

namespace detail {

// Incumbent shared across workers. cutoff only decreases; a branch whose
// partial count reaches cutoff cannot beat the incumbent.
class PsiIncumbent {
 public:
  PsiIncumbent(std::int64_t cutoff, std::optional<std::int64_t> best, std::vector<Residue> witness)
      : cutoff_(best ? *best : cutoff), best_(best), witness_(std::move(witness)) {}

  std::int64_t cutoff() const { return cutoff_.load(std::memory_order_relaxed); }

  void offer(const std::vector<Residue>& sigma, std::int64_t value) {
    std::lock_guard lock(mu_);
    if (value >= cutoff_.load(std::memory_order_relaxed)) return;
    cutoff_.store(value, std::memory_order_relaxed);
    best_ = value;
    witness_ = sigma;
  }

  std::optional<std::int64_t> best() const { return best_; }
  const std::vector<Residue>& witness() const { return witness_; }

 private:
  std::atomic<std::int64_t> cutoff_;
  std::mutex mu_;
  std::optional<std::int64_t> best_;
  std::vector<Residue> witness_;
};

class PsiWorker {
 public:
  PsiWorker(const Modulus& n, const CollinearityKernel& kernel, PsiIncumbent& incumbent, BudgetMeter& meter)
      : n_(n), partial_(n, kernel), incumbent_(incumbent), meter_(meter) {}

  // Returns false if the budget ran out before the prefix was exhausted.
  bool run(const std::vector<Residue>& prefix) {
    while (!added_.empty()) {
      partial_.pop(added_.back());
      added_.pop_back();
    }
    for (Residue v : prefix) {
      const auto add = partial_.added_by(v);
      partial_.push(v, add);
      added_.push_back(add);
    }
    ++local_nodes_;
    if (partial_.count() >= incumbent_.cutoff()) {
      ++pruned_;
      return true;
    }
    if (partial_.size() == n_.value()) {
      incumbent_.offer(partial_.values(), partial_.count());
      return true;
    }
    return descend();
  }

  void flush() {
    meter_.charge(local_nodes_);
    local_nodes_ = 0;
  }

  std::uint64_t pruned() const { return pruned_; }

 private:
  bool descend() {
    const Residue m = n_.value();
    for (Residue v = 0; v < m; ++v) {
      if (partial_.used(v)) continue;
      if (++local_nodes_ >= kFlushEvery) {
        if (!meter_.charge(local_nodes_)) {
          local_nodes_ = 0;
          return false;
        }
        local_nodes_ = 0;
      }
      if (meter_.exhausted()) return false;
      const std::int64_t add = partial_.added_by(v);
      if (partial_.count() + add >= incumbent_.cutoff()) {
        ++pruned_;
        continue;
      }
      partial_.push(v, add);
      bool ok = true;
      if (partial_.size() == m) {
        incumbent_.offer(partial_.values(), partial_.count());
      } else {
        ok = descend();
      }
      partial_.pop(add);
      if (!ok) return false;
    }
    return true;
  }

  Modulus n_;
  PartialTransversal partial_;
  PsiIncumbent& incumbent_;
  BudgetMeter& meter_;
  std::vector<std::int64_t> added_;
  std::uint64_t local_nodes_ = 0;
  std::uint64_t pruned_ = 0;
};

// A concrete transversal to fall back on: the identity, or for odd primes
// the inverse map when it is better.
inline Transversal psi_fallback(const Modulus& n, CollinearityMode mode) {
  Transversal best = Transversal::identity(n.value());
  if (n.prime() && n.value() > 2) {
    Transversal inv = inverse_permutation(n);
    if (count_triples(inv, mode) < count_triples(best, mode)) best = std::move(inv);
  }
  return best;
}

}  // namespace detail

// Runs the pending prefixes of `state`, updating it in place. Single-worker
// runs visit prefixes in lexicographic order, so the witness is the
// lexicographically least optimum among those with sigma(0) = 0; with more
// workers any verified optimum may be returned.
inline SearchOutcome psi_resume(PsiState& state, const SearchBudget& budget, const PsiOptions& opts = {}) {
  const Modulus n(state.n);
  detail::require_search_modulus(n);
  const detail::Stopwatch clock;
  const Transversal fallback = detail::psi_fallback(n, state.mode);
  const std::int64_t fallback_value = count_triples(fallback, state.mode);

  const CollinearityKernel kernel(n, state.mode);
  detail::PsiIncumbent incumbent(fallback_value + 1, state.best, state.witness);
  detail::BudgetMeter meter(budget, clock);

  std::mutex queue_mu;
  std::size_t next = 0;
  const auto tasks = state.pending;
  std::vector<bool> done(tasks.size(), false);
  std::atomic<std::uint64_t> pruned{0};

  auto publish = [&] {
    // caller holds queue_mu
    if (incumbent.best()) {
      state.best = incumbent.best();
      state.witness = incumbent.witness();
    }
    state.pending.clear();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (!done[i]) state.pending.push_back(tasks[i]);
    }
  };

  auto work = [&] {
    detail::PsiWorker worker(n, kernel, incumbent, meter);
    while (true) {
      std::size_t idx;
      {
        std::lock_guard lock(queue_mu);
        if (next >= tasks.size() || meter.exhausted() || incumbent.cutoff() <= 0) break;
        idx = next++;
      }
      const bool complete = worker.run(tasks[idx]);
      std::lock_guard lock(queue_mu);
      if (!complete) break;
      done[idx] = true;
      if (opts.on_progress) {
        publish();
        opts.on_progress(state);
      }
    }
    worker.flush();
    pruned.fetch_add(worker.pruned(), std::memory_order_relaxed);
  };

  const unsigned workers = std::max(1U, budget.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // A zero-triple transversal cannot be improved upon; remaining prefixes
  // are settled.
  const bool settled = incumbent.cutoff() <= 0;
  {
    std::lock_guard lock(queue_mu);
    publish();
    if (settled) state.pending.clear();
  }

  SearchOutcome out;
  out.objective = Objective::Minimize;
  out.exact = state.pending.empty();
  if (state.best) {
    out.value = *state.best;
    out.witness = Transversal(state.witness);
  } else {
    out.value = fallback_value;
    out.witness = fallback;
  }
  out.nodes_explored = meter.nodes();
  out.nodes_pruned = pruned.load();
  out.elapsed = clock.elapsed();
  detail::verify_witness(out, n, state.mode,
                         [&](const PointSet& p) { return detail::triples_of(p, n, state.mode); });
  return out;
}

inline SearchOutcome psi(Residue n, CollinearityMode mode = kDefaultMode, const SearchBudget& budget = {},
                         const PsiOptions& opts = {}) {
  PsiState state = psi_initial_state(n, mode, opts);
  return psi_resume(state, budget, opts);
}

// ---------------------------------------------------------------------------
// Lexicographically least transversal with exactly `target` triples.

inline SearchOutcome lex_least_with_count(const Modulus& n, std::optional<std::int64_t> target = std::nullopt,
                                          const SearchBudget& budget = {}) {
  detail::require_odd_prime(n);
  detail::require_search_modulus(n);
  const std::int64_t want = target.value_or((n.value() - 1) / 2);
  const detail::Stopwatch clock;
  const CollinearityKernel kernel(n, kDefaultMode);
  detail::BudgetMeter meter(budget, clock);
  detail::PartialTransversal partial(n, kernel);
  std::uint64_t local = 0, pruned = 0;
  bool hit = false;
  bool aborted = false;

  std::function<void()> dfs = [&] {
    for (Residue v = 0; v < n.value() && !hit && !aborted; ++v) {
      if (partial.used(v)) continue;
      if (++local >= detail::kFlushEvery) {
        aborted = !meter.charge(local);
        local = 0;
        if (aborted) return;
      }
      const auto add = partial.added_by(v);
      if (partial.count() + add > want) {
        ++pruned;
        continue;
      }
      partial.push(v, add);
      if (partial.size() == n.value()) {
        hit = partial.count() == want;
      } else {
        dfs();
      }
      if (!hit) partial.pop(add);
    }
  };
  dfs();
  meter.charge(local);

  SearchOutcome out;
  out.objective = Objective::Minimize;
  out.found = hit;
  out.exact = hit || !aborted;
  out.value = want;
  if (hit) out.witness = Transversal(partial.values());
  out.nodes_explored = meter.nodes();
  out.nodes_pruned = pruned;
  out.elapsed = clock.elapsed();
  if (hit) detail::verify_witness(out, n, kDefaultMode, [&](const PointSet& p) { return detail::triples_of(p, n, kDefaultMode); });
  return out;
}

// ---------------------------------------------------------------------------
// Most triples in a transversal with no collinear quadruple.

namespace detail {

// Collinear triples among placed points, kept as a stack so that a new point
// closes a quadruple iff it is collinear with one of them.
struct TripleStack {
  std::vector<std::array<std::size_t, 3>> items;
};

inline bool four_collinear(const GridPoint& a, const GridPoint& b, const GridPoint& c, const GridPoint& d,
                           const Modulus& n, CollinearityMode mode) {
  const GridPoint diffs[] = {{n.sub(b.x, a.x), n.sub(b.y, a.y)},
                             {n.sub(c.x, a.x), n.sub(c.y, a.y)},
                             {n.sub(d.x, a.x), n.sub(d.y, a.y)}};
  return differences_collinear(diffs, n, mode);
}

}  // namespace detail

inline std::int64_t quadfree_cap(Residue n) { return n * (n - 1) / 6; }

inline SearchOutcome max_triples_quadfree_transversal(Residue n_value, CollinearityMode mode = kDefaultMode,
                                                      const SearchBudget& budget = {}) {
  const Modulus n(n_value);
  detail::require_search_modulus(n);
  const detail::Stopwatch clock;
  const CollinearityKernel kernel(n, mode);
  detail::BudgetMeter meter(budget, clock);
  const std::int64_t cap = quadfree_cap(n_value);

  std::vector<GridPoint> placed;
  std::vector<bool> used(static_cast<std::size_t>(n_value), false);
  std::vector<std::array<std::size_t, 3>> triples;
  std::int64_t best = -1;
  std::vector<Residue> best_sigma;
  std::uint64_t local = 0, pruned = 0;
  bool aborted = false;

  std::function<void()> dfs = [&] {
    const auto k = placed.size();
    if (static_cast<Residue>(k) == n_value) {
      const auto value = static_cast<std::int64_t>(triples.size());
      if (value > best) {
        best = value;
        best_sigma.clear();
        for (const auto& p : placed) best_sigma.push_back(p.y);
      }
      return;
    }
    for (Residue v = 0; v < n_value && !aborted && best < cap; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (k == 0 && v != 0) continue;  // translation in the value coordinate
      if (++local >= detail::kFlushEvery) {
        aborted = !meter.charge(local);
        local = 0;
        if (aborted) return;
      }
      const GridPoint p{static_cast<Residue>(k), v};
      bool quad = false;
      for (const auto& t : triples) {
        if (detail::four_collinear(placed[t[0]], placed[t[1]], placed[t[2]], p, n, mode)) {
          quad = true;
          break;
        }
      }
      if (quad) {
        ++pruned;
        continue;
      }
      const auto before = triples.size();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (kernel(placed[i], placed[j], p)) triples.push_back({i, j, k});
        }
      }
      placed.push_back(p);
      used[static_cast<std::size_t>(v)] = true;
      dfs();
      used[static_cast<std::size_t>(v)] = false;
      placed.pop_back();
      triples.resize(before);
    }
  };
  dfs();
  meter.charge(local);

  SearchOutcome out;
  out.objective = Objective::Maximize;
  out.exact = !aborted;
  out.found = best >= 0;
  out.value = std::max<std::int64_t>(best, 0);
  if (best >= 0) out.witness = Transversal(best_sigma);
  out.nodes_explored = meter.nodes();
  out.nodes_pruned = pruned;
  out.elapsed = clock.elapsed();
  detail::verify_witness(out, n, mode, [&](const PointSet& p) { return detail::triples_of(p, n, mode); });
  if (const auto* t = out.transversal(); t && t->size() >= 4 && count_quadruples(*t, mode) != 0) {
    throw std::logic_error("quadruple-free search returned a witness with a quadruple");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subset searches over the whole grid.

struct SubsetSearchOptions {
  // Moduli up to this bound are searched exhaustively.
  Residue exact_threshold = 4;
  std::size_t beam_width = 64;
};

namespace detail {

inline std::vector<GridPoint> grid_points(Residue n) {
  std::vector<GridPoint> pts;
  for (Residue x = 0; x < n; ++x) {
    for (Residue y = 0; y < n; ++y) pts.push_back({x, y});
  }
  return pts;
}

// Triples a candidate point would close with the set, or -1 if it would close
// a collinear quadruple.
inline std::int64_t quadfree_gain(const PointSet& set, const std::vector<std::array<std::size_t, 3>>& triples,
                                  const GridPoint& p, const CollinearityKernel& kernel) {
  const Modulus& n = kernel.modulus();
  for (const auto& t : triples) {
    if (four_collinear(set[t[0]], set[t[1]], set[t[2]], p, n, kernel.mode())) return -1;
  }
  std::int64_t gain = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) gain += kernel(set[i], set[j], p) ? 1 : 0;
  }
  return gain;
}

}  // namespace detail

// CT0(n): most collinear triples in a quadruple-free subset of Z_n x Z_n.
// Exhaustive include/exclude search up to the threshold, beam search above
// it (reported with exact = false).
inline SearchOutcome ct0_subsets(Residue n_value, CollinearityMode mode = kDefaultMode,
                                 const SearchBudget& budget = {}, const SubsetSearchOptions& opts = {}) {
  const Modulus n(n_value);
  detail::require_search_modulus(n);
  const detail::Stopwatch clock;
  const CollinearityKernel kernel(n, mode);
  detail::BudgetMeter meter(budget, clock);
  const auto grid = detail::grid_points(n_value);

  SearchOutcome out;
  out.objective = Objective::Maximize;
  std::uint64_t pruned = 0;

  if (n_value <= opts.exact_threshold) {
    PointSet set;
    std::vector<std::array<std::size_t, 3>> triples;
    std::int64_t best = -1;
    PointSet best_set;
    std::uint64_t local = 0;
    bool aborted = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
      if (aborted) return;
      if (++local >= detail::kFlushEvery) {
        aborted = !meter.charge(local);
        local = 0;
        if (aborted) return;
      }
      if (idx == grid.size()) {
        const auto value = static_cast<std::int64_t>(triples.size());
        if (value > best) {
          best = value;
          best_set = set;
        }
        return;
      }
      const GridPoint& p = grid[idx];
      const auto gain = detail::quadfree_gain(set, triples, p, kernel);
      if (gain >= 0) {
        const auto before = triples.size();
        const std::size_t k = set.size();
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = i + 1; j < k; ++j) {
            if (kernel(set[i], set[j], p)) triples.push_back({i, j, k});
          }
        }
        set.push_back(p);
        dfs(idx + 1);
        set.pop_back();
        triples.resize(before);
      } else {
        ++pruned;
      }
      dfs(idx + 1);
    };
    dfs(0);
    meter.charge(local);
    out.exact = !aborted;
    out.value = std::max<std::int64_t>(best, 0);
    out.witness = best_set;
  } else {
    struct Beam {
      PointSet set;
      std::vector<std::array<std::size_t, 3>> triples;
    };
    std::vector<Beam> beam(1);
    for (const auto& p : grid) {
      std::vector<Beam> next;
      next.reserve(beam.size() * 2);
      for (const auto& b : beam) {
        next.push_back(b);
        const auto gain = detail::quadfree_gain(b.set, b.triples, p, kernel);
        if (gain < 0) {
          ++pruned;
          continue;
        }
        Beam grown = b;
        const std::size_t k = grown.set.size();
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = i + 1; j < k; ++j) {
            if (kernel(grown.set[i], grown.set[j], p)) grown.triples.push_back({i, j, k});
          }
        }
        grown.set.push_back(p);
        next.push_back(std::move(grown));
      }
      meter.charge(next.size());
      std::stable_sort(next.begin(), next.end(), [](const Beam& a, const Beam& b) {
        if (a.triples.size() != b.triples.size()) return a.triples.size() > b.triples.size();
        return a.set.size() > b.set.size();
      });
      if (next.size() > opts.beam_width) next.resize(opts.beam_width);
      beam = std::move(next);
      if (meter.exhausted()) break;
    }
    out.exact = false;
    out.value = static_cast<std::int64_t>(beam.front().triples.size());
    out.witness = beam.front().set;
  }
  out.nodes_explored = meter.nodes();
  out.nodes_pruned = pruned;
  out.elapsed = clock.elapsed();
  detail::verify_witness(out, n, mode, [&](const PointSet& p) { return detail::triples_of(p, n, mode); });
  if (const auto* s = out.point_set(); s && s->size() >= 4 && count_quadruples(*s, n, mode) != 0) {
    throw std::logic_error("quadruple-free subset search returned a witness with a quadruple");
  }
  return out;
}

// Largest subset of Z_n x Z_n with no collinear triple. Translation lets the
// set contain (0, 0). Exhaustive when it finishes within budget.
inline SearchOutcome max_triple_free_subset(Residue n_value, CollinearityMode mode = kDefaultMode,
                                            const SearchBudget& budget = {}) {
  if (n_value < 2) throw Error(ErrorKind::InvalidArgument, "n >= 2 required");
  const Modulus n(n_value);
  detail::require_search_modulus(n);
  const detail::Stopwatch clock;
  const CollinearityKernel kernel(n, mode);
  detail::BudgetMeter meter(budget, clock);
  const auto grid = detail::grid_points(n_value);
  // n + 2 caps a triple-free set over a prime field.
  const std::optional<std::size_t> ceiling =
      n.prime() ? std::optional<std::size_t>(static_cast<std::size_t>(n_value + 2)) : std::nullopt;

  PointSet set{grid.front()};
  PointSet best_set = set;
  std::uint64_t local = 0, pruned = 0;
  bool aborted = false;

  std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
    if (aborted || (ceiling && best_set.size() >= *ceiling)) return;
    if (++local >= detail::kFlushEvery) {
      aborted = !meter.charge(local);
      local = 0;
      if (aborted) return;
    }
    if (set.size() > best_set.size()) best_set = set;
    if (idx == grid.size()) return;
    if (set.size() + (grid.size() - idx) <= best_set.size()) {
      ++pruned;
      return;
    }
    const GridPoint& p = grid[idx];
    bool clean = true;
    for (std::size_t i = 0; i < set.size() && clean; ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (kernel(set[i], set[j], p)) {
          clean = false;
          break;
        }
      }
    }
    if (clean) {
      set.push_back(p);
      dfs(idx + 1);
      set.pop_back();
    }
    dfs(idx + 1);
  };
  dfs(1);
  meter.charge(local);

  SearchOutcome out;
  out.objective = Objective::Maximize;
  out.exact = !aborted;
  out.value = static_cast<std::int64_t>(best_set.size());
  out.witness = best_set;
  out.nodes_explored = meter.nodes();
  out.nodes_pruned = pruned;
  out.elapsed = clock.elapsed();
  if (best_set.size() >= 3 && count_triples(best_set, n, mode) != 0) {
    throw std::logic_error("triple-free search returned a set with a collinear triple");
  }
  return out;
}

// ---------------------------------------------------------------------------

struct PrimeFloorCheck {
  bool holds = false;
  bool exhaustive = false;
  std::int64_t least_seen = 0;  // least triple count over everything examined
  std::uint64_t samples = 0;
};

inline constexpr Residue kPrimeFloorExhaustiveLimit = 11;

// Every transversal of Z_p, p > 2 prime, has a collinear triple. Exhaustive
// through psi up to the limit; above it, random transversals are sampled and
// only the absence of a counterexample is reported.
inline PrimeFloorCheck check_prime_psi_floor(const Modulus& n, const SearchBudget& budget = {}, std::uint64_t samples = 2000,
                                    std::uint64_t seed = 1) {
  detail::require_odd_prime(n);
  PrimeFloorCheck check;
  if (n.value() <= kPrimeFloorExhaustiveLimit) {
    const auto out = psi(n.value(), kDefaultMode, budget);
    check.exhaustive = out.exact;
    check.least_seen = out.value;
    check.holds = out.value >= 1;
    return check;
  }
  std::mt19937_64 rng(seed);
  std::vector<Residue> sigma(static_cast<std::size_t>(n.value()));
  for (Residue i = 0; i < n.value(); ++i) sigma[static_cast<std::size_t>(i)] = i;
  check.least_seen = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::shuffle(sigma.begin(), sigma.end(), rng);
    check.least_seen = std::min(check.least_seen, count_triples(Transversal(sigma)));
    ++check.samples;
  }
  check.holds = check.least_seen >= 1;
  return check;
}

}  // namespace colltrip
