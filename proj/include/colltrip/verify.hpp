#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "colltrip/census.hpp"
#include "colltrip/constructions.hpp"
#include "colltrip/packing.hpp"
#include "colltrip/search.hpp"

namespace colltrip {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string id;
  std::string claim;
  std::string expected;
  std::string observed;
  bool passed = false;
  double seconds = 0.0;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  // Counter used for the construction sweeps; replaceable so a deliberately
  // broken counter can be shown to fail the suite.
  std::function<std::int64_t(const Transversal&)> triple_counter = [](const Transversal& t) {
    return count_triples(t);
  };
  // Receives each result as soon as it is known.
  std::function<void(const CheckResult&)> on_result;
};

inline constexpr std::int64_t kPublishedPsi[] = {0, 0, 1, 0, 2, 0, 3, 0, 5, 2, 5, 0, 6, 9, 6, 4, 8};

namespace detail {

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << "]";
  return s.str();
}

inline std::vector<Residue> primes_between(Residue lo, Residue hi) {
  std::vector<Residue> out;
  for (Residue p = lo; p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// Least triple count over all n! transversals by plain enumeration and the
// O(n^3) counter; shares nothing with the pruned search.
inline std::int64_t psi_by_enumeration(Residue n, CollinearityMode mode) {
  if (n < 3) return 0;
  std::vector<Residue> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    best = std::min(best, count_triples_naive(Transversal(sigma).points(), Modulus(n), mode));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

}  // namespace detail

// Runs the acceptance checks. Quick scales the sweeps down (table to n = 8,
// constructions to 101) so it finishes in seconds.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opts = {}) {
  const bool full = opts.level == VerifyLevel::Full;
  std::vector<CheckResult> results;
  auto record = [&](std::string id, std::string claim, auto&& body) {
    CheckResult r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    const auto start = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.observed = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opts.on_result) opts.on_result(r);
    results.push_back(std::move(r));
  };

  // 1. Table values.
  record("1", "psi(n) matches the published table for n = 1.." + std::string(full ? "11" : "8") +
                  " under the default mode",
         [&](CheckResult& r) {
           const Residue top = full ? 11 : 8;
           std::vector<std::int64_t> want, got;
           bool exact = true;
           for (Residue n = 1; n <= top; ++n) {
             const auto out = psi(n);
             want.push_back(kPublishedPsi[n - 1]);
             got.push_back(out.value);
             exact = exact && out.exact;
             if (n >= 3 && opts.triple_counter(*out.transversal()) != out.value) exact = false;
           }
           r.expected = detail::join(want);
           r.observed = detail::join(got) + (exact ? "" : " (inexact or witness mismatch)");
           r.passed = exact && want == got;
         });

  // 2. Mode disambiguation at n = 9.
  record("2", "psi(9) = 5 under exactly the default mode; the other mode is a regression fixture",
         [&](CheckResult& r) {
           const auto unit = psi(9, CollinearityMode::UnitLine).value;
           const auto any = psi(9, CollinearityMode::AnyLine).value;
           const auto def = kDefaultMode == CollinearityMode::UnitLine ? unit : any;
           const auto other = kDefaultMode == CollinearityMode::UnitLine ? any : unit;
           r.expected = "default=5, other!=5 (any=12 fixture)";
           r.observed = "unit=" + std::to_string(unit) + ", any=" + std::to_string(any);
           r.passed = def == 5 && other != 5 && any == 12;
         });

  // 3. Construction sweeps.
  record("3a", "inverse map: (p-1)/2 triples and no quadruple for primes 3 <= p <= " + std::string(full ? "503" : "101"),
         [&](CheckResult& r) {
           std::vector<Residue> bad;
           for (Residue p : detail::primes_between(3, full ? 503 : 101)) {
             const Modulus m(p);
             const auto t = inverse_permutation(m);
             if (opts.triple_counter(t) != (p - 1) / 2 || line_decomposition(t.points(), m).quadruples != 0) bad.push_back(p);
           }
           r.expected = "no failing primes";
           r.observed = bad.empty() ? "no failing primes" : "failing " + detail::join(bad);
           r.passed = bad.empty();
         });
  record("3b", "cubic map: (p-1)(p-2)/6 triples, no quadruple, p-1 two-point lines for primes p = 2 mod 3 <= " +
                   std::string(full ? "503" : "101"),
         [&](CheckResult& r) {
           std::vector<Residue> bad;
           for (Residue p : detail::primes_between(3, full ? 503 : 101)) {
             if (p % 3 != 2) continue;
             const Modulus m(p);
             const auto t = cubic_permutation(m);
             const auto c = line_decomposition(t.points(), m);
             const auto two = std::count_if(c.lines.begin(), c.lines.end(), [](const LineCount& l) { return l.points == 2; });
             if (opts.triple_counter(t) != (p - 1) * (p - 2) / 6 || c.quadruples != 0 || two != p - 1) bad.push_back(p);
           }
           r.expected = "no failing primes";
           r.observed = bad.empty() ? "no failing primes" : "failing " + detail::join(bad);
           r.passed = bad.empty();
         });
  record("3c", "random nondegenerate fractional-linear maps give (p-1)/2 triples for primes 7 <= p <= 101",
         [&](CheckResult& r) {
           const int per_prime = full ? 50 : 5;
           std::mt19937_64 rng(20240229);
           std::int64_t checked = 0, failed = 0;
           for (Residue p : detail::primes_between(7, 101)) {
             const Modulus m(p);
             std::uniform_int_distribution<Residue> coef(0, p - 1);
             for (int i = 0; i < per_prime; ++i) {
               MobiusParams params;
               do {
                 params = {coef(rng), coef(rng), coef(rng), coef(rng)};
               } while (params.c == 0 || m.sub(m.mul(params.a, params.d), m.mul(params.b, params.c)) == 0);
               ++checked;
               if (opts.triple_counter(mobius_permutation(m, params)) != (p - 1) / 2) ++failed;
             }
           }
           r.expected = "0 failures";
           r.observed = std::to_string(failed) + " failures of " + std::to_string(checked);
           r.passed = failed == 0;
         });

  // 4. Pair packing.
  record("4a", "T(K,L) by DP equals the closed form for 1 <= L <= " + std::string(full ? "60" : "20") + ", 0 <= K <= 3L",
         [&](CheckResult& r) {
           std::int64_t mismatches = 0, cells = 0;
           for (std::int64_t l = 1; l <= (full ? 60 : 20); ++l) {
             for (std::int64_t k = 0; k <= 3 * l; ++k) {
               ++cells;
               if (t_exact(k, l, {.max_optima = 1}).value != t_closed_form(k, l)) ++mismatches;
             }
           }
           r.expected = "0 mismatches";
           r.observed = std::to_string(mismatches) + " mismatches of " + std::to_string(cells);
           r.passed = mismatches == 0;
         });
  record("4b", "T(28,2) = 39 with optima exactly {(21,5),(20,6)}; greedy costs 40", [&](CheckResult& r) {
    const auto exact = t_exact(28, 2);
    std::vector<std::string> optima;
    for (const auto& p : exact.optima) optima.push_back(p.str());
    const auto greedy = greedy_packing(28, 2);
    r.expected = "value 39, optima [(21,5),(20,6)], greedy 40";
    r.observed = "value " + std::to_string(exact.value) + ", optima " + detail::join(optima) + ", greedy " +
                 greedy.str() + " cost " + std::to_string(trip_cost(greedy));
    r.passed = exact.value == 39 && optima == std::vector<std::string>{"(21,5)", "(20,6)"} && trip_cost(greedy) == 40;
  });
  record("4b'", "T(26,2) = 39 with optima exactly {(21,5),(20,6)}; greedy (15,11) costs 40", [&](CheckResult& r) {
    const auto exact = t_exact(26, 2);
    std::vector<std::string> optima;
    for (const auto& p : exact.optima) optima.push_back(p.str());
    const auto greedy = greedy_packing(26, 2);
    r.expected = "value 39, optima [(21,5),(20,6)], greedy (15,11) cost 40";
    r.observed = "value " + std::to_string(exact.value) + ", optima " + detail::join(optima) + ", greedy " +
                 greedy.str() + " cost " + std::to_string(trip_cost(greedy));
    r.passed = exact.value == 39 && optima == std::vector<std::string>{"(21,5)", "(20,6)"} &&
               greedy.parts() == std::vector<std::int64_t>{15, 11} && trip_cost(greedy) == 40;
  });
  record("4c", "T(K,L) >= L g(K/L) - 1e-9 for K <= 200, L <= 20", [&](CheckResult& r) {
    std::int64_t violations = 0;
    for (std::int64_t l = 1; l <= 20; ++l) {
      for (std::int64_t k = 0; k <= 200; ++k) {
        if (static_cast<double>(t_exact(k, l, {.max_optima = 1}).value) < jensen_lower_bound(k, l) - kJensenTolerance) {
          ++violations;
        }
      }
    }
    r.expected = "0 violations";
    r.observed = std::to_string(violations) + " violations";
    r.passed = violations == 0;
  });

  // 5 and 6 share the prime psi runs.
  std::vector<std::pair<Residue, SearchOutcome>> prime_runs;
  for (Residue p : {3, 5, 7, 11}) prime_runs.emplace_back(p, psi(p));
  record("5", "ceil((p-1)/4) <= psi(p) = (p-1)/2 for p in {3,5,7,11}", [&](CheckResult& r) {
    std::vector<std::string> rows;
    bool ok = true;
    for (const auto& [p, out] : prime_runs) {
      const auto lo = psi_lower_bound(Modulus(p));
      rows.push_back(std::to_string(lo) + "<=" + std::to_string(out.value) + "=" + std::to_string((p - 1) / 2));
      ok = ok && out.exact && lo <= out.value && out.value == (p - 1) / 2;
    }
    r.expected = "lower <= psi = (p-1)/2 for each p";
    r.observed = detail::join(rows);
    r.passed = ok;
  });
  record("6", "psi(p) >= 1 for p in {3,5,7,11}, exhaustively", [&](CheckResult& r) {
    std::vector<std::int64_t> got;
    bool ok = true;
    for (const auto& [p, out] : prime_runs) {
      got.push_back(out.value);
      ok = ok && out.exact && out.value >= 1;
    }
    r.expected = "all >= 1";
    r.observed = detail::join(got);
    r.passed = ok;
  });

  // 7. Lexicographically least transversal vs the map x/(x-1).
  record("7", "lexicographically least transversal with (p-1)/2 triples equals x/(x-1) for p in {3,5,7}",
         [&](CheckResult& r) {
           std::vector<std::string> rows;
           bool ok = true;
           for (Residue p : {3, 5, 7}) {
             const Modulus m(p);
             const auto lex = lex_least_with_count(m);
             const auto g = g_permutation(m);
             const bool equal = lex.found && *lex.transversal() == g;
             rows.push_back("p=" + std::to_string(p) + ":" + (lex.found ? lex.transversal()->str() : "none") +
                            (equal ? "==" : "!=") + g.str());
             ok = ok && equal;
           }
           r.expected = "equal for each p";
           r.observed = detail::join(rows);
           r.passed = ok;
         });

  // 8. Small-search oracles.
  record("8a", "CT0(2) = 0 and CT0(3) = 12", [&](CheckResult& r) {
    const auto two = ct0_subsets(2), three = ct0_subsets(3);
    r.expected = "0, 12";
    r.observed = std::to_string(two.value) + ", " + std::to_string(three.value);
    r.passed = two.exact && three.exact && two.value == 0 && three.value == 12;
  });
  record("8b", "largest triple-free subset: n=2 -> 4, n=3 -> 4, n=5 -> 6 (<= 7)", [&](CheckResult& r) {
    const auto a = max_triple_free_subset(2), b = max_triple_free_subset(3), c = max_triple_free_subset(5);
    r.expected = "4, 4, 6";
    r.observed = std::to_string(a.value) + ", " + std::to_string(b.value) + ", " + std::to_string(c.value);
    r.passed = a.exact && b.exact && c.exact && a.value == 4 && b.value == 4 && c.value == 6 && c.value <= 7;
  });
  record("8c", "quadruple-free transversals have at most floor(n(n-1)/6) triples for n <= 7", [&](CheckResult& r) {
    std::vector<std::string> rows;
    bool ok = true;
    for (Residue n = 1; n <= 7; ++n) {
      const auto out = max_triples_quadfree_transversal(n);
      rows.push_back(std::to_string(out.value) + "<=" + std::to_string(quadfree_cap(n)));
      ok = ok && out.exact && out.value <= quadfree_cap(n);
    }
    r.expected = "value <= cap for each n";
    r.observed = detail::join(rows);
    r.passed = ok;
  });

  // 9. Equivalences.
  record("9a", "pruned, symmetry-reduced psi equals plain enumeration for n <= 6 (both modes)", [&](CheckResult& r) {
    std::vector<std::string> rows;
    bool ok = true;
    for (auto mode : {CollinearityMode::UnitLine, CollinearityMode::AnyLine}) {
      for (Residue n = 1; n <= 6; ++n) {
        const auto fast = psi(n, mode).value;
        const auto slow = detail::psi_by_enumeration(n, mode);
        if (fast != slow) rows.push_back(std::string(to_string(mode)) + " n=" + std::to_string(n));
        ok = ok && fast == slow;
      }
    }
    r.expected = "no mismatches";
    r.observed = rows.empty() ? "no mismatches" : "mismatch " + detail::join(rows);
    r.passed = ok;
  });
  record("9b", "line-bucketed counts equal naive counts on 200 random subsets per prime <= 13", [&](CheckResult& r) {
    std::mt19937_64 rng(13);
    std::int64_t mismatches = 0, checked = 0;
    for (Residue p : {2, 3, 5, 7, 11, 13}) {
      const Modulus m(p);
      std::vector<Residue> cells(static_cast<std::size_t>(p * p));
      std::iota(cells.begin(), cells.end(), 0);
      for (int i = 0; i < 200; ++i) {
        std::shuffle(cells.begin(), cells.end(), rng);
        const auto size = 3 + rng() % static_cast<std::uint64_t>(std::min<Residue>(p * p - 2, 30));
        PointSet s;
        for (std::size_t k = 0; k < size && k < cells.size(); ++k) s.push_back({cells[k] / p, cells[k] % p});
        if (s.size() < 3) continue;
        ++checked;
        if (count_triples(s, m) != count_triples_naive(s, m, kDefaultMode) ||
            count_quadruples(s, m) != count_quadruples_naive(s, m, kDefaultMode)) {
          ++mismatches;
        }
      }
    }
    r.expected = "0 mismatches";
    r.observed = std::to_string(mismatches) + " mismatches of " + std::to_string(checked);
    r.passed = mismatches == 0;
  });
  record("9c", "1-worker and 8-worker psi agree at n = 9 and n = 10", [&](CheckResult& r) {
    std::vector<std::string> rows;
    bool ok = true;
    for (Residue n : {9, 10}) {
      const auto one = psi(n, kDefaultMode, {.workers = 1});
      const auto eight = psi(n, kDefaultMode, {.workers = 8});
      rows.push_back(std::to_string(one.value) + "/" + std::to_string(eight.value));
      ok = ok && one.exact && eight.exact && one.value == eight.value;
    }
    r.expected = "equal values";
    r.observed = detail::join(rows);
    r.passed = ok;
  });
  return results;
}

}  // namespace colltrip
