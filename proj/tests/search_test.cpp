#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "colltrip/packing.hpp"
#include "colltrip/search.hpp"

using namespace colltrip;

namespace {

constexpr auto Any = CollinearityMode::AnyLine;
constexpr auto Unit = CollinearityMode::UnitLine;

// Collinear k-subsets of the n x n grid as bitmasks, found with the
// exhaustive line scan.
std::vector<std::uint64_t> collinear_masks(Residue n, std::size_t k, CollinearityMode mode) {
  const auto cells = static_cast<std::size_t>(n * n);
  std::vector<std::uint64_t> out;
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == k) {
      std::vector<GridPoint> pts;
      std::uint64_t mask = 0;
      for (auto i : idx) {
        pts.push_back({static_cast<Residue>(i) / n, static_cast<Residue>(i) % n});
        mask |= std::uint64_t{1} << i;
      }
      if (collinear_set_exhaustive(pts, Modulus(n), mode)) out.push_back(mask);
      return;
    }
    for (std::size_t i = from; i < cells; ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

struct BruteTransversals {
  std::int64_t min_triples = -1;
  std::vector<Residue> lex_least_min;
  std::int64_t max_quadfree = -1;
};

BruteTransversals brute_transversals(Residue n, CollinearityMode mode) {
  BruteTransversals out;
  std::vector<Residue> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    const Transversal t(sigma);
    const auto pts = t.points();
    const auto triples = n >= 3 ? count_triples_naive(pts, Modulus(n), mode) : 0;
    const auto quads = n >= 4 ? count_quadruples_naive(pts, Modulus(n), mode) : 0;
    if (out.min_triples < 0 || triples < out.min_triples) {
      out.min_triples = triples;
      out.lex_least_min = sigma;
    }
    if (quads == 0) out.max_quadfree = std::max(out.max_quadfree, triples);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

}  // namespace

TEST(Psi, TableValuesThroughEleven) {
  const std::int64_t expected[] = {0, 0, 1, 0, 2, 0, 3, 0, 5, 2, 5};
  for (Residue n = 1; n <= 11; ++n) {
    const auto out = psi(n);
    EXPECT_TRUE(out.exact);
    EXPECT_EQ(out.value, expected[n - 1]) << "n=" << n;
    ASSERT_NE(out.transversal(), nullptr);
    EXPECT_EQ(n >= 3 ? count_triples(*out.transversal()) : 0, out.value);
  }
}

TEST(Psi, PrunedSearchMatchesBruteForce) {
  for (Residue n = 1; n <= 7; ++n) {
    for (auto mode : {Any, Unit}) {
      const auto brute = brute_transversals(n, mode);
      const auto reduced = psi(n, mode);
      const auto full = psi(n, mode, {}, {.fix_first = false});
      EXPECT_EQ(reduced.value, brute.min_triples) << n << " " << to_string(mode);
      EXPECT_EQ(full.value, brute.min_triples) << n << " " << to_string(mode);
      // Single worker: lexicographically least optimum.
      EXPECT_EQ(reduced.transversal()->values(), brute.lex_least_min) << n << " " << to_string(mode);
      EXPECT_EQ(full.transversal()->values(), brute.lex_least_min) << n << " " << to_string(mode);
    }
  }
}

TEST(Psi, ModeExperimentAtNine) {
  EXPECT_EQ(psi(9, Unit).value, 5);
  EXPECT_EQ(psi(9, Any).value, 12);
  EXPECT_EQ(kDefaultMode, Unit);
}

TEST(Psi, WorkerCountDoesNotChangeValue) {
  for (Residue n : {7, 9, 10}) {
    const auto one = psi(n, kDefaultMode, {.workers = 1});
    const auto many = psi(n, kDefaultMode, {.workers = 8});
    EXPECT_TRUE(many.exact);
    EXPECT_EQ(one.value, many.value) << n;
    EXPECT_EQ(count_triples(*many.transversal()), many.value);
  }
}

TEST(Psi, BudgetExhaustionReportsUpperBound) {
  const auto out = psi(13, kDefaultMode, {.max_nodes = 5000});
  EXPECT_FALSE(out.exact);
  EXPECT_EQ(out.objective, Objective::Minimize);
  ASSERT_NE(out.transversal(), nullptr);
  EXPECT_EQ(count_triples(*out.transversal()), out.value);
  EXPECT_GE(out.value, 6);

  const auto timed = psi(14, kDefaultMode, {.max_time = Seconds(0.05)});
  EXPECT_FALSE(timed.exact);
  EXPECT_EQ(count_triples(*timed.transversal()), timed.value);
}

TEST(Psi, BoundsSandwichForSmallPrimes) {
  for (Residue p : {3, 5, 7, 11}) {
    const auto out = psi(p);
    EXPECT_GE(out.value, psi_lower_bound(Modulus(p)));
    EXPECT_EQ(out.value, (p - 1) / 2);
  }
}

TEST(Psi, ResumeFromPartialStateMatchesUninterrupted) {
  PsiState state = psi_initial_state(9, kDefaultMode);
  const auto total = state.pending.size();
  auto first = psi_resume(state, {.max_nodes = 8000});
  EXPECT_FALSE(first.exact);
  EXPECT_GT(state.pending.size(), 0U);
  EXPECT_LT(state.pending.size(), total);
  int rounds = 0;
  SearchOutcome out = first;
  while (!state.pending.empty() && rounds++ < 1000) out = psi_resume(state, {.max_nodes = 8000});
  EXPECT_TRUE(out.exact);
  EXPECT_EQ(out.value, 5);
}

TEST(LexLeast, MatchesBruteForceAndGMap) {
  EXPECT_EQ(lex_least_with_count(Modulus(3), 1).transversal()->values(), (std::vector<Residue>{0, 1, 2}));
  // Oracle: first permutation in lexicographic order with exactly 2 triples.
  std::vector<Residue> sigma = {0, 1, 2, 3, 4};
  std::vector<Residue> first;
  do {
    if (count_triples_naive(Transversal(sigma).points(), Modulus(5), Unit) == 2) {
      first = sigma;
      break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  const auto five = lex_least_with_count(Modulus(5));
  EXPECT_EQ(five.transversal()->values(), first);
  EXPECT_EQ(*five.transversal(), g_permutation(Modulus(5)));
  EXPECT_EQ(*lex_least_with_count(Modulus(7)).transversal(), g_permutation(Modulus(7)));
}

TEST(LexLeast, ReportsNoneFound) {
  const auto out = lex_least_with_count(Modulus(5), 1);  // psi(5) = 2
  EXPECT_FALSE(out.found);
  EXPECT_TRUE(out.exact);
  EXPECT_THROW(lex_least_with_count(Modulus(9)), Error);
}

TEST(QuadFree, MatchesBruteForceAndRespectsCap) {
  for (Residue n = 1; n <= 7; ++n) {
    const auto out = max_triples_quadfree_transversal(n);
    EXPECT_TRUE(out.exact);
    EXPECT_LE(out.value, quadfree_cap(n));
    EXPECT_EQ(out.value, brute_transversals(n, Unit).max_quadfree) << n;
  }
  EXPECT_EQ(max_triples_quadfree_transversal(3).transversal()->values(), (std::vector<Residue>{0, 1, 2}));
  EXPECT_EQ(max_triples_quadfree_transversal(2).value, 0);
  // Pinned by the brute force above: the cubic map's 2 is the best at n = 5.
  EXPECT_EQ(max_triples_quadfree_transversal(5).value, 2);
}

TEST(Ct0, SmallGrids) {
  const auto two = ct0_subsets(2);
  EXPECT_EQ(two.value, 0);
  EXPECT_TRUE(two.exact);
  const auto three = ct0_subsets(3);
  EXPECT_EQ(three.value, 12);
  EXPECT_EQ(three.point_set()->size(), 9U);
  EXPECT_TRUE(three.exact);
}

TEST(Ct0, FourMatchesSubsetEnumeration) {
  const auto triples = collinear_masks(4, 3, Unit);
  const auto quads = collinear_masks(4, 4, Unit);
  std::int64_t best = 0;
  for (std::uint64_t s = 0; s < (1u << 16); ++s) {
    bool clean = true;
    for (auto q : quads) {
      if ((s & q) == q) {
        clean = false;
        break;
      }
    }
    if (!clean) continue;
    std::int64_t t = 0;
    for (auto m : triples) t += (s & m) == m ? 1 : 0;
    best = std::max(best, t);
  }
  const auto out = ct0_subsets(4);
  EXPECT_TRUE(out.exact);
  EXPECT_EQ(out.value, best);
  EXPECT_EQ(out.value, 18);
}

TEST(Ct0, BeamAboveThresholdIsFlaggedInexact) {
  const auto out = ct0_subsets(5);
  EXPECT_FALSE(out.exact);
  EXPECT_EQ(out.objective, Objective::Maximize);
  EXPECT_EQ(count_quadruples(*out.point_set(), Modulus(5)), 0);
  // Any quadruple-free transversal is a valid subset, so the beam should at
  // least match the cubic map.
  EXPECT_GE(out.value, 2);
}

TEST(TripleFree, SmallGrids) {
  EXPECT_EQ(max_triple_free_subset(2).value, 4);
  EXPECT_EQ(max_triple_free_subset(3).value, 4);
  const auto five = max_triple_free_subset(5);
  EXPECT_TRUE(five.exact);
  EXPECT_LE(five.value, 7);
  EXPECT_EQ(five.value, 6);
}

TEST(TripleFree, FiveMatchesSubsetEnumeration) {
  // With (0,0) fixed by translation: some 6-set is triple-free, no 7-set is.
  const auto triples = collinear_masks(5, 3, Unit);
  auto clean = [&](std::uint64_t s) {
    for (auto m : triples)
      if ((s & m) == m) return false;
    return true;
  };
  bool six = false, seven = false;
  std::function<void(int, int, std::uint64_t, int)> rec = [&](int from, int left, std::uint64_t s, int target) {
    if (left == 0) {
      if (clean(s)) (target == 6 ? six : seven) = true;
      return;
    }
    for (int i = from; i < 25 && !(target == 6 ? six : seven); ++i) {
      const std::uint64_t t = s | (std::uint64_t{1} << i);
      if (!clean(t)) continue;
      rec(i + 1, left - 1, t, target);
    }
  };
  rec(1, 5, 1, 6);
  rec(1, 6, 1, 7);
  EXPECT_TRUE(six);
  EXPECT_FALSE(seven);
}

TEST(PrimePsiFloor, SmallPrimes) {
  for (Residue p : {3, 5, 7, 11}) {
    const auto check = check_prime_psi_floor(Modulus(p));
    EXPECT_TRUE(check.holds);
    EXPECT_TRUE(check.exhaustive);
  }
  const auto sampled = check_prime_psi_floor(Modulus(13), {}, 500);
  EXPECT_TRUE(sampled.holds);
  EXPECT_FALSE(sampled.exhaustive);
  EXPECT_EQ(sampled.samples, 500U);
}
