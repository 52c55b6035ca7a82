#include "qsb/search.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace qsb {
namespace {

// Independent reference: p(k) = sin^2((2k+1) * asin(sqrt(b/N))).
double closed_form_p(double domain, double marked, std::uint64_t k) {
  const double theta = std::asin(std::sqrt(marked / domain));
  const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
  return s * s;
}

OracleTable single_marked(int n, std::uint64_t word) {
  std::vector<std::uint32_t> values(std::uint64_t{1} << n, 0u);
  values[word] = 1u;
  return make_boolean_table(n, std::move(values));
}

TEST(Subspace, UniformInitialAmplitudes) {
  SubspaceState s = make_uniform_subspace(16, 3);
  EXPECT_NEAR(s.marked_amp, 0.25, 1e-15);
  EXPECT_NEAR(s.unmarked_amp, 0.25, 1e-15);
  EXPECT_NEAR(subspace_success_probability(s), 3.0 / 16.0, 1e-15);
  EXPECT_THROW(make_uniform_subspace(0, 0), DomainError);
  EXPECT_THROW(make_uniform_subspace(4, 5), DomainError);
}

TEST(Subspace, SingleIterateOnFourStates) {
  // N=4, b=1: one iterate reaches certainty, exactly in IEEE arithmetic.
  SubspaceState s = make_uniform_subspace(4, 1);
  subspace_iterate(s);
  EXPECT_EQ(subspace_success_probability(s), 1.0);
  EXPECT_EQ(s.unmarked_amp, 0.0);
}

TEST(Subspace, FrozenClosedFormValues) {
  SubspaceState s = make_uniform_subspace(16, 1);
  for (int k = 0; k < 3; ++k) subspace_iterate(s);
  EXPECT_NEAR(subspace_success_probability(s), 0.9613189697265625, 1e-12);

  SubspaceState big = make_uniform_subspace(1024, 1);
  for (int k = 0; k < 25; ++k) subspace_iterate(big);
  EXPECT_NEAR(subspace_success_probability(big), 0.9994612447444079, 1e-12);
}

TEST(Subspace, MatchesClosedFormOnSeededGrid) {
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_u64(10));
    const std::uint64_t domain = std::uint64_t{1} << n;
    const std::uint64_t b = 1 + rng.uniform_u64(domain);
    const auto max_k = static_cast<std::uint64_t>(
        2.0 * std::sqrt(static_cast<double>(domain)));
    const std::uint64_t k = rng.uniform_u64(max_k + 1);
    SubspaceState s = make_uniform_subspace(domain, b);
    for (std::uint64_t i = 0; i < k; ++i) subspace_iterate(s);
    const double expected = closed_form_p(static_cast<double>(domain),
                                          static_cast<double>(b), k);
    ASSERT_NEAR(subspace_success_probability(s), expected, 1e-10)
        << "n=" << n << " b=" << b << " k=" << k;
  }
}

TEST(Subspace, HugeDomainBeyondDenseEngine) {
  // 2^40 basis states: far outside dense-simulation capacity.
  const std::uint64_t domain = std::uint64_t{1} << 40;
  SubspaceState s = make_uniform_subspace(domain, 1);
  for (int k = 0; k < 1000; ++k) subspace_iterate(s);
  EXPECT_NEAR(subspace_success_probability(s),
              closed_form_p(static_cast<double>(domain), 1.0, 1000), 1e-9);
}

TEST(Subspace, EmptyMarkedSetIsFixedPoint) {
  SubspaceState s = make_uniform_subspace(64, 0);
  for (int k = 0; k < 10; ++k) {
    subspace_iterate(s);
    EXPECT_EQ(subspace_success_probability(s), 0.0);
    EXPECT_NEAR(s.unmarked_amp, 1.0 / 8.0, 1e-12);
  }
}

TEST(Subspace, FullMarkedSetStaysCertain) {
  SubspaceState s = make_uniform_subspace(64, 64);
  for (int k = 0; k < 5; ++k) {
    subspace_iterate(s);
    EXPECT_NEAR(subspace_success_probability(s), 1.0, 1e-12);
  }
}

TEST(Subspace, UnimodalRiseToFirstMaximum) {
  // On N = 2^20, b = 1, success probability climbs strictly until the
  // optimal iteration count and falls right after it.
  const std::uint64_t domain = std::uint64_t{1} << 20;
  const auto optimal = static_cast<std::uint64_t>(
      std::floor(M_PI / 4.0 * std::sqrt(static_cast<double>(domain))));
  SubspaceState s = make_uniform_subspace(domain, 1);
  double prev = subspace_success_probability(s);
  for (std::uint64_t k = 1; k <= optimal; ++k) {
    subspace_iterate(s);
    const double p = subspace_success_probability(s);
    ASSERT_GT(p, prev) << "k=" << k;
    prev = p;
  }
  EXPECT_GT(prev, 0.999);
  for (int k = 0; k < 5; ++k) {
    subspace_iterate(s);
    const double p = subspace_success_probability(s);
    ASSERT_LT(p, prev);
    prev = p;
  }
}

TEST(FullEngine, MatchesSubspaceOnPartitionGrid) {
  // Dense engine vs exact two-amplitude recursion, all power-of-two solution
  // counts, iteration counts up to 2*sqrt(N).
  for (int n = 1; n <= 8; ++n) {
    const std::uint64_t domain = std::uint64_t{1} << n;
    const auto max_k = static_cast<std::uint64_t>(
        std::ceil(2.0 * std::sqrt(static_cast<double>(domain))));
    for (std::uint64_t b = 1; b <= domain; b *= 2) {
      Rng rng(derive_stream_seed(4, "grid", n, b, 0));
      OracleTable f = sample_s_b(n, b, rng);
      StateVector state = make_basis_state(make_shape(n, 0), 0);
      apply_walsh_hadamard(state);
      SubspaceState s = make_uniform_subspace(domain, b);
      for (std::uint64_t k = 0; k <= max_k; ++k) {
        ASSERT_NEAR(success_probability(state, f),
                    subspace_success_probability(s), 1e-10)
            << "n=" << n << " b=" << b << " k=" << k;
        grover_iterate(state, f);
        subspace_iterate(s);
      }
    }
  }
}

TEST(FullEngine, MatchesSubspaceOffPartitionCounts) {
  // Solution counts that are not powers of two, arbitrary marked sets.
  for (std::uint64_t b : {3ull, 5ull, 9ull, 37ull}) {
    Rng rng(derive_stream_seed(4, "offgrid", 6, b, 0));
    OracleTable f = sample_s_b(6, b, rng);
    StateVector state = make_basis_state(make_shape(6, 0), 0);
    apply_walsh_hadamard(state);
    SubspaceState s = make_uniform_subspace(64, b);
    for (int k = 0; k < 16; ++k) {
      ASSERT_NEAR(success_probability(state, f),
                  subspace_success_probability(s), 1e-10);
      grover_iterate(state, f);
      subspace_iterate(s);
    }
  }
}

TEST(FullEngine, CertaintyOnFourStates) {
  // N=4, b=1, k=1: mathematical certainty.  The dense engine scales by
  // 1/sqrt(2) per butterfly stage, so the result rounds in the last few
  // ulps (unlike the dyadic subspace recursion, which is bit-exact).
  OracleTable f = single_marked(2, 3);
  StateVector state = make_basis_state(make_shape(2, 0), 0);
  apply_walsh_hadamard(state);
  grover_iterate(state, f);
  EXPECT_NEAR(success_probability(state, f), 1.0, 1e-12);
}

TEST(FullEngine, FrozenTraceValue) {
  OracleTable f = single_marked(4, 11);
  Rng rng(1);
  SearchOptions opts;
  opts.trace = true;
  SearchOutcome out = run_grover(4, f, 3, rng, opts);
  ASSERT_EQ(out.iterate_trace.size(), 4u);
  EXPECT_EQ(out.iterate_trace[0].iteration, 0u);
  EXPECT_NEAR(out.iterate_trace[0].success_probability, 1.0 / 16.0, 1e-12);
  EXPECT_NEAR(out.iterate_trace[3].success_probability, 0.9613189697265625,
              1e-12);
}

TEST(FullEngine, DiffusionFirstLagsOracleFirstByOneIterate) {
  // Diffusion fixes the uniform start, so the diffusion-first trace is the
  // oracle-first trace delayed by one step (the trailing oracle only moves
  // phases, not masses).
  OracleTable f = single_marked(4, 7);
  Rng a(2), b(2);
  SearchOptions of, df;
  of.trace = true;
  df.trace = true;
  df.order = IterateOrder::diffusion_first;
  SearchOutcome first = run_grover(4, f, 8, a, of);
  SearchOutcome second = run_grover(4, f, 8, b, df);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_NEAR(second.iterate_trace[k].success_probability,
                first.iterate_trace[k - 1].success_probability, 1e-12);
  }
}

TEST(RunGrover, QueryAccounting) {
  OracleTable f = single_marked(5, 9);
  QueryCounter counter;
  SearchOptions opts;
  opts.counter = &counter;
  Rng rng(8);
  SearchOutcome out = run_grover(5, f, 4, rng, opts);
  EXPECT_EQ(out.queries_used, 5u);  // 4 iterates + 1 verification
  EXPECT_EQ(counter.quantum, 4u);
  EXPECT_EQ(counter.classical, 1u);
  EXPECT_EQ(counter.total(), out.queries_used);
  ASSERT_TRUE(out.found_word.has_value());
  EXPECT_EQ(out.success, f(*out.found_word) == 1u);
}

TEST(RunGrover, ZeroIterationsIsUniformSampling) {
  OracleTable f = single_marked(4, 3);
  Rng rng(10);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) hits += run_grover(4, f, 0, rng).success;
  // p = 1/16; generous band.
  EXPECT_NEAR(hits / 2000.0, 1.0 / 16.0, 0.03);
}

TEST(RunGrover, EmpiricalRateMatchesExactProbability) {
  OracleTable f = single_marked(4, 11);
  Rng rng(14);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) hits += run_grover(4, f, 3, rng).success;
  EXPECT_NEAR(hits / 2000.0, 0.9613189697265625, 0.02);
}

TEST(RunGrover, ShapeErrors) {
  Rng rng(1);
  EXPECT_THROW(run_grover(2, make_integer_table(2, {0, 1, 2, 3}), 1, rng),
               ShapeError);
  EXPECT_THROW(run_grover(3, single_marked(2, 1), 1, rng), ShapeError);
}

TEST(DefaultSearchBudget, NineTimesSqrtDomain) {
  EXPECT_EQ(default_search_budget(4), 36u);
  EXPECT_EQ(default_search_budget(5), 51u);  // ceil(9*sqrt(32))
  EXPECT_EQ(default_search_budget(10), 288u);
}

TEST(Bbht, FindsPlantedSolutions) {
  Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_u64(4));
    const std::uint64_t b = 1 + rng.uniform_u64(4);
    OracleTable f = sample_s_b(n, b, rng);
    SearchOutcome out = bbht_search(n, f, rng);
    ASSERT_TRUE(out.success);
    ASSERT_TRUE(out.found_word.has_value());
    EXPECT_EQ(f(*out.found_word), 1u);
    EXPECT_LE(out.queries_used, default_search_budget(n));
  }
}

TEST(Bbht, AbundantSolutionsAreCheap) {
  // b = N/2: a couple of queries on average.
  Rng rng(42);
  double total = 0.0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    OracleTable f = sample_s_b(10, 512, rng);
    total += static_cast<double>(bbht_search(10, f, rng).queries_used);
  }
  EXPECT_LE(total / trials, 6.0);
}

TEST(Bbht, EmptySetExhaustsBudgetExactly) {
  OracleTable f = constant_boolean(6, false);
  for (std::uint64_t budget : {1ull, 7ull, 100ull}) {
    Rng rng(3);
    SearchOptions opts;
    opts.query_budget = budget;
    SearchOutcome out = bbht_search(6, f, rng, opts);
    EXPECT_FALSE(out.success);
    EXPECT_FALSE(out.found_word.has_value());
    EXPECT_EQ(out.queries_used, budget);
  }
}

TEST(Bbht, QueryCounterMatchesReportedCost) {
  Rng rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    OracleTable f = sample_s_b(8, 1 + rng.uniform_u64(8), rng);
    QueryCounter counter;
    SearchOptions opts;
    opts.counter = &counter;
    SearchOutcome out = bbht_search(8, f, rng, opts);
    ASSERT_EQ(counter.total(), out.queries_used);
  }
}

TEST(Bbht, RoundTraceIsConsistent) {
  OracleTable f = constant_boolean(6, false);
  Rng rng(5);
  SearchOptions opts;
  opts.trace = true;
  opts.query_budget = 120;
  SearchOutcome out = bbht_search(6, f, rng, opts);
  ASSERT_FALSE(out.round_trace.empty());
  const double sqrt_domain = 8.0;
  std::uint64_t prev_queries = 0;
  double prev_m = 0.0;
  for (const BbhtRound& round : out.round_trace) {
    EXPECT_GT(round.queries_after, prev_queries);
    EXPECT_GE(round.m, prev_m);            // schedule never shrinks
    EXPECT_LE(round.m, sqrt_domain + 1e-12);  // capped at sqrt(N)
    EXPECT_LT(static_cast<double>(round.j), std::ceil(round.m) + 1.0);
    EXPECT_FALSE(round.success);
    prev_queries = round.queries_after;
    prev_m = round.m;
  }
  EXPECT_EQ(out.round_trace.back().queries_after, 120u);
}

TEST(Bbht, ScarcerSolutionsCostProportionallyMore) {
  // Mean query count scales like sqrt(N/b): halving b by 4 doubles the cost.
  Rng rng(60);
  double mean[2] = {0.0, 0.0};
  const int trials = 300;
  const std::uint64_t bs[2] = {1, 4};
  for (int which = 0; which < 2; ++which) {
    for (int i = 0; i < trials; ++i) {
      OracleTable f = sample_s_b(10, bs[which], rng);
      mean[which] +=
          static_cast<double>(bbht_search(10, f, rng).queries_used);
    }
    mean[which] /= trials;
  }
  const double ratio = mean[0] / mean[1];
  EXPECT_GT(ratio, 1.3);
  EXPECT_LT(ratio, 3.1);
}

TEST(Bbht, ShapeErrors) {
  Rng rng(1);
  EXPECT_THROW(bbht_search(2, make_integer_table(2, {0, 1, 2, 3}), rng),
               ShapeError);
  EXPECT_THROW(bbht_search(3, constant_boolean(2, true), rng), ShapeError);
}

}  // namespace
}  // namespace qsb
