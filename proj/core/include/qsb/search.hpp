#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsb/oracle_table.hpp"
#include "qsb/rng.hpp"
#include "qsb/state_vector.hpp"

namespace qsb {

/// Which half of the Grover iterate is applied first. The literature lists
/// the two steps without fixing the composition; oracle-first is the
/// conventional choice, the other order is kept for A/B experiments.
enum class IterateOrder { oracle_first, diffusion_first };

/// Exact two-amplitude representation of the Grover-invariant subspace
/// spanned by the uniform-marked and uniform-unmarked vectors. Works at any
/// domain size, far beyond what the dense engine can hold.
struct SubspaceState {
  std::uint64_t domain_size = 0;
  std::uint64_t marked_count = 0;
  double marked_amp = 0.0;
  double unmarked_amp = 0.0;
};

SubspaceState make_uniform_subspace(std::uint64_t domain_size,
                                    std::uint64_t marked_count);

/// One Grover iterate (phase oracle, then diffusion) as the exact 2x2 update.
void subspace_iterate(SubspaceState& s);

/// Probability that measuring yields a marked word.
double subspace_success_probability(const SubspaceState& s);

/// Probability mass the dense state puts on words with f(x) = 1.
double success_probability(const StateVector& state, const OracleTable& f);

struct IterationTrace {
  std::uint64_t iteration = 0;
  double success_probability = 0.0;
};

struct BbhtRound {
  double m = 0.0;
  std::uint64_t j = 0;
  std::uint64_t queries_after = 0;
  bool success = false;
};

struct SearchOutcome {
  std::optional<std::uint64_t> found_word;
  std::uint64_t queries_used = 0;
  bool success = false;
  std::vector<IterationTrace> iterate_trace;  // filled when tracing
  std::vector<BbhtRound> round_trace;         // bbht_search only
};

struct SearchOptions {
  IterateOrder order = IterateOrder::oracle_first;
  bool trace = false;
  double growth = 1.2;  // iteration-count multiplier of the bbht schedule
  std::optional<std::uint64_t> query_budget;  // bbht; default ceil(9*sqrt(N))
  QueryCounter* counter = nullptr;
};

/// One Grover iterate on the dense engine; counts one quantum query.
void grover_iterate(StateVector& state, const OracleTable& f,
                    IterateOrder order = IterateOrder::oracle_first,
                    QueryCounter* counter = nullptr);

/// Uniform start, k iterates, one measurement, one classical verification.
/// queries_used = k + 1.
SearchOutcome run_grover(int n, const OracleTable& f, std::uint64_t iterations,
                         Rng& rng, const SearchOptions& options = {});

/// Randomized-schedule search for a solution of f(x) = 1 when the solution
/// count is unknown. Returns on a verified hit; otherwise consumes the whole
/// budget and returns no word.
SearchOutcome bbht_search(int n, const OracleTable& f, Rng& rng,
                          const SearchOptions& options = {});

/// ceil(9 * sqrt(2^n)): generous multiple of the expected search cost, so
/// budget exhaustion signals an empty solution set with high confidence.
std::uint64_t default_search_budget(int n);

}  // namespace qsb
