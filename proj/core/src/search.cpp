#include "qsb/search.hpp"

#include <cmath>

#include "qsb/errors.hpp"

namespace qsb {

SubspaceState make_uniform_subspace(std::uint64_t domain_size,
                                    std::uint64_t marked_count) {
  if (domain_size == 0) throw DomainError("subspace: domain_size must be positive");
  if (marked_count > domain_size)
    throw DomainError("subspace: marked_count exceeds domain size");
  SubspaceState s;
  s.domain_size = domain_size;
  s.marked_count = marked_count;
  const double amp = 1.0 / std::sqrt(static_cast<double>(domain_size));
  s.marked_amp = amp;
  s.unmarked_amp = amp;
  return s;
}

void subspace_iterate(SubspaceState& s) {
  // Phase oracle: flip the marked component.
  double k = -s.marked_amp;
  double u = s.unmarked_amp;
  // Diffusion: reflect both components about the mean amplitude.
  const double nd = static_cast<double>(s.domain_size);
  const double bd = static_cast<double>(s.marked_count);
  const double mean = (bd * k + (nd - bd) * u) / nd;
  s.marked_amp = 2.0 * mean - k;
  s.unmarked_amp = 2.0 * mean - u;
}

double subspace_success_probability(const SubspaceState& s) {
  const double p =
      static_cast<double>(s.marked_count) * s.marked_amp * s.marked_amp;
  if (p < 0.0) return 0.0;
  return p > 1.0 ? 1.0 : p;
}

double success_probability(const StateVector& state, const OracleTable& f) {
  if (f.kind != OracleKind::boolean)
    throw ShapeError("success_probability: oracle must be boolean");
  if (f.domain_size() != state.shape.question_words())
    throw ShapeError("success_probability: oracle width mismatch");
  const std::uint64_t block = state.shape.answer_states();
  double p = 0.0;
  for (std::uint64_t a = 0; a < f.domain_size(); ++a) {
    if (f.values[a] == 0) continue;
    const std::uint64_t base = a * block;
    for (std::uint64_t b = 0; b < block; ++b)
      p += std::norm(state.amps[base + b]);
  }
  return p;
}

void grover_iterate(StateVector& state, const OracleTable& f,
                    IterateOrder order, QueryCounter* counter) {
  if (order == IterateOrder::oracle_first) {
    apply_phase_oracle(state, f, counter);
    apply_diffusion(state);
  } else {
    apply_diffusion(state);
    apply_phase_oracle(state, f, counter);
  }
}

SearchOutcome run_grover(int n, const OracleTable& f, std::uint64_t iterations,
                         Rng& rng, const SearchOptions& options) {
  if (f.kind != OracleKind::boolean)
    throw ShapeError("run_grover: oracle must be boolean");
  if (f.n != n) throw ShapeError("run_grover: oracle width mismatch");

  StateVector state = make_basis_state(make_shape(n, 0), 0);
  apply_walsh_hadamard(state);

  SearchOutcome outcome;
  if (options.trace) {
    outcome.iterate_trace.reserve(iterations + 1);
    outcome.iterate_trace.push_back({0, success_probability(state, f)});
  }
  for (std::uint64_t i = 0; i < iterations; ++i) {
    grover_iterate(state, f, options.order, options.counter);
    renormalize_if_drifted(state);
    if (options.trace)
      outcome.iterate_trace.push_back({i + 1, success_probability(state, f)});
  }

  const std::uint64_t word = measure(state, rng);
  QueryCounter scratch;
  QueryCounter* counter = options.counter ? options.counter : &scratch;
  const bool hit = f.evaluate(word, counter) == 1;

  outcome.found_word = word;
  outcome.queries_used = iterations + 1;  // k oracle calls + 1 verification
  outcome.success = hit;
  return outcome;
}

SearchOutcome bbht_search(int n, const OracleTable& f, Rng& rng,
                          const SearchOptions& options) {
  if (f.kind != OracleKind::boolean)
    throw ShapeError("bbht_search: oracle must be boolean");
  if (f.n != n) throw ShapeError("bbht_search: oracle width mismatch");

  const std::uint64_t budget =
      options.query_budget ? *options.query_budget : default_search_budget(n);
  const double sqrt_n = std::sqrt(static_cast<double>(f.domain_size()));

  SearchOutcome outcome;
  std::uint64_t used = 0;
  double m = 1.0;
  while (used < budget) {
    const std::uint64_t remaining = budget - used;
    // Each round costs j iterates plus one verification, so cap j at
    // remaining - 1; an empty marked set then exhausts the budget exactly.
    std::uint64_t j =
        rng.uniform_u64(static_cast<std::uint64_t>(std::ceil(m)));
    if (j > remaining - 1) j = remaining - 1;

    SearchOptions round = options;
    round.trace = false;
    round.query_budget.reset();
    SearchOutcome attempt = run_grover(n, f, j, rng, round);
    used += attempt.queries_used;

    if (options.trace)
      outcome.round_trace.push_back({m, j, used, attempt.success});

    if (attempt.success) {
      outcome.found_word = attempt.found_word;
      outcome.queries_used = used;
      outcome.success = true;
      return outcome;
    }
    m = std::min(options.growth * m, sqrt_n);
  }

  outcome.queries_used = used;
  return outcome;
}

std::uint64_t default_search_budget(int n) {
  const double sqrt_n = std::sqrt(std::ldexp(1.0, n));
  return static_cast<std::uint64_t>(std::ceil(9.0 * sqrt_n));
}

}  // namespace qsb
