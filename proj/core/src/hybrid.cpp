#include "qsb/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "qsb/errors.hpp"
#include "qsb/rng.hpp"
#include "qsb/search.hpp"

namespace qsb {

namespace {

constexpr std::uint64_t kHaarDimCap = 1024;

Amplitude inner(const std::vector<Amplitude>& m, std::uint64_t dim,
                std::uint64_t row_a, std::uint64_t row_b) {
  Amplitude acc{0.0, 0.0};
  const Amplitude* a = m.data() + row_a * dim;
  const Amplitude* b = m.data() + row_b * dim;
  for (std::uint64_t k = 0; k < dim; ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

DenseUnitary build_haar_like(std::uint64_t dim, std::uint64_t seed) {
  DenseUnitary u;
  u.dim = dim;
  u.entries.resize(dim * dim);
  Rng rng(mix64(seed) ^ mix64(dim));
  for (Amplitude& e : u.entries) e = Amplitude{rng.gaussian(), rng.gaussian()};

  // Modified Gram-Schmidt on rows, second pass for orthogonality at scale.
  for (std::uint64_t i = 0; i < dim; ++i) {
    Amplitude* row = u.entries.data() + i * dim;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::uint64_t j = 0; j < i; ++j) {
        const Amplitude proj = inner(u.entries, dim, j, i);
        const Amplitude* prev = u.entries.data() + j * dim;
        for (std::uint64_t k = 0; k < dim; ++k) row[k] -= proj * prev[k];
      }
    }
    double norm = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) norm += std::norm(row[k]);
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      // Practically unreachable for Gaussian rows; refill and redo this row.
      for (std::uint64_t k = 0; k < dim; ++k)
        row[k] = Amplitude{rng.gaussian(), rng.gaussian()};
      --i;
      continue;
    }
    const double inv = 1.0 / norm;
    for (std::uint64_t k = 0; k < dim; ++k) row[k] *= inv;
  }
  return u;
}

}  // namespace

const DenseUnitary& haar_like_unitary(std::uint64_t dim, std::uint64_t seed) {
  if (dim == 0) throw DomainError("haar_like_unitary: dim must be positive");
  if (dim > kHaarDimCap)
    throw CapacityError("haar_like_unitary: dim exceeds dense-matrix cap");
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, DenseUnitary> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.try_emplace({dim, seed});
  if (inserted) it->second = build_haar_like(dim, seed);
  return it->second;
}

void apply_dense_unitary(StateVector& state, const DenseUnitary& u) {
  if (state.dimension() != u.dim)
    throw ShapeError("apply_dense_unitary: dimension mismatch");
  const std::uint64_t dim = u.dim;
  std::vector<Amplitude> out(dim, Amplitude{0.0, 0.0});
  for (std::uint64_t r = 0; r < dim; ++r) {
    const Amplitude* row = u.entries.data() + r * dim;
    Amplitude acc{0.0, 0.0};
    for (std::uint64_t c = 0; c < dim; ++c) acc += row[c] * state.amps[c];
    out[r] = acc;
  }
  state.amps = std::move(out);
}

ScheduleResult run_schedule(const AlgorithmSchedule& s, const OracleTable& f,
                            const StateVector& start) {
  if (!(start.shape == s.shape))
    throw ShapeError("run_schedule: start state does not match schedule shape");

  StateVector chi = start;
  QueryMassMatrix masses;
  masses.rows.reserve(s.steps.size());

  for (const ScheduleStep& step : s.steps) {
    masses.rows.push_back(query_mass(chi));
    if (step.query == QueryKind::bitflip) {
      apply_bitflip_oracle(chi, f);
    } else {
      apply_phase_oracle(chi, f);
    }
    switch (step.unitary) {
      case StepUnitary::identity:
        break;
      case StepUnitary::walsh:
        apply_walsh_hadamard(chi);
        break;
      case StepUnitary::r0:
        apply_r0(chi);
        break;
      case StepUnitary::diffusion:
        apply_diffusion(chi);
        break;
      case StepUnitary::haar:
        apply_dense_unitary(
            chi, haar_like_unitary(chi.dimension(), step.haar_seed));
        break;
    }
    renormalize_if_drifted(chi);
  }

  mass_budget_report(masses);  // mass laws are enforced on every run
  return {std::move(chi), std::move(masses)};
}

double oracle_distance(const StateVector& chi, const OracleTable& f,
                       const OracleTable& g) {
  if (f.kind != g.kind) throw DomainError("oracle_distance: kind mismatch");
  if (f.n != g.n) throw DomainError("oracle_distance: width mismatch");
  if (chi.shape.question_words() != f.domain_size())
    throw ShapeError("oracle_distance: state/oracle width mismatch");

  const QueryMassVector mass = query_mass(chi);
  double disagree = 0.0;
  for (std::uint64_t a = 0; a < f.domain_size(); ++a)
    if (f.values[a] != g.values[a]) disagree += mass.masses[a];
  return std::sqrt(disagree);
}

PerturbationReport check_query_bound(const StateVector& chi,
                                     const OracleTable& f,
                                     const OracleTable& g) {
  StateVector with_f = chi;
  StateVector with_g = chi;
  apply_bitflip_oracle(with_f, f);
  apply_bitflip_oracle(with_g, g);

  PerturbationReport report;
  report.lhs = l2_distance(with_f, with_g);
  report.rhs = 2.0 * oracle_distance(chi, f, g);
  report.slack = report.rhs - report.lhs;
  report.holds = report.slack >= -kBoundSlack;
  return report;
}

PerturbationReport check_hybrid_bound(const AlgorithmSchedule& s,
                                      const OraclePair& pair,
                                      const StateVector& start) {
  const ScheduleResult base = run_schedule(s, pair.base, start);
  const ScheduleResult mutated = run_schedule(s, pair.mutated, start);

  double accumulated = 0.0;
  for (const QueryMassVector& row : base.masses.rows)
    accumulated += std::sqrt(row.masses[pair.word]);

  PerturbationReport report;
  report.lhs = l2_distance(base.final, mutated.final);
  report.rhs = 2.0 * accumulated;
  report.slack = report.rhs - report.lhs;
  report.holds = report.slack >= -kBoundSlack;
  return report;
}

MassBudgetReport mass_budget_report(const QueryMassMatrix& masses) {
  MassBudgetReport report;
  report.row_sums.reserve(masses.rows.size());
  for (std::size_t i = 0; i < masses.rows.size(); ++i) {
    const double sum = masses.rows[i].sum();
    if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "mass_budget_report: row " << i << " sums to " << sum;
      throw InvariantViolation(msg.str());
    }
    report.row_sums.push_back(sum);
    report.total += sum;
  }
  const double t = static_cast<double>(masses.rows.size());
  if (report.total > t * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "mass_budget_report: total mass " << report.total << " exceeds "
        << t;
    throw InvariantViolation(msg.str());
  }
  return report;
}

std::string CertificationSummary::to_json() const {
  nlohmann::ordered_json j;
  j["instances"] = instances;
  j["violations"] = violations;
  j["min_slack"] = min_slack;
  j["max_lhs"] = max_lhs;
  j["min_slack_ratio"] = min_slack_ratio;
  return j.dump();
}

namespace {

struct SummaryAccumulator {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double max_lhs = 0.0;
  double min_slack_ratio = std::numeric_limits<double>::infinity();

  void add(const PerturbationReport& r) {
    ++instances;
    if (!r.holds) ++violations;
    min_slack = std::min(min_slack, r.slack);
    max_lhs = std::max(max_lhs, r.lhs);
    if (r.rhs > 0.0)
      min_slack_ratio = std::min(min_slack_ratio, r.slack / r.rhs);
  }

  CertificationSummary finish() const {
    CertificationSummary s;
    s.instances = instances;
    s.violations = violations;
    s.min_slack = instances > 0 ? min_slack : 0.0;
    s.max_lhs = max_lhs;
    s.min_slack_ratio = std::isfinite(min_slack_ratio) ? min_slack_ratio : 0.0;
    return s;
  }
};

OracleTable random_table(int n, OracleKind kind, Rng& rng) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint32_t> values(size);
  if (kind == OracleKind::boolean) {
    for (auto& v : values) v = static_cast<std::uint32_t>(rng.uniform_u64(2));
    return make_boolean_table(n, std::move(values));
  }
  for (auto& v : values) v = static_cast<std::uint32_t>(rng.uniform_u64(size));
  return make_integer_table(n, std::move(values));
}

RegisterShape shape_for(int n, OracleKind kind) {
  return make_shape(n, kind == OracleKind::boolean ? 1 : n);
}

}  // namespace

StateVector uniform_start(const RegisterShape& shape) {
  StateVector state = make_basis_state(shape, 0);
  apply_walsh_hadamard(state);
  return state;
}

StateVector random_state(const RegisterShape& shape, Rng& rng) {
  StateVector state = make_basis_state(shape, 0);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (Amplitude& a : state.amps)
      a = Amplitude{rng.gaussian(), rng.gaussian()};
    norm = l2_norm(state);
  }
  const double inv = 1.0 / norm;
  for (Amplitude& a : state.amps) a *= inv;
  return state;
}

AlgorithmSchedule grover_schedule(int n, std::uint64_t iterations) {
  AlgorithmSchedule s;
  s.shape = make_shape(n, 0);
  s.steps.assign(iterations,
                 ScheduleStep{QueryKind::phase, StepUnitary::diffusion, 0});
  return s;
}

CertificationSummary certify_query_bound(int max_n, std::uint64_t instances,
                                         std::uint64_t root_seed) {
  if (max_n < 1) throw DomainError("certify_query_bound: max_n must be >= 1");
  SummaryAccumulator acc;
  for (OracleKind kind : {OracleKind::boolean, OracleKind::integer}) {
    const char* tag =
        kind == OracleKind::boolean ? "certify-q-bool" : "certify-q-int";
    for (std::uint64_t i = 0; i < instances; ++i) {
      Rng rng(derive_stream_seed(root_seed, tag, 0, 0, i));
      const int n = 1 + static_cast<int>(rng.uniform_u64(
                            static_cast<std::uint64_t>(max_n)));
      const StateVector chi = random_state(shape_for(n, kind), rng);
      const OracleTable f = random_table(n, kind, rng);
      const OracleTable g = random_table(n, kind, rng);
      acc.add(check_query_bound(chi, f, g));
    }
  }
  return acc.finish();
}

namespace {

AlgorithmSchedule random_schedule(int n, OracleKind kind, Rng& rng,
                                  std::uint64_t root_seed) {
  AlgorithmSchedule s;
  s.shape = shape_for(n, kind);
  const std::uint64_t t = 1 + rng.uniform_u64(20);
  const bool haar_ok = s.shape.dimension() <= 256;
  s.steps.reserve(t);
  for (std::uint64_t i = 0; i < t; ++i) {
    ScheduleStep step;
    step.query = (kind == OracleKind::boolean && rng.uniform_u64(2) == 0)
                     ? QueryKind::phase
                     : QueryKind::bitflip;
    const std::uint64_t pick = rng.uniform_u64(haar_ok ? 5 : 4);
    switch (pick) {
      case 0:
        step.unitary = StepUnitary::identity;
        break;
      case 1:
        step.unitary = StepUnitary::walsh;
        break;
      case 2:
        step.unitary = StepUnitary::r0;
        break;
      case 3:
        step.unitary = StepUnitary::diffusion;
        break;
      default:
        step.unitary = StepUnitary::haar;
        // Small seed pool so the (dim, seed) cache absorbs the build cost.
        step.haar_seed = mix64(root_seed ^ rng.uniform_u64(8));
        break;
    }
    s.steps.push_back(step);
  }
  return s;
}

}  // namespace

CertificationSummary certify_hybrid_bound(int max_n, std::uint64_t schedules,
                                          std::uint64_t root_seed) {
  if (max_n < 1) throw DomainError("certify_hybrid_bound: max_n must be >= 1");
  SummaryAccumulator acc;

  // Family 1: random schedules over random oracles and start states.
  for (std::uint64_t i = 0; i < schedules; ++i) {
    Rng rng(derive_stream_seed(root_seed, "certify-h-rand", 0, 0, i));
    const OracleKind kind =
        rng.uniform_u64(2) == 0 ? OracleKind::boolean : OracleKind::integer;
    const int n = 1 + static_cast<int>(
                          rng.uniform_u64(static_cast<std::uint64_t>(max_n)));
    const AlgorithmSchedule s = random_schedule(n, kind, rng, root_seed);
    const OracleTable base = random_table(n, kind, rng);
    const std::uint64_t word = rng.uniform_u64(base.domain_size());
    const OraclePair pair = random_mutation(base, word, rng);
    const StateVector start = random_state(s.shape, rng);
    acc.add(check_hybrid_bound(s, pair, start));
  }

  // Family 2: Grover-style schedules with a single marked word that the
  // mutation removes or a fresh word it marks.
  for (int n = 2; n <= max_n; ++n) {
    Rng rng(derive_stream_seed(root_seed, "certify-h-grover", n, 0, 0));
    const double sqrt_n = std::sqrt(std::ldexp(1.0, n));
    const std::uint64_t optimal =
        static_cast<std::uint64_t>(std::floor(0.25 * 3.14159265358979323846 *
                                              sqrt_n));
    for (std::uint64_t t : {std::uint64_t{1}, std::max<std::uint64_t>(optimal, 1),
                            std::min<std::uint64_t>(2 * optimal + 1, 20)}) {
      AlgorithmSchedule s = grover_schedule(n, t);
      const OracleTable base = sample_s_b(n, 1, rng);
      const std::uint64_t marked = table_argmax(base);
      acc.add(check_hybrid_bound(s, mutate_one_word(base, marked, 0),
                                 uniform_start(s.shape)));
      std::uint64_t other = rng.uniform_u64(base.domain_size());
      if (other == marked) other = (other + 1) % base.domain_size();
      acc.add(check_hybrid_bound(s, mutate_one_word(base, other, 1),
                                 uniform_start(s.shape)));
    }
  }

  // Family 3: adversarial point-mass starts concentrating every query on the
  // mutated word.
  for (int n = 1; n <= max_n; ++n) {
    Rng rng(derive_stream_seed(root_seed, "certify-h-point", n, 0, 0));
    const OracleTable base = random_table(n, OracleKind::boolean, rng);
    const std::uint64_t word = rng.uniform_u64(base.domain_size());
    const OraclePair pair = random_mutation(base, word, rng);
    const RegisterShape shape = shape_for(n, OracleKind::boolean);
    for (std::uint64_t t = 1; t <= 5; ++t) {
      AlgorithmSchedule s;
      s.shape = shape;
      s.steps.assign(t,
                     ScheduleStep{QueryKind::bitflip, StepUnitary::identity, 0});
      const StateVector start =
          make_basis_state(shape, word * shape.answer_states());
      acc.add(check_hybrid_bound(s, pair, start));
    }
  }

  return acc.finish();
}

}  // namespace qsb
