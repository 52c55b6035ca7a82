#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsb/hybrid.hpp"
#include "qsb/oracle_table.hpp"
#include "qsb/search.hpp"

namespace qsb {

enum class Experiment {
  grover,
  bbht_scaling,
  durr_hoyer,
  truncated_search,
  truncated_extremum,
  xi_distribution,
  certify_lemmas,
};

/// Canonical dashed name, identical to the CLI subcommand.
std::string experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name);  // DomainError if unknown

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  Experiment experiment = Experiment::grover;
  std::vector<int> n_list;             // empty -> per-experiment default
  std::vector<std::uint64_t> b_list;   // empty -> per-experiment default
  std::optional<double> budget_factor; // c in t = ceil(c*sqrt(N/b)) or ceil(c*sqrt(N))
  std::uint64_t trials = 1000;
  std::uint64_t root_seed = 1729;
  std::string output_path;             // empty -> stdout
  OutputFormat format = OutputFormat::csv;
  bool trace = false;                  // per-trial JSON lines on stderr
  bool use_c1 = false;                 // extremum sweeps: fix max value to N-1
  bool strict_threshold = true;        // extremum sweeps: > vs >= threshold
  IterateOrder order = IterateOrder::oracle_first;
  unsigned threads = 0;                // 0 -> hardware concurrency
};

/// Per-(n, b) aggregate. Counts are integers so that aggregation is exact
/// and independent of trial execution order.
struct AggregateRow {
  int n = 0;
  std::uint64_t b = 0;
  double c = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t total_queries = 0;

  double success_rate() const;
  double mean_queries() const;
};

struct ConfidenceInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% binomial interval: normal approximation plus 0.5/trials continuity
/// guard, clamped to [0, 1]. Always contains successes/trials.
ConfidenceInterval binomial_ci(std::uint64_t successes, std::uint64_t trials);

struct SweepResult {
  Experiment experiment = Experiment::grover;
  std::uint64_t root_seed = 0;
  std::string representative_algorithm;
  std::vector<AggregateRow> rows;
};

/// Fixed-iteration search over random b-solution instances.
/// Default iteration count floor(pi/4 * sqrt(N/b)); a budget factor c
/// overrides it with ceil(c * sqrt(N/b)).
SweepResult run_grover_sweep(const ExperimentConfig& cfg);

/// Unknown-solution-count search; b = 0 rows run the empty oracle and must
/// exhaust the budget. Budget ceil(c * sqrt(N)), c default 9.
SweepResult run_bbht_sweep(const ExperimentConfig& cfg);

/// Maximum finding over unique-argmax tables. Budget ceil(c * sqrt(N)),
/// c default 9. The b column is reported as 0.
SweepResult run_durr_hoyer_sweep(const ExperimentConfig& cfg);

/// Fixed-iteration search truncated at ceil(c * sqrt(N/b)) iterations,
/// c default 1/8: the sub-optimal regime whose success rate collapses with n.
SweepResult run_truncated_search_sweep(const ExperimentConfig& cfg);

/// Maximum finding truncated at ceil(c * sqrt(N)) queries, c default 1/8.
SweepResult run_truncated_extremum_sweep(const ExperimentConfig& cfg);

inline constexpr double kXiThresholds[3] = {0.1, 0.25, 0.5};

/// One (n, b) row of the final-state-perturbation experiment.
struct XiRow {
  int n = 0;
  std::uint64_t b = 0;
  double c = 0.0;
  std::uint64_t schedule_steps = 0;
  std::uint64_t trials = 0;
  std::uint64_t exceed_counts[3] = {0, 0, 0};  // xi > kXiThresholds[k]
  double mean_xi = 0.0;
  double max_xi = 0.0;

  double p_exceed(int k) const;
};

struct XiSummary {
  std::uint64_t root_seed = 0;
  std::string schedule_description;
  std::vector<XiRow> rows;
};

/// Distribution of xi = || final(base) - final(mutated) || for the probe
/// schedule (point start, t x (bitflip query, diffusion)) when a random
/// b-word set of the all-zeros oracle is flipped to 1. t = ceil(c*sqrt(N/b)),
/// c default 1/16.
XiSummary run_xi_distribution(const ExperimentConfig& cfg);

struct CertificationRun {
  std::uint64_t root_seed = 0;
  CertificationSummary query_bound;
  CertificationSummary hybrid_bound;
};

/// Both certification batteries at question widths up to 6. `trials` sets the
/// query-bound instance count per oracle kind; the hybrid battery runs
/// trials/10 random schedules (at least 100) plus the structured families.
CertificationRun run_certification(const ExperimentConfig& cfg);

std::string to_csv(const SweepResult& result);
std::string to_json_text(const SweepResult& result);
std::string to_csv(const XiSummary& summary);
std::string to_json_text(const XiSummary& summary);
std::string to_csv(const CertificationRun& run);
std::string to_json_text(const CertificationRun& run);

/// Inverse of to_csv(SweepResult) for result post-processing; parses the
/// pinned column layout. Malformed input -> IoError.
SweepResult parse_sweep_csv(const std::string& text);

/// Writes content to path ("" or "-" means stdout). Failures -> IoError.
void write_output(const std::string& path, const std::string& content);

void emit_results(const SweepResult& result, const std::string& path,
                  OutputFormat format);
void emit_results(const XiSummary& summary, const std::string& path,
                  OutputFormat format);
void emit_results(const CertificationRun& run, const std::string& path,
                  OutputFormat format);

/// Runs body(trial) for every trial in [0, trials) on `threads` workers
/// (0 = hardware concurrency). Rethrows the first worker exception.
void parallel_for_trials(std::uint64_t trials, unsigned threads,
                         const std::function<void(std::uint64_t)>& body);

}  // namespace qsb
