#include "qsb/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "qsb/errors.hpp"
#include "qsb/extremum.hpp"
#include "qsb/rng.hpp"
#include "qsb/search.hpp"

namespace qsb {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::mutex g_trace_mutex;

void emit_trace_line(const nlohmann::ordered_json& line) {
  std::lock_guard<std::mutex> lock(g_trace_mutex);
  std::cerr << line.dump() << '\n';
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

std::vector<int> n_values(const ExperimentConfig& cfg,
                          std::vector<int> fallback) {
  return cfg.n_list.empty() ? std::move(fallback) : cfg.n_list;
}

std::vector<std::uint64_t> b_values(const ExperimentConfig& cfg,
                                    std::vector<std::uint64_t> fallback) {
  return cfg.b_list.empty() ? std::move(fallback) : cfg.b_list;
}

struct TrialResult {
  bool success = false;
  std::uint64_t queries = 0;
};

/// Runs cfg.trials seeded trials and folds the per-trial vectors into one
/// row. Per-trial results land in preallocated slots, so the fold is
/// independent of thread scheduling.
AggregateRow run_point(const ExperimentConfig& cfg, int n, std::uint64_t b,
                       double c,
                       const std::function<TrialResult(std::uint64_t)>& body) {
  std::vector<unsigned char> success(cfg.trials, 0);
  std::vector<std::uint64_t> queries(cfg.trials, 0);
  parallel_for_trials(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
    const TrialResult r = body(trial);
    success[trial] = r.success ? 1 : 0;
    queries[trial] = r.queries;
  });

  AggregateRow row;
  row.n = n;
  row.b = b;
  row.c = c;
  row.trials = cfg.trials;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    row.successes += success[t];
    row.total_queries += queries[t];
  }
  return row;
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::grover:
      return "grover";
    case Experiment::bbht_scaling:
      return "bbht-scaling";
    case Experiment::durr_hoyer:
      return "durr-hoyer";
    case Experiment::truncated_search:
      return "truncated-search";
    case Experiment::truncated_extremum:
      return "truncated-extremum";
    case Experiment::xi_distribution:
      return "xi-distribution";
    case Experiment::certify_lemmas:
      return "certify-lemmas";
  }
  throw DomainError("experiment_name: unknown experiment");
}

Experiment parse_experiment(const std::string& name) {
  for (Experiment e :
       {Experiment::grover, Experiment::bbht_scaling, Experiment::durr_hoyer,
        Experiment::truncated_search, Experiment::truncated_extremum,
        Experiment::xi_distribution, Experiment::certify_lemmas}) {
    if (experiment_name(e) == name) return e;
  }
  throw DomainError("parse_experiment: unknown experiment '" + name + "'");
}

double AggregateRow::success_rate() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(successes) /
                           static_cast<double>(trials);
}

double AggregateRow::mean_queries() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(total_queries) /
                           static_cast<double>(trials);
}

ConfidenceInterval binomial_ci(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double half = 1.96 * std::sqrt(p * (1.0 - p) / t) + 0.5 / t;
  ConfidenceInterval ci;
  ci.low = std::max(0.0, p - half);
  ci.high = std::min(1.0, p + half);
  return ci;
}

SweepResult run_grover_sweep(const ExperimentConfig& cfg) {
  const auto ns = n_values(cfg, {10});
  const auto bs = b_values(cfg, {1});
  const std::string tag = experiment_name(Experiment::grover);
  const double c = cfg.budget_factor.value_or(kPi / 4.0);

  SweepResult out;
  out.experiment = Experiment::grover;
  out.root_seed = cfg.root_seed;
  out.representative_algorithm = "grover-fixed-iterations";
  for (int n : ns) {
    for (std::uint64_t b : bs) {
      if (b == 0)
        throw DomainError("run_grover_sweep: b must be >= 1");
      const double sqrt_ratio =
          std::sqrt(std::ldexp(1.0, n) / static_cast<double>(b));
      const std::uint64_t k =
          cfg.budget_factor
              ? static_cast<std::uint64_t>(std::ceil(c * sqrt_ratio))
              : static_cast<std::uint64_t>(std::floor(kPi / 4.0 * sqrt_ratio));
      out.rows.push_back(run_point(cfg, n, b, c, [&](std::uint64_t trial) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(derive_stream_seed(cfg.root_seed, tag, n, b, trial));
        const OracleTable f = sample_s_b(n, b, rng);
        SearchOptions options;
        options.order = cfg.order;
        const SearchOutcome o = run_grover(n, f, k, rng, options);
        if (cfg.trace) {
          nlohmann::ordered_json line;
          line["experiment"] = tag;
          line["n"] = n;
          line["b"] = b;
          line["trial"] = trial;
          line["iterations"] = k;
          line["queries"] = o.queries_used;
          line["success"] = o.success;
          line["word"] = o.found_word ? *o.found_word : 0;
          line["wall_time_ms"] = elapsed_ms(t0);
          emit_trace_line(line);
        }
        return TrialResult{o.success, o.queries_used};
      }));
    }
  }
  return out;
}

SweepResult run_bbht_sweep(const ExperimentConfig& cfg) {
  const auto ns = n_values(cfg, {12});
  const auto bs = b_values(cfg, {1, 4, 16});
  const std::string tag = experiment_name(Experiment::bbht_scaling);
  const double c = cfg.budget_factor.value_or(9.0);

  SweepResult out;
  out.experiment = Experiment::bbht_scaling;
  out.root_seed = cfg.root_seed;
  out.representative_algorithm = "g-bbht";
  for (int n : ns) {
    const std::uint64_t budget = static_cast<std::uint64_t>(
        std::ceil(c * std::sqrt(std::ldexp(1.0, n))));
    for (std::uint64_t b : bs) {
      out.rows.push_back(run_point(cfg, n, b, c, [&](std::uint64_t trial) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(derive_stream_seed(cfg.root_seed, tag, n, b, trial));
        const OracleTable f =
            b == 0 ? constant_boolean(n, false) : sample_s_b(n, b, rng);
        SearchOptions options;
        options.order = cfg.order;
        options.query_budget = budget;
        const SearchOutcome o = bbht_search(n, f, rng, options);
        if (cfg.trace) {
          nlohmann::ordered_json line;
          line["experiment"] = tag;
          line["n"] = n;
          line["b"] = b;
          line["trial"] = trial;
          line["budget"] = budget;
          line["queries"] = o.queries_used;
          line["success"] = o.success;
          if (o.found_word) line["word"] = *o.found_word;
          line["wall_time_ms"] = elapsed_ms(t0);
          emit_trace_line(line);
        }
        return TrialResult{o.success, o.queries_used};
      }));
    }
  }
  return out;
}

namespace {

SweepResult run_extremum_sweep(const ExperimentConfig& cfg,
                               Experiment experiment, double default_c,
                               std::vector<int> default_ns,
                               const char* representative) {
  const auto ns = n_values(cfg, std::move(default_ns));
  const std::string tag = experiment_name(experiment);
  const double c = cfg.budget_factor.value_or(default_c);

  SweepResult out;
  out.experiment = experiment;
  out.root_seed = cfg.root_seed;
  out.representative_algorithm = representative;
  for (int n : ns) {
    const std::uint64_t budget = static_cast<std::uint64_t>(
        std::ceil(c * std::sqrt(std::ldexp(1.0, n))));
    out.rows.push_back(run_point(cfg, n, 0, c, [&](std::uint64_t trial) {
      const auto t0 = std::chrono::steady_clock::now();
      Rng rng(derive_stream_seed(cfg.root_seed, tag, n, 0, trial));
      const OracleTable phi = sample_single_max(
          n, rng,
          cfg.use_c1 ? std::optional<std::uint64_t>{1} : std::nullopt);
      ExtremumOptions options;
      options.strict_threshold = cfg.strict_threshold;
      options.search.order = cfg.order;
      const ExtremumOutcome o = durr_hoyer_max(phi, rng, budget, options);
      if (cfg.trace) {
        nlohmann::ordered_json line;
        line["experiment"] = tag;
        line["n"] = n;
        line["trial"] = trial;
        line["budget"] = budget;
        line["queries"] = o.queries_used;
        line["success"] = o.success;
        line["candidate"] = o.candidate;
        line["value"] = o.value;
        nlohmann::ordered_json thresholds = nlohmann::ordered_json::array();
        for (const ThresholdStep& step : o.thresholds)
          thresholds.push_back({step.candidate, step.value, step.queries_after});
        line["thresholds"] = std::move(thresholds);
        line["wall_time_ms"] = elapsed_ms(t0);
        emit_trace_line(line);
      }
      return TrialResult{o.success, o.queries_used};
    }));
  }
  return out;
}

}  // namespace

SweepResult run_durr_hoyer_sweep(const ExperimentConfig& cfg) {
  return run_extremum_sweep(cfg, Experiment::durr_hoyer, 9.0, {10},
                            "durr-hoyer");
}

SweepResult run_truncated_extremum_sweep(const ExperimentConfig& cfg) {
  return run_extremum_sweep(cfg, Experiment::truncated_extremum, 1.0 / 8.0,
                            {8, 10, 12, 14}, "truncated-durr-hoyer");
}

SweepResult run_truncated_search_sweep(const ExperimentConfig& cfg) {
  const auto ns = n_values(cfg, {8, 10, 12, 14});
  const auto bs = b_values(cfg, {1});
  const std::string tag = experiment_name(Experiment::truncated_search);
  const double c = cfg.budget_factor.value_or(1.0 / 8.0);

  SweepResult out;
  out.experiment = Experiment::truncated_search;
  out.root_seed = cfg.root_seed;
  out.representative_algorithm = "truncated-grover";
  for (int n : ns) {
    for (std::uint64_t b : bs) {
      if (b == 0)
        throw DomainError("run_truncated_search_sweep: b must be >= 1");
      const double sqrt_ratio =
          std::sqrt(std::ldexp(1.0, n) / static_cast<double>(b));
      const std::uint64_t t =
          static_cast<std::uint64_t>(std::ceil(c * sqrt_ratio));
      out.rows.push_back(run_point(cfg, n, b, c, [&](std::uint64_t trial) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(derive_stream_seed(cfg.root_seed, tag, n, b, trial));
        const OracleTable f = sample_s_b(n, b, rng);
        SearchOptions options;
        options.order = cfg.order;
        const SearchOutcome o = run_grover(n, f, t, rng, options);
        if (cfg.trace) {
          nlohmann::ordered_json line;
          line["experiment"] = tag;
          line["n"] = n;
          line["b"] = b;
          line["trial"] = trial;
          line["iterations"] = t;
          line["queries"] = o.queries_used;
          line["success"] = o.success;
          line["wall_time_ms"] = elapsed_ms(t0);
          emit_trace_line(line);
        }
        return TrialResult{o.success, o.queries_used};
      }));
    }
  }
  return out;
}

double XiRow::p_exceed(int k) const {
  return trials == 0 ? 0.0
                     : static_cast<double>(exceed_counts[k]) /
                           static_cast<double>(trials);
}

XiSummary run_xi_distribution(const ExperimentConfig& cfg) {
  const auto ns = n_values(cfg, {6, 8, 10});
  const auto bs = b_values(cfg, {1});
  const std::string tag = experiment_name(Experiment::xi_distribution);
  const double c = cfg.budget_factor.value_or(1.0 / 16.0);

  XiSummary out;
  out.root_seed = cfg.root_seed;
  out.schedule_description =
      "point start |0,0>, t x (bitflip query, diffusion), base oracle all-zero";
  for (int n : ns) {
    for (std::uint64_t b : bs) {
      if (b == 0) throw DomainError("run_xi_distribution: b must be >= 1");
      const double sqrt_ratio =
          std::sqrt(std::ldexp(1.0, n) / static_cast<double>(b));
      const std::uint64_t t =
          static_cast<std::uint64_t>(std::ceil(c * sqrt_ratio));

      AlgorithmSchedule schedule;
      schedule.shape = make_shape(n, 1);
      schedule.steps.assign(
          t, ScheduleStep{QueryKind::bitflip, StepUnitary::diffusion, 0});
      const StateVector start = make_basis_state(schedule.shape, 0);
      const OracleTable base = constant_boolean(n, false);
      const StateVector base_final = run_schedule(schedule, base, start).final;

      std::vector<double> xi(cfg.trials, 0.0);
      parallel_for_trials(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(derive_stream_seed(cfg.root_seed, tag, n, b, trial));
        const OracleTable mutated = sample_s_b(n, b, rng);
        const StateVector final_state =
            run_schedule(schedule, mutated, start).final;
        xi[trial] = l2_distance(base_final, final_state);
        if (cfg.trace) {
          nlohmann::ordered_json line;
          line["experiment"] = tag;
          line["n"] = n;
          line["b"] = b;
          line["trial"] = trial;
          line["steps"] = t;
          line["xi"] = xi[trial];
          line["wall_time_ms"] = elapsed_ms(t0);
          emit_trace_line(line);
        }
      });

      XiRow row;
      row.n = n;
      row.b = b;
      row.c = c;
      row.schedule_steps = t;
      row.trials = cfg.trials;
      double sum = 0.0;
      for (double value : xi) {
        for (int k = 0; k < 3; ++k)
          if (value > kXiThresholds[k]) ++row.exceed_counts[k];
        sum += value;
        row.max_xi = std::max(row.max_xi, value);
      }
      row.mean_xi = cfg.trials == 0 ? 0.0 : sum / static_cast<double>(cfg.trials);
      out.rows.push_back(row);
    }
  }
  return out;
}

CertificationRun run_certification(const ExperimentConfig& cfg) {
  CertificationRun run;
  run.root_seed = cfg.root_seed;
  run.query_bound = certify_query_bound(6, cfg.trials, cfg.root_seed);
  const std::uint64_t schedules = std::max<std::uint64_t>(cfg.trials / 10, 100);
  run.hybrid_bound = certify_hybrid_bound(6, schedules, cfg.root_seed);
  return run;
}

namespace {

const char* kSweepHeader =
    "experiment,n,b,c,trials,success_rate,ci_low,ci_high,mean_queries,"
    "root_seed";

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string out = kSweepHeader;
  out += '\n';
  const std::string name = experiment_name(result.experiment);
  for (const AggregateRow& row : result.rows) {
    const ConfidenceInterval ci = binomial_ci(row.successes, row.trials);
    out += name;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.b);
    out += ',';
    out += format_double(row.c);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += format_double(row.success_rate());
    out += ',';
    out += format_double(ci.low);
    out += ',';
    out += format_double(ci.high);
    out += ',';
    out += format_double(row.mean_queries());
    out += ',';
    out += std::to_string(result.root_seed);
    out += '\n';
  }
  return out;
}

std::string to_json_text(const SweepResult& result) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_name(result.experiment);
  j["root_seed"] = result.root_seed;
  j["representative_algorithm"] = result.representative_algorithm;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const AggregateRow& row : result.rows) {
    const ConfidenceInterval ci = binomial_ci(row.successes, row.trials);
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["b"] = row.b;
    r["c"] = row.c;
    r["trials"] = row.trials;
    r["successes"] = row.successes;
    r["success_rate"] = row.success_rate();
    r["ci_low"] = ci.low;
    r["ci_high"] = ci.high;
    r["mean_queries"] = row.mean_queries();
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_csv(const XiSummary& summary) {
  std::string out =
      "experiment,n,b,c,schedule_steps,trials,p_gt_0.1,p_gt_0.25,p_gt_0.5,"
      "mean_xi,max_xi,root_seed\n";
  for (const XiRow& row : summary.rows) {
    out += experiment_name(Experiment::xi_distribution);
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.b);
    out += ',';
    out += format_double(row.c);
    out += ',';
    out += std::to_string(row.schedule_steps);
    out += ',';
    out += std::to_string(row.trials);
    for (int k = 0; k < 3; ++k) {
      out += ',';
      out += format_double(row.p_exceed(k));
    }
    out += ',';
    out += format_double(row.mean_xi);
    out += ',';
    out += format_double(row.max_xi);
    out += ',';
    out += std::to_string(summary.root_seed);
    out += '\n';
  }
  return out;
}

std::string to_json_text(const XiSummary& summary) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_name(Experiment::xi_distribution);
  j["root_seed"] = summary.root_seed;
  j["schedule"] = summary.schedule_description;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const XiRow& row : summary.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["b"] = row.b;
    r["c"] = row.c;
    r["schedule_steps"] = row.schedule_steps;
    r["trials"] = row.trials;
    nlohmann::ordered_json exceed;
    for (int k = 0; k < 3; ++k)
      exceed[format_double(kXiThresholds[k])] = row.p_exceed(k);
    r["p_exceed"] = std::move(exceed);
    r["mean_xi"] = row.mean_xi;
    r["max_xi"] = row.max_xi;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

namespace {

void append_certification_row(std::string& out, const char* battery,
                              const CertificationSummary& s,
                              std::uint64_t root_seed) {
  out += experiment_name(Experiment::certify_lemmas);
  out += ',';
  out += battery;
  out += ',';
  out += std::to_string(s.instances);
  out += ',';
  out += std::to_string(s.violations);
  out += ',';
  out += format_double(s.min_slack);
  out += ',';
  out += format_double(s.max_lhs);
  out += ',';
  out += format_double(s.min_slack_ratio);
  out += ',';
  out += std::to_string(root_seed);
  out += '\n';
}

nlohmann::ordered_json certification_json(const CertificationSummary& s) {
  nlohmann::ordered_json j;
  j["instances"] = s.instances;
  j["violations"] = s.violations;
  j["min_slack"] = s.min_slack;
  j["max_lhs"] = s.max_lhs;
  j["min_slack_ratio"] = s.min_slack_ratio;
  return j;
}

}  // namespace

std::string to_csv(const CertificationRun& run) {
  std::string out =
      "experiment,battery,instances,violations,min_slack,max_lhs,"
      "min_slack_ratio,root_seed\n";
  append_certification_row(out, "query-bound", run.query_bound, run.root_seed);
  append_certification_row(out, "hybrid-bound", run.hybrid_bound,
                           run.root_seed);
  return out;
}

std::string to_json_text(const CertificationRun& run) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_name(Experiment::certify_lemmas);
  j["root_seed"] = run.root_seed;
  j["query_bound"] = certification_json(run.query_bound);
  j["hybrid_bound"] = certification_json(run.hybrid_bound);
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

SweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader)
    throw IoError("parse_sweep_csv: missing or unexpected header");

  SweepResult result;
  bool saw_row = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 10)
      throw IoError("parse_sweep_csv: expected 10 fields, got " +
                    std::to_string(f.size()));
    try {
      const Experiment experiment = parse_experiment(f[0]);
      AggregateRow row;
      row.n = std::stoi(f[1]);
      row.b = std::stoull(f[2]);
      row.c = std::stod(f[3]);
      row.trials = std::stoull(f[4]);
      const double rate = std::stod(f[5]);
      const double mean = std::stod(f[8]);
      row.successes = static_cast<std::uint64_t>(
          std::llround(rate * static_cast<double>(row.trials)));
      row.total_queries = static_cast<std::uint64_t>(
          std::llround(mean * static_cast<double>(row.trials)));
      const std::uint64_t root_seed = std::stoull(f[9]);
      if (saw_row) {
        if (experiment != result.experiment || root_seed != result.root_seed)
          throw IoError("parse_sweep_csv: rows disagree on experiment/seed");
      } else {
        result.experiment = experiment;
        result.root_seed = root_seed;
        saw_row = true;
      }
      result.rows.push_back(row);
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw IoError(std::string("parse_sweep_csv: bad row: ") + e.what());
    }
  }
  return result;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoError("write_output: stdout write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write_output: cannot open '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write_output: write failed for '" + path + "'");
}

void emit_results(const SweepResult& result, const std::string& path,
                  OutputFormat format) {
  write_output(path,
               format == OutputFormat::csv ? to_csv(result)
                                           : to_json_text(result));
}

void emit_results(const XiSummary& summary, const std::string& path,
                  OutputFormat format) {
  write_output(path,
               format == OutputFormat::csv ? to_csv(summary)
                                           : to_json_text(summary));
}

void emit_results(const CertificationRun& run, const std::string& path,
                  OutputFormat format) {
  write_output(path, format == OutputFormat::csv ? to_csv(run)
                                                 : to_json_text(run));
}

void parallel_for_trials(std::uint64_t trials, unsigned threads,
                         const std::function<void(std::uint64_t)>& body) {
  if (trials == 0) return;
  unsigned workers = threads;
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }
  if (static_cast<std::uint64_t>(workers) > trials)
    workers = static_cast<unsigned>(trials);
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) body(t);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= trials) return;
      try {
        body(t);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
        next.store(trials, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qsb
