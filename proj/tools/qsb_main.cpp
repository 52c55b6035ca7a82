#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qsb/errors.hpp"
#include "qsb/experiments.hpp"

namespace {

void add_common_options(CLI::App* cmd, qsb::ExperimentConfig& cfg,
                        bool with_n, bool with_b) {
  if (with_n)
    cmd->add_option("--n", cfg.n_list,
                    "Question-register widths in qubits (repeatable)");
  if (with_b)
    cmd->add_option("--b", cfg.b_list, "Solution counts (repeatable)");
  cmd->add_option("--c", cfg.budget_factor,
                  "Budget factor c (per-experiment default when omitted)");
  cmd->add_option("--trials", cfg.trials, "Trials per parameter point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.root_seed, "Root seed for all trial streams");
  cmd->add_option("--out", cfg.output_path, "Output path ('-' or unset: stdout)");
  const std::map<std::string, qsb::OutputFormat> formats{
      {"csv", qsb::OutputFormat::csv}, {"json", qsb::OutputFormat::json}};
  cmd->add_option("--format", cfg.format, "Result format (csv|json)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_flag("--trace", cfg.trace, "Per-trial JSON lines on stderr");
  cmd->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
}

void add_order_option(CLI::App* cmd, qsb::ExperimentConfig& cfg) {
  const std::map<std::string, qsb::IterateOrder> orders{
      {"oracle-first", qsb::IterateOrder::oracle_first},
      {"diffusion-first", qsb::IterateOrder::diffusion_first}};
  cmd->add_option("--order", cfg.order,
                  "Iterate composition (oracle-first|diffusion-first)")
      ->transform(CLI::CheckedTransformer(orders, CLI::ignore_case));
}

void add_extremum_options(CLI::App* cmd, qsb::ExperimentConfig& cfg) {
  cmd->add_flag("--c1", cfg.use_c1,
                "Sample tables with maximum value fixed to N-1");
  cmd->add_flag(
      "--geq",
      [&cfg](std::int64_t count) { cfg.strict_threshold = count == 0; },
      "Use >= instead of > in threshold oracles");
}

int dispatch(const qsb::ExperimentConfig& cfg) {
  using qsb::Experiment;
  switch (cfg.experiment) {
    case Experiment::grover:
      qsb::emit_results(qsb::run_grover_sweep(cfg), cfg.output_path,
                        cfg.format);
      break;
    case Experiment::bbht_scaling:
      qsb::emit_results(qsb::run_bbht_sweep(cfg), cfg.output_path, cfg.format);
      break;
    case Experiment::durr_hoyer:
      qsb::emit_results(qsb::run_durr_hoyer_sweep(cfg), cfg.output_path,
                        cfg.format);
      break;
    case Experiment::truncated_search:
      qsb::emit_results(qsb::run_truncated_search_sweep(cfg), cfg.output_path,
                        cfg.format);
      break;
    case Experiment::truncated_extremum:
      qsb::emit_results(qsb::run_truncated_extremum_sweep(cfg),
                        cfg.output_path, cfg.format);
      break;
    case Experiment::xi_distribution:
      qsb::emit_results(qsb::run_xi_distribution(cfg), cfg.output_path,
                        cfg.format);
      break;
    case Experiment::certify_lemmas:
      qsb::emit_results(qsb::run_certification(cfg), cfg.output_path,
                        cfg.format);
      break;
  }
  // CSV lacks the metadata column carried by the JSON output; name the
  // procedure under test on stderr so sweep files are never misread as
  // statements about every algorithm.
  if (cfg.format == qsb::OutputFormat::csv) {
    switch (cfg.experiment) {
      case Experiment::grover:
        std::cerr << "# representative_algorithm: grover-fixed-iterations\n";
        break;
      case Experiment::bbht_scaling:
        std::cerr << "# representative_algorithm: g-bbht\n";
        break;
      case Experiment::durr_hoyer:
        std::cerr << "# representative_algorithm: durr-hoyer\n";
        break;
      case Experiment::truncated_search:
        std::cerr << "# representative_algorithm: truncated-grover\n";
        break;
      case Experiment::truncated_extremum:
        std::cerr << "# representative_algorithm: truncated-durr-hoyer\n";
        break;
      default:
        break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qsb: exact oracle-search simulator and Monte-Carlo experiment "
      "harness"};
  app.require_subcommand(1);

  qsb::ExperimentConfig cfg;

  CLI::App* grover = app.add_subcommand(
      "grover", "Fixed-iteration search over random b-solution tables");
  add_common_options(grover, cfg, true, true);
  add_order_option(grover, cfg);
  grover->callback([&] { cfg.experiment = qsb::Experiment::grover; });

  CLI::App* bbht = app.add_subcommand(
      "bbht-scaling", "Unknown-solution-count search; mean queries vs b");
  add_common_options(bbht, cfg, true, true);
  add_order_option(bbht, cfg);
  bbht->callback([&] { cfg.experiment = qsb::Experiment::bbht_scaling; });

  CLI::App* durr = app.add_subcommand(
      "durr-hoyer", "Threshold-ascent maximum finding, generous budget");
  add_common_options(durr, cfg, true, false);
  add_order_option(durr, cfg);
  add_extremum_options(durr, cfg);
  durr->callback([&] { cfg.experiment = qsb::Experiment::durr_hoyer; });

  CLI::App* tsearch = app.add_subcommand(
      "truncated-search",
      "Search stopped at ceil(c*sqrt(N/b)) iterations, c < pi/4");
  add_common_options(tsearch, cfg, true, true);
  add_order_option(tsearch, cfg);
  tsearch->callback(
      [&] { cfg.experiment = qsb::Experiment::truncated_search; });

  CLI::App* textremum = app.add_subcommand(
      "truncated-extremum",
      "Maximum finding stopped at ceil(c*sqrt(N)) queries");
  add_common_options(textremum, cfg, true, false);
  add_order_option(textremum, cfg);
  add_extremum_options(textremum, cfg);
  textremum->callback(
      [&] { cfg.experiment = qsb::Experiment::truncated_extremum; });

  CLI::App* xi = app.add_subcommand(
      "xi-distribution",
      "Final-state distance when b random words of the zero oracle flip");
  add_common_options(xi, cfg, true, true);
  xi->callback([&] { cfg.experiment = qsb::Experiment::xi_distribution; });

  CLI::App* certify = app.add_subcommand(
      "certify-lemmas",
      "Randomized certification of the query and hybrid perturbation bounds");
  add_common_options(certify, cfg, false, false);
  certify->callback([&] { cfg.experiment = qsb::Experiment::certify_lemmas; });

  CLI11_PARSE(app, argc, argv);

  try {
    return dispatch(cfg);
  } catch (const qsb::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const qsb::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
