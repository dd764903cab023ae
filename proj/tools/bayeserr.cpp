#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bayeserr/cli.hpp"

namespace cli = bayeserr::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bayes error, total variation and Bhattacharyya/Chernoff bounds"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}));

  std::string scenario_path;
  std::string alpha = "bhattacharyya";
  std::string generator;
  bool numeric = false;
  auto* bound = app.add_subcommand("bound", "Closed-form or numeric affinity bound");
  bound->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  bound->add_option("--alpha", alpha, "Skew in [0,1], 'chernoff' or 'bhattacharyya'");
  bound->add_flag("--numeric", numeric, "Integrate the mean numerically instead of the closed form");
  bound->add_option("--generator", generator, "arithmetic | geometric | harmonic | power:<p>");
  bound->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

  auto* exact = app.add_subcommand("exact", "Exact TV, Bayes error and probability of error");
  exact->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  exact->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

  std::size_t n = 10000;
  std::uint64_t seed = 0;
  std::string convergence;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo TV and probability of error");
  estimate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  estimate->add_option("--n", n, "Sample size");
  estimate->add_option("--seed", seed, "Seed");
  estimate->add_option("--convergence", convergence, "Comma-separated sample sizes, emits CSV");
  estimate->add_option("--out", out_path, "Write output to this file");
  estimate->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

  auto* table1 = app.add_subcommand("table1", "Central multivariate t experiment as CSV");
  table1->add_option("--n", n, "Sample size for the estimated column");
  table1->add_option("--seed", seed, "Seed");
  table1->add_option("--out", out_path, "CSV output file (stdout if omitted)");

  double lambda_max = 20.0;
  int steps = 100;
  auto* gap = app.add_subcommand("gap", "Cauchy Bhattacharyya gap curve as CSV");
  gap->add_option("--lambda-max", lambda_max, "Largest scale ratio");
  gap->add_option("--steps", steps, "Number of intervals on [1, lambda-max]");
  gap->add_option("--out", out_path, "CSV output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const cli::Format fmt = format == "csv" ? cli::Format::Csv : cli::Format::Text;
  try {
    if (bound->parsed()) {
      cli::BoundOptions opt;
      opt.alpha = alpha;
      opt.numeric = numeric;
      if (!generator.empty()) opt.generator = cli::parse_generator(generator);
      const auto report = cli::cmd_bound(cli::load_scenario(scenario_path), opt);
      cli::write_bound(std::cout, report, fmt);
    } else if (exact->parsed()) {
      cli::write_exact(std::cout, cli::cmd_exact(cli::load_scenario(scenario_path)), fmt);
    } else if (estimate->parsed()) {
      const auto sc = cli::load_scenario(scenario_path);
      if (!convergence.empty()) {
        const auto rows = bayeserr::convergence_table(sc.p1, sc.p2, cli::parse_n_list(convergence), seed);
        cli::write_output(out_path, std::cout, [&](std::ostream& os) { cli::write_convergence_csv(os, rows); });
      } else {
        const auto report = cli::cmd_estimate(sc, n, seed);
        cli::write_output(out_path, std::cout, [&](std::ostream& os) { cli::write_estimate(os, report, fmt); });
      }
    } else if (table1->parsed()) {
      const auto rows = cli::cmd_table1(n, seed);
      cli::write_output(out_path, std::cout, [&](std::ostream& os) { cli::write_table1_csv(os, rows); });
    } else if (gap->parsed()) {
      const auto rows = cli::cmd_gap(lambda_max, steps);
      cli::write_output(out_path, std::cout, [&](std::ostream& os) { cli::write_gap_csv(os, rows); });
    }
  } catch (const cli::CliError& e) {
    std::cerr << "bayeserr: " << e.what() << '\n';
    return e.exit_code();
  } catch (const bayeserr::Unsupported& e) {
    std::cerr << "bayeserr: unsupported: " << e.what() << '\n';
    return 2;
  } catch (const bayeserr::Error& e) {
    std::cerr << "bayeserr: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
