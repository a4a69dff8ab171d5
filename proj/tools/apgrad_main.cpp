#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apgrad/experiment.hpp"

namespace {

int run_command(const CLI::App& cmd, apgrad::ExperimentConfig cfg) {
  auto passed = [&cmd](const std::string& name) { return cmd.count(name) > 0; };
  if (passed("--config")) {
    cfg = apgrad::load_config_file(cmd.get_option("--config")->as<std::string>());
  }
  if (passed("--problem")) cfg.problem = cmd.get_option("--problem")->as<std::string>();
  if (passed("--preset")) {
    cfg.presets = cmd.get_option("--preset")->as<std::vector<std::string>>();
  }
  if (passed("--estimator")) cfg.estimator = cmd.get_option("--estimator")->as<std::string>();
  if (passed("--alpha")) cfg.alpha = cmd.get_option("--alpha")->as<double>();
  if (passed("--beta")) cfg.beta = cmd.get_option("--beta")->as<double>();
  if (passed("--gamma")) cfg.gamma = cmd.get_option("--gamma")->as<double>();
  if (passed("--delta")) cfg.delta = cmd.get_option("--delta")->as<double>();
  if (passed("--eta")) cfg.eta = cmd.get_option("--eta")->as<double>();
  if (passed("--lambda")) cfg.lambda = cmd.get_option("--lambda")->as<double>();
  if (passed("--epsilon")) cfg.epsilon = cmd.get_option("--epsilon")->as<double>();
  if (passed("--x0")) cfg.x0 = cmd.get_option("--x0")->as<apgrad::Vec>();
  if (passed("--steps")) cfg.steps = cmd.get_option("--steps")->as<std::int64_t>();
  if (passed("--seeds")) {
    cfg.seeds = cmd.get_option("--seeds")->as<std::vector<std::uint64_t>>();
  }
  if (passed("--record-every")) {
    cfg.record_every = cmd.get_option("--record-every")->as<std::int64_t>();
  }
  if (passed("--out")) cfg.out_dir = cmd.get_option("--out")->as<std::string>();
  if (passed("--ball")) cfg.geometry = "ball";
  if (passed("--box")) cfg.geometry = "box";

  const apgrad::ExperimentResult result = apgrad::run_experiment(cfg);
  std::cout << apgrad::render_comparison(result.comparison);
  std::cout << "wrote " << result.csv_paths.size() << " run(s) to " << cfg.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected adaptive-rate optimization experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run an experiment and write CSV/JSON artifacts");
  run_cmd->add_option("--config", "flat key=value config file; flags override it");
  run_cmd->add_option("--problem", "problem spec, e.g. quadratic:d=10,sigma=0.1");
  run_cmd->add_option("--preset", "preset name(s), comma separated")->delimiter(',')->expected(1, -1);
  run_cmd->add_option("--estimator", "adam-max or amsgrad");
  run_cmd->add_option("--alpha", "constant rate, or scale when --eta is given");
  run_cmd->add_option("--beta", "constant momentum weight");
  run_cmd->add_option("--gamma", "first-moment bias-correction base");
  run_cmd->add_option("--delta", "second-moment averaging factor");
  run_cmd->add_option("--eta", "use rate scale/n^eta");
  run_cmd->add_option("--lambda", "use momentum lambda^n");
  run_cmd->add_option("--epsilon", "preconditioner floor");
  run_cmd->add_option("--x0", "initial point, comma separated")->delimiter(',')->expected(1, -1);
  run_cmd->add_option("--steps", "number of iterations");
  run_cmd->add_option("--seeds", "seed list, comma separated")->delimiter(',')->expected(1, -1);
  run_cmd->add_option("--record-every", "sampling stride");
  run_cmd->add_option("--out", "output directory");
  auto* ball = run_cmd->add_flag("--ball", "use a ball feasible set of radius w");
  auto* box = run_cmd->add_flag("--box", "use the default box feasible set");
  ball->excludes(box);

  auto* cmp_cmd = app.add_subcommand("compare", "aggregate run summary JSON files");
  std::vector<std::string> cmp_paths;
  cmp_cmd->add_option("summaries", cmp_paths, "summary JSON paths");
  std::string cmp_out;
  cmp_cmd->add_option("--out", cmp_out, "also write the table as CSV here");

  auto* list_cmd = app.add_subcommand("list-presets", "print the preset catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return run_command(*run_cmd, apgrad::ExperimentConfig{});
    if (cmp_cmd->parsed()) {
      const auto rows = apgrad::compare(cmp_paths);
      std::cout << apgrad::render_comparison(rows);
      if (!cmp_out.empty()) {
        const std::string text = apgrad::comparison_csv_text(rows);
        FILE* f = std::fopen(cmp_out.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open '" + cmp_out + "'");
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
      }
      return 0;
    }
    if (list_cmd->parsed()) {
      for (const auto& p : apgrad::all_presets()) {
        std::printf("%-10s %-9s %s\n", p.name.c_str(), apgrad::estimator_name(p.estimator),
                    p.schedule.describe().c_str());
      }
      return 0;
    }
  } catch (const apgrad::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
