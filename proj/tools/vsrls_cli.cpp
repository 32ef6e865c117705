// Command-line front end: generate instances, run the experiment matrix,
// summarize hypervolumes and export convergence traces.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsrls/harness.hpp"
#include "vsrls/instance_io.hpp"

namespace {

struct CommonOptions {
  std::string config_file;
  std::string preset;
  std::size_t scale = 1;
  std::optional<std::size_t> jobs;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--config", opts.config_file, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd.add_option("--preset", opts.preset, "table1 | table2 | table3 | fig8");
  cmd.add_option("--scale", opts.scale, "Divide runs, budgets and trace spacing by this factor")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--jobs", opts.jobs, "Worker threads for the run matrix");
  cmd.add_option("--out", opts.out, "Output directory");
  cmd.add_option("--seed", opts.seed, "Base run seed");
}

vsrls::harness::ExperimentConfig resolve(const CommonOptions& opts) {
  vsrls::harness::ExperimentConfig config;
  if (!opts.config_file.empty()) {
    auto doc = nlohmann::json::parse(vsrls::read_text(opts.config_file));
    if (!opts.preset.empty()) {
      doc["preset"] = opts.preset;
      doc["scale"] = opts.scale;
    }
    config = vsrls::harness::config_from_json(doc);
  } else if (!opts.preset.empty()) {
    config = vsrls::harness::preset(opts.preset, opts.scale);
  } else {
    throw CLI::ValidationError("either --config or --preset is required");
  }
  if (opts.jobs) {
    config.jobs = *opts.jobs;
  }
  if (opts.out) {
    config.out_dir = *opts.out;
  }
  if (opts.seed) {
    config.base_seed = *opts.seed;
  }
  return config;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable stepsize randomized local search benchmark harness"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* generate = app.add_subcommand("generate", "Write one instance file per configured instance");
  auto* run = app.add_subcommand("run", "Execute the algorithm x run matrix (resumable)");
  auto* stats = app.add_subcommand("stats", "Hypervolume summary table with rank-sum marks");
  auto* trace = app.add_subcommand("trace", "Long-format hypervolume convergence CSV");
  for (auto* cmd : {generate, run, stats, trace}) {
    add_common(*cmd, opts);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = resolve(opts);
    if (generate->parsed()) {
      for (const auto& path : vsrls::harness::cmd_generate(config)) {
        std::cout << path.string() << '\n';
      }
    } else if (run->parsed()) {
      const auto summary = vsrls::harness::cmd_run(config);
      std::cout << "executed " << summary.executed << ", reused " << summary.skipped << ", index "
                << vsrls::harness::index_path(config).string() << '\n';
    } else if (stats->parsed()) {
      const auto table = vsrls::harness::cmd_stats(config);
      std::cout << vsrls::harness::summary_csv(table);
    } else if (trace->parsed()) {
      std::cout << vsrls::harness::cmd_trace(config).string() << '\n';
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
