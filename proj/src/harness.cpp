#include "vsrls/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vsrls/instance_io.hpp"
#include "vsrls/run_record.hpp"

namespace vsrls::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string cell_id(const CellSpec& cell) {
  return instance_id(cell.instance) + "-e" + std::to_string(cell.max_evals);
}

std::uint64_t run_seed(std::uint64_t base_seed, const std::string& label, std::size_t run) {
  // FNV-1a over the label, then mixed with the run index.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return base_seed ^ mix64(h ^ mix64(static_cast<std::uint64_t>(run)));
}

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format number");
  }
  return std::string(buffer, end);
}

fs::path instance_path(const ExperimentConfig& config, const InstanceSpec& spec) {
  return config.out_dir / "instances" / (instance_id(spec) + ".json");
}

fs::path record_path(const ExperimentConfig& config, const CellSpec& cell, const std::string& label,
                     std::size_t run) {
  char name[32];
  std::snprintf(name, sizeof(name), "run-%03zu.json", run);
  return config.out_dir / "records" / cell_id(cell) / label / name;
}

fs::path index_path(const ExperimentConfig& config) {
  return config.out_dir / "index.json";
}

std::vector<fs::path> cmd_generate(const ExperimentConfig& config) {
  std::vector<fs::path> written;
  std::vector<InstanceSpec> seen;
  for (const auto& cell : config.cells) {
    if (std::find(seen.begin(), seen.end(), cell.instance) != seen.end()) {
      continue;
    }
    seen.push_back(cell.instance);
    const auto path = instance_path(config, cell.instance);
    save_instance(generate_instance(cell.instance), path);
    written.push_back(path);
  }
  return written;
}

namespace {

struct Job {
  std::size_t cell = 0;
  std::size_t algorithm = 0;
  std::size_t run = 0;
};

AlgorithmConfig cell_config(const ExperimentConfig& config, const Job& job) {
  AlgorithmConfig a = config.algorithms[job.algorithm];
  a.max_evals = config.cells[job.cell].max_evals;
  if (a.kind != AlgorithmKind::rs && !a.move) {
    a.move = default_move(config.cells[job.cell].instance.kind);
  }
  return a;
}

// A record is reusable if it parses and echoes the configuration it would be
// produced from.
bool record_is_current(const fs::path& path, const AlgorithmConfig& expected, const InstanceSpec& instance,
                       std::uint64_t seed) {
  if (!fs::exists(path)) {
    return false;
  }
  try {
    const RunRecord record = load_record(path);
    return record.config == expected && record.instance == instance && record.seed == seed &&
           record.evaluations <= expected.max_evals;
  } catch (const std::exception&) {
    return false;
  }
}

ProblemInstance load_cell_instance(const ExperimentConfig& config, const CellSpec& cell) {
  const auto path = instance_path(config, cell.instance);
  if (!fs::exists(path)) {
    throw std::runtime_error("missing instance file " + path.string() + " for " + instance_id(cell.instance) +
                             "; run 'generate' first");
  }
  auto instance = load_instance(path);
  if (instance.spec() != cell.instance) {
    throw std::runtime_error("instance file " + path.string() + " does not match " + instance_id(cell.instance));
  }
  return instance;
}

// Runs fn(job) for every job on `workers` threads; rethrows the first error.
template <typename Fn>
void parallel_for(const std::vector<Job>& jobs, std::size_t workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) {
        return;
      }
      try {
        fn(jobs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

std::vector<double> natural_values(ProblemKind kind, const ObjectiveVector& canonical) {
  const auto natural = to_natural(kind, canonical);
  return {natural.begin(), natural.end()};
}

} // namespace

ReferencePoint cell_reference(const ExperimentConfig& config, const CellSpec& cell) {
  std::vector<ObjectiveVector> pooled;
  bool any_rs = false;
  for (const auto& a : config.algorithms) {
    if (a.kind != AlgorithmKind::rs) {
      continue;
    }
    any_rs = true;
    for (std::size_t r = 0; r < config.runs; ++r) {
      const auto path = record_path(config, cell, a.label, r);
      if (!fs::exists(path)) {
        throw std::runtime_error("missing RS record " + path.string() + "; run RS first ('run' with RS configured)");
      }
      const auto front = load_record(path).front();
      pooled.insert(pooled.end(), front.begin(), front.end());
    }
  }
  if (!any_rs) {
    throw std::runtime_error("no RS algorithm configured for " + cell_id(cell) +
                             "; the reference point is derived from RS runs, so run RS first");
  }
  return reference_point(nondominated_filter(pooled));
}

RunSummary cmd_run(const ExperimentConfig& config, const RunControl& control) {
  std::vector<ProblemInstance> instances;
  instances.reserve(config.cells.size());
  for (const auto& cell : config.cells) {
    instances.push_back(load_cell_instance(config, cell));
  }

  std::vector<Job> rs_jobs;
  std::vector<Job> other_jobs;
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      for (std::size_t r = 0; r < config.runs; ++r) {
        (config.algorithms[a].kind == AlgorithmKind::rs ? rs_jobs : other_jobs).push_back({c, a, r});
      }
    }
  }
  const bool have_rs = !rs_jobs.empty();

  std::atomic<std::size_t> executed{0};
  std::atomic<std::size_t> skipped{0};
  std::atomic<std::size_t> reserved{0};
  std::atomic<bool> interrupted{false};
  std::vector<std::optional<ReferencePoint>> references(config.cells.size());

  auto execute = [&](const Job& job) {
    const CellSpec& cell = config.cells[job.cell];
    const AlgorithmConfig algorithm = cell_config(config, job);
    const std::uint64_t seed = run_seed(config.base_seed, algorithm.label, job.run);
    const auto path = record_path(config, cell, algorithm.label, job.run);
    if (record_is_current(path, algorithm, cell.instance, seed)) {
      ++skipped;
      return;
    }
    if (control.max_new_runs && reserved.fetch_add(1) >= *control.max_new_runs) {
      interrupted = true;
      return;
    }
    RunOptions options;
    if (algorithm.kind != AlgorithmKind::rs && references[job.cell]) {
      options.trace = TraceSpec{config.trace_every, *references[job.cell]};
    }
    save_record(run_algorithm(instances[job.cell], algorithm, seed, options), path);
    ++executed;
  };

  parallel_for(rs_jobs, config.jobs, execute);
  if (interrupted) {
    return {executed.load(), skipped.load(), false};
  }
  if (have_rs) {
    for (std::size_t c = 0; c < config.cells.size(); ++c) {
      references[c] = cell_reference(config, config.cells[c]);
    }
  }
  parallel_for(other_jobs, config.jobs, execute);
  if (interrupted) {
    return {executed.load(), skipped.load(), false};
  }

  json index;
  index["format"] = "vsrls-index";
  index["version"] = 1;
  json refs = json::object();
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    if (references[c]) {
      refs[cell_id(config.cells[c])] = natural_values(config.cells[c].instance.kind, *references[c]);
    }
  }
  index["references"] = std::move(refs);
  json records = json::array();
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      for (std::size_t r = 0; r < config.runs; ++r) {
        const auto& label = config.algorithms[a].label;
        records.push_back({{"cell", cell_id(config.cells[c])},
                           {"algorithm", label},
                           {"run", r},
                           {"seed", run_seed(config.base_seed, label, r)},
                           {"path", fs::relative(record_path(config, config.cells[c], label, r), config.out_dir)
                                        .generic_string()}});
      }
    }
  }
  index["records"] = std::move(records);
  write_text_atomically(index_path(config), index.dump(2) + "\n");
  return {executed.load(), skipped.load(), true};
}

std::string significance_mark(const std::vector<double>& row, const std::vector<double>& reference) {
  if (row.size() < 5 || reference.size() < 5) {
    return "n/a";
  }
  const auto test = wilcoxon_rank_sum(row, reference);
  if (test.p_two_sided >= 0.05) {
    return "=";
  }
  return test.statistic > 0.0 ? "+" : "-";
}

std::string summary_csv(const SummaryTable& table) {
  std::ostringstream out;
  out << "problem,D,m,K,instance_seed,max_evals,algorithm,runs,hv_mean,hv_std,mark\n";
  for (const auto& row : table.rows) {
    const auto& spec = row.cell.instance;
    out << to_string(spec.kind) << ',' << spec.dimension << ',' << spec.objectives << ','
        << (spec.interactions ? std::to_string(*spec.interactions) : std::string{}) << ',' << spec.seed << ','
        << row.cell.max_evals << ',' << row.algorithm << ',' << row.hypervolumes.size() << ','
        << format_double(row.mean) << ',' << format_double(row.stddev) << ',' << row.mark << '\n';
  }
  // One tally row per compared algorithm: better/similar/worse counts.
  std::vector<std::string> order;
  std::map<std::string, std::array<int, 3>> tally;
  for (const auto& row : table.rows) {
    if (row.mark != "+" && row.mark != "=" && row.mark != "-") {
      continue;
    }
    if (!tally.contains(row.algorithm)) {
      order.push_back(row.algorithm);
      tally[row.algorithm] = {0, 0, 0};
    }
    auto& t = tally[row.algorithm];
    ++t[row.mark == "+" ? 0 : row.mark == "=" ? 1 : 2];
  }
  for (const auto& label : order) {
    const auto& t = tally[label];
    out << "+/=/-,,,,,," << label << ",,,," << t[0] << '/' << t[1] << '/' << t[2] << '\n';
  }
  return out.str();
}

SummaryTable cmd_stats(const ExperimentConfig& config) {
  SummaryTable table;
  table.reference_algorithm = config.reference_algorithm;
  json cells = json::array();
  for (const auto& cell : config.cells) {
    const ReferencePoint r = cell_reference(config, cell);
    table.references[cell_id(cell)] = r;

    std::vector<SummaryRow> rows;
    for (const auto& a : config.algorithms) {
      SummaryRow row{.cell = cell, .algorithm = a.label};
      for (std::size_t run = 0; run < config.runs; ++run) {
        const auto path = record_path(config, cell, a.label, run);
        if (!fs::exists(path)) {
          throw std::runtime_error("missing run record " + path.string() + "; run 'run' first");
        }
        const auto front = load_record(path).front();
        row.hypervolumes.push_back(hypervolume(front, r));
      }
      const double n = static_cast<double>(row.hypervolumes.size());
      row.mean = std::accumulate(row.hypervolumes.begin(), row.hypervolumes.end(), 0.0) / n;
      double ss = 0.0;
      for (double v : row.hypervolumes) {
        ss += (v - row.mean) * (v - row.mean);
      }
      row.stddev = row.hypervolumes.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      rows.push_back(std::move(row));
    }
    const auto ref_row = std::find_if(rows.begin(), rows.end(),
                                      [&](const SummaryRow& row) { return row.algorithm == config.reference_algorithm; });
    if (ref_row != rows.end()) {
      for (auto& row : rows) {
        if (&row != &*ref_row) {
          row.mark = significance_mark(row.hypervolumes, ref_row->hypervolumes);
        }
      }
    }
    json entry;
    entry["cell"] = cell_id(cell);
    entry["reference_point"] = natural_values(cell.instance.kind, r);
    json algs = json::array();
    for (const auto& row : rows) {
      algs.push_back({{"algorithm", row.algorithm},
                      {"hv", row.hypervolumes},
                      {"mean", row.mean},
                      {"std", row.stddev},
                      {"mark", row.mark}});
    }
    entry["algorithms"] = std::move(algs);
    cells.push_back(std::move(entry));
    table.rows.insert(table.rows.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  }
  json summary;
  summary["format"] = "vsrls-summary";
  summary["version"] = 1;
  summary["reference_algorithm"] = config.reference_algorithm;
  summary["cells"] = std::move(cells);
  write_text_atomically(config.out_dir / "stats" / "summary.json", summary.dump(2) + "\n");
  write_text_atomically(config.out_dir / "stats" / "summary.csv", summary_csv(table));
  return table;
}

fs::path cmd_trace(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "cell,algorithm,config_label,run,evaluations,hv\n";
  bool any = false;
  for (const auto& cell : config.cells) {
    for (const auto& a : config.algorithms) {
      if (a.kind == AlgorithmKind::rs) {
        continue;
      }
      for (std::size_t run = 0; run < config.runs; ++run) {
        const auto path = record_path(config, cell, a.label, run);
        if (!fs::exists(path)) {
          throw std::runtime_error("missing run record " + path.string() + "; run 'run' first");
        }
        const RunRecord record = load_record(path);
        if (record.trace.empty()) {
          throw std::runtime_error("record " + path.string() +
                                   " has no trace; set trace_every below the budget and include RS in the run");
        }
        std::string config_label = a.label;
        if (a.kind == AlgorithmKind::vsrls) {
          config_label = "Tvl" + std::to_string(a.switch_iteration) + "-Vc" + std::to_string(a.phase2_threshold);
        }
        for (const auto& p : record.trace) {
          out << cell_id(cell) << ',' << algorithm_name(a.kind) << ',' << config_label << ',' << run << ','
              << p.evaluations << ',' << format_double(p.hypervolume) << '\n';
        }
        any = true;
      }
    }
  }
  if (!any) {
    throw std::runtime_error("no traced algorithms in this configuration");
  }
  const auto path = config.out_dir / "trace.csv";
  write_text_atomically(path, out.str());
  return path;
}

} // namespace vsrls::harness
