#include <algorithm>
#include <stdexcept>

#include "vsrls/harness.hpp"
#include "vsrls/run_record.hpp"
#include "vsrls/instance_io.hpp"

namespace vsrls::harness {

using nlohmann::json;

namespace {

InstanceSpec make_spec(ProblemKind kind, std::size_t d) {
  InstanceSpec spec{.kind = kind, .dimension = d, .objectives = 2, .seed = 1};
  if (kind == ProblemKind::nk) {
    spec.interactions = 10;
  }
  return spec;
}

AlgorithmConfig plain(AlgorithmKind kind) {
  return AlgorithmConfig{.kind = kind, .label = std::string(algorithm_name(kind))};
}

AlgorithmConfig vsrls_variant(std::uint64_t switch_iteration, std::size_t phase2, std::string label) {
  return AlgorithmConfig{.kind = AlgorithmKind::vsrls,
                         .label = std::move(label),
                         .switch_iteration = switch_iteration,
                         .phase2_threshold = phase2};
}

std::vector<AlgorithmConfig> local_search_lineup() {
  return {plain(AlgorithmKind::rs), plain(AlgorithmKind::pls), plain(AlgorithmKind::semo),
          vsrls_variant(1000, 3, "VS-RLS")};
}

const std::vector<std::pair<ProblemKind, std::size_t>> kTable1Sizes = {
    {ProblemKind::knapsack, 500}, {ProblemKind::tsp, 200}, {ProblemKind::qap, 100}, {ProblemKind::nk, 100}};

} // namespace

ExperimentConfig preset(const std::string& name, std::size_t scale) {
  if (scale == 0) {
    throw std::invalid_argument("scale must be at least 1");
  }
  ExperimentConfig config;
  config.algorithms = local_search_lineup();
  if (name == "table1") {
    for (auto [kind, d] : kTable1Sizes) {
      config.cells.push_back({make_spec(kind, d), 1'000'000});
    }
  } else if (name == "table2") {
    const std::vector<std::pair<ProblemKind, std::size_t>> sizes = {
        {ProblemKind::knapsack, 100}, {ProblemKind::knapsack, 1000}, {ProblemKind::tsp, 50},
        {ProblemKind::tsp, 500},      {ProblemKind::qap, 50},        {ProblemKind::qap, 200},
        {ProblemKind::nk, 50},        {ProblemKind::nk, 200}};
    for (auto [kind, d] : sizes) {
      config.cells.push_back({make_spec(kind, d), 1'000'000});
    }
  } else if (name == "table3") {
    for (auto [kind, d] : kTable1Sizes) {
      for (std::uint64_t budget : {100'000ULL, 500'000ULL, 2'000'000ULL, 5'000'000ULL}) {
        config.cells.push_back({make_spec(kind, d), budget});
      }
    }
  } else if (name == "fig8") {
    config.cells.push_back({make_spec(ProblemKind::knapsack, 500), 500'000});
    config.algorithms = {plain(AlgorithmKind::rs), vsrls_variant(1000, 3, "Tvl1000-Vc3"),
                         vsrls_variant(1000, 1, "Tvl1000-Vc1"), vsrls_variant(1000, 5, "Tvl1000-Vc5"),
                         vsrls_variant(0, 3, "Tvl0-Vc3")};
    config.reference_algorithm = "Tvl1000-Vc3";
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (expected table1, table2, table3 or fig8)");
  }
  config.runs = std::max<std::size_t>(1, config.runs / scale);
  config.trace_every = std::max<std::uint64_t>(1, config.trace_every / scale);
  for (auto& cell : config.cells) {
    cell.max_evals = std::max<std::uint64_t>(1, cell.max_evals / scale);
  }
  return config;
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig config;
  if (doc.contains("preset")) {
    config = preset(doc.at("preset").get<std::string>(), doc.value("scale", std::size_t{1}));
  }
  const std::uint64_t default_budget = doc.value("max_evals", std::uint64_t{1'000'000});
  for (const char* key : {"cells", "instances"}) {
    if (doc.contains(key)) {
      config.cells.clear();
      for (const auto& entry : doc.at(key)) {
        config.cells.push_back({spec_from_json(entry), entry.value("max_evals", default_budget)});
      }
    }
  }
  if (!doc.contains("cells") && !doc.contains("instances") && doc.contains("max_evals")) {
    for (auto& cell : config.cells) {
      cell.max_evals = default_budget;
    }
  }
  if (doc.contains("algorithms")) {
    config.algorithms.clear();
    for (const auto& entry : doc.at("algorithms")) {
      config.algorithms.push_back(algorithm_config_from_json(entry));
    }
  }
  config.runs = doc.value("runs", config.runs);
  config.base_seed = doc.value("base_seed", config.base_seed);
  config.trace_every = doc.value("trace_every", config.trace_every);
  if (doc.contains("out")) {
    config.out_dir = doc.at("out").get<std::string>();
  }
  config.reference_algorithm = doc.value("reference", config.reference_algorithm);
  config.jobs = doc.value("jobs", config.jobs);

  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    for (std::size_t b = a + 1; b < config.algorithms.size(); ++b) {
      if (config.algorithms[a].label == config.algorithms[b].label) {
        throw std::invalid_argument("duplicate algorithm label '" + config.algorithms[a].label + "'");
      }
    }
  }
  if (config.runs == 0 || config.trace_every == 0) {
    throw std::invalid_argument("runs and trace_every must be positive");
  }
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  json doc;
  json cells = json::array();
  for (const auto& cell : config.cells) {
    json entry = spec_to_json(cell.instance);
    entry["max_evals"] = cell.max_evals;
    cells.push_back(std::move(entry));
  }
  doc["cells"] = std::move(cells);
  json algorithms = json::array();
  for (const auto& a : config.algorithms) {
    json entry = algorithm_config_to_json(a);
    entry.erase("max_evals");
    algorithms.push_back(std::move(entry));
  }
  doc["algorithms"] = std::move(algorithms);
  doc["runs"] = config.runs;
  doc["base_seed"] = config.base_seed;
  doc["trace_every"] = config.trace_every;
  doc["out"] = config.out_dir.string();
  doc["reference"] = config.reference_algorithm;
  doc["jobs"] = config.jobs;
  return doc;
}

} // namespace vsrls::harness
