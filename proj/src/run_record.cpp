#include "vsrls/run_record.hpp"

#include <stdexcept>

#include "vsrls/instance_io.hpp"

namespace vsrls {

using nlohmann::json;

json algorithm_config_to_json(const AlgorithmConfig& config) {
  json doc;
  doc["algorithm"] = std::string(algorithm_name(config.kind));
  doc["label"] = config.label;
  doc["move"] = config.move ? json(std::string(to_string(*config.move))) : json(nullptr);
  doc["max_evals"] = config.max_evals;
  if (config.kind == AlgorithmKind::vsrls) {
    doc["T_vl"] = config.switch_iteration;
    doc["V_C"] = config.phase2_threshold;
  }
  return doc;
}

AlgorithmConfig algorithm_config_from_json(const json& doc) {
  AlgorithmConfig config;
  config.kind = parse_algorithm(doc.at("algorithm").get<std::string>());
  config.label = doc.value("label", std::string(algorithm_name(config.kind)));
  if (doc.contains("move") && !doc.at("move").is_null()) {
    config.move = parse_move_kind(doc.at("move").get<std::string>());
  }
  config.max_evals = doc.value("max_evals", std::uint64_t{0});
  if (config.kind == AlgorithmKind::vsrls) {
    config.switch_iteration = doc.value("T_vl", std::uint64_t{1000});
    config.phase2_threshold = doc.value("V_C", std::size_t{3});
  }
  return config;
}

json record_to_json(const RunRecord& record) {
  const ProblemKind kind = record.instance.kind;
  json doc;
  doc["format"] = "vsrls-run";
  doc["version"] = 1;
  doc["algorithm"] = std::string(algorithm_name(record.config.kind));
  doc["label"] = record.config.label;
  doc["config"] = algorithm_config_to_json(record.config);
  doc["instance"] = spec_to_json(record.instance);
  doc["seed"] = record.seed;
  doc["evaluations"] = record.evaluations;
  doc["iterations"] = record.iterations;
  json archive = json::array();
  for (const auto& s : record.archive) {
    json member;
    if (const auto* bits = std::get_if<BitString>(&s.genotype)) {
      member["genotype"] = to_string(*bits);
    } else {
      member["genotype"] = std::get<Permutation>(s.genotype).order;
    }
    const auto natural = to_natural(kind, s.objectives);
    member["objectives"] = std::vector<double>(natural.begin(), natural.end());
    archive.push_back(std::move(member));
  }
  doc["archive"] = std::move(archive);
  json trace = json::array();
  for (const auto& p : record.trace) {
    trace.push_back({p.evaluations, p.hypervolume});
  }
  doc["trace"] = std::move(trace);
  if (record.trace_reference) {
    const auto natural = to_natural(kind, *record.trace_reference);
    doc["trace_reference"] = std::vector<double>(natural.begin(), natural.end());
  } else {
    doc["trace_reference"] = nullptr;
  }
  doc["wall_time_s"] = record.wall_time_seconds;
  return doc;
}

RunRecord record_from_json(const json& doc) {
  if (doc.value("format", std::string{}) != "vsrls-run") {
    throw std::runtime_error("not a run-record document");
  }
  RunRecord record;
  record.config = algorithm_config_from_json(doc.at("config"));
  record.instance = spec_from_json(doc.at("instance"));
  record.seed = doc.at("seed").get<std::uint64_t>();
  record.evaluations = doc.at("evaluations").get<std::uint64_t>();
  record.iterations = doc.at("iterations").get<std::uint64_t>();
  const ProblemKind kind = record.instance.kind;
  for (const auto& member : doc.at("archive")) {
    Solution s;
    const auto& g = member.at("genotype");
    if (g.is_string()) {
      s.genotype = bits_from_string(g.get<std::string>());
    } else {
      s.genotype = Permutation{g.get<std::vector<std::uint32_t>>()};
    }
    s.objectives = to_canonical(kind, ObjectiveVector(member.at("objectives").get<std::vector<double>>()));
    record.archive.push_back(std::move(s));
  }
  for (const auto& p : doc.at("trace")) {
    record.trace.push_back({p.at(0).get<std::uint64_t>(), p.at(1).get<double>()});
  }
  if (doc.contains("trace_reference") && !doc.at("trace_reference").is_null()) {
    record.trace_reference =
        to_canonical(kind, ObjectiveVector(doc.at("trace_reference").get<std::vector<double>>()));
  }
  record.wall_time_seconds = doc.value("wall_time_s", 0.0);
  return record;
}

json normalized(json doc) {
  doc.erase("wall_time_s");
  return doc;
}

void save_record(const RunRecord& record, const std::filesystem::path& path) {
  write_text_atomically(path, record_to_json(record).dump() + "\n");
}

RunRecord load_record(const std::filesystem::path& path) {
  try {
    return record_from_json(json::parse(read_text(path)));
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed run record " + path.string() + ": " + e.what());
  }
}

} // namespace vsrls
