#include "vsrls/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vsrls {

using nlohmann::json;

namespace {

template <typename T>
json matrices_to_json(const std::vector<T>& flat, std::size_t count, std::size_t rows, std::size_t cols) {
  json out = json::array();
  for (std::size_t c = 0; c < count; ++c) {
    json mat = json::array();
    for (std::size_t r = 0; r < rows; ++r) {
      auto begin = flat.begin() + static_cast<std::ptrdiff_t>((c * rows + r) * cols);
      mat.push_back(std::vector<T>(begin, begin + static_cast<std::ptrdiff_t>(cols)));
    }
    out.push_back(std::move(mat));
  }
  return out;
}

template <typename T>
std::vector<T> flatten(const json& nested, std::size_t expected, const char* field) {
  std::vector<T> out;
  out.reserve(expected);
  auto walk = [&](auto&& self, const json& node) -> void {
    if (node.is_array()) {
      for (const auto& child : node) {
        self(self, child);
      }
    } else {
      out.push_back(node.get<T>());
    }
  };
  walk(walk, nested);
  if (out.size() != expected) {
    throw std::runtime_error(std::string("instance field '") + field + "' has " + std::to_string(out.size()) +
                             " entries, expected " + std::to_string(expected));
  }
  return out;
}

} // namespace

json spec_to_json(const InstanceSpec& spec) {
  json doc;
  doc["kind"] = std::string(to_string(spec.kind));
  doc["D"] = spec.dimension;
  doc["m"] = spec.objectives;
  doc["K"] = spec.interactions ? json(*spec.interactions) : json(nullptr);
  doc["seed"] = spec.seed;
  return doc;
}

InstanceSpec spec_from_json(const json& doc) {
  InstanceSpec spec;
  spec.kind = parse_problem_kind(doc.at("kind").get<std::string>());
  spec.dimension = doc.at("D").get<std::size_t>();
  spec.objectives = doc.value("m", std::size_t{2});
  if (doc.contains("K") && !doc.at("K").is_null()) {
    spec.interactions = doc.at("K").get<std::size_t>();
  }
  spec.seed = doc.value("seed", std::uint64_t{0});
  return spec;
}

json instance_to_json(const ProblemInstance& instance) {
  json doc;
  doc["format"] = "vsrls-instance";
  doc["version"] = 1;
  doc.update(spec_to_json(instance.spec()));
  const std::size_t d = instance.dimension();
  const std::size_t m = instance.num_objectives();
  json payload;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, KnapsackInstance>) {
          payload["values"] = matrices_to_json(inst.values, 1, m, d)[0];
          payload["weights"] = matrices_to_json(inst.weights, 1, m, d)[0];
          payload["capacities"] = inst.capacities;
        } else if constexpr (std::is_same_v<T, TspInstance>) {
          payload["costs"] = matrices_to_json(inst.costs, m, d, d);
        } else if constexpr (std::is_same_v<T, QapInstance>) {
          payload["flows"] = matrices_to_json(inst.flows, m, d, d);
          json locs = json::array();
          for (const auto& loc : inst.locations) {
            locs.push_back({loc.x, loc.y});
          }
          payload["locations"] = std::move(locs);
          payload["distances"] = matrices_to_json(inst.distances, 1, d, d)[0];
        } else {
          const std::size_t k = inst.interactions();
          payload["partners"] = matrices_to_json(inst.partners, 1, d, k)[0];
          payload["tables"] = matrices_to_json(inst.tables, d, m, inst.table_size());
        }
      },
      instance.get());
  doc["payload"] = std::move(payload);
  return doc;
}

ProblemInstance instance_from_json(const json& doc) {
  if (doc.value("format", std::string{}) != "vsrls-instance") {
    throw std::runtime_error("not an instance document");
  }
  const InstanceSpec spec = spec_from_json(doc);
  const std::size_t d = spec.dimension;
  const std::size_t m = spec.objectives;
  const json& payload = doc.at("payload");
  switch (spec.kind) {
  case ProblemKind::knapsack: {
    KnapsackInstance inst{.spec = spec};
    inst.values = flatten<std::int32_t>(payload.at("values"), m * d, "values");
    inst.weights = flatten<std::int32_t>(payload.at("weights"), m * d, "weights");
    inst.capacities = flatten<std::int64_t>(payload.at("capacities"), m, "capacities");
    prepare_knapsack(inst);
    return ProblemInstance(std::move(inst));
  }
  case ProblemKind::tsp: {
    TspInstance inst{.spec = spec};
    inst.costs = flatten<double>(payload.at("costs"), m * d * d, "costs");
    return ProblemInstance(std::move(inst));
  }
  case ProblemKind::qap: {
    QapInstance inst{.spec = spec};
    inst.flows = flatten<double>(payload.at("flows"), m * d * d, "flows");
    const auto coords = flatten<double>(payload.at("locations"), 2 * d, "locations");
    inst.locations.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      inst.locations[i] = {coords[2 * i], coords[2 * i + 1]};
    }
    inst.distances = flatten<double>(payload.at("distances"), d * d, "distances");
    return ProblemInstance(std::move(inst));
  }
  case ProblemKind::nk: {
    NkInstance inst{.spec = spec};
    const std::size_t k = inst.interactions();
    inst.partners = flatten<std::uint32_t>(payload.at("partners"), d * k, "partners");
    inst.tables = flatten<double>(payload.at("tables"), d * m * inst.table_size(), "tables");
    return ProblemInstance(std::move(inst));
  }
  }
  throw std::runtime_error("unknown problem kind");
}

void write_text_atomically(const std::filesystem::path& path, const std::string& text) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << text;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  write_text_atomically(path, instance_to_json(instance).dump() + "\n");
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed instance file " + path.string() + ": " + e.what());
  }
  auto instance = instance_from_json(doc);
  if (!invariants_hold(instance)) {
    throw std::runtime_error("instance file " + path.string() + " violates the instance invariants");
  }
  return instance;
}

} // namespace vsrls
