#include "vsrls/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vsrls {

std::string_view to_string(ProblemKind kind) noexcept {
  switch (kind) {
  case ProblemKind::knapsack: return "knapsack";
  case ProblemKind::tsp: return "tsp";
  case ProblemKind::qap: return "qap";
  case ProblemKind::nk: return "nk";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view name) {
  for (auto kind : {ProblemKind::knapsack, ProblemKind::tsp, ProblemKind::qap, ProblemKind::nk}) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown problem kind '" + std::string(name) + "'");
}

ObjectiveVector to_canonical(ProblemKind kind, ObjectiveVector natural) {
  if (is_maximization(kind)) {
    for (std::size_t i = 0; i < natural.size(); ++i) {
      natural[i] = -natural[i];
    }
  }
  return natural;
}

ObjectiveVector to_natural(ProblemKind kind, ObjectiveVector canonical) {
  return to_canonical(kind, std::move(canonical));
}

std::string instance_id(const InstanceSpec& spec) {
  std::string id = std::string(to_string(spec.kind)) + "-D" + std::to_string(spec.dimension) + "-m" +
                   std::to_string(spec.objectives);
  if (spec.interactions) {
    id += "-K" + std::to_string(*spec.interactions);
  }
  return id + "-s" + std::to_string(spec.seed);
}

// --- generation -------------------------------------------------------------

namespace {

void validate(const InstanceSpec& spec) {
  if (spec.dimension < 2) {
    throw std::invalid_argument("instance dimension D must be at least 2");
  }
  if (spec.objectives < 2) {
    throw std::invalid_argument("instance needs at least 2 objectives");
  }
  if (spec.kind != ProblemKind::nk && spec.interactions) {
    throw std::invalid_argument("K is only meaningful for NK-landscape instances");
  }
  if (spec.kind == ProblemKind::nk) {
    if (!spec.interactions) {
      throw std::invalid_argument("NK-landscape instances require K");
    }
    if (*spec.interactions >= spec.dimension) {
      throw std::invalid_argument("NK-landscape requires K < D");
    }
    if (*spec.interactions > 24) {
      throw std::invalid_argument("NK-landscape K above 24 is not supported");
    }
  }
}

// Draw order: all values (objective-major), then all weights.
KnapsackInstance make_knapsack(const InstanceSpec& spec, RngStream& rng) {
  const std::size_t n = spec.objectives * spec.dimension;
  KnapsackInstance inst{.spec = spec};
  inst.values.resize(n);
  inst.weights.resize(n);
  for (auto& v : inst.values) {
    v = static_cast<std::int32_t>(rng.between(10, 100));
  }
  for (auto& w : inst.weights) {
    w = static_cast<std::int32_t>(rng.between(10, 100));
  }
  inst.capacities.resize(spec.objectives);
  for (std::size_t j = 0; j < spec.objectives; ++j) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < spec.dimension; ++i) {
      total += inst.weight(j, i);
    }
    inst.capacities[j] = total / 2;
  }
  prepare_knapsack(inst);
  return inst;
}

// Upper triangle (a < b) drawn row by row for each objective, then mirrored.
TspInstance make_tsp(const InstanceSpec& spec, RngStream& rng) {
  const std::size_t d = spec.dimension;
  TspInstance inst{.spec = spec};
  inst.costs.assign(spec.objectives * d * d, 0.0);
  for (std::size_t j = 0; j < spec.objectives; ++j) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        const double c = rng.uniform01();
        inst.costs[(j * d + a) * d + b] = c;
        inst.costs[(j * d + b) * d + a] = c;
      }
    }
  }
  return inst;
}

// Draw order: all flow entries (objective-major, row-major), then the
// location coordinates as (x, y) pairs.
QapInstance make_qap(const InstanceSpec& spec, RngStream& rng) {
  const std::size_t d = spec.dimension;
  QapInstance inst{.spec = spec};
  inst.flows.resize(spec.objectives * d * d);
  for (auto& f : inst.flows) {
    f = 100.0 * rng.uniform01();
  }
  inst.locations.resize(d);
  for (auto& loc : inst.locations) {
    loc.x = 5000.0 * rng.uniform01();
    loc.y = 5000.0 * rng.uniform01();
  }
  inst.distances.assign(d * d, 0.0);
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = u + 1; v < d; ++v) {
      // sqrt is correctly rounded under IEEE 754; hypot is not required to be.
      const double dx = inst.locations[u].x - inst.locations[v].x;
      const double dy = inst.locations[u].y - inst.locations[v].y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      inst.distances[u * d + v] = dist;
      inst.distances[v * d + u] = dist;
    }
  }
  return inst;
}

// Per bit: K partners by partial Fisher-Yates over the other D-1 indices.
// Then all tables in storage order.
NkInstance make_nk(const InstanceSpec& spec, RngStream& rng) {
  const std::size_t d = spec.dimension;
  const std::size_t k = *spec.interactions;
  NkInstance inst{.spec = spec};
  inst.partners.resize(d * k);
  std::vector<std::uint32_t> pool;
  for (std::size_t i = 0; i < d; ++i) {
    pool.clear();
    for (std::size_t v = 0; v < d; ++v) {
      if (v != i) {
        pool.push_back(static_cast<std::uint32_t>(v));
      }
    }
    for (std::size_t p = 0; p < k; ++p) {
      auto pick = p + static_cast<std::size_t>(rng.below(pool.size() - p));
      std::swap(pool[p], pool[pick]);
      inst.partners[i * k + p] = pool[p];
    }
  }
  inst.tables.resize(d * spec.objectives * inst.table_size());
  for (auto& c : inst.tables) {
    c = rng.uniform01();
  }
  return inst;
}

} // namespace

void prepare_knapsack(KnapsackInstance& inst) {
  const std::size_t d = inst.spec.dimension;
  std::vector<double> best_ratio(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < inst.spec.objectives; ++j) {
      best_ratio[i] = std::max(best_ratio[i], static_cast<double>(inst.value(j, i)) / inst.weight(j, i));
    }
  }
  inst.repair_order.resize(d);
  std::iota(inst.repair_order.begin(), inst.repair_order.end(), 0U);
  std::stable_sort(inst.repair_order.begin(), inst.repair_order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return best_ratio[a] < best_ratio[b]; });
}

ProblemInstance generate_instance(const InstanceSpec& spec) {
  validate(spec);
  // Separate the stream per kind so that equal seeds across kinds do not
  // share draws.
  RngStream rng(spec.seed ^ mix64(static_cast<std::uint64_t>(spec.kind) + 1));
  switch (spec.kind) {
  case ProblemKind::knapsack: return ProblemInstance(make_knapsack(spec, rng));
  case ProblemKind::tsp: return ProblemInstance(make_tsp(spec, rng));
  case ProblemKind::qap: return ProblemInstance(make_qap(spec, rng));
  case ProblemKind::nk: return ProblemInstance(make_nk(spec, rng));
  }
  throw std::invalid_argument("unknown problem kind");
}

// --- evaluation ---------------------------------------------------------------

std::pair<BitString, ObjectiveVector> evaluate_knapsack(const KnapsackInstance& inst, BitString g) {
  const std::size_t d = inst.spec.dimension;
  const std::size_t m = inst.spec.objectives;
  std::vector<std::int64_t> load(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::int32_t* w = &inst.weights[j * d];
    std::int64_t total = 0;
    for (std::size_t i = 0; i < d; ++i) {
      total += g.bits[i] ? w[i] : 0;
    }
    load[j] = total;
  }
  auto overloaded = [&] {
    for (std::size_t j = 0; j < m; ++j) {
      if (load[j] > inst.capacities[j]) {
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < d && overloaded(); ++r) {
    const std::uint32_t item = inst.repair_order[r];
    if (g.bits[item]) {
      g.bits[item] = 0;
      for (std::size_t j = 0; j < m; ++j) {
        load[j] -= inst.weight(j, item);
      }
    }
  }
  ObjectiveVector f(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::int32_t* v = &inst.values[j * d];
    std::int64_t total = 0;
    for (std::size_t i = 0; i < d; ++i) {
      total += g.bits[i] ? v[i] : 0;
    }
    f[j] = -static_cast<double>(total);
  }
  return {std::move(g), std::move(f)};
}

ObjectiveVector evaluate_tsp(const TspInstance& inst, const Permutation& g) {
  const std::size_t d = inst.spec.dimension;
  ObjectiveVector f(inst.spec.objectives);
  for (std::size_t j = 0; j < inst.spec.objectives; ++j) {
    const double* c = &inst.costs[j * d * d];
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      total += c[g.order[i] * d + g.order[i + 1]];
    }
    total += c[g.order[d - 1] * d + g.order[0]];
    f[j] = total;
  }
  return f;
}

ObjectiveVector evaluate_qap(const QapInstance& inst, const Permutation& g) {
  const std::size_t d = inst.spec.dimension;
  ObjectiveVector f(inst.spec.objectives);
  for (std::size_t k = 0; k < inst.spec.objectives; ++k) {
    const double* flow = &inst.flows[k * d * d];
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double* dist_row = &inst.distances[g.order[i] * d];
      const double* flow_row = &flow[i * d];
      double row = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        row += flow_row[j] * dist_row[g.order[j]];
      }
      total += row;
    }
    f[k] = total;
  }
  return f;
}

ObjectiveVector evaluate_nk(const NkInstance& inst, const BitString& g) {
  const std::size_t d = inst.spec.dimension;
  const std::size_t m = inst.spec.objectives;
  const std::size_t k = inst.interactions();
  const std::size_t block = inst.table_size();
  std::vector<double> sums(m, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t index = g.bits[i];
    const std::uint32_t* partners = &inst.partners[i * k];
    for (std::size_t p = 0; p < k; ++p) {
      index = (index << 1) | g.bits[partners[p]];
    }
    const double* tables = &inst.tables[i * m * block];
    for (std::size_t j = 0; j < m; ++j) {
      sums[j] += tables[j * block + index];
    }
  }
  ObjectiveVector f(m);
  for (std::size_t j = 0; j < m; ++j) {
    f[j] = -(sums[j] / static_cast<double>(d));
  }
  return f;
}

// --- ProblemInstance -----------------------------------------------------------

ProblemInstance::ProblemInstance(Variant instance) : instance_(std::move(instance)) {}

const InstanceSpec& ProblemInstance::spec() const noexcept {
  return std::visit([](const auto& inst) -> const InstanceSpec& { return inst.spec; }, instance_);
}

Representation ProblemInstance::representation() const noexcept {
  switch (kind()) {
  case ProblemKind::knapsack:
  case ProblemKind::nk: return Representation::bit_string;
  default: return Representation::permutation;
  }
}

Solution ProblemInstance::evaluate(Genotype genotype) const {
  if (genotype_size(genotype) != dimension()) {
    throw std::invalid_argument("genotype length does not match the instance dimension");
  }
  struct Visitor {
    Genotype& g;
    Solution operator()(const KnapsackInstance& inst) const {
      auto [repaired, f] = evaluate_knapsack(inst, std::move(std::get<BitString>(g)));
      return {std::move(repaired), std::move(f)};
    }
    Solution operator()(const TspInstance& inst) const {
      auto f = evaluate_tsp(inst, std::get<Permutation>(g));
      return {std::move(g), std::move(f)};
    }
    Solution operator()(const QapInstance& inst) const {
      auto f = evaluate_qap(inst, std::get<Permutation>(g));
      return {std::move(g), std::move(f)};
    }
    Solution operator()(const NkInstance& inst) const {
      auto f = evaluate_nk(inst, std::get<BitString>(g));
      return {std::move(g), std::move(f)};
    }
  };
  const bool bits = std::holds_alternative<BitString>(genotype);
  if (bits != (representation() == Representation::bit_string)) {
    throw std::invalid_argument("genotype representation does not match the instance");
  }
  return std::visit(Visitor{genotype}, instance_);
}

Genotype ProblemInstance::random_genotype(RngStream& rng) const {
  const std::size_t d = dimension();
  if (representation() == Representation::bit_string) {
    BitString b;
    b.bits.resize(d);
    for (auto& bit : b.bits) {
      bit = static_cast<std::uint8_t>(rng.next() >> 63);
    }
    return b;
  }
  Permutation p;
  p.order.resize(d);
  std::iota(p.order.begin(), p.order.end(), 0U);
  rng.shuffle(std::span(p.order));
  return p;
}

// --- invariants ------------------------------------------------------------------

namespace {

bool check(const KnapsackInstance& inst) {
  const std::size_t d = inst.spec.dimension;
  const std::size_t m = inst.spec.objectives;
  if (inst.values.size() != m * d || inst.weights.size() != m * d || inst.capacities.size() != m ||
      inst.repair_order.size() != d) {
    return false;
  }
  auto in_range = [](std::int32_t v) { return v >= 10 && v <= 100; };
  if (!std::all_of(inst.values.begin(), inst.values.end(), in_range) ||
      !std::all_of(inst.weights.begin(), inst.weights.end(), in_range)) {
    return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < d; ++i) {
      total += inst.weight(j, i);
    }
    if (inst.capacities[j] != total / 2) {
      return false;
    }
  }
  return true;
}

bool check(const TspInstance& inst) {
  const std::size_t d = inst.spec.dimension;
  if (inst.costs.size() != inst.spec.objectives * d * d) {
    return false;
  }
  for (std::size_t j = 0; j < inst.spec.objectives; ++j) {
    for (std::size_t a = 0; a < d; ++a) {
      if (inst.cost(j, a, a) != 0.0) {
        return false;
      }
      for (std::size_t b = a + 1; b < d; ++b) {
        const double c = inst.cost(j, a, b);
        if (c != inst.cost(j, b, a) || !(c >= 0.0 && c < 1.0)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check(const QapInstance& inst) {
  const std::size_t d = inst.spec.dimension;
  if (inst.flows.size() != inst.spec.objectives * d * d || inst.locations.size() != d ||
      inst.distances.size() != d * d) {
    return false;
  }
  if (!std::all_of(inst.flows.begin(), inst.flows.end(), [](double f) { return f >= 0.0 && f <= 100.0; })) {
    return false;
  }
  for (const auto& loc : inst.locations) {
    if (!(loc.x >= 0.0 && loc.x <= 5000.0 && loc.y >= 0.0 && loc.y <= 5000.0)) {
      return false;
    }
  }
  for (std::size_t u = 0; u < d; ++u) {
    if (inst.distance(u, u) != 0.0) {
      return false;
    }
    for (std::size_t v = u + 1; v < d; ++v) {
      if (inst.distance(u, v) != inst.distance(v, u) || inst.distance(u, v) < 0.0) {
        return false;
      }
    }
  }
  return true;
}

bool check(const NkInstance& inst) {
  const std::size_t d = inst.spec.dimension;
  const std::size_t k = inst.interactions();
  if (inst.partners.size() != d * k || inst.tables.size() != d * inst.spec.objectives * inst.table_size()) {
    return false;
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint32_t> row(inst.partners.begin() + static_cast<std::ptrdiff_t>(i * k),
                                   inst.partners.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
      return false;
    }
    if (std::any_of(row.begin(), row.end(), [&](std::uint32_t p) { return p == i || p >= d; })) {
      return false;
    }
  }
  return std::all_of(inst.tables.begin(), inst.tables.end(), [](double c) { return c >= 0.0 && c < 1.0; });
}

} // namespace

bool invariants_hold(const ProblemInstance& instance) {
  return std::visit([](const auto& inst) { return check(inst); }, instance.get());
}

} // namespace vsrls
