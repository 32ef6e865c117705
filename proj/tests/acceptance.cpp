// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, seeds and
// time limits are fixed here; nothing is read from the environment.
//
//   acceptance            run every criterion
//   acceptance 3 5        run a subset
//   acceptance --jobs 4   worker threads for the determinism criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "vsrls/archive.hpp"
#include "vsrls/harness.hpp"
#include "vsrls/indicators.hpp"
#include "vsrls/instance_io.hpp"
#include "vsrls/run_record.hpp"
#include "vsrls/search.hpp"

using namespace vsrls;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> check;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// Reference point from the union of `runs` random-sampling fronts.
ReferencePoint rs_reference(const ProblemInstance& inst, std::uint64_t budget, std::size_t runs, std::uint64_t seed0) {
  std::vector<ObjectiveVector> pooled;
  for (std::size_t r = 0; r < runs; ++r) {
    const auto front = run_rs(inst, budget, seed0 + r).front();
    pooled.insert(pooled.end(), front.begin(), front.end());
  }
  return reference_point(nondominated_filter(pooled));
}

// ---------------------------------------------------------------------------

Outcome archive_correctness() {
  constexpr int kInsertions = 10'000;
  std::string detail;
  bool pass = true;
  for (std::size_t m : {2U, 3U}) {
    RngStream rng(1000 + m);
    Archive archive(m);
    std::vector<std::vector<double>> candidates;
    std::size_t accepted = 0;
    for (int i = 0; i < kInsertions; ++i) {
      // Points scattered around the simplex sum = 1 on a coarse grid, so the
      // front is large and ties and exact duplicates occur.
      ObjectiveVector v(m);
      double rest = 1.0;
      for (std::size_t k = 0; k + 1 < m; ++k) {
        v[k] = std::round(rng.uniform01() * rest * 200.0) / 200.0;
        rest -= v[k];
      }
      v[m - 1] = std::round((rest + 0.05 * rng.uniform01()) * 200.0) / 200.0;
      candidates.push_back(oracle::raw(v));
      const std::size_t before = archive.size();
      if (archive.try_insert(Solution{BitString{{0, 1}}, v})) {
        ++accepted;
        // The archive was valid before this insertion, so only pairs with
        // the new member need checking.
        std::size_t copies = 0;
        for (const auto& s : archive.members()) {
          if (s.objectives == v) {
            ++copies;
          } else if (dominates(s.objectives, v) || dominates(v, s.objectives)) {
            return {false, "dominated member after insertion " + std::to_string(i)};
          }
        }
        if (copies != 1) {
          return {false, "duplicate member after insertion " + std::to_string(i)};
        }
      } else if (archive.size() != before) {
        return {false, "rejected insertion changed the archive at " + std::to_string(i)};
      }
    }
    if (!archive.invariants_hold()) {
      return {false, "final archive invariants broken"};
    }
    std::vector<std::vector<double>> members;
    for (const auto& s : archive.members()) {
      members.push_back(oracle::raw(s.objectives));
    }
    std::sort(members.begin(), members.end());
    const bool unique = std::adjacent_find(members.begin(), members.end()) == members.end();
    const auto expected = oracle::pareto_set(candidates);
    const bool equal = members == expected;
    pass = pass && unique && equal;
    detail += "m=" + std::to_string(m) + ": " + std::to_string(members.size()) + " members, " +
              std::to_string(accepted) + " accepted, " + (equal ? "matches" : "DIFFERS from") + " pairwise filter" +
              (unique ? "" : ", DUPLICATES") + "; ";
  }
  return {pass, detail};
}

Outcome hypervolume_oracle() {
  constexpr double kTolerance = 0.01;
  constexpr std::uint64_t kSamples = 1'000'000;
  RngStream rng(2024);
  double worst = 0.0;
  for (int f = 0; f < 20; ++f) {
    const std::size_t n = 1 + rng.below(100);
    std::vector<ObjectiveVector> front;
    for (std::size_t i = 0; i < n; ++i) {
      front.push_back({rng.uniform01() * 100.0, rng.uniform01() * 100.0});
    }
    const auto r = reference_point(front);
    const double exact = hypervolume_2d(front, r);
    const double estimate = hypervolume_mc(front, r, kSamples, 7 + static_cast<std::uint64_t>(f));
    worst = std::max(worst, std::abs(estimate - exact) / exact);
  }
  return {worst <= kTolerance, "max relative error " + fmt(worst) + " over 20 fronts (limit " + fmt(kTolerance) + ")"};
}

// Evaluator outputs and the archive-built front versus the enumeration.
// Integer-valued problems (knapsack) and NK (same summation order) must agree
// bit for bit; TSP and QAP sums may associate differently, so they get a
// relative tolerance of 1e-12.
constexpr double kSumTolerance = 1e-12;

bool same_values(const std::vector<double>& a, const std::vector<double>& b, bool exact) {
  if (exact) {
    return a == b;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kSumTolerance * std::max(1.0, std::abs(b[i]))) {
      return false;
    }
  }
  return a.size() == b.size();
}

template <typename Genotypes, typename OracleFn>
bool enumerate_and_compare(const ProblemInstance& inst, const Genotypes& all, OracleFn oracle_fn, std::string& why) {
  const bool exact = inst.kind() == ProblemKind::knapsack || inst.kind() == ProblemKind::nk;
  Archive archive(inst.num_objectives());
  std::vector<std::vector<double>> truth;
  for (const auto& g : all) {
    auto solution = inst.evaluate(g);
    auto expected = oracle_fn(g);
    if (is_maximization(inst.kind())) {
      for (auto& v : expected) {
        v = -v;
      }
    }
    if (!same_values(oracle::raw(solution.objectives), expected, exact)) {
      why = instance_id(inst.spec()) + ": evaluator differs from enumeration";
      return false;
    }
    truth.push_back(expected);
    archive.try_insert(std::move(solution));
  }
  std::vector<std::vector<double>> found;
  for (const auto& s : archive.members()) {
    found.push_back(oracle::raw(s.objectives));
  }
  std::sort(found.begin(), found.end());
  const auto front = oracle::pareto_set(truth);
  bool match = found.size() == front.size();
  for (std::size_t i = 0; match && i < front.size(); ++i) {
    match = same_values(found[i], front[i], exact);
  }
  if (!match) {
    why = instance_id(inst.spec()) + ": Pareto front differs from enumeration";
    return false;
  }
  return true;
}

Outcome evaluator_oracles() {
  std::string why;
  std::size_t checked = 0;

  // Hand-built knapsack: one heavy high-value item and cheap items with a
  // value trade-off, so repair has to choose.
  KnapsackInstance hand{.spec = {.kind = ProblemKind::knapsack, .dimension = 5, .objectives = 2}};
  hand.values = {50, 10, 20, 30, 5, 5, 30, 20, 10, 50};
  hand.weights = {40, 10, 10, 10, 10, 40, 10, 10, 10, 10};
  hand.capacities = {45, 45};
  prepare_knapsack(hand);
  std::vector<ProblemInstance> knapsacks = {ProblemInstance(hand)};
  for (std::size_t d : {8U, 12U, 15U}) {
    knapsacks.push_back(generate_instance({.kind = ProblemKind::knapsack, .dimension = d, .objectives = 2, .seed = d}));
  }
  for (const auto& inst : knapsacks) {
    const auto& k = std::get<KnapsackInstance>(inst.get());
    const auto all = oracle::all_bit_strings(inst.dimension());
    if (!enumerate_and_compare(inst, all, [&](const BitString& b) { return oracle::knapsack(k, b.bits).second; }, why)) {
      return {false, why};
    }
    // The stored genotype is the repaired one.
    for (const auto& b : all) {
      if (std::get<BitString>(inst.evaluate(b).genotype).bits != oracle::knapsack(k, b.bits).first) {
        return {false, instance_id(inst.spec()) + ": repaired genotype differs"};
      }
    }
    checked += all.size();
  }

  for (std::uint64_t seed : {1U, 2U, 3U}) {
    const auto tsp = generate_instance({.kind = ProblemKind::tsp, .dimension = 4, .objectives = 2, .seed = seed});
    const auto perms = oracle::all_permutations(4);
    if (!enumerate_and_compare(tsp, perms, [&](const Permutation& p) {
          return oracle::tsp(std::get<TspInstance>(tsp.get()), p.order);
        }, why)) {
      return {false, why};
    }
    const auto qap = generate_instance({.kind = ProblemKind::qap, .dimension = 4, .objectives = 2, .seed = seed});
    if (!enumerate_and_compare(qap, perms, [&](const Permutation& p) {
          return oracle::qap(std::get<QapInstance>(qap.get()), p.order);
        }, why)) {
      return {false, why};
    }
    const auto nk =
        generate_instance({.kind = ProblemKind::nk, .dimension = 4, .objectives = 2, .interactions = 1, .seed = seed});
    if (!enumerate_and_compare(nk, oracle::all_bit_strings(4), [&](const BitString& b) {
          return oracle::nk(std::get<NkInstance>(nk.get()), b.bits);
        }, why)) {
      return {false, why};
    }
    checked += 24 + 24 + 16;
  }
  return {true, std::to_string(checked) + " genotypes enumerated; values and fronts match"};
}

Outcome vsrls_optimality() {
  constexpr double kRatio = 0.99;
  constexpr int kRequired = 9;
  const auto inst = generate_instance({.kind = ProblemKind::knapsack, .dimension = 15, .objectives = 2, .seed = 1});
  Archive truth(2);
  for (const auto& b : oracle::all_bit_strings(15)) {
    truth.try_insert(inst.evaluate(b));
  }
  const auto true_front = truth.objective_vectors();
  const auto r = reference_point(true_front);
  const double best = hypervolume_2d(true_front, r);
  int good = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto record = run_vsrls(inst, {.switch_iteration = 1000, .phase2_threshold = 3, .max_evals = 200'000},
                                  MoveKind::two_bit_flip, seed);
    const double ratio = hypervolume_2d(record.front(), r) / best;
    worst = std::min(worst, ratio);
    good += ratio >= kRatio ? 1 : 0;
  }
  return {good >= kRequired, std::to_string(good) + "/10 runs reach 99% of the enumerated front HV (" +
                                 std::to_string(true_front.size()) + " points); worst ratio " + fmt(worst, 6)};
}

Outcome semo_reduction() {
  std::size_t compared = 0;
  for (const auto& spec : {InstanceSpec{.kind = ProblemKind::knapsack, .dimension = 60, .objectives = 2, .seed = 3},
                           InstanceSpec{.kind = ProblemKind::tsp, .dimension = 40, .objectives = 2, .seed = 3}}) {
    const auto inst = generate_instance(spec);
    const auto move = default_move(spec.kind);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto a = run_vsrls(inst, {.switch_iteration = 0, .phase2_threshold = 1, .max_evals = 20'000}, move, seed);
      auto b = run_semo(inst, move, 20'000, seed);
      // Only the algorithm identity may differ.
      auto ja = normalized(record_to_json(a));
      auto jb = normalized(record_to_json(b));
      for (auto* j : {&ja, &jb}) {
        j->erase("algorithm");
        j->erase("label");
        j->erase("config");
      }
      if (ja.dump() != jb.dump()) {
        return {false, instance_id(spec) + " seed " + std::to_string(seed) + ": records differ"};
      }
      ++compared;
    }
  }
  return {true, std::to_string(compared) + " record pairs bit-identical"};
}

Outcome nk_ranking() {
  constexpr std::size_t kRuns = 15;
  constexpr std::uint64_t kBudget = 1'000'000;
  constexpr double kAlpha = 0.05;
  const auto inst =
      generate_instance({.kind = ProblemKind::nk, .dimension = 100, .objectives = 2, .interactions = 10, .seed = 1});
  const auto r = rs_reference(inst, kBudget, kRuns, 9000);
  std::vector<double> vs;
  std::vector<double> semo;
  for (std::uint64_t run = 0; run < kRuns; ++run) {
    const std::uint64_t seed = 100 + run;  // paired: both algorithms use the same seed
    vs.push_back(hypervolume_2d(
        run_vsrls(inst, {.switch_iteration = 1000, .phase2_threshold = 3, .max_evals = kBudget},
                  MoveKind::one_bit_flip, seed).front(), r));
    semo.push_back(hypervolume_2d(run_semo(inst, MoveKind::one_bit_flip, kBudget, seed).front(), r));
  }
  const auto test = wilcoxon_rank_sum(vs, semo);
  const bool pass = median(vs) > median(semo) && test.p_greater() < kAlpha;
  return {pass, "median HV VS-RLS " + fmt(median(vs), 6) + " vs SEMO " + fmt(median(semo), 6) +
                    ", one-sided p " + fmt(test.p_greater())};
}

Outcome qap_ratio() {
  constexpr std::size_t kRuns = 10;
  constexpr std::uint64_t kBudget = 1'000'000;
  constexpr double kFactor = 2.0;
  const auto inst = generate_instance({.kind = ProblemKind::qap, .dimension = 50, .objectives = 2, .seed = 1});
  std::vector<RunRecord> rs;
  std::vector<ObjectiveVector> pooled;
  for (std::uint64_t run = 0; run < kRuns; ++run) {
    rs.push_back(run_rs(inst, kBudget, 200 + run));
    const auto front = rs.back().front();
    pooled.insert(pooled.end(), front.begin(), front.end());
  }
  const auto r = reference_point(nondominated_filter(pooled));
  std::vector<double> hv_rs;
  std::vector<double> hv_vs;
  for (std::uint64_t run = 0; run < kRuns; ++run) {
    hv_rs.push_back(hypervolume_2d(rs[run].front(), r));
    hv_vs.push_back(hypervolume_2d(
        run_vsrls(inst, {.switch_iteration = 1000, .phase2_threshold = 3, .max_evals = kBudget}, MoveKind::two_swap,
                  300 + run).front(), r));
  }
  const double ratio = mean(hv_vs) / mean(hv_rs);
  return {ratio >= kFactor, "mean HV VS-RLS " + fmt(mean(hv_vs)) + " vs RS " + fmt(mean(hv_rs)) + ", ratio " +
                                fmt(ratio) + " (need >= " + fmt(kFactor) + ")"};
}

Outcome ablation_direction() {
  constexpr std::size_t kRuns = 10;
  constexpr std::uint64_t kBudget = 500'000;
  constexpr std::uint64_t kEarly = 50'000;
  const auto inst = generate_instance({.kind = ProblemKind::knapsack, .dimension = 500, .objectives = 2, .seed = 1});
  const auto r = rs_reference(inst, kBudget, kRuns, 400);
  RunOptions options;
  options.trace = TraceSpec{.every = kEarly, .reference = r};

  struct Variant {
    std::string name;
    VsRlsConfig config;
    std::vector<double> final_hv;
    std::vector<double> early_hv;
  };
  std::vector<Variant> variants = {
      {"Tvl1000-Vc3", {.switch_iteration = 1000, .phase2_threshold = 3, .max_evals = kBudget}, {}, {}},
      {"Tvl1000-Vc1", {.switch_iteration = 1000, .phase2_threshold = 1, .max_evals = kBudget}, {}, {}},
      {"Tvl0-Vc3", {.switch_iteration = 0, .phase2_threshold = 3, .max_evals = kBudget}, {}, {}},
  };
  for (auto& v : variants) {
    for (std::uint64_t run = 0; run < kRuns; ++run) {
      const auto record = run_vsrls(inst, v.config, MoveKind::two_bit_flip, 500 + run, options);
      v.final_hv.push_back(hypervolume_2d(record.front(), r));
      v.early_hv.push_back(record.trace.at(0).hypervolume);
    }
  }
  const double vc3 = median(variants[0].final_hv);
  const double vc1 = median(variants[1].final_hv);
  const double early_base = median(variants[0].early_hv);
  const double early_t0 = median(variants[2].early_hv);
  const bool pass = vc3 > vc1 && early_t0 > early_base;
  return {pass, "median final HV V_C=3 " + fmt(vc3, 6) + " vs V_C=1 " + fmt(vc1, 6) + "; median HV at 5e4 evals T_vl=0 " +
                    fmt(early_t0, 6) + " vs baseline " + fmt(early_base, 6)};
}

Outcome budget_direction() {
  constexpr std::size_t kRuns = 10;
  constexpr std::uint64_t kBudget = 100'000;
  const auto inst = generate_instance({.kind = ProblemKind::knapsack, .dimension = 500, .objectives = 2, .seed = 1});
  const auto r = rs_reference(inst, kBudget, kRuns, 600);
  std::vector<double> semo;
  std::vector<double> vs;
  for (std::uint64_t run = 0; run < kRuns; ++run) {
    semo.push_back(hypervolume_2d(run_semo(inst, MoveKind::two_bit_flip, kBudget, 700 + run).front(), r));
    vs.push_back(hypervolume_2d(
        run_vsrls(inst, {.switch_iteration = 1000, .phase2_threshold = 3, .max_evals = kBudget},
                  MoveKind::two_bit_flip, 700 + run).front(), r));
  }
  return {mean(semo) > mean(vs), "mean HV SEMO " + fmt(mean(semo), 6) + " vs VS-RLS " + fmt(mean(vs), 6)};
}

// Every output file under `out`, with record timing fields removed.
std::map<std::string, std::string> normalized_tree(const fs::path& out) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (!entry.is_regular_file()) {
      continue;
    }
    const auto rel = fs::relative(entry.path(), out).generic_string();
    auto text = read_text(entry.path());
    if (rel.starts_with("records/")) {
      text = normalized(nlohmann::json::parse(text)).dump();
    }
    files[rel] = std::move(text);
  }
  return files;
}

Outcome determinism_and_resume(std::size_t jobs) {
  const auto root = fs::temp_directory_path() / "vsrls_acceptance_table1";
  fs::remove_all(root);
  auto pipeline = [&](const std::string& name, std::size_t workers, bool interrupt) {
    auto config = harness::preset("table1", 10);
    config.out_dir = root / name;
    config.jobs = workers;
    (void)harness::cmd_generate(config);
    if (interrupt) {
      // Stop part-way through the RS phase, then part-way through the rest,
      // and damage one finished record before the final resume.
      if (harness::cmd_run(config, {.max_new_runs = 5}).complete ||
          harness::cmd_run(config, {.max_new_runs = 15}).complete) {
        throw std::runtime_error("interruption was not triggered");
      }
      std::ofstream(harness::record_path(config, config.cells[2], "RS", 1), std::ios::trunc) << "{\"trunc";
    }
    if (!harness::cmd_run(config).complete) {
      throw std::runtime_error("run did not complete");
    }
    (void)harness::cmd_stats(config);
    (void)harness::cmd_trace(config);
    return normalized_tree(config.out_dir);
  };
  const auto first = pipeline("serial", 1, false);
  const auto second = pipeline("parallel", jobs, false);
  const auto resumed = pipeline("resumed", 1, true);
  fs::remove_all(root);

  auto diff = [](const auto& a, const auto& b) {
    if (a.size() != b.size()) {
      return std::string("file count ") + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    }
    for (const auto& [name, text] : a) {
      const auto it = b.find(name);
      if (it == b.end() || it->second != text) {
        return "differs: " + name;
      }
    }
    return std::string{};
  };
  const auto d1 = diff(first, second);
  const auto d2 = diff(first, resumed);
  if (!d1.empty() || !d2.empty()) {
    return {false, "jobs=" + std::to_string(jobs) + " " + (d1.empty() ? "ok" : d1) + "; resumed " +
                       (d2.empty() ? "ok" : d2)};
  }
  return {true, std::to_string(first.size()) + " files byte-identical across serial, jobs=" + std::to_string(jobs) +
                    " and interrupted+resumed runs"};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  std::size_t jobs = std::max(2U, std::thread::hardware_concurrency());
  app.add_option("criteria", selected, "Criterion numbers to run (default: all)");
  app.add_option("--jobs", jobs, "Worker threads for the parallel determinism run")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "archive correctness (10^4 insertions, m=2 and m=3)", 5.0, archive_correctness},
      {2, "exact 2-D hypervolume vs Monte-Carlo (10^6 samples)", 10.0, hypervolume_oracle},
      {3, "evaluators and fronts vs exhaustive enumeration", 5.0, evaluator_oracles},
      {4, "VS-RLS optimality on knapsack D=15", 60.0, vsrls_optimality},
      {5, "SEMO equals VS-RLS(T_vl=0, V_C=1)", 60.0, semo_reduction},
      {6, "NK D=100 K=10: VS-RLS beats SEMO", 0.0, nk_ranking},
      {7, "QAP D=50: VS-RLS mean HV at least twice RS", 0.0, qap_ratio},
      {8, "knapsack D=500 ablation direction", 0.0, ablation_direction},
      {9, "knapsack D=500 at 10^5 evals: SEMO ahead of VS-RLS", 0.0, budget_direction},
      {10, "table1 at scale 10: determinism and resume", 0.0, [jobs] { return determinism_and_resume(jobs); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds > c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += " [over time limit " + fmt(c.time_limit_s) + " s]";
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.name << " -- "
              << outcome.detail << " (" << std::fixed << std::setprecision(1) << seconds << " s)" << std::defaultfloat
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
