#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "malevic/datasetgen.hpp"
#include "malevic/manifest_io.hpp"
#include "malevic/renderer.hpp"
#include "malevic/semantics.hpp"
#include "malevic/strategies.hpp"

using namespace malevic;

namespace {

std::uint64_t g_seed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int default_size(TaskName task) {
  switch (task) {
    case TaskName::kPosHard:
    case TaskName::kSetPosHard: return 2000;
    case TaskName::kCompSeen: return 10000;
    case TaskName::kCompUnseen: return 1000;
    default: return 20000;
  }
}

constexpr TaskName kMainTasks[] = {TaskName::kSup1, TaskName::kPos1, TaskName::kPos, TaskName::kSetPos};
constexpr TaskName kAllTasks[] = {TaskName::kSup1,    TaskName::kPos1,       TaskName::kPos,
                                  TaskName::kSetPos,  TaskName::kPosHard,    TaskName::kSetPosHard,
                                  TaskName::kCompSeen, TaskName::kCompUnseen};

const DatasetManifest& dataset(TaskName task) {
  static std::map<TaskName, DatasetManifest> cache;
  auto it = cache.find(task);
  if (it == cache.end()) it = cache.emplace(task, build_task(task, default_size(task), g_seed)).first;
  return it->second;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol + 1e-12; }

double accuracy(StrategyKind kind, TaskName task, std::optional<Split> split) {
  return run_strategy(Strategy{kind, g_seed, kSharpK}, dataset(task), split).overall;
}

Outcome balance() {
  Outcome out{true, ""};
  for (auto task : kMainTasks) {
    const auto start = std::chrono::steady_clock::now();
    const auto& m = dataset(task);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::map<ClassKey, int> all;
    std::map<Split, std::map<ClassKey, int>> per_split;
    std::map<Split, int> sizes;
    for (const auto& dp : m.records) {
      ++all[dp.class_key];
      ++per_split[dp.split][dp.class_key];
      ++sizes[dp.split];
    }
    bool ok = all.size() == 80 && secs < 300.0;
    for (const auto& [k, n] : all) ok = ok && n == 250;
    ok = ok && sizes[Split::kTrain] == 16000 && sizes[Split::kVal] == 2000 && sizes[Split::kTest] == 2000;
    for (auto [split, expected] : {std::pair{Split::kTrain, 200}, {Split::kVal, 25}, {Split::kTest, 25}}) {
      ok = ok && per_split[split].size() == 80;
      for (const auto& [k, n] : per_split[split]) ok = ok && n == expected;
    }
    out.pass = out.pass && ok;
    out.detail += fmt::format("{} {} classes {}/{}/{} {:.1f}s; ", to_string(task), all.size(),
                              sizes[Split::kTrain], sizes[Split::kVal], sizes[Split::kTest], secs);
  }
  return out;
}

Outcome area_support() {
  Outcome out{true, ""};
  for (auto task : kAllTasks) {
    std::set<int> labels;
    for (const auto& dp : dataset(task).records) labels.insert(dp.scene.object(dp.sentence.target_id).size_label.value());
    std::set<int> expected;
    for (int l = 40; l <= 110; l += 10) expected.insert(l);
    out.pass = out.pass && labels == expected;
    out.detail += fmt::format("{} [{}..{}] n={}; ", to_string(task), *labels.begin(), *labels.rbegin(), labels.size());
  }
  return out;
}

Outcome k_sampler() {
  ThresholdConfig config;
  Rng rng = make_rng(derive_seed(g_seed, 0x6b, 0));
  const int n = 100000;
  double sum = 0.0;
  int within_sd = 0, outside = 0;
  for (int i = 0; i < n; ++i) {
    const double k = sample_k(config, rng).value;
    sum += k;
    if (std::abs(k - config.mu) <= config.sigma) ++within_sd;
    if (k <= 0.01 || k >= 0.49) ++outside;
  }
  const double mean = sum / n;
  const double share = static_cast<double>(within_sd) / n;
  return {within(mean, 0.29, 0.002) && share >= 0.66 && share <= 0.70 && outside == 0,
          fmt::format("mean {:.5f} share(+-1sd) {:.4f} outside {}", mean, share, outside)};
}

Outcome sharp_ceiling() {
  Outcome out{true, ""};
  for (auto task : {TaskName::kPos1, TaskName::kPos, TaskName::kSetPos}) {
    const auto report = run_strategy(Strategy{StrategyKind::kSharpK}, dataset(task), Split::kTest);
    out.pass = out.pass && report.n == 2000 && within(report.overall, 0.97, 0.02);
    out.detail += fmt::format("{} {:.4f} (n={}); ", to_string(task), report.overall, report.n);
  }
  out.detail += "target 0.97+-0.02";
  return out;
}

Outcome pos_hard_ceiling() {
  const double acc = accuracy(StrategyKind::kSharpK, TaskName::kPosHard, std::nullopt);
  return {within(acc, 0.92, 0.02), fmt::format("SharpK on POS_HARD {:.4f}, target 0.92+-0.02", acc)};
}

Outcome setpos_whole_scene() {
  const double acc = accuracy(StrategyKind::kWholeSceneThreshold, TaskName::kSetPos, std::nullopt);
  return {within(acc, 0.65, 0.03),
          fmt::format("WholeSceneThreshold on SETPOS (all 20000) {:.4f}, target 0.65+-0.03", acc)};
}

Outcome setpos_refset_minmax() {
  const double acc = accuracy(StrategyKind::kRefSetMinMax, TaskName::kSetPos, std::nullopt);
  return {within(acc, 0.92, 0.02),
          fmt::format("RefSetMinMax on SETPOS (all 20000) {:.4f}, target 0.92+-0.02", acc)};
}

Outcome hard_chance() {
  const double scene = accuracy(StrategyKind::kSceneMinMax, TaskName::kPosHard, std::nullopt);
  const double refset = accuracy(StrategyKind::kRefSetMinMax, TaskName::kSetPosHard, std::nullopt);
  return {within(scene, 0.5, 0.02) && within(refset, 0.5, 0.02),
          fmt::format("SceneMinMax on POS_HARD {:.4f}, RefSetMinMax on SETPOS_HARD {:.4f}, target 0.50+-0.02",
                      scene, refset)};
}

Outcome oracle_exactness() {
  Outcome out{true, ""};
  for (auto task : kAllTasks) {
    const double oracle = accuracy(StrategyKind::kOracleRecordedK, task, std::nullopt);
    const double always = accuracy(StrategyKind::kAlwaysTrue, task, std::nullopt);
    out.pass = out.pass && oracle == 1.0 && always == 0.5;
    out.detail += fmt::format("{} {:.4f}/{:.4f}; ", to_string(task), oracle, always);
  }
  return out;
}

Outcome flip_rate() {
  const auto flips = flip_analysis(dataset(TaskName::kPos));
  const double rate = flips.different_fraction();
  return {within(rate, 0.03, 0.01),
          fmt::format("POS truth changes under sharp k for {} of {} records ({:.4f}), target 0.03+-0.01",
                      flips.different_records.size(), flips.total(), rate)};
}

Outcome compositional() {
  const auto& seen = dataset(TaskName::kCompSeen);
  const auto& unseen = dataset(TaskName::kCompUnseen);
  using Pair = std::pair<Adjective, ShapeKind>;
  const std::set<Pair> seen_pairs = {{Adjective::kBig, ShapeKind::kCircle},
                                     {Adjective::kBig, ShapeKind::kRectangle},
                                     {Adjective::kSmall, ShapeKind::kSquare},
                                     {Adjective::kSmall, ShapeKind::kTriangle}};
  std::set<Pair> all_pairs;
  for (auto adj : {Adjective::kBig, Adjective::kSmall}) {
    for (auto shape : kAllShapes) all_pairs.insert({adj, shape});
  }
  std::set<Pair> unseen_pairs;
  std::ranges::set_difference(all_pairs, seen_pairs, std::inserter(unseen_pairs, unseen_pairs.end()));

  std::set<Pair> got_seen, got_unseen;
  std::map<Split, int> sizes;
  for (const auto& dp : seen.records) {
    got_seen.insert({dp.sentence.adjective, *dp.sentence.head});
    ++sizes[dp.split];
  }
  for (const auto& dp : unseen.records) got_unseen.insert({dp.sentence.adjective, *dp.sentence.head});
  const bool ok = got_seen == seen_pairs && got_unseen == unseen_pairs && sizes[Split::kTrain] == 8000 &&
                  sizes[Split::kVal] == 1000 && sizes[Split::kTest] == 1000 && unseen.records.size() == 1000;
  return {ok, fmt::format("seen pairs {} unseen pairs {} (disjoint {}); seen {}/{}/{}, unseen {}", got_seen.size(),
                          got_unseen.size(), got_seen != got_unseen, sizes[Split::kTrain], sizes[Split::kVal],
                          sizes[Split::kTest], unseen.records.size())};
}

Outcome render_round_trip() {
  int scenes = 0, objects = 0, bad_area = 0, bad_order = 0;
  double worst = 0.0;
  for (auto task : kAllTasks) {
    const auto& m = dataset(task);
    std::set<std::string> done;
    for (const auto& dp : m.records) {
      if (done.size() == 25) break;
      if (!done.insert(dp.scene.scene_id).second) continue;
      const auto image = render(dp.scene);
      std::vector<std::pair<int, std::int64_t>> measured;
      for (const auto& o : dp.scene.objects) {
        const auto px = measure_area(image, dp.scene, o.id).pixels;
        const double rel = std::abs(static_cast<double>(px - o.pixel_area)) / static_cast<double>(o.pixel_area);
        worst = std::max(worst, rel);
        if (rel > 0.05) ++bad_area;
        measured.emplace_back(o.size_label.value(), px);
        ++objects;
      }
      for (const auto& [la, pa] : measured) {
        for (const auto& [lb, pb] : measured) {
          if (la - lb >= 10 && pa <= pb) ++bad_order;
        }
      }
      ++scenes;
    }
  }
  return {scenes == 200 && bad_area == 0 && bad_order == 0,
          fmt::format("{} scenes, {} objects, worst deviation {:.4f}, {} over 5%, {} order violations", scenes,
                      objects, worst, bad_area, bad_order)};
}

Outcome determinism() {
  auto bytes = [](unsigned jobs) {
    BuildOptions options;
    options.jobs = jobs;
    std::ostringstream out;
    serialize(build_task(TaskName::kSetPos, 20000, g_seed, options), out);
    return out.str();
  };
  const auto a = bytes(1);
  const auto b = bytes(1);
  const auto c = bytes(4);
  const auto h = std::hash<std::string>{}(a);
  return {a == b && a == c,
          fmt::format("SETPOS 20000 hash {:016x} / {:016x} / {:016x} (jobs 1, 1, 4)", h, std::hash<std::string>{}(b),
                      std::hash<std::string>{}(c))};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"balance", balance},
    {"area-support", area_support},
    {"k-sampler", k_sampler},
    {"sharp-k-ceiling", sharp_ceiling},
    {"pos-hard-ceiling", pos_hard_ceiling},
    {"setpos-whole-scene-threshold", setpos_whole_scene},
    {"setpos-refset-minmax", setpos_refset_minmax},
    {"hard-set-chance", hard_chance},
    {"oracle-exactness", oracle_exactness},
    {"flip-rate", flip_rate},
    {"compositional", compositional},
    {"render-round-trip", render_round_trip},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> names;
  bool list = false;
  app.add_option("--criterion", names, "criterion to run (repeatable); default all");
  app.add_option("--seed", g_seed, "master seed");
  app.add_flag("--list", list, "print criterion names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& [name, fn] : kCriteria) std::cout << name << "\n";
    return 0;
  }
  int failures = 0;
  for (const auto& [name, fn] : kCriteria) {
    if (!names.empty() && std::ranges::find(names, name) == names.end()) continue;
    Outcome result;
    try {
      result = fn();
    } catch (const std::exception& e) {
      result = {false, fmt::format("error: {}", e.what())};
    }
    std::cout << (result.pass ? "PASS " : "FAIL ") << name << ": " << result.detail << std::endl;
    if (!result.pass) ++failures;
  }
  for (const auto& n : names) {
    if (std::ranges::none_of(kCriteria, [&](const auto& c) { return c.first == n; })) {
      std::cerr << "unknown criterion " << n << "\n";
      return 2;
    }
  }
  return failures == 0 ? 0 : 1;
}
