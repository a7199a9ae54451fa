#include "malevic/datasetgen.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "malevic/error.hpp"

namespace malevic {

namespace {

constexpr std::array<std::string_view, 4> kSplitNames = {"train", "val", "test", "none"};

// Stream tag separating per-task generator streams and the split shuffle.
std::uint64_t task_stream(TaskName task) { return 0x6d616c6576696300ULL + static_cast<std::uint64_t>(task); }
constexpr std::uint64_t kSplitStream = 0x73706c6974ULL;

// Per-unit generation plan. Pair units emit the true record and its flipped
// sibling; single units emit only the record of `emitted`.
struct UnitPlan {
  ClassKey emitted;
  bool pair = true;
};

std::vector<ClassKey> true_classes(const TaskSpec& task) {
  const std::array<Adjective, 2> judged =
      task.superlative ? std::array{Adjective::kBiggest, Adjective::kSmallest}
                       : std::array{Adjective::kBig, Adjective::kSmall};
  std::vector<ClassKey> out;
  for (auto adj : judged) {
    for (auto shape : kAllShapes) {
      for (auto color : kAllColors) out.push_back({shape, color, adj, true});
    }
  }
  return out;
}

std::vector<ClassKey> allowed_classes(const TaskSpec& task) {
  std::vector<ClassKey> out;
  for (auto adj : {Adjective::kBig, Adjective::kSmall}) {
    for (auto shape : kAllShapes) {
      if (!pair_allowed(task, adj, shape)) continue;
      for (auto color : kAllColors) {
        for (bool truth : {true, false}) out.push_back({shape, color, adj, truth});
      }
    }
  }
  return out;
}

std::vector<UnitPlan> plan_units(const TaskSpec& task, int total) {
  std::vector<UnitPlan> plan;
  if (task.pairs == PairRule::kAll) {
    if (total <= 0 || total % kClassCount != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("dataset size {} is not a positive multiple of {}", total, kClassCount));
    }
    const auto groups = true_classes(task);
    const int per_group = total / kClassCount;
    for (int rep = 0; rep < per_group; ++rep) {
      for (const auto& key : groups) plan.push_back({key, true});
    }
  } else {
    const auto classes = allowed_classes(task);
    const int n = static_cast<int>(classes.size());
    if (total <= 0 || total % n != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("dataset size {} is not a positive multiple of {}", total, n));
    }
    for (int rep = 0; rep < total / n; ++rep) {
      for (const auto& key : classes) plan.push_back({key, false});
    }
  }
  return plan;
}

std::vector<Datapoint> generate_unit(const TaskSpec& task, const UnitPlan& plan, std::int64_t unit,
                                     std::uint64_t master_seed, const GenerationConfig& config) {
  const std::uint64_t seed = derive_seed(master_seed, task_stream(task.name), static_cast<std::uint64_t>(unit));
  Rng rng = make_rng(seed);
  SceneSampler sampler;
  sampler.threshold = config.threshold;
  auto draw = sample_scene(task, plan.emitted, rng, sampler);
  draw.scene.scene_id = fmt::format("{}-{:06d}", to_string(task.name), unit);
  draw.scene.rng_seed = seed;

  auto [truthful, flipped] = task.superlative ? generate_superlative(draw.scene, draw.target)
                                              : generate_positive(draw.scene, draw.target, task, *draw.k);

  auto make = [&](SentenceRecord record, std::int64_t record_id) {
    Datapoint dp;
    dp.record_id = record_id;
    dp.unit_id = unit;
    dp.class_key = {record.target_shape, record.target_color, record.adjective, record.truth};
    dp.scene = draw.scene;
    dp.sentence = std::move(record);
    return dp;
  };

  std::vector<Datapoint> out;
  if (plan.pair) {
    out.push_back(make(std::move(truthful), 2 * unit));
    out.push_back(make(std::move(flipped), 2 * unit + 1));
  } else {
    out.push_back(make(plan.emitted.truth ? std::move(truthful) : std::move(flipped), unit));
  }
  return out;
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

DatasetManifest build_units(TaskName name, int total, std::uint64_t master_seed,
                            const BuildOptions& options) {
  options.config.threshold.validate();
  const TaskSpec task = task_spec(name);
  const auto plan = plan_units(task, total);
  const auto n_units = static_cast<std::int64_t>(plan.size());

  std::vector<std::vector<Datapoint>> units(plan.size());
  std::vector<std::pair<std::int64_t, std::exception_ptr>> failures;
  std::mutex failure_mutex;
  const unsigned jobs = std::min<unsigned>(resolve_jobs(options.jobs), static_cast<unsigned>(n_units));

  auto worker = [&](unsigned offset) {
    for (std::int64_t u = offset; u < n_units; u += jobs) {
      try {
        units[static_cast<std::size_t>(u)] =
            generate_unit(task, plan[static_cast<std::size_t>(u)], u, master_seed, options.config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        failures.emplace_back(u, std::current_exception());
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
  }
  if (!failures.empty()) {
    // Report the lowest failing unit so the error does not depend on scheduling.
    std::sort(failures.begin(), failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::rethrow_exception(failures.front().second);
  }

  DatasetManifest manifest;
  manifest.task = name;
  manifest.master_seed = master_seed;
  manifest.config = options.config;
  manifest.records.reserve(plan.size() * 2);
  for (auto& unit : units) {
    for (auto& dp : unit) manifest.records.push_back(std::move(dp));
  }
  return manifest;
}

DatasetManifest tag_all(DatasetManifest manifest, Split split) {
  for (auto& dp : manifest.records) dp.split = split;
  return manifest;
}

}  // namespace

std::string_view to_string(Split split) { return kSplitNames[static_cast<int>(split)]; }

std::optional<Split> parse_split(std::string_view text) {
  for (std::size_t i = 0; i < kSplitNames.size(); ++i) {
    if (kSplitNames[i] == text) return static_cast<Split>(i);
  }
  return std::nullopt;
}

DatasetManifest build_dataset(TaskName task, int total, std::uint64_t master_seed,
                              const BuildOptions& options) {
  return build_units(task, total, master_seed, options);
}

DatasetManifest split(DatasetManifest manifest, std::uint64_t seed) {
  // Units grouped by the class of their first record; siblings follow it.
  std::map<std::int64_t, std::vector<std::size_t>> unit_records;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    unit_records[manifest.records[i].unit_id].push_back(i);
  }
  std::map<ClassKey, std::vector<std::int64_t>> groups;
  std::map<ClassKey, std::int64_t> class_counts;
  for (const auto& [unit, idx] : unit_records) {
    groups[manifest.records[idx.front()].class_key].push_back(unit);
  }
  for (const auto& dp : manifest.records) ++class_counts[dp.class_key];

  if (class_counts.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot split an empty manifest");
  const auto per_class = class_counts.begin()->second;
  for (const auto& [key, count] : class_counts) {
    if (count != per_class) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("unbalanced manifest: class {} has {} records, expected {}",
                              to_string(key), count, per_class));
    }
  }
  if (unit_records.size() % 10 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} scene units cannot be split 16/2/2", unit_records.size()));
  }

  Rng rng = make_rng(derive_seed(seed, kSplitStream, 0));
  std::vector<std::int64_t> order;
  for (auto& [key, units] : groups) {
    std::shuffle(units.begin(), units.end(), rng);
    order.insert(order.end(), units.begin(), units.end());
  }
  std::array<Split, 10> pattern{};
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i % 10 == 0) {
      pattern.fill(Split::kTrain);
      pattern[8] = Split::kVal;
      pattern[9] = Split::kTest;
      std::shuffle(pattern.begin(), pattern.end(), rng);
    }
    for (auto r : unit_records[order[i]]) manifest.records[r].split = pattern[i % 10];
  }
  return manifest;
}

DatasetManifest build_hard(TaskName base, int total, std::uint64_t master_seed,
                           const BuildOptions& options) {
  TaskName hard;
  if (base == TaskName::kPos) {
    hard = TaskName::kPosHard;
  } else if (base == TaskName::kSetPos) {
    hard = TaskName::kSetPosHard;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("hard sets exist for POS and SETPOS only, not {}", to_string(base)));
  }
  return tag_all(build_units(hard, total, master_seed, options), Split::kTest);
}

CompositionalSets build_compositional(std::uint64_t master_seed, const BuildOptions& options,
                                      int seen_total, int unseen_total) {
  CompositionalSets sets;
  sets.seen = split(build_units(TaskName::kCompSeen, seen_total, master_seed, options), master_seed);
  sets.unseen = tag_all(build_units(TaskName::kCompUnseen, unseen_total, master_seed, options), Split::kTest);
  return sets;
}

DatasetManifest build_task(TaskName task, int total, std::uint64_t master_seed,
                           const BuildOptions& options) {
  switch (task) {
    case TaskName::kPosHard: return build_hard(TaskName::kPos, total, master_seed, options);
    case TaskName::kSetPosHard: return build_hard(TaskName::kSetPos, total, master_seed, options);
    case TaskName::kCompUnseen:
      return tag_all(build_units(task, total, master_seed, options), Split::kTest);
    default: return split(build_units(task, total, master_seed, options), master_seed);
  }
}

}  // namespace malevic
