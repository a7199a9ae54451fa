#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "malevic/langgen.hpp"
#include "malevic/scene.hpp"
#include "malevic/scenegen.hpp"
#include "malevic/semantics.hpp"
#include "malevic/task.hpp"

namespace malevic {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kGeneratorVersion = "malevic-gen 1.0.0";
inline constexpr int kClassCount = 80;

enum class Split : std::uint8_t { kTrain, kVal, kTest, kNone };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

struct Datapoint {
  std::int64_t record_id = 0;
  // Scene unit; true/false siblings share it.
  std::int64_t unit_id = 0;
  Split split = Split::kNone;
  ClassKey class_key;
  Scene scene;
  SentenceRecord sentence;

  friend bool operator==(const Datapoint&, const Datapoint&) = default;
};

struct GenerationConfig {
  ThresholdConfig threshold;

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

struct DatasetManifest {
  int schema_version = kSchemaVersion;
  std::string generator_version = kGeneratorVersion;
  TaskName task = TaskName::kPos;
  std::uint64_t master_seed = 0;
  GenerationConfig config;
  std::vector<Datapoint> records;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

struct BuildOptions {
  GenerationConfig config;
  // Worker threads; 0 picks the hardware concurrency. Output does not depend on it.
  unsigned jobs = 0;
};

// One true/false sibling pair per scene, total/80 records per class. Records
// are untagged (Split::kNone) until split() runs.
DatasetManifest build_dataset(TaskName task, int total, std::uint64_t master_seed,
                              const BuildOptions& options = {});

// Tags units train/val/test in 16/2/2 proportion keeping siblings together.
DatasetManifest split(DatasetManifest manifest, std::uint64_t seed);

// POS_HARD or SETPOS_HARD from base POS or SETPOS. Records are tagged test.
DatasetManifest build_hard(TaskName base, int total, std::uint64_t master_seed,
                           const BuildOptions& options = {});

struct CompositionalSets {
  DatasetManifest seen;    // split 8/1/1
  DatasetManifest unseen;  // test only
};

CompositionalSets build_compositional(std::uint64_t master_seed, const BuildOptions& options = {},
                                      int seen_total = 10000, int unseen_total = 1000);

// Convenience used by the CLI and tests: build + split (where applicable).
DatasetManifest build_task(TaskName task, int total, std::uint64_t master_seed,
                           const BuildOptions& options = {});

}  // namespace malevic
