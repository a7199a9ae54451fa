#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "malevic/datasetgen.hpp"
#include "malevic/verifier.hpp"

namespace malevic {

enum class StrategyKind : std::uint8_t {
  kOracleRecordedK,
  kSharpK,
  kWholeSceneThreshold,
  kRefSetMinMax,
  kSceneMinMax,
  kAlwaysTrue,
  kAlwaysFalse,
  kRandom,
  kSmallBias,
};

struct Strategy {
  StrategyKind kind = StrategyKind::kSharpK;
  // Random only.
  std::uint64_t seed = 0;
  // Threshold strategies (SharpK, WholeSceneThreshold).
  double sharp_k = kSharpK;
};

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

// Recorded k is only consulted by OracleRecordedK.
bool predict(const Strategy& strategy, const Scene& scene, const ParsedQuery& query,
             std::optional<VagueK> recorded_k = std::nullopt);

enum class SentenceType : std::uint8_t { kBigTrue, kBigFalse, kSmallTrue, kSmallFalse };
inline constexpr std::array<SentenceType, 4> kAllSentenceTypes = {
    SentenceType::kBigTrue, SentenceType::kBigFalse, SentenceType::kSmallTrue,
    SentenceType::kSmallFalse};

std::string_view to_string(SentenceType type);
// Superlatives map onto their positive counterpart.
SentenceType sentence_type(const SentenceRecord& record);

struct Tally {
  std::int64_t correct = 0;
  std::int64_t total = 0;
  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

inline constexpr int kDistanceBins = 10;  // |norm_distance| bins of width 0.1
inline constexpr int kSignedDistanceBins = 20;  // norm_distance bins over [-1, 1]

struct DistanceBin {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t correct = 0;
  std::int64_t wrong = 0;
};

struct FlipCounts {
  std::int64_t same = 0;
  std::int64_t different = 0;
};

struct FlipAnalysis {
  std::map<SentenceType, FlipCounts> by_type;
  // record_ids whose truth changes under sharp k
  std::vector<std::int64_t> different_records;
  std::int64_t total() const;
  double different_fraction() const;
};

struct Prediction {
  std::int64_t record_id = 0;
  bool predicted = false;
  bool truth = false;
};

struct EvalReport {
  std::string strategy;
  std::string task;
  std::string split;
  std::int64_t n = 0;
  double overall = 0.0;
  std::map<SentenceType, Tally> by_type;
  std::map<ShapeKind, Tally> by_shape;
  std::vector<DistanceBin> signed_distance;  // kSignedDistanceBins bins partitioning [-1, 1]
  FlipAnalysis flips;
  std::vector<Prediction> predictions;
};

// Records with the given split tag (all records when split is nullopt).
std::vector<const Datapoint*> select_split(const DatasetManifest& manifest,
                                           std::optional<Split> split);

EvalReport run_strategy(const Strategy& strategy, const DatasetManifest& manifest,
                        std::optional<Split> split);

// Correct/wrong counts per |norm_distance| bin of width 0.1. Records without
// a distance (superlatives) are skipped; predictions are matched by record_id.
std::vector<DistanceBin> distance_profile(const DatasetManifest& manifest,
                                          const std::vector<Prediction>& predictions);

FlipAnalysis flip_analysis(const DatasetManifest& manifest, std::optional<Split> split = std::nullopt,
                           double sharp_k = kSharpK);

std::string report_csv(const EvalReport& report);
std::string report_summary(const EvalReport& report);

}  // namespace malevic
