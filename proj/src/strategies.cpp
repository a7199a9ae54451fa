#include "malevic/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "malevic/error.hpp"
#include "malevic/langgen.hpp"

namespace malevic {

namespace {

constexpr std::array<std::string_view, 9> kStrategyNames = {
    "OracleRecordedK", "SharpK",      "WholeSceneThreshold", "RefSetMinMax", "SceneMinMax",
    "AlwaysTrue",      "AlwaysFalse", "Random",              "SmallBias"};
constexpr std::array<std::string_view, 4> kTypeNames = {"big-true", "big-false", "small-true",
                                                        "small-false"};

std::uint64_t fnv1a(std::string_view text, std::uint64_t h) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool extreme_predicate(const ReferenceSet& ref, std::int64_t area, Adjective adjective) {
  return positive_of(adjective) == Adjective::kBig ? area == ref.max_area : area == ref.min_area;
}

int signed_bin(double d) {
  const int idx = static_cast<int>(std::floor((d + 1.0) / 0.1));
  return std::clamp(idx, 0, kSignedDistanceBins - 1);
}

int abs_bin(double d) {
  const int idx = static_cast<int>(std::floor(std::abs(d) / 0.1));
  return std::clamp(idx, 0, kDistanceBins - 1);
}

std::vector<DistanceBin> empty_bins(int count, double lo) {
  std::vector<DistanceBin> bins(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    bins[static_cast<std::size_t>(i)].lo = lo + 0.1 * i;
    bins[static_cast<std::size_t>(i)].hi = lo + 0.1 * (i + 1);
  }
  return bins;
}

}  // namespace

std::string_view to_string(StrategyKind kind) { return kStrategyNames[static_cast<int>(kind)]; }

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    const auto& candidate = kStrategyNames[i];
    const bool equal = candidate.size() == name.size() &&
                       std::equal(candidate.begin(), candidate.end(), name.begin(), [](char a, char b) {
                         return std::tolower(static_cast<unsigned char>(a)) ==
                                std::tolower(static_cast<unsigned char>(b));
                       });
    if (equal) return static_cast<StrategyKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(SentenceType type) { return kTypeNames[static_cast<int>(type)]; }

SentenceType sentence_type(const SentenceRecord& record) {
  const bool big = positive_of(record.adjective) == Adjective::kBig;
  if (big) return record.truth ? SentenceType::kBigTrue : SentenceType::kBigFalse;
  return record.truth ? SentenceType::kSmallTrue : SentenceType::kSmallFalse;
}

bool predict(const Strategy& strategy, const Scene& scene, const ParsedQuery& query,
             std::optional<VagueK> recorded_k) {
  const bool superlative = query.form == SentenceForm::kSuperlative;
  switch (strategy.kind) {
    case StrategyKind::kOracleRecordedK:
      if (superlative) return evaluate(scene, query, SharpK{});
      if (!recorded_k) {
        throw Error(ErrorCode::kInvalidArgument, "OracleRecordedK needs the recorded k");
      }
      return evaluate(scene, query, RecordedK{*recorded_k});
    case StrategyKind::kSharpK:
      return evaluate(scene, query, SharpK{strategy.sharp_k});
    case StrategyKind::kWholeSceneThreshold: {
      if (superlative) return evaluate(scene, query, SharpK{});
      const ObjectId target = resolve_target(scene, query);
      const auto j = judge(scene.object(target), whole_scene(scene), VagueK::sharp(strategy.sharp_k));
      return j.is_big == (query.adjective == Adjective::kBig);
    }
    case StrategyKind::kRefSetMinMax: {
      const ObjectId target = resolve_target(scene, query);
      const auto ref = superlative ? whole_scene(scene) : query_reference(scene, query);
      return extreme_predicate(ref, ref.area_of(target), query.adjective);
    }
    case StrategyKind::kSceneMinMax: {
      const ObjectId target = resolve_target(scene, query);
      const auto ref = whole_scene(scene);
      return extreme_predicate(ref, ref.area_of(target), query.adjective);
    }
    case StrategyKind::kAlwaysTrue:
      return true;
    case StrategyKind::kAlwaysFalse:
      return false;
    case StrategyKind::kRandom: {
      resolve_target(scene, query);
      const auto text = realize_text(query.color, query.shape_mention, query.adjective, query.head);
      std::uint64_t h = fnv1a(scene.scene_id, 0xcbf29ce484222325ULL ^ strategy.seed);
      h = fnv1a(text, h);
      return ((h >> 17) & 1U) != 0;
    }
    case StrategyKind::kSmallBias:
      resolve_target(scene, query);
      return positive_of(query.adjective) == Adjective::kSmall;
  }
  return false;
}

std::vector<const Datapoint*> select_split(const DatasetManifest& manifest, std::optional<Split> split) {
  std::vector<const Datapoint*> out;
  for (const auto& dp : manifest.records) {
    if (!split || dp.split == *split) out.push_back(&dp);
  }
  return out;
}

std::int64_t FlipAnalysis::total() const {
  std::int64_t n = 0;
  for (const auto& [type, c] : by_type) n += c.same + c.different;
  return n;
}

double FlipAnalysis::different_fraction() const {
  const auto n = total();
  return n == 0 ? 0.0 : static_cast<double>(different_records.size()) / static_cast<double>(n);
}

FlipAnalysis flip_analysis(const DatasetManifest& manifest, std::optional<Split> split, double sharp_k) {
  FlipAnalysis fa;
  for (auto type : kAllSentenceTypes) fa.by_type[type] = {};
  for (const auto* dp : select_split(manifest, split)) {
    if (dp->sentence.superlative()) continue;
    const auto query = parse_sentence(dp->sentence.text);
    const bool sharp_truth = evaluate(dp->scene, query, SharpK{sharp_k});
    auto& counts = fa.by_type[sentence_type(dp->sentence)];
    if (sharp_truth == dp->sentence.truth) {
      ++counts.same;
    } else {
      ++counts.different;
      fa.different_records.push_back(dp->record_id);
    }
  }
  return fa;
}

EvalReport run_strategy(const Strategy& strategy, const DatasetManifest& manifest,
                        std::optional<Split> split) {
  EvalReport report;
  report.strategy = std::string(to_string(strategy.kind));
  report.task = std::string(to_string(manifest.task));
  report.split = split ? std::string(to_string(*split)) : "all";
  report.signed_distance = empty_bins(kSignedDistanceBins, -1.0);
  for (auto type : kAllSentenceTypes) report.by_type[type] = {};

  std::int64_t correct = 0;
  for (const auto* dp : select_split(manifest, split)) {
    const auto query = parse_sentence(dp->sentence.text);
    const bool predicted = predict(strategy, dp->scene, query, dp->sentence.k_used);
    const bool ok = predicted == dp->sentence.truth;
    correct += ok ? 1 : 0;
    auto& t = report.by_type[sentence_type(dp->sentence)];
    t.correct += ok ? 1 : 0;
    ++t.total;
    auto& s = report.by_shape[dp->sentence.target_shape];
    s.correct += ok ? 1 : 0;
    ++s.total;
    if (dp->sentence.norm_distance) {
      auto& bin = report.signed_distance[static_cast<std::size_t>(signed_bin(*dp->sentence.norm_distance))];
      (ok ? bin.correct : bin.wrong) += 1;
    }
    report.predictions.push_back({dp->record_id, predicted, dp->sentence.truth});
  }
  report.n = static_cast<std::int64_t>(report.predictions.size());
  report.overall = report.n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(report.n);
  report.flips = flip_analysis(manifest, split, strategy.sharp_k);
  return report;
}

std::vector<DistanceBin> distance_profile(const DatasetManifest& manifest,
                                          const std::vector<Prediction>& predictions) {
  std::unordered_map<std::int64_t, const Datapoint*> by_id;
  for (const auto& dp : manifest.records) by_id.emplace(dp.record_id, &dp);
  auto bins = empty_bins(kDistanceBins, 0.0);
  for (const auto& p : predictions) {
    const auto it = by_id.find(p.record_id);
    if (it == by_id.end() || !it->second->sentence.norm_distance) continue;
    const auto& sentence = it->second->sentence;
    auto& bin = bins[static_cast<std::size_t>(abs_bin(*sentence.norm_distance))];
    (p.predicted == sentence.truth ? bin.correct : bin.wrong) += 1;
  }
  return bins;
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "section,key,correct,total,accuracy\n";
  const auto n_correct = static_cast<std::int64_t>(std::llround(report.overall * static_cast<double>(report.n)));
  out << fmt::format("overall,all,{},{},{:.6f}\n", n_correct, report.n, report.overall);
  for (const auto& [type, t] : report.by_type) {
    out << fmt::format("sentence_type,{},{},{},{:.6f}\n", to_string(type), t.correct, t.total, t.accuracy());
  }
  for (const auto& [shape, t] : report.by_shape) {
    out << fmt::format("shape,{},{},{},{:.6f}\n", to_string(shape), t.correct, t.total, t.accuracy());
  }
  for (const auto& bin : report.signed_distance) {
    const auto total = bin.correct + bin.wrong;
    out << fmt::format("distance,[{:.1f};{:.1f}),{},{},{:.6f}\n", bin.lo, bin.hi, bin.correct, total,
                       total == 0 ? 0.0 : static_cast<double>(bin.correct) / static_cast<double>(total));
  }
  for (const auto& [type, c] : report.flips.by_type) {
    out << fmt::format("flip,{},{},{},{:.6f}\n", to_string(type), c.same, c.same + c.different,
                       c.same + c.different == 0
                           ? 0.0
                           : static_cast<double>(c.same) / static_cast<double>(c.same + c.different));
  }
  return out.str();
}

std::string report_summary(const EvalReport& report) {
  std::ostringstream out;
  out << fmt::format("strategy {} on {} ({} split): accuracy {:.4f} over {} records\n", report.strategy,
                     report.task, report.split, report.overall, report.n);
  for (const auto& [type, t] : report.by_type) {
    out << fmt::format("  {:<12} {:.4f} ({}/{})\n", to_string(type), t.accuracy(), t.correct, t.total);
  }
  for (const auto& [shape, t] : report.by_shape) {
    out << fmt::format("  {:<12} {:.4f} ({}/{})\n", to_string(shape), t.accuracy(), t.correct, t.total);
  }
  out << fmt::format("  truth differs under sharp k for {} of {} positive records ({:.4f})\n",
                     report.flips.different_records.size(), report.flips.total(),
                     report.flips.different_fraction());
  return out.str();
}

}  // namespace malevic
