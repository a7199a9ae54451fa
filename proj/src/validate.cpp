#include "malevic/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include <fmt/format.h>

#include "malevic/error.hpp"
#include "malevic/renderer.hpp"
#include "malevic/scenegen.hpp"
#include "malevic/verifier.hpp"

namespace malevic {

namespace {

struct Failure {
  ValidationFailure value;
};

[[noreturn]] void fail(std::string invariant, std::optional<std::int64_t> record, std::string detail) {
  throw Failure{{std::move(invariant), record, std::move(detail)}};
}

void check_structure(const DatasetManifest& m) {
  std::set<std::string> seen;
  for (const auto& dp : m.records) {
    if (dp.scene.task != m.task) {
      fail("task-consistency", dp.record_id,
           fmt::format("scene task {} in a {} manifest", to_string(dp.scene.task), to_string(m.task)));
    }
    if (!seen.insert(dp.scene.scene_id).second) continue;
    if (const auto problem = check_scene(dp.scene)) fail("scene-structure", dp.record_id, *problem);
  }
}

void check_licensing(const DatasetManifest& m) {
  const TaskSpec task = task_spec(m.task);
  for (const auto& dp : m.records) {
    const auto& s = dp.sentence;
    if (realize_text(s) != s.text) fail("sentence-text", dp.record_id, s.text);
    const auto& target = dp.scene.object(s.target_id);
    if (target.color != s.target_color || target.shape != s.target_shape) {
      fail("target-identity", dp.record_id, "sentence fields do not describe the target object");
    }
    if (!(dp.class_key == ClassKey{s.target_shape, s.target_color, s.adjective, s.truth})) {
      fail("class-key", dp.record_id, "class key disagrees with the sentence");
    }
    const int label = target.size_label.value();
    if (label < task.query.label_low || label > task.query.label_high) {
      fail("area-window", dp.record_id,
           fmt::format("queried object has label {}, outside [{}, {}]", label, task.query.label_low,
                       task.query.label_high));
    }
    const auto expected_head =
        task.head == HeadRule::kObject ? std::nullopt : std::optional(target.shape);
    if (s.head != expected_head) fail("head-noun", dp.record_id, s.text);
    if (task.superlative != s.superlative()) fail("sentence-form", dp.record_id, s.text);
    if (!pair_allowed(task, s.adjective, s.target_shape)) {
      fail("compositional-pairs", dp.record_id,
           fmt::format("pair {} {} not allowed in {}", to_string(s.adjective), to_string(s.target_shape),
                       to_string(m.task)));
    }
    if (task.exclude_refset_extremes) {
      const auto ref = task_reference(dp.scene, task, target.id);
      if (target.pixel_area == ref.max_area || target.pixel_area == ref.min_area) {
        fail("hard-exclusion", dp.record_id, "queried object is a reference-set extreme");
      }
    }
    const auto eligible = eligible_targets(dp.scene, task);
    if (std::find(eligible.begin(), eligible.end(), target.id) == eligible.end()) {
      fail("licensing", dp.record_id, "queried object violates a licensing constraint");
    }
  }
}

void check_truth(const DatasetManifest& m) {
  for (const auto& dp : m.records) {
    const auto& s = dp.sentence;
    try {
      const auto query = parse_sentence(s.text);
      if (s.superlative()) {
        if (evaluate(dp.scene, query, SharpK{}) != s.truth) {
          fail("truth-rederivation", dp.record_id, "stored truth disagrees with the superlative");
        }
        continue;
      }
      if (!s.k_used) fail("truth-rederivation", dp.record_id, "positive record without k_used");
      const auto v = evaluate_detailed(dp.scene, query, RecordedK{*s.k_used});
      if (v.truth != s.truth) {
        fail("truth-rederivation", dp.record_id,
             fmt::format("stored truth {} but recorded k {} gives {}", s.truth, s.k_used->value, v.truth));
      }
      if (s.threshold_used && std::abs(*s.threshold_used - v.judgment->threshold) > 1e-6) {
        fail("truth-rederivation", dp.record_id, "stored threshold disagrees with recomputation");
      }
    } catch (const Error& e) {
      fail("truth-rederivation", dp.record_id, e.what());
    }
  }
}

void check_siblings(const DatasetManifest& m) {
  const bool pairs = task_spec(m.task).pairs == PairRule::kAll;
  std::map<std::int64_t, std::vector<const Datapoint*>> units;
  for (const auto& dp : m.records) units[dp.unit_id].push_back(&dp);
  for (const auto& [unit, members] : units) {
    const std::size_t expected = pairs ? 2 : 1;
    if (members.size() != expected) {
      fail("siblings", members.front()->record_id,
           fmt::format("unit {} has {} records, expected {}", unit, members.size(), expected));
    }
    if (!pairs) continue;
    const auto& a = *members[0];
    const auto& b = *members[1];
    const bool ok = a.scene == b.scene && a.split == b.split && a.sentence.truth != b.sentence.truth &&
                    a.sentence.adjective == flip(b.sentence.adjective) &&
                    a.sentence.target_id == b.sentence.target_id && a.sentence.head == b.sentence.head;
    if (!ok) fail("siblings", b.record_id, fmt::format("unit {} is not a true/false sibling pair", unit));
  }
}

void check_balance(const DatasetManifest& m) {
  std::map<ClassKey, std::int64_t> overall;
  std::map<Split, std::map<ClassKey, std::int64_t>> per_split;
  for (const auto& dp : m.records) {
    ++overall[dp.class_key];
    ++per_split[dp.split][dp.class_key];
  }
  const TaskSpec task = task_spec(m.task);
  const std::size_t expected_classes = task.pairs == PairRule::kAll ? 80 : 40;
  if (overall.size() != expected_classes) {
    fail("balance", std::nullopt,
         fmt::format("{} classes present, expected {}", overall.size(), expected_classes));
  }
  const auto per_class = overall.begin()->second;
  for (const auto& [key, n] : overall) {
    if (n != per_class) {
      fail("balance", std::nullopt,
           fmt::format("class {} has {} records, expected {}", to_string(key), n, per_class));
    }
  }
  if (per_split.count(Split::kNone) != 0) return;
  const bool single_split = per_split.size() == 1;
  if (single_split) return;

  const std::int64_t total = static_cast<std::int64_t>(m.records.size());
  const std::map<Split, std::int64_t> share = {{Split::kTrain, 8}, {Split::kVal, 1}, {Split::kTest, 1}};
  for (const auto& [split, tenths] : share) {
    std::int64_t n = 0;
    for (const auto& [key, c] : per_split[split]) n += c;
    if (n * 10 != total * tenths) {
      fail("split-balance", std::nullopt,
           fmt::format("{} split holds {} of {} records", to_string(split), n, total));
    }
    if (per_class % 10 != 0) continue;
    for (const auto& [key, _] : overall) {
      const auto it = per_split[split].find(key);
      const std::int64_t c = it == per_split[split].end() ? 0 : it->second;
      if (c * 10 != per_class * tenths) {
        fail("split-balance", std::nullopt,
             fmt::format("class {} has {} records in {}, expected {}", to_string(key), c, to_string(split),
                         per_class * tenths / 10));
      }
    }
  }
}

void check_render(const DatasetManifest& m, int sample) {
  std::set<std::string> done;
  for (const auto& dp : m.records) {
    if (static_cast<int>(done.size()) >= sample) break;
    if (!done.insert(dp.scene.scene_id).second) continue;
    const auto image = render(dp.scene);
    for (const auto& o : dp.scene.objects) {
      const auto measured = measure_area(image, dp.scene, o.id);
      const double rel = std::abs(static_cast<double>(measured.pixels - o.pixel_area)) /
                         static_cast<double>(o.pixel_area);
      if (rel > 0.05) {
        fail("render-round-trip", dp.record_id,
             fmt::format("object {} measured {} px, declared {}", o.id, measured.pixels, o.pixel_area));
      }
    }
  }
}

}  // namespace

ValidationReport validate(const DatasetManifest& manifest, const ValidationOptions& options) {
  ValidationReport report;
  const std::vector<std::pair<std::string, std::function<void()>>> suites = {
      {"scene-structure", [&] { check_structure(manifest); }},
      {"licensing", [&] { check_licensing(manifest); }},
      {"truth-rederivation", [&] { check_truth(manifest); }},
      {"siblings", [&] { check_siblings(manifest); }},
      {"balance", [&] { check_balance(manifest); }},
      {"render-round-trip", [&] { check_render(manifest, options.render_sample); }},
  };
  if (manifest.records.empty()) {
    report.failure = ValidationFailure{"non-empty", std::nullopt, "manifest has no records"};
    return report;
  }
  for (const auto& [name, run] : suites) {
    try {
      run();
      report.checks_passed.push_back(name);
    } catch (const Failure& f) {
      report.failure = f.value;
      return report;
    } catch (const Error& e) {
      report.failure = ValidationFailure{name, std::nullopt, e.what()};
      return report;
    }
  }
  return report;
}

}  // namespace malevic
