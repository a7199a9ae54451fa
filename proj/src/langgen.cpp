#include "malevic/langgen.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "malevic/error.hpp"

namespace malevic {

std::string realize_text(ColorName color, ShapeKind shape, Adjective adjective,
                         std::optional<ShapeKind> head) {
  const std::string_view head_word = head ? to_string(*head) : std::string_view("object");
  return fmt::format("The {} {} is {} {} {}", to_string(color), to_string(shape),
                     is_superlative(adjective) ? "the" : "a", to_string(adjective), head_word);
}

std::string realize_text(const SentenceRecord& record) {
  return realize_text(record.target_color, record.target_shape, record.adjective, record.head);
}

ReferenceSet task_reference(const Scene& scene, const TaskSpec& task, ObjectId target) {
  if (task.restrict_to_shape) return restrict(scene, scene.object(target).shape);
  return whole_scene(scene);
}

std::vector<ObjectId> eligible_targets(const Scene& scene, const TaskSpec& task) {
  std::vector<ObjectId> out;
  if (scene.objects.empty()) return out;
  const auto scene_ref = whole_scene(scene);
  for (const auto& o : scene.objects) {
    const auto same_identity = std::count_if(
        scene.objects.begin(), scene.objects.end(), [&](const SceneObject& other) {
          if (other.color != o.color) return false;
          return task.query.unique_by == UniqueBy::kColor || other.shape == o.shape;
        });
    if (same_identity != 1) continue;

    const int label = o.size_label.value();
    if (label < task.query.label_low || label > task.query.label_high) continue;

    if (task.query.not_global_extreme &&
        (o.pixel_area == scene_ref.max_area || o.pixel_area == scene_ref.min_area)) {
      continue;
    }

    const auto same_shape = std::count_if(scene.objects.begin(), scene.objects.end(),
                                          [&](const SceneObject& other) { return other.shape == o.shape; });
    if (same_shape < task.query.min_refset_size) continue;

    if (task.exclude_refset_extremes) {
      const auto ref = task_reference(scene, task, o.id);
      if (o.pixel_area == ref.max_area || o.pixel_area == ref.min_area) continue;
    }
    out.push_back(o.id);
  }
  return out;
}

namespace {

void require_eligible(const Scene& scene, const TaskSpec& task, ObjectId target) {
  const auto ids = eligible_targets(scene, task);
  if (std::find(ids.begin(), ids.end(), target) == ids.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("object {} of scene {} is not a licensed {} target", target,
                            scene.scene_id, to_string(task.name)));
  }
}

SentenceRecord base_record(const SceneObject& target, Adjective adjective,
                           std::optional<ShapeKind> head) {
  SentenceRecord r;
  r.target_color = target.color;
  r.target_shape = target.shape;
  r.head = head;
  r.adjective = adjective;
  r.target_id = target.id;
  r.text = realize_text(r);
  return r;
}

std::pair<SentenceRecord, SentenceRecord> sibling_pair(SentenceRecord truthful) {
  truthful.truth = true;
  SentenceRecord flipped = truthful;
  flipped.adjective = flip(truthful.adjective);
  flipped.truth = false;
  flipped.text = realize_text(flipped);
  return {std::move(truthful), std::move(flipped)};
}

}  // namespace

std::pair<SentenceRecord, SentenceRecord> generate_positive(const Scene& scene, ObjectId target,
                                                            const TaskSpec& task, VagueK k) {
  if (task.superlative) {
    throw Error(ErrorCode::kInvalidArgument, "generate_positive called for a superlative task");
  }
  require_eligible(scene, task, target);
  const auto& object = scene.object(target);
  const auto ref = task_reference(scene, task, target);
  const auto j = judge(object, ref, k);

  std::optional<ShapeKind> head;
  if (task.head == HeadRule::kShapeWord) head = object.shape;
  auto record = base_record(object, j.is_big ? Adjective::kBig : Adjective::kSmall, head);
  record.k_used = k;
  record.threshold_used = j.threshold;
  record.norm_distance = j.norm_distance;
  return sibling_pair(std::move(record));
}

std::pair<SentenceRecord, SentenceRecord> generate_superlative(const Scene& scene,
                                                               ObjectId target) {
  require_eligible(scene, task_spec(TaskName::kSup1), target);
  const auto [biggest, smallest] = superlative(whole_scene(scene));
  const auto& object = scene.object(target);
  Adjective adjective;
  if (target == biggest) {
    adjective = Adjective::kBiggest;
  } else if (target == smallest) {
    adjective = Adjective::kSmallest;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("object {} is neither the biggest nor the smallest", target));
  }
  return sibling_pair(base_record(object, adjective, object.shape));
}

}  // namespace malevic
