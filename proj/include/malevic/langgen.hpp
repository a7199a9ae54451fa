#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "malevic/scene.hpp"
#include "malevic/semantics.hpp"
#include "malevic/task.hpp"

namespace malevic {

struct SentenceRecord {
  std::string text;
  ColorName target_color = ColorName::kRed;
  ShapeKind target_shape = ShapeKind::kCircle;
  // nullopt means the literal head noun "object".
  std::optional<ShapeKind> head;
  Adjective adjective = Adjective::kBig;
  bool truth = true;
  std::optional<VagueK> k_used;
  std::optional<double> threshold_used;
  std::optional<double> norm_distance;
  ObjectId target_id = 0;

  bool superlative() const { return is_superlative(adjective); }

  friend bool operator==(const SentenceRecord&, const SentenceRecord&) = default;
};

// "The {color} {shape} is a {adjective} {head}" or, for superlatives,
// "The {color} {shape} is the {adjective} {head}".
std::string realize_text(ColorName color, ShapeKind shape, Adjective adjective,
                         std::optional<ShapeKind> head);
std::string realize_text(const SentenceRecord& record);

// Reference set the task uses to judge `target`.
ReferenceSet task_reference(const Scene& scene, const TaskSpec& task, ObjectId target);

std::vector<ObjectId> eligible_targets(const Scene& scene, const TaskSpec& task);

// Returns (true record, false record). The false record differs only in
// adjective (big <-> small) and truth.
std::pair<SentenceRecord, SentenceRecord> generate_positive(const Scene& scene, ObjectId target,
                                                            const TaskSpec& task, VagueK k);

// Target must be the unique scene maximum or minimum; otherwise
// Error(kInvalidArgument).
std::pair<SentenceRecord, SentenceRecord> generate_superlative(const Scene& scene, ObjectId target);

}  // namespace malevic
