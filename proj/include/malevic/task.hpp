#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "malevic/types.hpp"

namespace malevic {

enum class TaskName : std::uint8_t {
  kSup1,
  kPos1,
  kPos,
  kSetPos,
  kPosHard,
  kSetPosHard,
  kCompSeen,
  kCompUnseen,
};

std::string_view to_string(TaskName task);
std::optional<TaskName> parse_task(std::string_view text);

enum class UniqueBy : std::uint8_t { kColor, kColorShape };
enum class HeadRule : std::uint8_t { kShapeWord, kObject };
enum class PairRule : std::uint8_t { kAll, kCompSeen, kCompUnseen };

// Licensing constraints on the queried object.
struct QueryConstraints {
  UniqueBy unique_by = UniqueBy::kColorShape;
  int label_low = kQueryLabelLow;
  int label_high = kQueryLabelHigh;
  bool not_global_extreme = false;
  int min_refset_size = 1;

  friend bool operator==(const QueryConstraints&, const QueryConstraints&) = default;
};

struct TaskSpec {
  TaskName name = TaskName::kPos;
  QueryConstraints query;
  bool shape_homogeneous = false;
  bool superlative = false;
  // Reference set is the target's same-shape subset rather than the scene.
  bool restrict_to_shape = false;
  HeadRule head = HeadRule::kObject;
  // Never query the maximum or minimum of the reference set.
  bool exclude_refset_extremes = false;
  PairRule pairs = PairRule::kAll;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

TaskSpec task_spec(TaskName name);

// Whether an (adjective, head shape) pairing may be emitted for this task.
bool pair_allowed(const TaskSpec& task, Adjective adjective, ShapeKind shape);

struct ClassKey {
  ShapeKind shape = ShapeKind::kCircle;
  ColorName color = ColorName::kRed;
  Adjective adjective = Adjective::kBig;
  bool truth = true;

  // The adjective the target actually satisfies.
  Adjective judged() const { return truth ? adjective : flip(adjective); }

  friend bool operator==(const ClassKey&, const ClassKey&) = default;
  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

std::string to_string(const ClassKey& key);

}  // namespace malevic
