#include "malevic/types.hpp"

#include <cctype>

#include <fmt/format.h>

#include "malevic/error.hpp"
#include "malevic/rng.hpp"
#include "malevic/task.hpp"

namespace malevic {

namespace {

constexpr std::array<std::string_view, 4> kShapeWords = {"circle", "rectangle", "square",
                                                         "triangle"};
constexpr std::array<std::string_view, 5> kColorWords = {"red", "blue", "white", "yellow",
                                                         "green"};
constexpr std::array<std::string_view, 4> kAdjectiveWords = {"big", "small", "biggest",
                                                             "smallest"};
constexpr std::array<std::string_view, 8> kTaskNames = {
    "SUP1", "POS1", "POS", "SETPOS", "POS_HARD", "SETPOS_HARD", "COMP_SEEN", "COMP_UNSEEN"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& words, std::string_view word) {
  for (std::size_t i = 0; i < N; ++i) {
    if (words[i] == word) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ShapeKind shape) { return kShapeWords[static_cast<int>(shape)]; }
std::string_view to_string(ColorName color) { return kColorWords[static_cast<int>(color)]; }
std::string_view to_string(Adjective adjective) {
  return kAdjectiveWords[static_cast<int>(adjective)];
}

std::optional<ShapeKind> parse_shape(std::string_view word) {
  return lookup<ShapeKind>(kShapeWords, word);
}
std::optional<ColorName> parse_color(std::string_view word) {
  return lookup<ColorName>(kColorWords, word);
}
std::optional<Adjective> parse_adjective(std::string_view word) {
  return lookup<Adjective>(kAdjectiveWords, word);
}

SizeLabel::SizeLabel(int value) : value_(value) {
  if (!is_valid(value)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid size label {}", value));
  }
}

bool is_superlative(Adjective adjective) {
  return adjective == Adjective::kBiggest || adjective == Adjective::kSmallest;
}

Adjective flip(Adjective adjective) {
  switch (adjective) {
    case Adjective::kBig: return Adjective::kSmall;
    case Adjective::kSmall: return Adjective::kBig;
    case Adjective::kBiggest: return Adjective::kSmallest;
    case Adjective::kSmallest: return Adjective::kBiggest;
  }
  return adjective;
}

Adjective positive_of(Adjective adjective) {
  switch (adjective) {
    case Adjective::kBiggest: return Adjective::kBig;
    case Adjective::kSmallest: return Adjective::kSmall;
    default: return adjective;
  }
}

std::string_view to_string(TaskName task) { return kTaskNames[static_cast<int>(task)]; }

std::optional<TaskName> parse_task(std::string_view text) {
  // Accept CLI spellings such as "setpos-hard" and "pos1" as well.
  std::string norm;
  for (char c : text) {
    if (c == '-') c = '_';
    if (c == '+') continue;
    norm.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (norm == "SET_POS") norm = "SETPOS";
  if (norm == "SET_POS_HARD") norm = "SETPOS_HARD";
  return lookup<TaskName>(kTaskNames, norm);
}

TaskSpec task_spec(TaskName name) {
  TaskSpec spec;
  spec.name = name;
  switch (name) {
    case TaskName::kSup1:
      spec.query.unique_by = UniqueBy::kColor;
      spec.shape_homogeneous = true;
      spec.superlative = true;
      spec.head = HeadRule::kShapeWord;
      break;
    case TaskName::kPos1:
      spec.query.unique_by = UniqueBy::kColor;
      spec.shape_homogeneous = true;
      spec.head = HeadRule::kShapeWord;
      break;
    case TaskName::kPosHard:
      spec.exclude_refset_extremes = true;
      [[fallthrough]];
    case TaskName::kPos:
      spec.head = HeadRule::kObject;
      break;
    case TaskName::kSetPosHard:
      spec.exclude_refset_extremes = true;
      [[fallthrough]];
    case TaskName::kSetPos:
    case TaskName::kCompSeen:
    case TaskName::kCompUnseen:
      spec.query.not_global_extreme = true;
      spec.query.min_refset_size = 3;
      spec.restrict_to_shape = true;
      spec.head = HeadRule::kShapeWord;
      if (name == TaskName::kCompSeen) spec.pairs = PairRule::kCompSeen;
      if (name == TaskName::kCompUnseen) spec.pairs = PairRule::kCompUnseen;
      break;
  }
  return spec;
}

bool pair_allowed(const TaskSpec& task, Adjective adjective, ShapeKind shape) {
  if (task.pairs == PairRule::kAll) return true;
  const bool big = positive_of(adjective) == Adjective::kBig;
  const bool round_or_long = shape == ShapeKind::kCircle || shape == ShapeKind::kRectangle;
  const bool seen = big == round_or_long;
  return task.pairs == PairRule::kCompSeen ? seen : !seen;
}

std::string to_string(const ClassKey& key) {
  return fmt::format("<{}, {}, {}, {}>", to_string(key.color), to_string(key.shape),
                     to_string(key.adjective), key.truth ? "true" : "false");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

}  // namespace malevic
