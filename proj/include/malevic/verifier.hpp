#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "malevic/scene.hpp"
#include "malevic/semantics.hpp"

namespace malevic {

enum class SentenceForm : std::uint8_t { kPositive, kSuperlative };

struct ParsedQuery {
  ColorName color = ColorName::kRed;
  ShapeKind shape_mention = ShapeKind::kCircle;
  std::optional<ShapeKind> head;  // nullopt: "object"
  Adjective adjective = Adjective::kBig;
  SentenceForm form = SentenceForm::kPositive;

  friend bool operator==(const ParsedQuery&, const ParsedQuery&) = default;
};

// Exact match against the closed template grammar:
//   The <color> <shape> is a <big|small> <shape|object>
//   The <color> <shape> is the <biggest|smallest> <shape|object>
// Throws ParseError with the offset of the first deviating token.
ParsedQuery parse_sentence(std::string_view text);

// Unique object with the query's color and shape mention.
// Throws kNoReferent or kAmbiguousReferent.
ObjectId resolve_target(const Scene& scene, const ParsedQuery& query);

struct RecordedK {
  VagueK k;
};
struct SharpK {
  double value = kSharpK;
};
struct ResampleK {
  std::uint64_t seed = 0;
  ThresholdConfig config;
};
using KMode = std::variant<RecordedK, SharpK, ResampleK>;

// Reference set the query is judged against: the whole scene for head
// "object" or a shape-homogeneous scene, else the same-shape subset.
ReferenceSet query_reference(const Scene& scene, const ParsedQuery& query);

struct Verdict {
  bool truth = false;
  ObjectId target = 0;
  ReferenceSet reference;
  // Positive form only.
  std::optional<SizeJudgment> judgment;
  std::optional<double> k;
};

Verdict evaluate_detailed(const Scene& scene, const ParsedQuery& query, const KMode& mode);
bool evaluate(const Scene& scene, const ParsedQuery& query, const KMode& mode);

}  // namespace malevic
