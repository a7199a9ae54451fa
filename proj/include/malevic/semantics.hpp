#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "malevic/rng.hpp"
#include "malevic/scene.hpp"

namespace malevic {

inline constexpr double kSharpK = 0.29;

// Truncated-normal parameters for the per-scene vagueness coefficient.
struct ThresholdConfig {
  double mu = 0.29;
  double sigma = 0.066;
  double k_low = 0.01;
  double k_high = 0.49;

  // Throws Error(kInvalidArgument) unless 0 < k_low < mu < k_high < 0.5 and sigma > 0.
  void validate() const;

  friend bool operator==(const ThresholdConfig&, const ThresholdConfig&) = default;
};

enum class KSource : std::uint8_t { kSampled, kSharp };

struct VagueK {
  double value = kSharpK;
  KSource source = KSource::kSharp;

  static VagueK sharp(double value = kSharpK) { return {value, KSource::kSharp}; }

  friend bool operator==(const VagueK&, const VagueK&) = default;
};

struct ReferenceMember {
  ObjectId id = 0;
  std::int64_t area = 0;
};

// Comparison class for a threshold or extremum.
struct ReferenceSet {
  std::vector<ReferenceMember> members;
  std::int64_t max_area = 0;
  std::int64_t min_area = 0;

  bool contains(ObjectId id) const;
  std::int64_t area_of(ObjectId id) const;
  bool degenerate() const { return max_area == min_area; }
  std::size_t size() const { return members.size(); }
};

ReferenceSet make_reference(std::vector<ReferenceMember> members);
ReferenceSet whole_scene(const Scene& scene);

struct SizeJudgment {
  ObjectId object_id = 0;
  bool is_big = false;
  double threshold = 0.0;
  // (area - threshold) / (max_area - min_area)
  double norm_distance = 0.0;
};

// Draws from Normal(mu, sigma), redrawing until the value lies strictly inside
// (k_low, k_high). Gives up after 100 redraws.
VagueK sample_k(const ThresholdConfig& config, Rng& rng);

// Max - k (Max - Min). Throws kDegenerateReference when Max == Min.
double threshold(const ReferenceSet& ref, VagueK k);

// The single comparison that decides the positive form.
inline bool counts_as_big(std::int64_t area, double threshold_value) {
  return static_cast<double>(area) >= threshold_value;
}

SizeJudgment judge(const SceneObject& object, const ReferenceSet& ref, VagueK k);

// (biggest id, smallest id); both extremes must be unique.
std::pair<ObjectId, ObjectId> superlative(const ReferenceSet& ref);

// Same-shape subset of the scene. Throws kEmptyRestriction if no object has `shape`.
ReferenceSet restrict(const Scene& scene, ShapeKind shape);

}  // namespace malevic
