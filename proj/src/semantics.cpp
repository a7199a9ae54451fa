#include "malevic/semantics.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "malevic/error.hpp"

namespace malevic {

void ThresholdConfig::validate() const {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("sigma must be positive, got {}", sigma));
  }
  if (!(0.0 < k_low && k_low < mu && mu < k_high && k_high < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("need 0 < k_low < mu < k_high < 0.5, got {} / {} / {}", k_low, mu,
                            k_high));
  }
}

bool ReferenceSet::contains(ObjectId id) const {
  return std::any_of(members.begin(), members.end(),
                     [id](const ReferenceMember& m) { return m.id == id; });
}

std::int64_t ReferenceSet::area_of(ObjectId id) const {
  for (const auto& m : members) {
    if (m.id == id) return m.area;
  }
  throw Error(ErrorCode::kNotInReference, fmt::format("object {} is not in the reference set", id));
}

ReferenceSet make_reference(std::vector<ReferenceMember> members) {
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyRestriction, "reference set is empty");
  }
  ReferenceSet ref;
  const auto [lo, hi] = std::minmax_element(
      members.begin(), members.end(),
      [](const ReferenceMember& a, const ReferenceMember& b) { return a.area < b.area; });
  ref.min_area = lo->area;
  ref.max_area = hi->area;
  ref.members = std::move(members);
  return ref;
}

ReferenceSet whole_scene(const Scene& scene) {
  std::vector<ReferenceMember> members;
  members.reserve(scene.objects.size());
  for (const auto& o : scene.objects) members.push_back({o.id, o.pixel_area});
  return make_reference(std::move(members));
}

VagueK sample_k(const ThresholdConfig& config, Rng& rng) {
  std::normal_distribution<double> normal(config.mu, config.sigma);
  for (int draw = 0; draw <= 100; ++draw) {
    const double k = normal(rng);
    if (k > config.k_low && k < config.k_high) return {k, KSource::kSampled};
  }
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("k sampler exceeded 100 redraws (mu={}, sigma={})", config.mu,
                          config.sigma));
}

double threshold(const ReferenceSet& ref, VagueK k) {
  if (ref.degenerate()) {
    throw Error(ErrorCode::kDegenerateReference,
                fmt::format("threshold undefined: max area == min area == {}", ref.max_area));
  }
  const auto max_area = static_cast<double>(ref.max_area);
  const auto range = static_cast<double>(ref.max_area - ref.min_area);
  return max_area - k.value * range;
}

SizeJudgment judge(const SceneObject& object, const ReferenceSet& ref, VagueK k) {
  if (!ref.contains(object.id)) {
    throw Error(ErrorCode::kNotInReference,
                fmt::format("object {} is not in the reference set", object.id));
  }
  const double t = threshold(ref, k);
  SizeJudgment j;
  j.object_id = object.id;
  j.threshold = t;
  j.is_big = counts_as_big(object.pixel_area, t);
  j.norm_distance =
      (static_cast<double>(object.pixel_area) - t) / static_cast<double>(ref.max_area - ref.min_area);
  return j;
}

std::pair<ObjectId, ObjectId> superlative(const ReferenceSet& ref) {
  if (ref.degenerate()) {
    throw Error(ErrorCode::kDegenerateReference,
                "superlative needs distinct maximum and minimum areas");
  }
  int n_max = 0;
  int n_min = 0;
  ObjectId biggest = 0;
  ObjectId smallest = 0;
  for (const auto& m : ref.members) {
    if (m.area == ref.max_area) {
      ++n_max;
      biggest = m.id;
    }
    if (m.area == ref.min_area) {
      ++n_min;
      smallest = m.id;
    }
  }
  if (n_max > 1) throw Error(ErrorCode::kTie, fmt::format("{} objects tie for biggest", n_max));
  if (n_min > 1) throw Error(ErrorCode::kTie, fmt::format("{} objects tie for smallest", n_min));
  return {biggest, smallest};
}

ReferenceSet restrict(const Scene& scene, ShapeKind shape) {
  std::vector<ReferenceMember> members;
  for (const auto& o : scene.objects) {
    if (o.shape == shape) members.push_back({o.id, o.pixel_area});
  }
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyRestriction,
                fmt::format("scene {} has no {}", scene.scene_id, to_string(shape)));
  }
  return make_reference(std::move(members));
}

}  // namespace malevic
