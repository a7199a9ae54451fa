#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "malevic/rng.hpp"
#include "malevic/scene.hpp"
#include "malevic/semantics.hpp"
#include "malevic/task.hpp"

namespace malevic {

inline constexpr int kPlacementAttempts = 1000;
inline constexpr int kSceneResamples = 10000;

// Pixel area of a size label: the label is the side of an equal-area square.
std::int64_t label_area(SizeLabel label);

// Rectangles take an aspect ratio (long/short) in [1.5, 3.0]; triangles a
// base/height ratio in [0.8, 1.25]. Circles and squares consume no randomness.
Dims solve_dimensions(ShapeKind shape, std::int64_t pixel_area, Rng& rng);

// Deterministic variant with the shape's ratio supplied directly.
Dims solve_dimensions_with_ratio(ShapeKind shape, std::int64_t pixel_area, double ratio);

// Assigns centers and bounding boxes by rejection sampling. Each object gets
// kPlacementAttempts tries; failure (or an input whose boxes would cover more
// than half the canvas) throws Error(kPlacementFailure).
void place_nonoverlapping(std::span<SceneObject> objects, Rng& rng, int canvas = kCanvasSize);

struct SceneDraw {
  Scene scene;
  ObjectId target = 0;
  // Absent for superlative tasks.
  std::optional<VagueK> k;
};

struct SceneSampler {
  ThresholdConfig threshold;
  int max_resamples = kSceneResamples;
};

// Samples scenes uniformly and rejects until one has a licensed target of
// class_target's (shape, color) that satisfies class_target.judged().
// Throws Error(kExhaustedRetries) naming the class after max_resamples draws.
SceneDraw sample_scene(const TaskSpec& task, const ClassKey& class_target, Rng& rng,
                       const SceneSampler& sampler = {});

// Structural invariants of a finished scene: object count, label areas, dims,
// canvas containment and pairwise separation. Returns a description of the
// first violation, or nullopt.
std::optional<std::string> check_scene(const Scene& scene);

}  // namespace malevic
