#include "malevic/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "malevic/error.hpp"
#include "malevic/langgen.hpp"

namespace malevic {

std::int64_t label_area(SizeLabel label) {
  const std::int64_t v = label.value();
  return v * v;
}

Dims solve_dimensions_with_ratio(ShapeKind shape, std::int64_t pixel_area, double ratio) {
  if (pixel_area <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("pixel area must be positive, got {}", pixel_area));
  }
  const auto area = static_cast<double>(pixel_area);
  switch (shape) {
    case ShapeKind::kCircle:
      return CircleDims{std::sqrt(area / std::numbers::pi)};
    case ShapeKind::kSquare:
      return SquareDims{std::sqrt(area)};
    case ShapeKind::kRectangle: {
      const double width = std::sqrt(area * ratio);
      return RectangleDims{width, width / ratio};
    }
    case ShapeKind::kTriangle: {
      // base = ratio * height, base * height / 2 = area
      const double height = std::sqrt(2.0 * area / ratio);
      return TriangleDims{ratio * height, height};
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown shape");
}

Dims solve_dimensions(ShapeKind shape, std::int64_t pixel_area, Rng& rng) {
  double ratio = 1.0;
  if (shape == ShapeKind::kRectangle) ratio = uniform_real(rng, 1.5, 3.0);
  if (shape == ShapeKind::kTriangle) ratio = uniform_real(rng, 0.8, 1.25);
  return solve_dimensions_with_ratio(shape, pixel_area, ratio);
}

void place_nonoverlapping(std::span<SceneObject> objects, Rng& rng, int canvas) {
  std::int64_t footprint = 0;
  for (const auto& o : objects) footprint += bbox_for(o.dims, {0, 0}).area();
  if (2 * footprint > std::int64_t{canvas} * canvas) {
    throw Error(ErrorCode::kPlacementFailure,
                fmt::format("bounding boxes cover {} px, more than half of the {}x{} canvas",
                            footprint, canvas, canvas));
  }

  for (std::size_t i = 0; i < objects.size(); ++i) {
    auto& o = objects[i];
    const double hw = dims_width(o.dims) / 2.0;
    const double hh = dims_height(o.dims) / 2.0;
    const int x_lo = static_cast<int>(std::ceil(hw));
    const int x_hi = static_cast<int>(std::floor(canvas - hw));
    const int y_lo = static_cast<int>(std::ceil(hh));
    const int y_hi = static_cast<int>(std::floor(canvas - hh));
    if (x_lo > x_hi || y_lo > y_hi) {
      throw Error(ErrorCode::kPlacementFailure,
                  fmt::format("object {} does not fit on the canvas", o.id));
    }
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      const Point c{uniform_int(rng, x_lo, x_hi), uniform_int(rng, y_lo, y_hi)};
      const BBox box = bbox_for(o.dims, c);
      placed = std::all_of(objects.begin(), objects.begin() + static_cast<std::ptrdiff_t>(i),
                           [&](const SceneObject& prev) {
                             return box.separated(prev.bbox, kPlacementMargin);
                           });
      if (placed) {
        o.center = c;
        o.bbox = box;
      }
    }
    if (!placed) {
      throw Error(ErrorCode::kPlacementFailure,
                  fmt::format("no free position for object {} after {} attempts", o.id,
                              kPlacementAttempts));
    }
  }
}

namespace {

std::vector<SceneObject> draw_objects(const TaskSpec& task, ShapeKind shape, Rng& rng) {
  const int n = uniform_int(rng, kMinObjects, kMaxObjects);
  std::vector<SceneObject> objects(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& o = objects[static_cast<std::size_t>(i)];
    o.id = i;
    o.shape = task.shape_homogeneous ? shape : kAllShapes[uniform_int(rng, 0, 3)];
    o.color = kAllColors[uniform_int(rng, 0, 4)];
    o.size_label = SizeLabel::from_index(uniform_int(rng, 0, SizeLabel::kCount - 1));
    o.pixel_area = label_area(o.size_label);
  }
  return objects;
}

bool judged_matches(const Scene& scene, const TaskSpec& task, ObjectId target, Adjective judged,
                    const SceneSampler& sampler, Rng& rng, std::optional<VagueK>& k_out) {
  if (task.superlative) {
    const auto ref = whole_scene(scene);
    if (ref.degenerate()) return false;
    try {
      const auto [biggest, smallest] = superlative(ref);
      return judged == Adjective::kBiggest ? target == biggest : target == smallest;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kTie) return false;
      throw;
    }
  }
  const auto ref = task_reference(scene, task, target);
  if (ref.degenerate()) return false;
  const VagueK k = sample_k(sampler.threshold, rng);
  const auto j = judge(scene.object(target), ref, k);
  k_out = k;
  return j.is_big == (judged == Adjective::kBig);
}

}  // namespace

SceneDraw sample_scene(const TaskSpec& task, const ClassKey& class_target, Rng& rng,
                       const SceneSampler& sampler) {
  if (task.superlative != is_superlative(class_target.adjective)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("class {} does not fit task {}", to_string(class_target),
                            to_string(task.name)));
  }
  const Adjective judged = class_target.judged();

  for (int attempt = 0; attempt < sampler.max_resamples; ++attempt) {
    Scene scene;
    scene.task = task.name;
    scene.objects = draw_objects(task, class_target.shape, rng);

    const auto eligible = eligible_targets(scene, task);
    const auto hit = std::find_if(eligible.begin(), eligible.end(), [&](ObjectId id) {
      const auto& o = scene.object(id);
      return o.shape == class_target.shape && o.color == class_target.color;
    });
    if (hit == eligible.end()) continue;

    std::optional<VagueK> k;
    if (!judged_matches(scene, task, *hit, judged, sampler, rng, k)) continue;

    for (auto& o : scene.objects) o.dims = solve_dimensions(o.shape, o.pixel_area, rng);
    try {
      place_nonoverlapping(scene.objects, rng, scene.canvas_size);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kPlacementFailure) continue;
      throw;
    }
    return SceneDraw{std::move(scene), *hit, k};
  }
  throw Error(ErrorCode::kExhaustedRetries,
              fmt::format("no {} scene for class {} after {} resamples", to_string(task.name),
                          to_string(class_target), sampler.max_resamples));
}

std::optional<std::string> check_scene(const Scene& scene) {
  const auto n = static_cast<int>(scene.objects.size());
  if (scene.canvas_size != kCanvasSize) {
    return fmt::format("canvas size {} != {}", scene.canvas_size, kCanvasSize);
  }
  if (n < kMinObjects || n > kMaxObjects) return fmt::format("{} objects", n);
  for (int i = 0; i < n; ++i) {
    const auto& o = scene.objects[static_cast<std::size_t>(i)];
    if (o.id != i) return fmt::format("object at index {} has id {}", i, o.id);
    if (o.pixel_area != label_area(o.size_label)) {
      return fmt::format("object {}: pixel_area {} != label^2", o.id, o.pixel_area);
    }
    const double geo = geometric_area(o.dims);
    if (std::abs(geo - static_cast<double>(o.pixel_area)) > 0.005 * static_cast<double>(o.pixel_area)) {
      return fmt::format("object {}: dims give area {:.1f}, expected {}", o.id, geo, o.pixel_area);
    }
    if (!(o.bbox == bbox_for(o.dims, o.center))) {
      return fmt::format("object {}: bbox inconsistent with dims and center", o.id);
    }
    if (!o.bbox.inside_canvas(scene.canvas_size)) {
      return fmt::format("object {}: bbox leaves the canvas", o.id);
    }
    for (int j = 0; j < i; ++j) {
      if (!o.bbox.separated(scene.objects[static_cast<std::size_t>(j)].bbox, kPlacementMargin)) {
        return fmt::format("objects {} and {} closer than {} px", j, o.id, kPlacementMargin);
      }
    }
  }
  return std::nullopt;
}

}  // namespace malevic
