#pragma once

#include <vector>

#include "malevic/scene.hpp"
#include "malevic/scenegen.hpp"

namespace malevic::test {

struct Spec {
  ShapeKind shape;
  ColorName color;
  int label;
};

// Scene with objects laid out on a coarse grid (always separated).
inline Scene grid_scene(const std::vector<Spec>& specs, TaskName task = TaskName::kPos) {
  Scene scene;
  scene.scene_id = "test-scene";
  scene.task = task;
  int i = 0;
  for (const auto& s : specs) {
    SceneObject o;
    o.id = i;
    o.shape = s.shape;
    o.color = s.color;
    o.size_label = SizeLabel(s.label);
    o.pixel_area = label_area(o.size_label);
    // Fixed mid-range ratios keep the fixture independent of any generator.
    const double ratio = s.shape == ShapeKind::kRectangle ? 2.0 : 1.0;
    o.dims = solve_dimensions_with_ratio(s.shape, o.pixel_area, ratio);
    o.center = {200 + 400 * (i % 3), 200 + 400 * (i / 3)};
    o.bbox = bbox_for(o.dims, o.center);
    scene.objects.push_back(o);
    ++i;
  }
  return scene;
}

}  // namespace malevic::test
