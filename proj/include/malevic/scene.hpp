#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "malevic/task.hpp"
#include "malevic/types.hpp"

namespace malevic {

inline constexpr int kCanvasSize = 1478;
inline constexpr int kMinObjects = 5;
inline constexpr int kMaxObjects = 9;
inline constexpr int kPlacementMargin = 4;

struct CircleDims {
  double radius = 0.0;
  friend bool operator==(const CircleDims&, const CircleDims&) = default;
};
struct SquareDims {
  double side = 0.0;
  friend bool operator==(const SquareDims&, const SquareDims&) = default;
};
struct RectangleDims {
  double width = 0.0;
  double height = 0.0;
  friend bool operator==(const RectangleDims&, const RectangleDims&) = default;
};
// Isoceles, apex up, base horizontal.
struct TriangleDims {
  double base = 0.0;
  double height = 0.0;
  friend bool operator==(const TriangleDims&, const TriangleDims&) = default;
};

using Dims = std::variant<CircleDims, SquareDims, RectangleDims, TriangleDims>;

double geometric_area(const Dims& dims);
// Full extent of the shape (width, height) in pixels.
double dims_width(const Dims& dims);
double dims_height(const Dims& dims);

// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct BBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  std::int64_t area() const { return std::int64_t{width()} * height(); }
  bool intersects(const BBox& other) const {
    return x0 < other.x1 && other.x0 < x1 && y0 < other.y1 && other.y0 < y1;
  }
  // True if the boxes are separated by at least `margin` pixels on some axis.
  bool separated(const BBox& other, int margin) const {
    return x1 + margin <= other.x0 || other.x1 + margin <= x0 || y1 + margin <= other.y0 ||
           other.y1 + margin <= y0;
  }
  bool inside_canvas(int canvas) const { return x0 >= 0 && y0 >= 0 && x1 <= canvas && y1 <= canvas; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Tightest box that covers every pixel the renderer may fill for `dims` at `center`.
BBox bbox_for(const Dims& dims, Point center);

struct SceneObject {
  ObjectId id = 0;
  ShapeKind shape = ShapeKind::kCircle;
  ColorName color = ColorName::kRed;
  SizeLabel size_label{SizeLabel::kMin};
  std::int64_t pixel_area = 0;
  Dims dims;
  Point center;
  BBox bbox;

  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

struct Scene {
  std::string scene_id;
  int canvas_size = kCanvasSize;
  std::vector<SceneObject> objects;
  TaskName task = TaskName::kPos;
  std::uint64_t rng_seed = 0;

  const SceneObject& object(ObjectId id) const;
  bool shape_homogeneous() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

}  // namespace malevic
