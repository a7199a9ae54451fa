#include "malevic/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "malevic/error.hpp"

namespace malevic {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double geometric_area(const Dims& dims) {
  return std::visit(
      Overloaded{
          [](const CircleDims& d) { return std::numbers::pi * d.radius * d.radius; },
          [](const SquareDims& d) { return d.side * d.side; },
          [](const RectangleDims& d) { return d.width * d.height; },
          [](const TriangleDims& d) { return d.base * d.height / 2.0; },
      },
      dims);
}

double dims_width(const Dims& dims) {
  return std::visit(Overloaded{
                        [](const CircleDims& d) { return 2.0 * d.radius; },
                        [](const SquareDims& d) { return d.side; },
                        [](const RectangleDims& d) { return d.width; },
                        [](const TriangleDims& d) { return d.base; },
                    },
                    dims);
}

double dims_height(const Dims& dims) {
  return std::visit(Overloaded{
                        [](const CircleDims& d) { return 2.0 * d.radius; },
                        [](const SquareDims& d) { return d.side; },
                        [](const RectangleDims& d) { return d.height; },
                        [](const TriangleDims& d) { return d.height; },
                    },
                    dims);
}

BBox bbox_for(const Dims& dims, Point center) {
  const double hw = dims_width(dims) / 2.0;
  const double hh = dims_height(dims) / 2.0;
  return BBox{
      static_cast<int>(std::floor(center.x - hw)),
      static_cast<int>(std::floor(center.y - hh)),
      static_cast<int>(std::ceil(center.x + hw)),
      static_cast<int>(std::ceil(center.y + hh)),
  };
}

const SceneObject& Scene::object(ObjectId id) const {
  const auto it = std::find_if(objects.begin(), objects.end(),
                               [id](const SceneObject& o) { return o.id == id; });
  if (it == objects.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("scene {} has no object with id {}", scene_id, id));
  }
  return *it;
}

bool Scene::shape_homogeneous() const {
  return std::all_of(objects.begin(), objects.end(), [this](const SceneObject& o) {
    return o.shape == objects.front().shape;
  });
}

}  // namespace malevic
