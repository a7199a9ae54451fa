#include "malevic/renderer.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <png.h>

#include "malevic/error.hpp"

namespace malevic {

Rgb palette(ColorName color) {
  switch (color) {
    case ColorName::kRed: return {255, 0, 0};
    case ColorName::kBlue: return {0, 0, 255};
    case ColorName::kWhite: return {255, 255, 255};
    case ColorName::kYellow: return {255, 255, 0};
    case ColorName::kGreen: return {0, 255, 0};
  }
  return {0, 0, 0};
}

bool covers(const SceneObject& object, double px, double py) {
  const double dx = px - object.center.x;
  const double dy = py - object.center.y;
  return std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CircleDims>) {
          return dx * dx + dy * dy <= d.radius * d.radius;
        } else if constexpr (std::is_same_v<T, SquareDims>) {
          return -d.side / 2 <= dx && dx < d.side / 2 && -d.side / 2 <= dy && dy < d.side / 2;
        } else if constexpr (std::is_same_v<T, RectangleDims>) {
          // Sides snap to whole pixels; an integer center otherwise forces even extents.
          const double w = std::max(1.0, std::round(d.width)) / 2;
          const double h = std::max(1.0, std::round(d.height)) / 2;
          return -w <= dx && dx < w && -h <= dy && dy < h;
        } else {
          // Apex at the top, base at the bottom.
          const double t = (dy + d.height / 2) / d.height;
          if (t < 0.0 || t >= 1.0) return false;
          const double half = d.base / 2 * t;
          return -half <= dx && dx < half;
        }
      },
      object.dims);
}

RenderedImage render(const Scene& scene) {
  RenderedImage image;
  image.width = scene.canvas_size;
  image.height = scene.canvas_size;
  image.pixels.assign(static_cast<std::size_t>(image.width) * image.height * 3, 0);
  for (const auto& o : scene.objects) {
    const Rgb color = palette(o.color);
    const int x0 = std::max(o.bbox.x0, 0);
    const int y0 = std::max(o.bbox.y0, 0);
    const int x1 = std::min(o.bbox.x1, image.width);
    const int y1 = std::min(o.bbox.y1, image.height);
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        if (covers(o, x + 0.5, y + 0.5)) image.set(x, y, color);
      }
    }
  }
  return image;
}

AreaMeasurement measure_area(const RenderedImage& image, const Scene& scene, ObjectId id) {
  const auto& object = scene.object(id);
  const Rgb color = palette(object.color);
  AreaMeasurement m;
  for (const auto& other : scene.objects) {
    if (other.id != id && other.color == object.color && other.bbox.intersects(object.bbox)) {
      m.color_collision = true;
    }
  }
  const int x0 = std::max(object.bbox.x0, 0);
  const int y0 = std::max(object.bbox.y0, 0);
  const int x1 = std::min(object.bbox.x1, image.width);
  const int y1 = std::min(object.bbox.y1, image.height);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (image.at(x, y) == color) ++m.pixels;
    }
  }
  return m;
}

std::int64_t count_background(const RenderedImage& image) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < image.pixels.size(); i += 3) {
    if (image.pixels[i] == 0 && image.pixels[i + 1] == 0 && image.pixels[i + 2] == 0) ++n;
  }
  return n;
}

namespace {

struct Tap {
  int index;
  double weight;
};

// Fractional overlap of each source cell with each destination cell.
std::vector<std::vector<Tap>> box_taps(int src, int dst) {
  std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / dst;
  for (int o = 0; o < dst; ++o) {
    const double lo = o * scale;
    const double hi = (o + 1) * scale;
    for (int i = static_cast<int>(std::floor(lo)); i < std::min(src, static_cast<int>(std::ceil(hi))); ++i) {
      const double w = std::min<double>(hi, i + 1) - std::max<double>(lo, i);
      if (w > 0) taps[static_cast<std::size_t>(o)].push_back({i, w / scale});
    }
  }
  return taps;
}

}  // namespace

RenderedImage downscale(const RenderedImage& image, int size) {
  if (size <= 0) throw Error(ErrorCode::kInvalidArgument, "downscale size must be positive");
  const auto xt = box_taps(image.width, size);
  const auto yt = box_taps(image.height, size);
  RenderedImage out;
  out.width = size;
  out.height = size;
  out.pixels.assign(static_cast<std::size_t>(size) * size * 3, 0);
  for (int oy = 0; oy < size; ++oy) {
    for (int ox = 0; ox < size; ++ox) {
      std::array<double, 3> acc{};
      for (const auto& ty : yt[static_cast<std::size_t>(oy)]) {
        for (const auto& tx : xt[static_cast<std::size_t>(ox)]) {
          const Rgb c = image.at(tx.index, ty.index);
          const double w = tx.weight * ty.weight;
          for (int ch = 0; ch < 3; ++ch) acc[static_cast<std::size_t>(ch)] += w * c[static_cast<std::size_t>(ch)];
        }
      }
      Rgb c;
      for (int ch = 0; ch < 3; ++ch) {
        c[static_cast<std::size_t>(ch)] =
            static_cast<std::uint8_t>(std::clamp(std::lround(acc[static_cast<std::size_t>(ch)]), 0L, 255L));
      }
      out.set(ox, oy, c);
    }
  }
  return out;
}

void write_png(const RenderedImage& image, const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  if (png_image_write_to_file(&png, path.string().c_str(), 0, image.pixels.data(), image.width * 3,
                              nullptr) == 0) {
    const std::string reason = png.message;
    png_image_free(&png);
    throw Error(ErrorCode::kIo, fmt::format("cannot write {}: {}", path.string(), reason));
  }
}

}  // namespace malevic
