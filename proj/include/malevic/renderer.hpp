#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "malevic/scene.hpp"

namespace malevic {

using Rgb = std::array<std::uint8_t, 3>;

Rgb palette(ColorName color);

struct RenderedImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  Rgb at(int x, int y) const {
    const auto i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const auto i = (static_cast<std::size_t>(y) * width + x) * 3;
    pixels[i] = c[0];
    pixels[i + 1] = c[1];
    pixels[i + 2] = c[2];
  }

  friend bool operator==(const RenderedImage&, const RenderedImage&) = default;
};

// Filled shapes on black, no anti-aliasing; a pixel is painted when its center
// lies inside the shape.
RenderedImage render(const Scene& scene);

// Pixel-center coverage test shared by render() and the footprint counters.
bool covers(const SceneObject& object, double px, double py);

struct AreaMeasurement {
  std::int64_t pixels = 0;
  // Another same-colored object's bbox overlaps the query bbox.
  bool color_collision = false;
};

AreaMeasurement measure_area(const RenderedImage& image, const Scene& scene, ObjectId id);

std::int64_t count_background(const RenderedImage& image);

// Area-averaging resize.
RenderedImage downscale(const RenderedImage& image, int size);

void write_png(const RenderedImage& image, const std::filesystem::path& path);

}  // namespace malevic
