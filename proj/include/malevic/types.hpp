#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace malevic {

enum class ShapeKind : std::uint8_t { kCircle, kRectangle, kSquare, kTriangle };
enum class ColorName : std::uint8_t { kRed, kBlue, kWhite, kYellow, kGreen };

inline constexpr std::array<ShapeKind, 4> kAllShapes = {
    ShapeKind::kCircle, ShapeKind::kRectangle, ShapeKind::kSquare, ShapeKind::kTriangle};
inline constexpr std::array<ColorName, 5> kAllColors = {
    ColorName::kRed, ColorName::kBlue, ColorName::kWhite, ColorName::kYellow, ColorName::kGreen};

std::string_view to_string(ShapeKind shape);
std::string_view to_string(ColorName color);
std::optional<ShapeKind> parse_shape(std::string_view word);
std::optional<ColorName> parse_color(std::string_view word);

// One of the ten area labels 30, 40, ..., 120.
class SizeLabel {
 public:
  static constexpr int kMin = 30;
  static constexpr int kMax = 120;
  static constexpr int kStep = 10;
  static constexpr int kCount = 10;

  // Throws Error(kInvalidArgument) for values outside the label set.
  explicit SizeLabel(int value);

  static SizeLabel from_index(int index) { return SizeLabel(kMin + kStep * index); }
  static bool is_valid(int value) {
    return value >= kMin && value <= kMax && (value - kMin) % kStep == 0;
  }

  int value() const noexcept { return value_; }
  int index() const noexcept { return (value_ - kMin) / kStep; }

  friend bool operator==(SizeLabel, SizeLabel) = default;
  friend auto operator<=>(SizeLabel, SizeLabel) = default;

 private:
  int value_;
};

// Queried objects must carry a label inside this window.
inline constexpr int kQueryLabelLow = 40;
inline constexpr int kQueryLabelHigh = 110;

enum class Adjective : std::uint8_t { kBig, kSmall, kBiggest, kSmallest };

std::string_view to_string(Adjective adjective);
std::optional<Adjective> parse_adjective(std::string_view word);
bool is_superlative(Adjective adjective);
// big <-> small, biggest <-> smallest.
Adjective flip(Adjective adjective);
// Positive-form counterpart: biggest -> big, smallest -> small.
Adjective positive_of(Adjective adjective);

using ObjectId = int;

}  // namespace malevic
