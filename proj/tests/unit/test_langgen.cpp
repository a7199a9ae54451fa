#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "malevic/error.hpp"
#include "malevic/langgen.hpp"

using namespace malevic;
using test::grid_scene;

namespace {
constexpr auto C = ShapeKind::kCircle;
constexpr auto R = ShapeKind::kRectangle;
constexpr auto S = ShapeKind::kSquare;
constexpr auto T = ShapeKind::kTriangle;
}  // namespace

TEST_CASE("realize_text templates") {
  CHECK(realize_text(ColorName::kWhite, S, Adjective::kSmall, S) == "The white square is a small square");
  CHECK(realize_text(ColorName::kRed, C, Adjective::kBig, std::nullopt) == "The red circle is a big object");
  CHECK(realize_text(ColorName::kYellow, T, Adjective::kBiggest, T) ==
        "The yellow triangle is the biggest triangle");
  CHECK(realize_text(ColorName::kGreen, R, Adjective::kSmallest, std::nullopt) ==
        "The green rectangle is the smallest object");
}

TEST_CASE("eligible_targets examples") {
  SUBCASE("two white squares are both ambiguous in POS1") {
    const auto s = grid_scene({{S, ColorName::kWhite, 50},
                               {S, ColorName::kWhite, 70},
                               {S, ColorName::kRed, 90},
                               {S, ColorName::kBlue, 60},
                               {S, ColorName::kGreen, 100}},
                              TaskName::kPos1);
    const auto ids = eligible_targets(s, task_spec(TaskName::kPos1));
    CHECK(std::ranges::find(ids, 0) == ids.end());
    CHECK(std::ranges::find(ids, 1) == ids.end());
    CHECK(ids == std::vector<ObjectId>{2, 3, 4});
  }
  SUBCASE("labels 30 and 120 are never eligible") {
    const auto s = grid_scene({{C, ColorName::kWhite, 30},
                               {R, ColorName::kRed, 120},
                               {S, ColorName::kBlue, 60},
                               {T, ColorName::kGreen, 80},
                               {C, ColorName::kYellow, 110}});
    CHECK(eligible_targets(s, task_spec(TaskName::kPos)) == std::vector<ObjectId>{2, 3, 4});
  }
  SUBCASE("SET+POS global maximum is ineligible") {
    const auto s = grid_scene({{C, ColorName::kRed, 110},
                               {C, ColorName::kBlue, 60},
                               {C, ColorName::kWhite, 80},
                               {C, ColorName::kGreen, 50},
                               {S, ColorName::kYellow, 40}},
                              TaskName::kSetPos);
    // red circle is the global max, yellow square the global min and alone in its shape
    CHECK(eligible_targets(s, task_spec(TaskName::kSetPos)) == std::vector<ObjectId>{1, 2, 3});
    // hard set also drops the circle-set extremes (60 is not, 80 is not, 50 is the min)
    CHECK(eligible_targets(s, task_spec(TaskName::kSetPosHard)) == std::vector<ObjectId>{1, 2});
  }
}

TEST_CASE("generate_positive on a POS scene") {
  const auto s = grid_scene({{C, ColorName::kRed, 110},
                             {S, ColorName::kBlue, 40},
                             {T, ColorName::kWhite, 60},
                             {R, ColorName::kGreen, 120},
                             {C, ColorName::kYellow, 30}});
  const auto [t, f] = generate_positive(s, 0, task_spec(TaskName::kPos), VagueK::sharp());
  CHECK(t.text == "The red circle is a big object");
  CHECK(t.truth);
  CHECK(f.text == "The red circle is a small object");
  CHECK_FALSE(f.truth);
  CHECK(f.target_id == t.target_id);
  CHECK(t.k_used == f.k_used);
  CHECK(t.threshold_used.has_value());
  CHECK(*t.threshold_used == doctest::Approx(14400 - 0.29 * (14400 - 900)));

  CHECK_THROWS_AS(generate_positive(s, 4, task_spec(TaskName::kPos), VagueK::sharp()), Error);
}

TEST_CASE("generate_positive on a SET+POS scene judges against the rectangle subset") {
  const auto s = grid_scene({{R, ColorName::kWhite, 90},
                             {R, ColorName::kRed, 100},
                             {R, ColorName::kBlue, 40},
                             {C, ColorName::kGreen, 120},
                             {T, ColorName::kYellow, 30}},
                            TaskName::kSetPos);
  // subset: T = 10000 - 0.29 * (10000 - 1600) = 7564 <= 8100 -> big; whole scene would give 10497 -> small
  const auto [t, f] = generate_positive(s, 0, task_spec(TaskName::kSetPos), VagueK::sharp());
  CHECK(t.text == "The white rectangle is a big rectangle");
  CHECK(*t.threshold_used == doctest::Approx(7564.0));
  CHECK(f.text == "The white rectangle is a small rectangle");
}

TEST_CASE("generate_superlative") {
  const auto s = grid_scene({{T, ColorName::kYellow, 110},
                             {T, ColorName::kRed, 60},
                             {T, ColorName::kBlue, 40},
                             {T, ColorName::kWhite, 80},
                             {T, ColorName::kGreen, 90}},
                            TaskName::kSup1);
  const auto [t, f] = generate_superlative(s, 0);
  CHECK(t.text == "The yellow triangle is the biggest triangle");
  CHECK(t.truth);
  CHECK(f.text == "The yellow triangle is the smallest triangle");
  CHECK_FALSE(f.truth);
  CHECK_FALSE(t.k_used.has_value());
  CHECK_FALSE(t.threshold_used.has_value());

  const auto [ts, fs] = generate_superlative(s, 2);
  CHECK(ts.adjective == Adjective::kSmallest);
  CHECK(fs.adjective == Adjective::kBiggest);

  CHECK_THROWS_AS(generate_superlative(s, 1), Error);
}
