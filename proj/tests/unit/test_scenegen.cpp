#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "helpers.hpp"
#include "malevic/error.hpp"
#include "malevic/langgen.hpp"
#include "malevic/scenegen.hpp"

using namespace malevic;

namespace {

// Oracle: licensing written out per task from the query rules, without
// going through TaskSpec flags.
bool oracle_licensed(const Scene& s, TaskName task, const SceneObject& o) {
  const bool by_color = task == TaskName::kSup1 || task == TaskName::kPos1;
  int same = 0;
  for (const auto& x : s.objects) {
    if (x.color == o.color && (by_color || x.shape == o.shape)) ++same;
  }
  if (same != 1) return false;
  const int label = o.size_label.value();
  if (label < 40 || label > 110) return false;

  std::int64_t gmax = 0, gmin = INT64_MAX, rmax = 0, rmin = INT64_MAX;
  int shape_count = 0;
  for (const auto& x : s.objects) {
    gmax = std::max(gmax, x.pixel_area);
    gmin = std::min(gmin, x.pixel_area);
    if (x.shape == o.shape) {
      ++shape_count;
      rmax = std::max(rmax, x.pixel_area);
      rmin = std::min(rmin, x.pixel_area);
    }
  }
  const bool set_task = task == TaskName::kSetPos || task == TaskName::kSetPosHard ||
                        task == TaskName::kCompSeen || task == TaskName::kCompUnseen;
  if (set_task) {
    if (o.pixel_area == gmax || o.pixel_area == gmin) return false;
    if (shape_count < 3) return false;
  }
  if (task == TaskName::kPosHard && (o.pixel_area == gmax || o.pixel_area == gmin)) return false;
  if (task == TaskName::kSetPosHard && (o.pixel_area == rmax || o.pixel_area == rmin)) return false;
  return true;
}

constexpr TaskName kTasks[] = {TaskName::kSup1,    TaskName::kPos1,       TaskName::kPos,
                               TaskName::kSetPos,  TaskName::kPosHard,    TaskName::kSetPosHard,
                               TaskName::kCompSeen, TaskName::kCompUnseen};

}  // namespace

TEST_CASE("label_area") {
  CHECK(label_area(SizeLabel(30)) == 900);
  CHECK(label_area(SizeLabel(80)) == 6400);
  CHECK(label_area(SizeLabel(120)) == 14400);
  CHECK_THROWS_AS(SizeLabel(35), Error);
  CHECK_THROWS_AS(SizeLabel(130), Error);
}

TEST_CASE("solve_dimensions") {
  const auto circle = std::get<CircleDims>(solve_dimensions_with_ratio(ShapeKind::kCircle, 900, 1.0));
  CHECK(circle.radius == doctest::Approx(std::sqrt(900 / std::numbers::pi)));
  CHECK(circle.radius == doctest::Approx(16.93).epsilon(0.001));

  const auto rect = std::get<RectangleDims>(solve_dimensions_with_ratio(ShapeKind::kRectangle, 6400, 2.0));
  CHECK(rect.width == doctest::Approx(std::sqrt(12800.0)));
  CHECK(rect.height == doctest::Approx(std::sqrt(3200.0)));
  CHECK(rect.width == doctest::Approx(113.14).epsilon(0.001));
  CHECK(rect.height == doctest::Approx(56.57).epsilon(0.001));

  Rng rng = make_rng(3);
  for (int i = 0; i < 500; ++i) {
    for (auto shape : kAllShapes) {
      const auto label = SizeLabel::from_index(i % SizeLabel::kCount);
      const auto area = label_area(label);
      const auto dims = solve_dimensions(shape, area, rng);
      CHECK(geometric_area(dims) == doctest::Approx(static_cast<double>(area)).epsilon(1e-9));
      if (shape == ShapeKind::kRectangle) {
        const auto& r = std::get<RectangleDims>(dims);
        const double ratio = std::max(r.width, r.height) / std::min(r.width, r.height);
        CHECK(ratio >= 1.5 - 1e-9);
        CHECK(ratio <= 3.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("placement of nine largest squares never fails") {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng = make_rng(seed);
    std::vector<SceneObject> objects(9);
    for (int i = 0; i < 9; ++i) {
      auto& o = objects[static_cast<std::size_t>(i)];
      o.id = i;
      o.shape = ShapeKind::kSquare;
      o.size_label = SizeLabel(120);
      o.pixel_area = 14400;
      o.dims = solve_dimensions(o.shape, o.pixel_area, rng);
    }
    try {
      place_nonoverlapping(objects, rng);
    } catch (const Error&) {
      ++failures;
      continue;
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
      CHECK(objects[i].bbox.inside_canvas(kCanvasSize));
      for (std::size_t j = 0; j < i; ++j) CHECK(objects[i].bbox.separated(objects[j].bbox, kPlacementMargin));
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("oversized placement input fails") {
  Rng rng = make_rng(1);
  std::vector<SceneObject> objects(9);
  for (int i = 0; i < 9; ++i) {
    objects[static_cast<std::size_t>(i)].id = i;
    objects[static_cast<std::size_t>(i)].dims = SquareDims{120.0};
  }
  try {
    place_nonoverlapping(objects, rng, 300);
    FAIL("expected placement failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPlacementFailure);
  }
}

TEST_CASE("property: eligible_targets agrees with the licensing oracle") {
  Rng rng = make_rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto task = kTasks[trial % 8];
    const bool homogeneous = task == TaskName::kSup1 || task == TaskName::kPos1;
    std::vector<test::Spec> specs;
    const int n = uniform_int(rng, 5, 9);
    const auto base_shape = kAllShapes[static_cast<std::size_t>(uniform_int(rng, 0, 3))];
    for (int i = 0; i < n; ++i) {
      // Small palettes make collisions and ties frequent.
      specs.push_back({homogeneous ? base_shape : kAllShapes[static_cast<std::size_t>(uniform_int(rng, 0, 1))],
                       kAllColors[static_cast<std::size_t>(uniform_int(rng, 0, 2))],
                       30 + 10 * uniform_int(rng, 0, 9)});
    }
    const auto scene = test::grid_scene(specs, task);
    std::vector<ObjectId> expected;
    for (const auto& o : scene.objects) {
      if (oracle_licensed(scene, task, o)) expected.push_back(o.id);
    }
    CHECK(eligible_targets(scene, task_spec(task)) == expected);
  }
}

TEST_CASE("sample_scene honours the class and the licensing rules") {
  Rng rng = make_rng(77);
  for (auto name : kTasks) {
    const auto task = task_spec(name);
    int drawn = 0;
    for (auto shape : kAllShapes) {
      for (auto color : kAllColors) {
        for (bool truth : {true, false}) {
          const Adjective adj = task.superlative ? (truth ? Adjective::kBiggest : Adjective::kSmallest)
                                                 : (truth ? Adjective::kBig : Adjective::kSmall);
          if (!pair_allowed(task, adj, shape)) continue;
          const ClassKey key{shape, color, adj, truth};
          auto draw = sample_scene(task, key, rng);
          ++drawn;
          draw.scene.scene_id = "x";
          CHECK_FALSE(check_scene(draw.scene).has_value());
          const auto& t = draw.scene.object(draw.target);
          CHECK(t.shape == shape);
          CHECK(t.color == color);
          CHECK(oracle_licensed(draw.scene, name, t));
          if (task.shape_homogeneous) CHECK(draw.scene.shape_homogeneous());
          CHECK(draw.k.has_value() == !task.superlative);
          if (!task.superlative) {
            const auto j = judge(t, task_reference(draw.scene, task, t.id), *draw.k);
            CHECK(j.is_big == (key.judged() == Adjective::kBig));
          } else {
            const auto [big, small] = superlative(whole_scene(draw.scene));
            CHECK((key.judged() == Adjective::kBiggest ? big : small) == t.id);
          }
        }
      }
    }
    CHECK(drawn > 0);
  }
}

TEST_CASE("sample_scene rejects a class from the wrong form and gives up when capped") {
  Rng rng = make_rng(5);
  const ClassKey sup{ShapeKind::kSquare, ColorName::kRed, Adjective::kBiggest, true};
  CHECK_THROWS_AS(sample_scene(task_spec(TaskName::kPos), sup, rng), Error);

  SceneSampler capped;
  capped.max_resamples = 0;
  const ClassKey pos{ShapeKind::kSquare, ColorName::kRed, Adjective::kBig, true};
  try {
    sample_scene(task_spec(TaskName::kSetPosHard), pos, rng, capped);
    FAIL("expected exhausted retries");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExhaustedRetries);
    CHECK(std::string(e.what()).find("square") != std::string::npos);
  }
}

TEST_CASE("check_scene reports overlap and foreign areas") {
  auto scene = test::grid_scene({{ShapeKind::kSquare, ColorName::kRed, 50},
                                 {ShapeKind::kSquare, ColorName::kBlue, 60},
                                 {ShapeKind::kSquare, ColorName::kWhite, 70},
                                 {ShapeKind::kSquare, ColorName::kGreen, 80},
                                 {ShapeKind::kSquare, ColorName::kYellow, 90}});
  CHECK_FALSE(check_scene(scene).has_value());
  auto overlap = scene;
  overlap.objects[1].center = overlap.objects[0].center;
  overlap.objects[1].bbox = bbox_for(overlap.objects[1].dims, overlap.objects[1].center);
  CHECK(check_scene(overlap).has_value());
  auto wrong_area = scene;
  wrong_area.objects[2].pixel_area += 1;
  CHECK(check_scene(wrong_area).has_value());
}
