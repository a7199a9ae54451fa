#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "malevic/datasetgen.hpp"
#include "malevic/error.hpp"
#include "malevic/manifest_io.hpp"

using namespace malevic;

namespace {

std::vector<std::string> lines_of(const DatasetManifest& m) {
  std::ostringstream out;
  serialize(m, out);
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

SchemaError load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    load(in);
  } catch (const SchemaError& e) {
    return e;
  }
  FAIL("expected a schema error");
  return SchemaError(0, "", "");
}

}  // namespace

TEST_CASE("round trip on a 160-record manifest") {
  for (auto task : {TaskName::kPos, TaskName::kSup1, TaskName::kSetPosHard}) {
    const auto m = build_task(task, 160, 11);
    std::ostringstream out;
    serialize(m, out);
    std::istringstream in(out.str());
    CHECK(load(in) == m);
  }
}

TEST_CASE("serialization is byte-stable") {
  const auto a = lines_of(build_task(TaskName::kPos, 160, 12));
  const auto b = lines_of(build_task(TaskName::kPos, 160, 12));
  CHECK(a == b);
  CHECK(a.size() == 161);
}

TEST_CASE("truncated line is reported at its line number") {
  auto lines = lines_of(build_task(TaskName::kPos, 160, 13));
  lines[5] = lines[5].substr(0, lines[5].size() / 2);
  const auto e = load_error(join(lines));
  CHECK(e.code() == ErrorCode::kSchemaViolation);
  CHECK(e.line() == 6);
}

TEST_CASE("missing k_used names the field") {
  auto lines = lines_of(build_task(TaskName::kPos, 160, 14));
  const auto at = lines[3].find("\"k_used\"");
  REQUIRE(at != std::string::npos);
  const auto end = lines[3].find('}', at);
  lines[3].erase(at, end - at + 2);  // drop the object and its trailing comma
  const auto e = load_error(join(lines));
  CHECK(e.line() == 4);
  CHECK(e.field_path() == "sentence.k_used");
}

TEST_CASE("schema version and record count are checked") {
  auto lines = lines_of(build_task(TaskName::kPos, 160, 15));
  auto bad_version = lines;
  const auto at = bad_version[0].find("\"schema_version\":1");
  REQUIRE(at != std::string::npos);
  bad_version[0].replace(at, 18, "\"schema_version\":9");
  CHECK(load_error(join(bad_version)).line() == 1);

  auto short_file = lines;
  short_file.pop_back();
  CHECK(load_error(join(short_file)).code() == ErrorCode::kSchemaViolation);

  auto wrong_text = lines;
  const auto big = wrong_text[2].find("is a big");
  const auto small = wrong_text[2].find("is a small");
  if (big != std::string::npos) {
    wrong_text[2].replace(big, 8, "is a tiny");
  } else {
    wrong_text[2].replace(small, 10, "is a tiny");
  }
  CHECK(load_error(join(wrong_text)).line() == 3);
}

TEST_CASE("scene json round trip") {
  const auto m = build_task(TaskName::kSetPos, 160, 16);
  const auto& scene = m.records.front().scene;
  CHECK(scene_from_json(scene_to_json(scene)) == scene);
  CHECK_THROWS_AS(scene_from_json("{\"objects\": 3}"), Error);
}
