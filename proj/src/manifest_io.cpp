#include "malevic/manifest_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "malevic/error.hpp"

namespace malevic {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

ojson dims_json(const Dims& dims) {
  return std::visit(
      [](const auto& d) -> ojson {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CircleDims>) return {{"radius", d.radius}};
        if constexpr (std::is_same_v<T, SquareDims>) return {{"side", d.side}};
        if constexpr (std::is_same_v<T, RectangleDims>) return {{"width", d.width}, {"height", d.height}};
        if constexpr (std::is_same_v<T, TriangleDims>) return {{"base", d.base}, {"height", d.height}};
      },
      dims);
}

ojson scene_json(const Scene& scene) {
  ojson objects = ojson::array();
  for (const auto& o : scene.objects) {
    objects.push_back({
        {"id", o.id},
        {"shape", to_string(o.shape)},
        {"color", to_string(o.color)},
        {"size_label", o.size_label.value()},
        {"pixel_area", o.pixel_area},
        {"dims", dims_json(o.dims)},
        {"center", {o.center.x, o.center.y}},
        {"bbox", {o.bbox.x0, o.bbox.y0, o.bbox.x1, o.bbox.y1}},
    });
  }
  return {
      {"scene_id", scene.scene_id},
      {"canvas_size", scene.canvas_size},
      {"task", to_string(scene.task)},
      {"rng_seed", scene.rng_seed},
      {"objects", std::move(objects)},
  };
}

ojson sentence_json(const SentenceRecord& r) {
  ojson j = {
      {"text", r.text},
      {"target_id", r.target_id},
      {"target_color", to_string(r.target_color)},
      {"target_shape", to_string(r.target_shape)},
      {"head", r.head ? to_string(*r.head) : std::string_view("object")},
      {"adjective", to_string(r.adjective)},
      {"form", r.superlative() ? "superlative" : "positive"},
      {"truth", r.truth},
  };
  if (r.k_used) {
    j["k_used"] = {{"value", r.k_used->value},
                   {"source", r.k_used->source == KSource::kSampled ? "sampled" : "sharp"}};
  }
  if (r.threshold_used) j["threshold_used"] = *r.threshold_used;
  if (r.norm_distance) j["norm_distance"] = *r.norm_distance;
  return j;
}

ojson header_json(const DatasetManifest& m) {
  const auto& t = m.config.threshold;
  return {
      {"type", "header"},
      {"schema_version", m.schema_version},
      {"generator_version", m.generator_version},
      {"task", to_string(m.task)},
      {"master_seed", m.master_seed},
      {"config",
       {{"threshold", {{"mu", t.mu}, {"sigma", t.sigma}, {"k_low", t.k_low}, {"k_high", t.k_high}}},
        {"canvas_size", kCanvasSize}}},
      {"records", m.records.size()},
  };
}

ojson record_json(const Datapoint& dp) {
  return {
      {"type", "record"},
      {"record_id", dp.record_id},
      {"unit_id", dp.unit_id},
      {"split", to_string(dp.split)},
      {"class",
       {{"shape", to_string(dp.class_key.shape)},
        {"color", to_string(dp.class_key.color)},
        {"adjective", to_string(dp.class_key.adjective)},
        {"truth", dp.class_key.truth}}},
      {"scene", scene_json(dp.scene)},
      {"sentence", sentence_json(dp.sentence)},
  };
}

// Field access with line/path bookkeeping for schema errors.
class Reader {
 public:
  Reader(std::size_t line, std::string path) : line_(line), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw SchemaError(line_, join(key), message);
  }

  const json& field(const json& obj, const std::string& key) const {
    if (!obj.is_object()) fail("", "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing");
    return *it;
  }

  bool has(const json& obj, const std::string& key) const { return obj.contains(key); }

  Reader child(const std::string& key) const { return Reader(line_, join(key)); }

  std::string str(const json& obj, const std::string& key) const {
    const auto& v = field(obj, key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }
  std::int64_t integer(const json& obj, const std::string& key) const {
    const auto& v = field(obj, key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<std::int64_t>();
  }
  std::uint64_t uinteger(const json& obj, const std::string& key) const {
    const auto& v = field(obj, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(key, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }
  double number(const json& obj, const std::string& key) const {
    const auto& v = field(obj, key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }
  bool boolean(const json& obj, const std::string& key) const {
    const auto& v = field(obj, key);
    if (!v.is_boolean()) fail(key, "expected a boolean");
    return v.get<bool>();
  }

  template <typename T, typename Parse>
  T word(const json& obj, const std::string& key, Parse parse) const {
    const auto text = str(obj, key);
    const std::optional<T> v = parse(text);
    if (!v) fail(key, fmt::format("unknown value '{}'", text));
    return *v;
  }

  std::size_t line() const { return line_; }
  const std::string& path() const { return path_; }

 private:
  std::string join(const std::string& key) const {
    if (key.empty()) return path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  std::size_t line_;
  std::string path_;
};

Dims read_dims(const Reader& rd, const json& j, ShapeKind shape) {
  switch (shape) {
    case ShapeKind::kCircle: return CircleDims{rd.number(j, "radius")};
    case ShapeKind::kSquare: return SquareDims{rd.number(j, "side")};
    case ShapeKind::kRectangle: return RectangleDims{rd.number(j, "width"), rd.number(j, "height")};
    case ShapeKind::kTriangle: return TriangleDims{rd.number(j, "base"), rd.number(j, "height")};
  }
  rd.fail("", "unknown shape");
}

std::vector<int> int_array(const Reader& rd, const json& obj, const std::string& key, std::size_t n) {
  const auto& v = rd.field(obj, key);
  if (!v.is_array() || v.size() != n) rd.fail(key, fmt::format("expected an array of {} integers", n));
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) rd.fail(key, "expected integers");
    out.push_back(e.get<int>());
  }
  return out;
}

Scene read_scene(const Reader& rd, const json& j) {
  Scene s;
  s.scene_id = rd.str(j, "scene_id");
  s.canvas_size = static_cast<int>(rd.integer(j, "canvas_size"));
  s.task = rd.word<TaskName>(j, "task", parse_task);
  s.rng_seed = rd.uinteger(j, "rng_seed");
  const auto& objs = rd.field(j, "objects");
  if (!objs.is_array()) rd.fail("objects", "expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const Reader ord = rd.child(fmt::format("objects[{}]", i));
    const auto& oj = objs[i];
    SceneObject o;
    o.id = static_cast<ObjectId>(ord.integer(oj, "id"));
    o.shape = ord.word<ShapeKind>(oj, "shape", parse_shape);
    o.color = ord.word<ColorName>(oj, "color", parse_color);
    const auto label = ord.integer(oj, "size_label");
    if (!SizeLabel::is_valid(static_cast<int>(label))) ord.fail("size_label", "not one of 30..120");
    o.size_label = SizeLabel(static_cast<int>(label));
    o.pixel_area = ord.integer(oj, "pixel_area");
    o.dims = read_dims(ord.child("dims"), ord.field(oj, "dims"), o.shape);
    const auto c = int_array(ord, oj, "center", 2);
    o.center = {c[0], c[1]};
    const auto b = int_array(ord, oj, "bbox", 4);
    o.bbox = {b[0], b[1], b[2], b[3]};
    s.objects.push_back(std::move(o));
  }
  return s;
}

SentenceRecord read_sentence(const Reader& rd, const json& j) {
  SentenceRecord r;
  r.text = rd.str(j, "text");
  r.target_id = static_cast<ObjectId>(rd.integer(j, "target_id"));
  r.target_color = rd.word<ColorName>(j, "target_color", parse_color);
  r.target_shape = rd.word<ShapeKind>(j, "target_shape", parse_shape);
  const auto head = rd.str(j, "head");
  if (head != "object") {
    r.head = parse_shape(head);
    if (!r.head) rd.fail("head", fmt::format("unknown value '{}'", head));
  }
  r.adjective = rd.word<Adjective>(j, "adjective", parse_adjective);
  const auto form = rd.str(j, "form");
  if (form != (r.superlative() ? "superlative" : "positive")) {
    rd.fail("form", fmt::format("'{}' does not match adjective '{}'", form, to_string(r.adjective)));
  }
  r.truth = rd.boolean(j, "truth");
  if (!r.superlative()) {
    const Reader kd = rd.child("k_used");
    const auto& kj = rd.field(j, "k_used");
    VagueK k;
    k.value = kd.number(kj, "value");
    const auto source = kd.str(kj, "source");
    if (source == "sampled") {
      k.source = KSource::kSampled;
    } else if (source == "sharp") {
      k.source = KSource::kSharp;
    } else {
      kd.fail("source", fmt::format("unknown value '{}'", source));
    }
    r.k_used = k;
    r.threshold_used = rd.number(j, "threshold_used");
    r.norm_distance = rd.number(j, "norm_distance");
  } else if (rd.has(j, "k_used")) {
    rd.fail("k_used", "superlative records carry no k");
  }
  if (realize_text(r) != r.text) {
    rd.fail("text", fmt::format("'{}' does not match its fields", r.text));
  }
  return r;
}

Datapoint read_record(const Reader& rd, const json& j) {
  if (rd.str(j, "type") != "record") rd.fail("type", "expected 'record'");
  Datapoint dp;
  dp.record_id = rd.integer(j, "record_id");
  dp.unit_id = rd.integer(j, "unit_id");
  dp.split = rd.word<Split>(j, "split", parse_split);
  const Reader cd = rd.child("class");
  const auto& cj = rd.field(j, "class");
  dp.class_key.shape = cd.word<ShapeKind>(cj, "shape", parse_shape);
  dp.class_key.color = cd.word<ColorName>(cj, "color", parse_color);
  dp.class_key.adjective = cd.word<Adjective>(cj, "adjective", parse_adjective);
  dp.class_key.truth = cd.boolean(cj, "truth");
  dp.scene = read_scene(rd.child("scene"), rd.field(j, "scene"));
  dp.sentence = read_sentence(rd.child("sentence"), rd.field(j, "sentence"));
  return dp;
}

json parse_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(line_no, "", fmt::format("malformed JSON ({})", e.what()));
  }
}

}  // namespace

void serialize(const DatasetManifest& manifest, std::ostream& out) {
  out << header_json(manifest).dump() << '\n';
  for (const auto& dp : manifest.records) out << record_json(dp).dump() << '\n';
}

void serialize(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  serialize(manifest, out);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("write to {} failed", path.string()));
}

DatasetManifest load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(1, "", "empty manifest");
  const json header = parse_line(line, 1);
  const Reader hd(1, "");
  if (hd.str(header, "type") != "header") hd.fail("type", "expected 'header'");

  DatasetManifest m;
  m.schema_version = static_cast<int>(hd.integer(header, "schema_version"));
  if (m.schema_version != kSchemaVersion) {
    hd.fail("schema_version", fmt::format("unsupported version {} (expected {})", m.schema_version,
                                          kSchemaVersion));
  }
  m.generator_version = hd.str(header, "generator_version");
  m.task = hd.word<TaskName>(header, "task", parse_task);
  m.master_seed = hd.uinteger(header, "master_seed");
  const Reader td = hd.child("config").child("threshold");
  const auto& tj = td.field(hd.field(header, "config"), "threshold");
  m.config.threshold = {td.number(tj, "mu"), td.number(tj, "sigma"), td.number(tj, "k_low"),
                        td.number(tj, "k_high")};
  const auto expected = hd.uinteger(header, "records");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    m.records.push_back(read_record(Reader(line_no, ""), parse_line(line, line_no)));
  }
  if (m.records.size() != expected) {
    throw SchemaError(line_no, "records",
                      fmt::format("header declares {} records, found {}", expected, m.records.size()));
  }
  return m;
}

DatasetManifest load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()));
  return load(in);
}

std::string scene_to_json(const Scene& scene) { return scene_json(scene).dump(); }

Scene scene_from_json(const std::string& text) {
  const json j = parse_line(text, 1);
  // Accept either a bare scene or a manifest record line.
  if (j.is_object() && j.contains("scene")) return read_scene(Reader(1, "scene"), j.at("scene"));
  return read_scene(Reader(1, ""), j);
}

}  // namespace malevic
