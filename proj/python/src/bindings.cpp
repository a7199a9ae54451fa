#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "malevic/datasetgen.hpp"
#include "malevic/error.hpp"
#include "malevic/manifest_io.hpp"
#include "malevic/renderer.hpp"
#include "malevic/semantics.hpp"
#include "malevic/strategies.hpp"
#include "malevic/validate.hpp"
#include "malevic/verifier.hpp"

namespace py = pybind11;
using namespace malevic;

namespace {

template <typename T, typename Parse>
T parse_or_throw(const std::string& text, Parse parse, const char* what) {
  if (auto v = parse(text)) return *v;
  throw Error(ErrorCode::kInvalidArgument, std::string("unknown ") + what + " '" + text + "'");
}

std::optional<Split> parse_split_arg(const std::optional<std::string>& split) {
  if (!split || *split == "all") return std::nullopt;
  return parse_or_throw<Split>(*split, parse_split, "split");
}

ThresholdConfig make_config(double mu, double sigma, double k_low, double k_high) {
  ThresholdConfig c{mu, sigma, k_low, k_high};
  c.validate();
  return c;
}

py::dict query_dict(const ParsedQuery& q) {
  py::dict d;
  d["color"] = std::string(to_string(q.color));
  d["shape"] = std::string(to_string(q.shape_mention));
  d["head"] = q.head ? std::string(to_string(*q.head)) : std::string("object");
  d["adjective"] = std::string(to_string(q.adjective));
  d["form"] = q.form == SentenceForm::kSuperlative ? "superlative" : "positive";
  return d;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["strategy"] = r.strategy;
  d["task"] = r.task;
  d["split"] = r.split;
  d["n"] = r.n;
  d["accuracy"] = r.overall;
  py::dict types;
  for (const auto& [type, t] : r.by_type) types[py::str(std::string(to_string(type)))] = t.accuracy();
  d["by_type"] = types;
  py::dict shapes;
  for (const auto& [shape, t] : r.by_shape) shapes[py::str(std::string(to_string(shape)))] = t.accuracy();
  d["by_shape"] = shapes;
  d["flip_fraction"] = r.flips.different_fraction();
  return d;
}

py::array_t<std::uint8_t> to_array(const RenderedImage& image) {
  py::array_t<std::uint8_t> out({image.height, image.width, 3});
  std::copy(image.pixels.begin(), image.pixels.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_malevic, m) {
  m.doc() = "Gradable-adjective dataset generator and evaluation workbench";

  static py::exception<Error> error_type(m, "MalevicError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = to_string(e.code());
      if (const auto* pe = dynamic_cast<const ParseError*>(&e)) exc.attr("position") = pe->position();
      if (const auto* se = dynamic_cast<const SchemaError*>(&e)) {
        exc.attr("line") = se->line();
        exc.attr("field") = se->field_path();
      }
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.attr("SCHEMA_VERSION") = kSchemaVersion;
  m.attr("GENERATOR_VERSION") = kGeneratorVersion;
  m.attr("CANVAS_SIZE") = kCanvasSize;
  m.attr("SHARP_K") = kSharpK;

  m.def("parse_sentence", [](const std::string& text) { return query_dict(parse_sentence(text)); },
        py::arg("text"));

  m.def(
      "realize_text",
      [](const std::string& color, const std::string& shape, const std::string& adjective,
         const std::string& head) {
        std::optional<ShapeKind> h;
        if (head != "object") h = parse_or_throw<ShapeKind>(head, parse_shape, "shape");
        return realize_text(parse_or_throw<ColorName>(color, parse_color, "color"),
                            parse_or_throw<ShapeKind>(shape, parse_shape, "shape"),
                            parse_or_throw<Adjective>(adjective, parse_adjective, "adjective"), h);
      },
      py::arg("color"), py::arg("shape"), py::arg("adjective"), py::arg("head") = "object");

  m.def(
      "threshold",
      [](const std::vector<std::int64_t>& areas, double k) {
        std::vector<ReferenceMember> members;
        for (std::size_t i = 0; i < areas.size(); ++i) members.push_back({static_cast<ObjectId>(i), areas[i]});
        return threshold(make_reference(std::move(members)), VagueK::sharp(k));
      },
      py::arg("areas"), py::arg("k") = kSharpK);

  m.def(
      "sample_k",
      [](std::uint64_t seed, int n, double mu, double sigma, double k_low, double k_high) {
        const auto config = make_config(mu, sigma, k_low, k_high);
        Rng rng = make_rng(seed);
        py::array_t<double> out(n);
        auto* data = out.mutable_data();
        for (int i = 0; i < n; ++i) data[i] = sample_k(config, rng).value;
        return out;
      },
      py::arg("seed"), py::arg("n"), py::arg("mu") = 0.29, py::arg("sigma") = 0.066, py::arg("k_low") = 0.01,
      py::arg("k_high") = 0.49);

  py::class_<DatasetManifest>(m, "Manifest")
      .def_property_readonly("task", [](const DatasetManifest& d) { return std::string(to_string(d.task)); })
      .def_readonly("master_seed", &DatasetManifest::master_seed)
      .def("__len__", [](const DatasetManifest& d) { return d.records.size(); })
      .def("to_jsonl",
           [](const DatasetManifest& d) {
             std::ostringstream out;
             serialize(d, out);
             return out.str();
           })
      .def("save", [](const DatasetManifest& d, const std::filesystem::path& path) { serialize(d, path); },
           py::arg("path"))
      .def("scene_json",
           [](const DatasetManifest& d, std::size_t i) { return scene_to_json(d.records.at(i).scene); },
           py::arg("index"));

  m.def(
      "build",
      [](const std::string& task, int size, std::uint64_t seed, unsigned jobs, double mu, double sigma,
         double k_low, double k_high) {
        BuildOptions options;
        options.jobs = jobs;
        options.config.threshold = make_config(mu, sigma, k_low, k_high);
        const auto name = parse_or_throw<TaskName>(task, parse_task, "task");
        py::gil_scoped_release release;
        return build_task(name, size, seed, options);
      },
      py::arg("task"), py::arg("size"), py::arg("seed"), py::arg("jobs") = 0, py::arg("mu") = 0.29,
      py::arg("sigma") = 0.066, py::arg("k_low") = 0.01, py::arg("k_high") = 0.49);

  m.def("load", [](const std::filesystem::path& path) { return load(path); }, py::arg("path"));

  m.def(
      "evaluate",
      [](const std::string& scene_json, const std::string& sentence, std::optional<double> k) {
        const Scene scene = scene_from_json(scene_json);
        return evaluate(scene, parse_sentence(sentence), SharpK{k.value_or(kSharpK)});
      },
      py::arg("scene_json"), py::arg("sentence"), py::arg("k") = py::none());

  m.def(
      "run_strategy",
      [](const std::string& name, const DatasetManifest& manifest, std::optional<std::string> split,
         std::uint64_t seed, double k) {
        const Strategy s{parse_or_throw<StrategyKind>(name, parse_strategy, "strategy"), seed, k};
        return report_dict(run_strategy(s, manifest, parse_split_arg(split)));
      },
      py::arg("strategy"), py::arg("manifest"), py::arg("split") = "test", py::arg("seed") = 0,
      py::arg("k") = kSharpK);

  m.def(
      "flip_fraction",
      [](const DatasetManifest& manifest, std::optional<std::string> split, double k) {
        return flip_analysis(manifest, parse_split_arg(split), k).different_fraction();
      },
      py::arg("manifest"), py::arg("split") = py::none(), py::arg("k") = kSharpK);

  m.def(
      "validate",
      [](const DatasetManifest& manifest, int render_sample) {
        const auto report = validate(manifest, ValidationOptions{render_sample});
        py::dict d;
        d["ok"] = report.ok();
        d["checks_passed"] = report.checks_passed;
        if (report.failure) {
          d["invariant"] = report.failure->invariant;
          d["record_id"] = report.failure->record_id;
          d["detail"] = report.failure->detail;
        }
        return d;
      },
      py::arg("manifest"), py::arg("render_sample") = 3);

  m.def(
      "render",
      [](const std::string& scene_json, std::optional<int> size) {
        auto image = render(scene_from_json(scene_json));
        if (size) image = downscale(image, *size);
        return to_array(image);
      },
      py::arg("scene_json"), py::arg("size") = py::none());
}
