// malevic: generate, render, verify, evaluate and validate gradable-adjective
// datasets from the command line.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "malevic/datasetgen.hpp"
#include "malevic/error.hpp"
#include "malevic/manifest_io.hpp"
#include "malevic/renderer.hpp"
#include "malevic/stats.hpp"
#include "malevic/strategies.hpp"
#include "malevic/validate.hpp"
#include "malevic/verifier.hpp"

namespace fs = std::filesystem;
using namespace malevic;

namespace {

constexpr int kValidationFailedExit = 7;

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int default_size(TaskName task) {
  switch (task) {
    case TaskName::kPosHard:
    case TaskName::kSetPosHard: return 2000;
    case TaskName::kCompSeen: return 10000;
    case TaskName::kCompUnseen: return 1000;
    default: return 20000;
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void render_scenes(const DatasetManifest& m, const fs::path& dir, bool downscaled, int limit) {
  const fs::path full = dir / "images" / std::string(to_string(m.task));
  fs::create_directories(full);
  if (downscaled) fs::create_directories(full / "224");
  std::set<std::string> done;
  for (const auto& dp : m.records) {
    if (limit >= 0 && static_cast<int>(done.size()) >= limit) break;
    if (!done.insert(dp.scene.scene_id).second) continue;
    const auto image = render(dp.scene);
    write_png(image, full / (dp.scene.scene_id + ".png"));
    if (downscaled) write_png(downscale(image, 224), full / "224" / (dp.scene.scene_id + ".png"));
  }
}

void print_summary(const DatasetManifest& m, std::ostream& out) {
  std::map<ClassKey, std::int64_t> classes;
  std::map<Split, std::int64_t> splits;
  std::map<int, std::int64_t> labels;
  for (const auto& dp : m.records) {
    ++classes[dp.class_key];
    ++splits[dp.split];
    ++labels[dp.scene.object(dp.sentence.target_id).size_label.value()];
  }
  std::int64_t lo = INT64_MAX;
  std::int64_t hi = 0;
  for (const auto& [k, n] : classes) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  out << fmt::format("task {}: {} records, {} classes, {}..{} records per class\n", to_string(m.task),
                     m.records.size(), classes.size(), lo, hi);
  for (const auto& [s, n] : splits) out << fmt::format("  split {:<5} {}\n", to_string(s), n);
  out << "  queried labels:";
  for (const auto& [l, n] : labels) out << fmt::format(" {}:{}", l, n);
  out << "\n";
  const auto flips = flip_analysis(m);
  if (flips.total() > 0) {
    out << fmt::format("  truth changes under sharp k = {}: {:.4f}\n", kSharpK, flips.different_fraction());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradable-adjective dataset generator and evaluation workbench"};
  app.set_config("--config", "", "TOML-style configuration file");
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Build, split and serialize a dataset");
  std::string task_name;
  int size = 0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  unsigned jobs = 0;
  bool no_images = false;
  bool downscaled = false;
  ThresholdConfig threshold;
  gen->add_option("--task", task_name, "sup1|pos1|pos|setpos|pos-hard|setpos-hard|comp-seen|comp-unseen")->required();
  gen->add_option("--size", size, "Number of records (default depends on the task)");
  gen->add_option("--seed", seed, "Master seed")->envname("MALEVIC_SEED");
  gen->add_option("--out", out_dir, "Output directory");
  gen->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  gen->add_option("--mu", threshold.mu, "Mean of the k distribution");
  gen->add_option("--sigma", threshold.sigma, "Standard deviation of the k distribution");
  gen->add_option("--k-low", threshold.k_low, "Lower truncation bound for k");
  gen->add_option("--k-high", threshold.k_high, "Upper truncation bound for k");
  gen->add_flag("--no-images", no_images, "Skip rendering");
  gen->add_flag("--downscale", downscaled, "Also write 224x224 copies");

  // render
  auto* ren = app.add_subcommand("render", "Render the scenes of a manifest to PNG");
  std::string manifest_path;
  int limit = -1;
  ren->add_option("--manifest", manifest_path)->required();
  ren->add_option("--out", out_dir, "Output directory");
  ren->add_option("--limit", limit, "Render at most this many scenes");
  ren->add_flag("--downscale", downscaled, "Also write 224x224 copies");

  // verify
  auto* ver = app.add_subcommand("verify", "Evaluate one sentence against a scene");
  std::string scene_path;
  std::string sentence;
  std::string k_mode = "sharp";
  std::optional<double> k_value;
  std::uint64_t k_seed = 0;
  ver->add_option("--scene", scene_path, "Scene JSON or a manifest record line")->required();
  ver->add_option("--sentence", sentence)->required();
  ver->add_option("--k", k_mode, "recorded|sharp|resample")->check(CLI::IsMember({"recorded", "sharp", "resample"}));
  ver->add_option("--k-value", k_value, "k for --k recorded on a bare scene, or the sharp k");
  ver->add_option("--seed", k_seed, "Seed for --k resample");

  // eval
  auto* ev = app.add_subcommand("eval", "Score a strategy on a manifest split");
  std::string strategy_name;
  std::string split_name = "test";
  double sharp_k = kSharpK;
  std::uint64_t strategy_seed = 0;
  std::string report_prefix;
  ev->add_option("--strategy", strategy_name)->required();
  ev->add_option("--manifest", manifest_path)->required();
  ev->add_option("--split", split_name, "train|val|test|all");
  ev->add_option("--k", sharp_k, "k used by SharpK and WholeSceneThreshold");
  ev->add_option("--seed", strategy_seed, "Seed for the Random strategy");
  ev->add_option("--report", report_prefix, "Write PREFIX.csv, PREFIX.txt and PREFIX.predictions.csv");

  // stats
  auto* st = app.add_subcommand("stats", "Emit figure-ready CSV tables");
  std::string predictions_path;
  st->add_option("--manifest", manifest_path)->required();
  st->add_option("--out", out_dir, "Output directory");
  st->add_option("--predictions", predictions_path, "Predictions CSV from eval --report");

  // validate
  auto* val = app.add_subcommand("validate", "Re-check every manifest invariant");
  int render_sample = 3;
  val->add_option("--manifest", manifest_path)->required();
  val->add_option("--render-sample", render_sample, "Scenes to re-render for the area check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto task = parse_task(task_name);
      if (!task) throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown task '{}'", task_name));
      BuildOptions options;
      options.config.threshold = threshold;
      options.jobs = jobs;
      const auto manifest = build_task(*task, size > 0 ? size : default_size(*task), seed, options);
      fs::create_directories(out_dir);
      const fs::path path = fs::path(out_dir) / (lower(to_string(*task)) + ".jsonl");
      serialize(manifest, path);
      if (!no_images) render_scenes(manifest, out_dir, downscaled, -1);
      print_summary(manifest, std::cout);
      const auto report = validate(manifest, {0});
      std::cout << fmt::format("  invariants: {}\n", report.ok() ? "all hold" : report.failure->invariant);
      std::cout << "wrote " << path.string() << "\n";
      return report.ok() ? 0 : kValidationFailedExit;
    }
    if (ren->parsed()) {
      render_scenes(load(fs::path(manifest_path)), out_dir, downscaled, limit);
      return 0;
    }
    if (ver->parsed()) {
      const std::string text = read_text(scene_path);
      const Scene scene = scene_from_json(text);
      const auto query = parse_sentence(sentence);
      KMode mode = SharpK{k_value.value_or(kSharpK)};
      if (k_mode == "resample") {
        mode = ResampleK{k_seed, {}};
      } else if (k_mode == "recorded") {
        std::optional<double> recorded = k_value;
        const auto j = nlohmann::json::parse(text);
        if (!recorded && j.contains("sentence") && j["sentence"].contains("k_used")) {
          recorded = j["sentence"]["k_used"]["value"].get<double>();
        }
        if (!recorded && query.form == SentenceForm::kPositive) {
          throw Error(ErrorCode::kInvalidArgument, "--k recorded needs a record line or --k-value");
        }
        mode = RecordedK{{recorded.value_or(kSharpK), KSource::kSampled}};
      }
      const auto v = evaluate_detailed(scene, query, mode);
      std::cout << (v.truth ? "true" : "false") << "\n";
      const auto& target = scene.object(v.target);
      std::cout << fmt::format("target: object {} ({} {}, label {}, area {})\n", target.id,
                               to_string(target.color), to_string(target.shape), target.size_label.value(),
                               target.pixel_area);
      std::cout << fmt::format("reference set: {} objects, max {}, min {}\n", v.reference.size(),
                               v.reference.max_area, v.reference.min_area);
      if (v.judgment) {
        std::cout << fmt::format("k {:.4f}, threshold {:.2f}, normalized distance {:+.4f}\n", *v.k,
                                 v.judgment->threshold, v.judgment->norm_distance);
      }
      return 0;
    }
    if (ev->parsed()) {
      const auto kind = parse_strategy(strategy_name);
      if (!kind) throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown strategy '{}'", strategy_name));
      std::optional<Split> split;
      if (split_name != "all") {
        split = parse_split(split_name);
        if (!split) throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown split '{}'", split_name));
      }
      const auto manifest = load(fs::path(manifest_path));
      const auto report = run_strategy({*kind, strategy_seed, sharp_k}, manifest, split);
      std::cout << report_summary(report);
      if (!report_prefix.empty()) {
        write_text(report_prefix + ".csv", report_csv(report));
        write_text(report_prefix + ".txt", report_summary(report));
        write_text(report_prefix + ".predictions.csv", predictions_csv(report.predictions));
      }
      return 0;
    }
    if (st->parsed()) {
      const auto manifest = load(fs::path(manifest_path));
      fs::create_directories(out_dir);
      write_text(fs::path(out_dir) / "queried_areas.csv", queried_area_csv(manifest));
      write_text(fs::path(out_dir) / "k_distribution.csv", k_distribution_csv(manifest));
      if (!predictions_path.empty()) {
        const auto predictions = parse_predictions_csv(read_text(predictions_path));
        write_text(fs::path(out_dir) / "distance_bins.csv", distance_csv(manifest, predictions));
      }
      std::cout << "wrote tables to " << out_dir << "\n";
      return 0;
    }
    if (val->parsed()) {
      const auto manifest = load(fs::path(manifest_path));
      const auto report = validate(manifest, {render_sample});
      for (const auto& check : report.checks_passed) std::cout << "pass " << check << "\n";
      if (report.ok()) {
        std::cout << "PASS\n";
        return 0;
      }
      const auto& f = *report.failure;
      std::cout << fmt::format("FAIL {}{}: {}\n", f.invariant,
                               f.record_id ? fmt::format(" (record {})", *f.record_id) : "", f.detail);
      return kValidationFailedExit;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
