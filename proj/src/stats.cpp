#include "malevic/stats.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "malevic/error.hpp"

namespace malevic {

std::string queried_area_csv(const DatasetManifest& manifest) {
  std::map<int, std::array<std::int64_t, 4>> counts;
  for (const auto& dp : manifest.records) {
    const int label = dp.scene.object(dp.sentence.target_id).size_label.value();
    ++counts[label][static_cast<std::size_t>(sentence_type(dp.sentence))];
  }
  std::ostringstream out;
  out << "label,big_true,big_false,small_true,small_false\n";
  for (const auto& [label, c] : counts) {
    out << fmt::format("{},{},{},{},{}\n", label, c[0], c[1], c[2], c[3]);
  }
  return out.str();
}

std::string k_distribution_csv(const DatasetManifest& manifest, double bin_width) {
  const auto flips = flip_analysis(manifest);
  const std::set<std::int64_t> different(flips.different_records.begin(), flips.different_records.end());
  // (bin, type, different) -> count
  std::map<std::tuple<int, SentenceType, bool>, std::int64_t> counts;
  for (const auto& dp : manifest.records) {
    if (!dp.sentence.k_used) continue;
    const int bin = static_cast<int>(std::floor(dp.sentence.k_used->value / bin_width));
    ++counts[{bin, sentence_type(dp.sentence), different.count(dp.record_id) != 0}];
  }
  std::ostringstream out;
  out << "k_bin_lo,k_bin_hi,sentence_type,tag,count\n";
  for (const auto& [key, n] : counts) {
    const auto& [bin, type, diff] = key;
    out << fmt::format("{:.3f},{:.3f},{},{},{}\n", bin * bin_width, (bin + 1) * bin_width, to_string(type),
                       diff ? "different" : "same", n);
  }
  return out.str();
}

std::string distance_csv(const DatasetManifest& manifest, const std::vector<Prediction>& predictions) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,correct,wrong\n";
  for (const auto& bin : distance_profile(manifest, predictions)) {
    out << fmt::format("{:.1f},{:.1f},{},{}\n", bin.lo, bin.hi, bin.correct, bin.wrong);
  }
  return out.str();
}

std::string predictions_csv(const std::vector<Prediction>& predictions) {
  std::ostringstream out;
  out << "record_id,prediction,truth\n";
  for (const auto& p : predictions) {
    out << fmt::format("{},{},{}\n", p.record_id, p.predicted ? 1 : 0, p.truth ? 1 : 0);
  }
  return out.str();
}

std::vector<Prediction> parse_predictions_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Prediction> out;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    Prediction p;
    int pred = 0;
    int truth = 0;
    long long id = 0;
    if (std::sscanf(line.c_str(), "%lld,%d,%d", &id, &pred, &truth) != 3) {
      throw Error(ErrorCode::kSchemaViolation, fmt::format("predictions line {}: '{}'", line_no, line));
    }
    p.record_id = id;
    p.predicted = pred != 0;
    p.truth = truth != 0;
    out.push_back(p);
  }
  return out;
}

}  // namespace malevic
