#pragma once

#include <string>
#include <vector>

#include "malevic/datasetgen.hpp"
#include "malevic/strategies.hpp"

namespace malevic {

// label,big_true,big_false,small_true,small_false (queried objects per label)
std::string queried_area_csv(const DatasetManifest& manifest);

// k_bin_lo,k_bin_hi,sentence_type,tag,count with tag in {same, different}
std::string k_distribution_csv(const DatasetManifest& manifest, double bin_width = 0.02);

// bin_lo,bin_hi,correct,wrong over |norm_distance|
std::string distance_csv(const DatasetManifest& manifest, const std::vector<Prediction>& predictions);

// record_id,prediction,truth
std::string predictions_csv(const std::vector<Prediction>& predictions);
std::vector<Prediction> parse_predictions_csv(const std::string& text);

}  // namespace malevic
