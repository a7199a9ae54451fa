#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malevic/datasetgen.hpp"

namespace malevic {

struct ValidationFailure {
  std::string invariant;
  std::optional<std::int64_t> record_id;
  std::string detail;
};

struct ValidationOptions {
  // Number of scenes re-rendered for the area round-trip check.
  int render_sample = 3;
};

struct ValidationReport {
  std::vector<std::string> checks_passed;
  std::optional<ValidationFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

// Runs the invariant suites in order and stops at the first failure.
ValidationReport validate(const DatasetManifest& manifest, const ValidationOptions& options = {});

}  // namespace malevic
