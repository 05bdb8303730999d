#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lgv/emit.hpp"

namespace lgv {

struct ManifestRow {
  std::string key;
  std::string value;
  std::string expected;
  std::string status;  // pass | fail | discrepancy
  std::string note;
};

struct ReproduceResult {
  std::vector<ManifestRow> rows;
  int pass_count = 0;
  int fail_count = 0;
  int discrepancy_count = 0;
};

// Recomputes the headline numbers and writes manifest.(json|csv), fig1.csv,
// fig2_l3_odd.csv, fig2_l3_even.csv and kn_table.csv into out_dir.
// Fully deterministic: repeated runs emit byte-identical files.
ReproduceResult run_reproduce(const std::filesystem::path& out_dir, Format format);

}  // namespace lgv
