#pragma once

#include <string>
#include <vector>

namespace lgv {

enum class Format { json, csv };

// All numeric output funnels through here: %.12g, negative zero normalized.
std::string format_number(double x);

// Minimal CSV quoting (quotes a cell only when it holds ',', '"' or newline).
std::string csv_cell(const std::string& raw);

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

}  // namespace lgv
