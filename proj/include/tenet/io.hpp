#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenet/corpus.hpp"
#include "tenet/correlate.hpp"
#include "tenet/types.hpp"

namespace tenet::io {

// Square or rectangular matrix with a header row of column names and the row
// name in the first column.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& row_names,
                      const std::vector<std::string>& col_names, const Matrix& values);

// `date,<var1>,<var2>,...` one row per date.
void write_return_panel_csv(std::ostream& out, const ReturnPanel& panel);

void write_histogram_csv(std::ostream& out, const Histogram& histogram);

nlohmann::json to_json(const NullBand& band);

// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace tenet::io
