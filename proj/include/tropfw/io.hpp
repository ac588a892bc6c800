#pragma once

// Plain CSV matrices and atomic file output.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace tropfw {

/// Rows of comma-separated numbers, all of one length; blank lines are
/// skipped. Throws ParseError with the byte offset of the bad field.
std::vector<std::vector<double>> read_matrix_csv(std::istream& in);
std::vector<std::vector<double>> read_matrix_csv_file(const std::filesystem::path& path);

/// "1,5,3" -> {1, 5, 3}.
std::vector<double> parse_number_list(std::string_view text);

/// Writes through a temporary file in the same directory, then renames it
/// over `path`, so readers never see a partial file.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

}  // namespace tropfw
