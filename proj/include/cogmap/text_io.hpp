#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/matrix.hpp"

namespace cogmap {

// 17 significant digits; strtod of the result reproduces the value bitwise.
std::string format_double(double value);

// Short tag used in artifact names: 1 -> "1.0", 0.3 -> "0.3".
std::string gamma_tag(double gamma);

// Strict full-token parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Row per line, comma separated, 17 significant digits.
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(std::string_view text);

}  // namespace cogmap
