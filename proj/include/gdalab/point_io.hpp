#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace gdalab {

enum class PointFormat { Csv, Binary };

/// ".bin" / ".f64" -> binary, everything else CSV.
PointFormat point_format_for(const std::filesystem::path& path);

/// Flat vector of doubles. CSV accepts commas, whitespace, and newlines as
/// separators and ignores lines starting with '#'. Binary is little-endian
/// IEEE binary64 with no header. Throws ConfigError on malformed input.
std::vector<double> read_point_file(const std::filesystem::path& path);

void write_point_file(const std::filesystem::path& path, std::span<const double> values);
void write_point_file(const std::filesystem::path& path, std::span<const double> values, PointFormat format);

}  // namespace gdalab
