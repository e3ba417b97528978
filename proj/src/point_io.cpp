#include "gdalab/point_io.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "gdalab/errors.hpp"

namespace gdalab {

PointFormat point_format_for(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".bin" || ext == ".f64" ? PointFormat::Binary : PointFormat::Csv;
}

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

std::vector<double> read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % 8 != 0) throw ConfigError(path.string() + ": size is not a multiple of 8 bytes");
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::uint64_t raw;
    std::memcpy(&raw, bytes.data() + 8 * k, 8);
    out[k] = std::bit_cast<double>(to_little(raw));
  }
  return out;
}

std::vector<double> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      // strtod rather than stod: subnormals set ERANGE but parse fine
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": not a number '" + tok + "'");
      }
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::vector<double> read_point_file(const std::filesystem::path& path) {
  return point_format_for(path) == PointFormat::Binary ? read_binary(path) : read_csv(path);
}

void write_point_file(const std::filesystem::path& path, std::span<const double> values) {
  write_point_file(path, values, point_format_for(path));
}

void write_point_file(const std::filesystem::path& path, std::span<const double> values, PointFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  if (format == PointFormat::Binary) {
    for (double v : values) {
      const std::uint64_t raw = to_little(std::bit_cast<std::uint64_t>(v));
      out.write(reinterpret_cast<const char*>(&raw), 8);
    }
  } else {
    char buf[32];
    for (double v : values) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << '\n';
    }
  }
  if (!out) throw ConfigError("write to " + path.string() + " failed");
}

}  // namespace gdalab
