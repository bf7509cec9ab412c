#pragma once

// Table, JSON and PGM writers. Doubles are written with 17 significant digits
// in CSV; JSON objects keep their keys sorted.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace cusp::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  nlohmann::json to_json() const;  // array of row objects
};

enum class Format { Csv, Json, Pgm };

Format parse_format(const std::string& s);
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const nlohmann::json& doc);

/// Grey image, row-major, values in [0, 255].
struct GreyImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Linear map of v clamped to [lo, hi] onto 0..255.
std::uint8_t grey_level(double v, double lo, double hi);

/// Binary P5, maxval 255.
void write_pgm(std::ostream& os, const GreyImage& image);

}  // namespace cusp::cli
