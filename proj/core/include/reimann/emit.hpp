#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace reimann {

/// Shortest decimal form that round-trips the double (deterministic).
std::string format_double(double v);

struct CsvRow {
  std::string field;
  std::string metric;
  double value;
  std::string probe_hash;
};

/// "field,metric,value,probe_hash" followed by one line per row.
std::string csv_text(const std::vector<CsvRow>& rows);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Static SVG line chart. `annotation` is printed under the title.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series, const std::string& annotation = "");

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const nlohmann::ordered_json& j);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace reimann
