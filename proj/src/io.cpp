#include "pyrolad/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

namespace pyrolad {

void write_csv(std::ostream& os, const std::vector<ObservablePoint>& points) {
  os << kCsvHeader << '\n';
  char line[512];
  for (const ObservablePoint& p : points) {
    std::snprintf(line, sizeof(line),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.temperature, p.field, p.log_z_per_rung, p.m_tm, p.m_rdm,
                  p.chi, p.concurrence);
    os << line;
  }
}

void write_json_lines(std::ostream& os,
                      const std::vector<ObservablePoint>& points) {
  for (const ObservablePoint& p : points) {
    nlohmann::ordered_json row;
    row["temperature"] = p.temperature;
    row["field"] = p.field;
    row["log_z_per_rung"] = p.log_z_per_rung;
    row["m_tm"] = p.m_tm;
    row["m_rdm"] = p.m_rdm;
    row["chi"] = p.chi;
    row["concurrence"] = p.concurrence;
    os << row.dump() << '\n';
  }
}

std::vector<ObservablePoint> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw ValidationError("csv header mismatch");
  }
  std::vector<ObservablePoint> points;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double v[7];
    const char* s = line.c_str();
    char* end = nullptr;
    for (int i = 0; i < 7; ++i) {
      v[i] = std::strtod(s, &end);
      if (end == s || (i < 6 && *end != ',')) {
        throw ValidationError("malformed csv row: " + line);
      }
      s = end + 1;
    }
    points.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return points;
}

}  // namespace pyrolad
