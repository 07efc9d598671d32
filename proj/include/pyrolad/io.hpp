#pragma once

#include <iosfwd>
#include <vector>

#include "pyrolad/sweep.hpp"

// Text serialization of sweep output. The CSV column set and order are a
// frozen contract:
//   temperature,field,log_z_per_rung,m_tm,m_rdm,chi,concurrence
// Values are written with 17 significant digits so parsing a file and
// re-evaluating a row reproduces it bit for bit.

namespace pyrolad {

inline constexpr const char* kCsvHeader =
    "temperature,field,log_z_per_rung,m_tm,m_rdm,chi,concurrence";

void write_csv(std::ostream& os, const std::vector<ObservablePoint>& points);
void write_json_lines(std::ostream& os,
                      const std::vector<ObservablePoint>& points);

// Parses a file produced by write_csv; throws ValidationError on a malformed
// header or row.
std::vector<ObservablePoint> read_csv(std::istream& is);

}  // namespace pyrolad
