#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "matball/experiments.hpp"
#include "matball/numeric.hpp"

namespace matball {

inline constexpr const char* kVersion = "1.0.0";

/// 17 significant digits, locale independent.
inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Writes "# key=value" comment lines; the first line names the tool and version.
inline void write_csv_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& config) {
  os << "# matball " << kVersion << "\n";
  for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
}

inline void write_sweep_rows(std::ostream& os, const SweepResult& s) {
  for (const auto& [k, v] : s.meta) os << "# " << s.name << "." << k << "=" << v << "\n";
  os << "sweep,label,r,value_re,value_im,reference_re,reference_im,ratio_re,ratio_im\n";
  for (const auto& row : s.rows) {
    os << s.name << "," << csv_field(row.label) << "," << csv_number(row.r) << "," << csv_number(row.value.real()) << ","
       << csv_number(row.value.imag()) << "," << csv_number(row.reference.real()) << ","
       << csv_number(row.reference.imag()) << "," << csv_number(row.ratio.real()) << ","
       << csv_number(row.ratio.imag()) << "\n";
  }
}

inline void write_reports(std::ostream& os, const std::vector<CheckReport>& reports) {
  os << "name,computed_re,computed_im,reference_re,reference_im,rel_error,tolerance,pass\n";
  for (const auto& r : reports) {
    os << csv_field(r.name) << "," << csv_number(r.computed.real()) << "," << csv_number(r.computed.imag()) << ","
       << csv_number(r.reference.real()) << "," << csv_number(r.reference.imag()) << "," << csv_number(r.rel_error)
       << "," << csv_number(r.tolerance) << "," << (r.pass ? 1 : 0) << "\n";
  }
}

}  // namespace matball
