#include "sivnuc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace sivnuc {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<DeltaThetaRow>& rows) {
  out << kDeltaThetaHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.B_mag_T) << ',' << format_number(r.theta_deg) << ','
        << format_number(r.delta_theta_deg) << ',' << format_number(r.dev_orthogonal_deg) << ',' << r.status
        << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<PrecessionRow>& rows) {
  out << kPrecessionHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.B_mag_T) << ',' << format_number(r.theta_deg) << ',' << format_number(r.f_alpha_MHz)
        << ',' << format_number(r.f_beta_MHz) << ',' << format_number(r.period_alpha_ns) << ','
        << format_number(r.period_beta_ns) << ',' << r.status << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<OrientationRow>& rows) {
  out << kOrientationHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.B_mag_T) << ',' << r.state_index << ',' << format_number(r.energy_MHz) << ','
        << format_number(r.S_polar_deg) << ',' << format_number(r.I_polar_deg) << '\n';
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

}  // namespace sivnuc
