#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sivnuc/sweep.hpp"

namespace sivnuc {

/// Nine significant digits, `nan` for NaN.
std::string format_number(double v);

inline constexpr const char* kDeltaThetaHeader = "B_mag_T,theta_deg,delta_theta_deg,dev_orthogonal_deg,status";
inline constexpr const char* kPrecessionHeader =
    "B_mag_T,theta_deg,f_alpha_MHz,f_beta_MHz,period_alpha_ns,period_beta_ns,status";
inline constexpr const char* kOrientationHeader = "B_mag_T,state_index,energy_MHz,S_polar_deg,I_polar_deg";
inline constexpr const char* kTrajectoryHeader = "t_ns,frame,x,y,z";

void write_csv(std::ostream& out, const std::vector<DeltaThetaRow>& rows);
void write_csv(std::ostream& out, const std::vector<PrecessionRow>& rows);
void write_csv(std::ostream& out, const std::vector<OrientationRow>& rows);

/// Splits one CSV line on commas (no quoting; none of our fields need it).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace sivnuc
