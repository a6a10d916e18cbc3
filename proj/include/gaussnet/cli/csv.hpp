#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gaussnet/dynamics.hpp"

namespace gaussnet::cli {

/// 12 significant digits, '.' decimal point, independent of locale.
std::string format_number(double x);

/// Writes `t, EN, P, delta_tilde, detV, V11 .. V44` rows for a trajectory of
/// two-mode covariances.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// One cell per entry, empty for nullopt.
void write_csv_row(std::ostream& out,
                   const std::vector<std::optional<double>>& cells,
                   const std::string& trailing = {});

}  // namespace gaussnet::cli
