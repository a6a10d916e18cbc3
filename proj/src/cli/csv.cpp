#include "gaussnet/cli/csv.hpp"

#include <cstdio>

#include "gaussnet/entanglement.hpp"

namespace gaussnet::cli {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  // snprintf honours LC_NUMERIC; force '.'.
  for (char& c : s) {
    if (c == ',') c = '.';
  }
  return s;
}

void write_csv_row(std::ostream& out,
                   const std::vector<std::optional<double>>& cells,
                   const std::string& trailing) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    if (cells[i]) out << format_number(*cells[i]);
  }
  if (!trailing.empty()) out << ',' << trailing;
  out << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,EN,P,delta_tilde,detV";
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) out << ",V" << i << j;
  }
  out << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const CovarianceMatrix& v = traj.covariances[k];
    const EntanglementRecord r = entanglement_record(v);
    std::vector<std::optional<double>> row = {traj.times[k], r.log_negativity,
                                              r.purity, r.delta_tilde, r.det_v};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) row.emplace_back(v.matrix()(i, j));
    }
    write_csv_row(out, row);
  }
}

}  // namespace gaussnet::cli
