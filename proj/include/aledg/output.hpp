// CSV tables, VTK field snapshots (writer and reader), run manifest and
// JSON summary.
#ifndef ALEDG_OUTPUT_HPP_
#define ALEDG_OUTPUT_HPP_

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "aledg/config.hpp"
#include "aledg/experiment.hpp"

namespace aledg {

/// Header row of the results table for an experiment.
std::vector<std::string> csv_header(Experiment e);
/// RFC 4180: comma separated, CRLF line ends, quoted when needed.
void write_csv(std::ostream& os, const ErrorReport& report);
void write_csv(const std::string& path, const ErrorReport& report);
std::string csv_escape(const std::string& field);

/// Field values at the three vertices of every cell plus cell averages.
std::vector<VtkField> field_vtk_data(const Discretization& d, const DGField& u);
void write_field_vtk(const std::string& path, const Discretization& d,
                     const DGField& u, const std::vector<Vector2>& positions);

/// Parsed legacy ASCII unstructured grid with triangle cells.
struct VtkData {
  std::string title;
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<int, 3>> cells;
  std::map<std::string, std::vector<double>> point_data;
  std::map<std::string, std::vector<double>> cell_data;
};
VtkData read_vtk(std::istream& is);
VtkData read_vtk(const std::string& path);

struct RunInfo {
  std::string command;
  std::string config_source;
  double wall_seconds = 0.0;
};

std::string manifest_json(const RunConfig& config, const ErrorReport& report,
                          const RunInfo& info);
std::string summary_json(const ErrorReport& report);

/// CSV, summary and manifest into config.output_dir (created if missing).
/// Returns the paths written.
std::vector<std::string> write_outputs(const RunConfig& config,
                                       const ErrorReport& report,
                                       const RunInfo& info);

std::string version_string();

}  // namespace aledg

#endif  // ALEDG_OUTPUT_HPP_
