#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ferronem/cli/config.hpp"
#include "ferronem/cli/experiment.hpp"

namespace ferronem::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kMeshInvalid = 2,
  kNonConvergence = 3,
  kIoError = 4,
};

/// Creates out_dir if needed and checks that a file can be written there.
/// Throws Error otherwise.
void ensure_writable(const std::filesystem::path& dir);

// CSV writers. Each file starts with a "# ferronem <kind> v1" comment line,
// followed by a header row; reals carry 17 significant digits.
void write_run_csv(std::ostream& out, const RunConfig& config, const LevelResult& result);
void write_energy_trace_csv(std::ostream& out, const DescentReport& report);
void write_convergence_csv(std::ostream& out, const RunConfig& config, const std::vector<ConvergenceRow>& rows);
/// Per interior vertex: index, coordinates, |p* - phi(r*)| and its log10.
void write_histogram_csv(std::ostream& out, const Triangulation& mesh, const std::vector<double>& errors);
/// log10 bins of width `width`; fractions are normalized by the number of
/// interior vertices.
void write_histogram_bins_csv(std::ostream& out, const std::vector<double>& errors, double width = 0.25);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_histogram(const RunConfig& config, std::ostream& out, std::ostream& err);
/// `which` is "final", "initial" or "exact" (nodal interpolant).
int cmd_export_vtk(const RunConfig& config, const std::string& which, const std::filesystem::path& path,
                   std::ostream& out, std::ostream& err);
int cmd_check_mesh(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ferronem::cli
