#pragma once

// Result tables written by the CLI and the plot-data files derived from
// them.

#include <filesystem>
#include <string>
#include <vector>

#include "hetbeam/alignment.hpp"
#include "hetbeam/analysis.hpp"
#include "hetbeam/csv.hpp"
#include "hetbeam/kinematics.hpp"
#include "hetbeam/overhead.hpp"
#include "hetbeam/sweep.hpp"

namespace hetbeam::report {

csv::Table summary_table(const std::vector<RunRecord>& runs);
csv::Table intervals_table(const std::vector<AlignmentInterval>& intervals);
csv::Table trajectory_table(const std::vector<VehicleState>& states);
csv::Table sensitivity_table(const std::vector<analysis::SensitivityResult>& rows);
csv::Table optimum_table(const std::vector<analysis::BeamwidthOptimum>& optima);
/// Every grid evaluation behind the optima: error_mu, theta_deg,
/// expected_rate_bps.
csv::Table optimum_grid_table(const std::vector<analysis::BeamwidthOptimum>& optima);
csv::Table overhead_csv(const std::vector<overhead::OverheadRow>& rows);

/// Whatever analyses have produced so far.
struct ResultSet {
  std::vector<overhead::OverheadRow> overhead;
  std::vector<RunRecord> runs;
  std::vector<analysis::SensitivityResult> sensitivity;
  std::vector<analysis::BeamwidthOptimum> optima;

  bool empty() const {
    return overhead.empty() && runs.empty() && sensitivity.empty() && optima.empty();
  }
};

/// Reads overhead.csv, summary.csv, sensitivity.csv, optimum.csv and
/// optimum_grid.csv from `dir`; absent files leave their part empty.
ResultSet load_results(const std::filesystem::path& dir);

enum class Figure { overhead = 2, throughput = 6, sensitivity = 7, beamwidth = 8 };

/// Throws InvalidParameter for anything but 2, 6, 7, 8.
Figure figure_from_number(int number);
std::string figure_filename(Figure figure);

/// Plot data for one figure. Throws MissingAnalysis when the part of the
/// result set it needs is empty.
csv::Table emit_figure(const ResultSet& results, Figure figure);

}  // namespace hetbeam::report
