#pragma once

// Error sensitivity of the per-beam data volume and the error-aware
// beamwidth search.
//
// Everything here works on one beam of the straight-pass model (see
// alignment.hpp). An error on one axis is analysed with the other axis held
// at zero.

#include <optional>
#include <string_view>
#include <vector>

#include "hetbeam/alignment.hpp"
#include "hetbeam/rf_link.hpp"
#include "hetbeam/stochastic.hpp"

namespace hetbeam::analysis {

enum class ErrorAxis { x, y };
enum class DerivativeMethod { analytic, finite_difference };

std::string_view to_string(ErrorAxis axis);
std::string_view to_string(DerivativeMethod method);

struct AnalysisGeometry {
  double rsu_offset = 5.0;          ///< perpendicular RSU distance, m
  double rsu_along = 20.0;          ///< RSU foot on the trajectory line
  double origin_along = 20.0;       ///< P_0, where shifted distances are measured from
  double beam_center_along = 22.0;  ///< where the beam boresight crosses the line
  double speed = 14.0;
  rf::LinkParams link;

  /// RSU 5 m off a straight lane, beam boresight 2 m past the RSU foot,
  /// 14 m/s.
  static AnalysisGeometry canonical();

  void validate() const;
  PassGeometry pass() const;
  BeamFootprint footprint(double beamwidth_deg) const;
};

/// Bits delivered by the beam with a single-axis error.
double data_rate_conditional(ErrorAxis axis, double error_value, double beamwidth_deg,
                             const AnalysisGeometry& geometry,
                             const quad::SimpsonOptions& options = {});

/// Error band (lower, upper) with lower <= 0 <= upper outside of which the
/// beam is totally misaligned. Either side may be infinite.
struct MisalignmentBounds {
  double lower = 0.0;
  double upper = 0.0;

  bool aligned(double e) const { return e > lower && e < upper; }
};

/// From the geometry: x errors shift both edges by x / v, so the band is
/// +-footprint length; y errors stretch both shifted distances, so the band
/// is +-sqrt(|q_{i+1}^2 - q_i^2|) with q measured from P_0, unbounded when
/// the footprint straddles P_0.
MisalignmentBounds misalignment_bounds(ErrorAxis axis, double beamwidth_deg,
                                       const AnalysisGeometry& geometry);

/// Edge-position limits taken literally, with positions measured from the
/// beam's own start edge (P_i = 0, P_{i+1} = length): both axes get
/// +-length. Kept to compare against misalignment_bounds.
MisalignmentBounds literal_misalignment_bounds(ErrorAxis axis, double beamwidth_deg,
                                               const AnalysisGeometry& geometry);

struct SensitivityResult {
  ErrorAxis axis = ErrorAxis::x;
  double error_value = 0.0;
  double coefficient = 0.0;  ///< bits per metre
  DerivativeMethod method = DerivativeMethod::analytic;
};

/// dD/de. The analytic mode applies the Leibniz rule to the aligned window;
/// the finite-difference mode takes a central difference with step `h`.
/// Throws BoundaryNondifferentiable within `h` of e = 0 or of a misalignment
/// bound, where the window switches branch.
SensitivityResult sensitivity_coefficient(ErrorAxis axis, double error_value,
                                          double beamwidth_deg, const AnalysisGeometry& geometry,
                                          DerivativeMethod method, double h = 1e-3);

struct ExpectedRate {
  double total_bps = 0.0;       ///< (E_x + E_y) / 2 over the beam duration
  double x_bps = 0.0;           ///< E_x over the beam duration
  double y_bps = 0.0;           ///< E_y over the beam duration
  double error_free_bps = 0.0;  ///< D(0) over the beam duration
};

/// Expected data rate of one beam under the per-axis error model. The signed
/// density is integrated up to the misalignment bounds only; tail mass beyond
/// them delivers nothing. nullopt means no position error.
ExpectedRate expected_data_rate(double beamwidth_deg, const std::optional<GpsErrorModel>& model,
                                const AnalysisGeometry& geometry);

struct BeamwidthOptimum {
  double theta_star_deg = 0.0;
  double expected_rate_bps = 0.0;
  double error_mu = 0.0;
  std::vector<double> search_grid;
  std::vector<double> grid_rates;  ///< total_bps per grid point
  double theta_star_x_deg = 0.0;   ///< grid argmax of E_x alone
  double theta_star_y_deg = 0.0;   ///< grid argmax of E_y alone
};

/// Grid search over expected_data_rate followed by golden-section refinement
/// between the neighbours of the best interior grid point until the bracket
/// is below `tolerance_deg`. Ties go to the smaller beamwidth; a best point
/// on the grid boundary is returned as is.
BeamwidthOptimum optimize_beamwidth(const std::optional<GpsErrorModel>& model,
                                    const AnalysisGeometry& geometry,
                                    const std::vector<double>& theta_grid,
                                    double tolerance_deg = 0.1);

/// lo, lo + step, ..., hi (hi included when it lands on the grid).
std::vector<double> default_theta_grid(double lo = 1.0, double hi = 60.0, double step = 0.5);

}  // namespace hetbeam::analysis
