#include "hetbeam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetbeam/errors.hpp"
#include "hetbeam/quadrature.hpp"

namespace hetbeam::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PositionError on_axis(ErrorAxis axis, double value) {
  return axis == ErrorAxis::x ? PositionError{value, 0.0} : PositionError{0.0, value};
}

// Tight enough that quadrature noise stays far below a 1 mm difference step.
constexpr quad::SimpsonOptions kFineQuadrature{1e-12, 60, 4'000'000};

}  // namespace

std::string_view to_string(ErrorAxis axis) { return axis == ErrorAxis::x ? "x_e" : "y_e"; }

std::string_view to_string(DerivativeMethod method) {
  return method == DerivativeMethod::analytic ? "analytic" : "finite_difference";
}

AnalysisGeometry AnalysisGeometry::canonical() { return AnalysisGeometry{}; }

void AnalysisGeometry::validate() const {
  pass().validate();
  if (!std::isfinite(beam_center_along)) throw InvalidParameter("beam centre must be finite");
  link.validate();
}

PassGeometry AnalysisGeometry::pass() const {
  return PassGeometry{rsu_offset, rsu_along, origin_along, speed};
}

BeamFootprint AnalysisGeometry::footprint(double beamwidth_deg) const {
  return beam_footprint(pass(), beam_center_along, beamwidth_deg);
}

double data_rate_conditional(ErrorAxis axis, double error_value, double beamwidth_deg,
                             const AnalysisGeometry& geometry,
                             const quad::SimpsonOptions& options) {
  if (!std::isfinite(error_value)) throw InvalidParameter("error value must be finite");
  geometry.validate();
  const PassGeometry pass = geometry.pass();
  const auto times =
      alignment_times(pass, geometry.footprint(beamwidth_deg), on_axis(axis, error_value));
  if (times.outage) return 0.0;
  return integrate_capacity([&](double t) { return pass.distance_at(t); }, times.start,
                            times.end, beamwidth_deg, geometry.link, 0.0, options);
}

MisalignmentBounds misalignment_bounds(ErrorAxis axis, double beamwidth_deg,
                                       const AnalysisGeometry& geometry) {
  const BeamFootprint fp = geometry.footprint(beamwidth_deg);
  if (axis == ErrorAxis::x) return {-fp.length(), fp.length()};
  const double qi = fp.start_along - geometry.origin_along;
  const double qn = fp.end_along - geometry.origin_along;
  if (qi < 0.0 && qn >= 0.0) return {-kInf, kInf};
  const double b = std::sqrt(std::abs(qn * qn - qi * qi));
  return {-b, b};
}

MisalignmentBounds literal_misalignment_bounds(ErrorAxis axis, double beamwidth_deg,
                                               const AnalysisGeometry& geometry) {
  (void)axis;
  const double pi = 0.0;
  const double pn = geometry.footprint(beamwidth_deg).length();
  return {-(pn - pi), pi + pn};
}

SensitivityResult sensitivity_coefficient(ErrorAxis axis, double error_value,
                                          double beamwidth_deg, const AnalysisGeometry& geometry,
                                          DerivativeMethod method, double h) {
  if (!(h > 0.0)) throw InvalidParameter("difference step must be > 0");
  geometry.validate();

  SensitivityResult r{axis, error_value, 0.0, method};
  if (std::abs(error_value) <= h) {
    throw BoundaryNondifferentiable("aligned window changes branch at zero error");
  }
  const auto bounds = misalignment_bounds(axis, beamwidth_deg, geometry);
  for (double b : {bounds.lower, bounds.upper}) {
    if (std::isfinite(b) && std::abs(error_value - b) <= h) {
      throw BoundaryNondifferentiable("error lies on a total-misalignment boundary");
    }
  }
  if (!bounds.aligned(error_value)) return r;

  if (method == DerivativeMethod::finite_difference) {
    const double up =
        data_rate_conditional(axis, error_value + h, beamwidth_deg, geometry, kFineQuadrature);
    const double down =
        data_rate_conditional(axis, error_value - h, beamwidth_deg, geometry, kFineQuadrature);
    r.coefficient = (up - down) / (2.0 * h);
    return r;
  }

  const PassGeometry pass = geometry.pass();
  const BeamFootprint fp = geometry.footprint(beamwidth_deg);
  const PositionError e = on_axis(axis, error_value);
  const auto times = alignment_times(pass, fp, e);

  // d t^ / d e for an edge at `edge_along`
  auto dt_hat = [&](double edge_along) {
    const double q = edge_along - pass.origin_along + e.x_e;
    const double r_len = std::hypot(q, e.y_e);
    if (axis == ErrorAxis::x) return std::abs(q) / r_len / pass.speed;
    return (q >= 0.0 ? 1.0 : -1.0) * e.y_e / r_len / pass.speed;
  };
  auto c = [&](double t) { return capacity_at(pass.distance_at(t), beamwidth_deg, geometry.link); };

  double u = 0.0;
  if (times.t_hat_next < times.t_next) u += c(times.end) * dt_hat(fp.end_along);
  if (times.t_hat_i > times.t_i) u -= c(times.start) * dt_hat(fp.start_along);
  r.coefficient = u;
  return r;
}

ExpectedRate expected_data_rate(double beamwidth_deg, const std::optional<GpsErrorModel>& model,
                                const AnalysisGeometry& geometry) {
  geometry.validate();
  const BeamFootprint fp = geometry.footprint(beamwidth_deg);
  const double duration = fp.length() / geometry.speed;

  ExpectedRate out;
  const double d0 = data_rate_conditional(ErrorAxis::x, 0.0, beamwidth_deg, geometry);
  out.error_free_bps = d0 / duration;
  if (!model) {
    out.x_bps = out.y_bps = out.total_bps = out.error_free_bps;
    return out;
  }
  model->validate();

  // Integrate in u = ln|e|, where the log-Normal magnitude is a plain Normal.
  const auto [m, s] = model->underlying();
  const auto& gl = quad::gauss_legendre_64();
  const double norm = 1.0 / (s * std::sqrt(2.0 * std::numbers::pi));

  auto axis_expectation = [&](ErrorAxis axis) {
    const auto bounds = misalignment_bounds(axis, beamwidth_deg, geometry);
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double limit = sign > 0.0 ? bounds.upper : -bounds.lower;
      const double lo = m - 8.0 * s;
      const double hi = std::min(m + 8.0 * s, std::isfinite(limit) ? std::log(limit) : kInf);
      if (!(hi > lo)) continue;
      total += 0.5 * gl.integrate(
                         [&](double u) {
                           const double z = (u - m) / s;
                           const double density = norm * std::exp(-0.5 * z * z);
                           return density * data_rate_conditional(axis, sign * std::exp(u),
                                                                  beamwidth_deg, geometry);
                         },
                         lo, hi);
    }
    return total;
  };

  out.x_bps = axis_expectation(ErrorAxis::x) / duration;
  out.y_bps = axis_expectation(ErrorAxis::y) / duration;
  out.total_bps = 0.5 * (out.x_bps + out.y_bps);
  return out;
}

BeamwidthOptimum optimize_beamwidth(const std::optional<GpsErrorModel>& model,
                                    const AnalysisGeometry& geometry,
                                    const std::vector<double>& theta_grid, double tolerance_deg) {
  if (theta_grid.size() < 3) throw InvalidParameter("beamwidth grid needs at least 3 points");
  if (!(tolerance_deg > 0.0)) throw InvalidParameter("refinement tolerance must be > 0");
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    if (!(theta_grid[i] > 0.0 && theta_grid[i] <= 180.0)) {
      throw InvalidParameter("beamwidth grid points must lie in (0, 180]");
    }
    if (i > 0 && !(theta_grid[i] > theta_grid[i - 1])) {
      throw InvalidParameter("beamwidth grid must be strictly increasing");
    }
  }

  BeamwidthOptimum opt;
  opt.error_mu = model ? model->mu : 0.0;
  opt.search_grid = theta_grid;
  opt.grid_rates.reserve(theta_grid.size());

  std::size_t best = 0, best_x = 0, best_y = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const auto r = expected_data_rate(theta_grid[i], model, geometry);
    opt.grid_rates.push_back(r.total_bps);
    xs.push_back(r.x_bps);
    ys.push_back(r.y_bps);
    // strict comparisons keep the smaller beamwidth on ties
    if (r.total_bps > opt.grid_rates[best]) best = i;
    if (r.x_bps > xs[best_x]) best_x = i;
    if (r.y_bps > ys[best_y]) best_y = i;
  }
  opt.theta_star_x_deg = theta_grid[best_x];
  opt.theta_star_y_deg = theta_grid[best_y];
  opt.theta_star_deg = theta_grid[best];
  opt.expected_rate_bps = opt.grid_rates[best];
  if (best == 0 || best + 1 == theta_grid.size()) return opt;

  auto f = [&](double th) { return expected_data_rate(th, model, geometry).total_bps; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = theta_grid[best - 1];
  double b = theta_grid[best + 1];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance_deg) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double f_mid = f(mid);
  if (f_mid > opt.expected_rate_bps) {
    opt.theta_star_deg = mid;
    opt.expected_rate_bps = f_mid;
  }
  return opt;
}

std::vector<double> default_theta_grid(double lo, double hi, double step) {
  if (!(lo > 0.0 && hi > lo && step > 0.0)) throw InvalidParameter("invalid beamwidth grid");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

}  // namespace hetbeam::analysis
