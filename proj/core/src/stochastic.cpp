#include "hetbeam/stochastic.hpp"

#include <cmath>
#include <numbers>

#include "hetbeam/errors.hpp"

namespace hetbeam {

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void GpsErrorModel::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidParameter("gps error mu must be > 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidParameter("gps error sigma must be > 0");
  }
}

LogNormalParams GpsErrorModel::underlying() const {
  validate();
  const double ratio = sigma / mu;
  const double s2 = std::log1p(ratio * ratio);
  return {std::log(mu) - 0.5 * s2, std::sqrt(s2)};
}

void ShadowingModel::validate() const {
  if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db)) {
    throw InvalidParameter("shadowing sigma_db must be >= 0");
  }
}

double sample_error_magnitude(const GpsErrorModel& model, Rng& rng) {
  const auto p = model.underlying();
  return std::exp(rng.normal(p.m, p.s));
}

double sample_signed_error(const GpsErrorModel& model, Rng& rng) {
  const double magnitude = sample_error_magnitude(model, rng);
  return rng.fair_coin() ? magnitude : -magnitude;
}

PositionError sample_position_error(const GpsErrorModel& model, Rng& rng) {
  PositionError e;
  e.x_e = sample_signed_error(model, rng);
  e.y_e = sample_signed_error(model, rng);
  return e;
}

double sample_shadowing_db(const ShadowingModel& model, Rng& rng) {
  model.validate();
  return model.sigma_db * rng.standard_normal();
}

bool beacon_lost(double loss_probability, Rng& rng) {
  if (!(loss_probability >= 0.0 && loss_probability <= 1.0)) {
    throw InvalidParameter("beacon loss probability must be in [0, 1]");
  }
  if (loss_probability == 0.0) return false;
  if (loss_probability == 1.0) return true;
  return rng.uniform() < loss_probability;
}

double error_magnitude_pdf(const GpsErrorModel& model, double a) {
  if (!(a > 0.0)) return 0.0;
  const auto p = model.underlying();
  const double z = (std::log(a) - p.m) / p.s;
  return std::exp(-0.5 * z * z) / (a * p.s * std::sqrt(2.0 * std::numbers::pi));
}

double error_magnitude_cdf(const GpsErrorModel& model, double a) {
  if (!(a > 0.0)) return 0.0;
  const auto p = model.underlying();
  return 0.5 * std::erfc(-(std::log(a) - p.m) / (p.s * std::numbers::sqrt2));
}

double signed_error_pdf(const GpsErrorModel& model, double e) {
  return 0.5 * error_magnitude_pdf(model, std::abs(e));
}

}  // namespace hetbeam
