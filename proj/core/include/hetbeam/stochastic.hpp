#pragma once

// Random error sources: per-axis GPS error, log-Normal shadowing and beacon
// loss. Every draw goes through an explicitly owned Rng so a whole simulation
// is a pure function of its 64-bit seed.

#include <cstdint>
#include <random>

namespace hetbeam {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed for an independent sub-stream, so adding draws to one stream never
  /// shifts another.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double standard_normal() { return normal_(engine_); }
  double normal(double mean, double sd) { return mean + sd * standard_normal(); }
  bool fair_coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Parameters of the Normal underlying a log-Normal variate.
struct LogNormalParams {
  double m = 0.0;
  double s = 0.0;
};

/// GPS error magnitude per axis ~ logN with the given mean and standard
/// deviation of the variate itself (not of its logarithm).
struct GpsErrorModel {
  double mu = 3.0;     ///< metres
  double sigma = 1.0;  ///< metres

  void validate() const;

  /// Moment inversion: s^2 = ln(1 + sigma^2/mu^2), m = ln(mu) - s^2/2.
  LogNormalParams underlying() const;

  friend bool operator==(const GpsErrorModel&, const GpsErrorModel&) = default;
};

/// Easting / northing components of an estimated-minus-true position.
struct PositionError {
  double x_e = 0.0;
  double y_e = 0.0;
};

struct ShadowingModel {
  double sigma_db = 5.8;

  void validate() const;

  friend bool operator==(const ShadowingModel&, const ShadowingModel&) = default;
};

/// Positive log-Normal magnitude.
double sample_error_magnitude(const GpsErrorModel& model, Rng& rng);

/// Magnitude times an independent fair sign.
double sample_signed_error(const GpsErrorModel& model, Rng& rng);

/// Independent signed draw per axis.
PositionError sample_position_error(const GpsErrorModel& model, Rng& rng);

/// Zero-mean Normal in the dB domain.
double sample_shadowing_db(const ShadowingModel& model, Rng& rng);

/// Bernoulli(loss_probability); throws InvalidParameter outside [0, 1].
bool beacon_lost(double loss_probability, Rng& rng);

/// Log-Normal density of the magnitude at a > 0.
double error_magnitude_pdf(const GpsErrorModel& model, double a);

/// P(|e| <= a).
double error_magnitude_cdf(const GpsErrorModel& model, double a);

/// Density of the signed per-axis error: half the magnitude density at |e|.
double signed_error_pdf(const GpsErrorModel& model, double e);

}  // namespace hetbeam
