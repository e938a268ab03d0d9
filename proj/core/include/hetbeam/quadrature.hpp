#pragma once

#include <functional>
#include <vector>

namespace hetbeam::quad {

struct SimpsonOptions {
  /// Target |error| is rel_tol * scale, where scale is max|f| over the five
  /// initial Simpson points times the interval length.
  double rel_tol = 1e-9;
  int max_depth = 48;
  long max_evals = 1'000'000;
};

/// Adaptive Simpson with Richardson correction. Throws QuadratureFailure
/// when the depth or evaluation cap is reached before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const SimpsonOptions& options = {});

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

const GaussLegendre& gauss_legendre_64();

}  // namespace hetbeam::quad
