#include "hetbeam/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetbeam/errors.hpp"

namespace hetbeam::quad {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  long evals = 0;
  long max_evals = 0;
  int max_depth = 0;

  double eval(double x) {
    if (++evals > max_evals) throw QuadratureFailure("adaptive Simpson: evaluation cap reached");
    const double y = f(x);
    if (!std::isfinite(y)) throw QuadratureFailure("adaptive Simpson: non-finite integrand");
    return y;
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb, double whole,
                 double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      throw QuadratureFailure("adaptive Simpson: subdivision cap reached before tolerance");
    }
    return recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const SimpsonOptions& options) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, options);

  SimpsonState st{f, 0, options.max_evals, options.max_depth};
  const double m = 0.5 * (a + b);
  const double fa = st.eval(a);
  const double fm = st.eval(m);
  const double fb = st.eval(b);
  const double fq1 = st.eval(0.5 * (a + m));
  const double fq3 = st.eval(0.5 * (m + b));
  const double peak = std::max({std::abs(fa), std::abs(fm), std::abs(fb), std::abs(fq1),
                                std::abs(fq3)});
  const double scale = peak * (b - a);
  const double tol = std::max(options.rel_tol * scale, std::numeric_limits<double>::min());

  const double left = (m - a) / 6.0 * (fa + 4.0 * fq1 + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * fq3 + fb);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return st.recurse(a, fa, 0.5 * (a + m), fq1, m, fm, left, 0.5 * tol, 1) +
         st.recurse(m, fm, 0.5 * (m + b), fq3, b, fb, right, 0.5 * tol, 1);
}

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw InvalidParameter("Gauss-Legendre order must be >= 1");
  nodes_.resize(static_cast<std::size_t>(n));
  weights_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[static_cast<std::size_t>(i)] = -x;
    nodes_[static_cast<std::size_t>(n - 1 - i)] = x;
    weights_[static_cast<std::size_t>(i)] = w;
    weights_[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

const GaussLegendre& gauss_legendre_64() {
  static const GaussLegendre rule(64);
  return rule;
}

}  // namespace hetbeam::quad
