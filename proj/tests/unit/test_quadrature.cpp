#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hetbeam/errors.hpp"
#include "hetbeam/quadrature.hpp"

using namespace hetbeam::quad;

TEST(Simpson, Polynomials) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0), 4.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double) { return 3.0; }, -1.0, 1.0), 6.0, 1e-12);
  EXPECT_EQ(adaptive_simpson([](double x) { return x; }, 1.0, 1.0), 0.0);
}

TEST(Simpson, Smooth) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0,
              1e-9);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(-x * x); }, -5.0, 5.0),
              std::sqrt(std::numbers::pi) * std::erf(5.0), 1e-9);
  SimpsonOptions tight;
  tight.rel_tol = 1e-13;
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::log(x); }, 1.0, 2.0, tight),
              2.0 * std::log(2.0) - 1.0, 1e-13);
}

TEST(Simpson, ReversedBounds) {
  auto f = [](double x) { return std::cos(x); };
  EXPECT_NEAR(adaptive_simpson(f, 1.0, 0.0), -adaptive_simpson(f, 0.0, 1.0), 1e-14);
}

TEST(Simpson, GivesUpOnSingularity) {
  SimpsonOptions o;
  o.max_evals = 2000;
  o.rel_tol = 1e-14;
  EXPECT_THROW(adaptive_simpson([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3137)); },
                                0.0, 1.0, o),
               hetbeam::QuadratureFailure);
}

TEST(GaussLegendre, ExactForPolynomials) {
  const auto& g = gauss_legendre_64();
  ASSERT_EQ(g.size(), 64);
  double wsum = 0.0;
  for (double w : g.weights()) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-13);
  // degree 127 is the limit; check a high even power
  EXPECT_NEAR(g.integrate([](double x) { return std::pow(x, 100); }, -1.0, 1.0), 2.0 / 101.0,
              1e-14);
  const GaussLegendre g3(3);
  EXPECT_NEAR(g3.integrate([](double x) { return x * x * x * x * x + x * x; }, 0.0, 1.0),
              1.0 / 6.0 + 1.0 / 3.0, 1e-14);
}

TEST(GaussLegendre, NodesSymmetric) {
  const GaussLegendre g(7);
  for (int i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g.nodes()[i], -g.nodes()[g.size() - 1 - i], 1e-14);
    EXPECT_NEAR(g.weights()[i], g.weights()[g.size() - 1 - i], 1e-14);
  }
  EXPECT_THROW(GaussLegendre(0), hetbeam::InvalidParameter);
}
