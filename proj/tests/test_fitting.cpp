#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heatchain/fitting.hpp"

using namespace heatchain;

TEST_CASE("exact diffusive data: J = c / N") {
  std::vector<std::pair<double, double>> points;
  for (double n : {2.0, 4.0, 8.0, 16.0, 64.0}) points.emplace_back(n, 7.0 / n);
  const PowerLawFit fit = fit_power_law(points);
  CHECK(fit.alpha == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.slope() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(std::abs(fit.r) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact ballistic data: constant J") {
  std::vector<std::pair<double, double>> points;
  for (double n : {2.0, 3.0, 5.0, 8.0}) points.emplace_back(n, 0.119);
  const PowerLawFit fit = fit_power_law(points);
  CHECK(fit.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(0.119).epsilon(1e-12));
  // Zero-variance response counts as a perfect (flat) fit.
  CHECK(fit.r == 1.0);
}

TEST_CASE("general power law is recovered") {
  std::vector<std::pair<double, double>> points;
  for (double n : {2.0, 4.0, 16.0, 128.0, 1024.0})
    points.emplace_back(n, 2.5 * std::pow(n, 0.3 - 1.0));
  const PowerLawFit fit = fit_power_law(points);
  CHECK(fit.alpha == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(std::abs(fit.r) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mild noise keeps the fit close but imperfect") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  std::vector<std::pair<double, double>> points;
  for (int k = 1; k <= 8; ++k) {
    const double n = std::pow(2.0, k);
    points.emplace_back(n, 3.0 * std::pow(n, -0.5) * std::exp(jitter(rng)));
  }
  const PowerLawFit fit = fit_power_law(points);
  CHECK(fit.alpha == doctest::Approx(0.5).epsilon(0.05));
  CHECK(fit.r_squared() > 0.99);
  CHECK(fit.r_squared() < 1.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(fit_power_law({}), InsufficientDataError);
  CHECK_THROWS_AS(fit_power_law({{2.0, 1.0}, {4.0, 0.5}}), InsufficientDataError);
  CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.25}}), SpecError);
  CHECK_THROWS_AS(fit_power_law({{2.0, 1.0}, {4.0, 0.0}, {8.0, 0.25}}), SpecError);
  CHECK_THROWS_AS(fit_power_law({{2.0, 1.0}, {4.0, -0.5}, {8.0, 0.25}}), SpecError);
}
