#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "qcrit/scaling.hpp"

using namespace qcrit;

namespace {

Eigen::MatrixXd random_orthogonal(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = g(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

Eigen::MatrixXd random_symmetric(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = g(rng);
  return (a + a.transpose()) / 2.0;
}

}  // namespace

TEST_CASE("two level law closed forms") {
  TwoLevelSpectrum spec{2.5, 0.9, 1, 1};
  for (double t : {0.1, 0.3, 1.0}) {
    const double want = 2.5 * std::pow(std::tanh(0.9 / (2 * t)), 2);
    CHECK(two_level_law(spec, t) == doctest::Approx(want).epsilon(1e-14));
  }

  const int big_nu = 40;
  TwoLevelSpectrum wide{1.0, 2.0, 1, big_nu};
  const double x = std::exp(-2.0);
  const double want = std::pow(std::tanh(1.0), 2) * (1 + x) / (1 + big_nu * x);
  CHECK(two_level_law(wide, 1.0) == doctest::Approx(want).epsilon(1e-14));

  CHECK(two_level_law(spec, 1e-6) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(two_level_law(spec, 0.0), ConfigError);
  CHECK_THROWS_AS(two_level_law(TwoLevelSpectrum{1.0, -1.0, 1, 1}, 0.5), ConfigError);
}

TEST_CASE("two level law equals the mixed-state kernel on constructed systems") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int mu = 1 + static_cast<int>(ud(rng) * 2) % 2;
    const int nu = 1 + static_cast<int>(ud(rng) * (5 - mu)) % (5 - mu);
    const int dim = mu + nu;
    const double delta = 0.3 + 1.7 * ud(rng);
    const double t = 0.1 + 1.4 * ud(rng);
    const Eigen::MatrixXd o = random_symmetric(dim, rng);

    Eigen::VectorXd energies(dim);
    for (int i = 0; i < dim; ++i) energies(i) = i < mu ? 0.0 : delta;
    const auto rho = SpectralDecomposition::thermal(
        energies, Eigen::MatrixXcd::Identity(dim, dim), t);
    const double mixed = mixed_state_qfi(rho, custom_operator(o.cast<std::complex<double>>()));

    double f0 = 0.0;
    for (int n = 0; n < mu; ++n)
      for (int m = mu; m < dim; ++m) f0 += o(n, m) * o(n, m);
    f0 *= 4.0 / mu;
    const double law = two_level_law({f0, delta, mu, nu}, t);
    CHECK(mixed == doctest::Approx(law).epsilon(1e-8));
  }
}

TEST_CASE("degenerate ground mixture") {
  std::mt19937 rng(5);
  const int dim = 12;
  const Eigen::MatrixXd q = random_orthogonal(dim, rng);
  const Eigen::MatrixXd o = random_symmetric(dim, rng);
  const auto op = custom_operator(o.cast<std::complex<double>>());

  SUBCASE("matches the kernel value of the 50/50 mixture") {
    const double f_deg = degenerate_ground_qfi(q.leftCols(2).cast<std::complex<double>>(), op);
    SpectralDecomposition rho;
    rho.probabilities = Eigen::VectorXd::Zero(dim);
    rho.probabilities(0) = 0.5;
    rho.probabilities(1) = 0.5;
    rho.states = q.cast<std::complex<double>>();
    CHECK(f_deg == doctest::Approx(mixed_state_qfi(rho, op)).epsilon(1e-10));
  }

  SUBCASE("flip-related doublet with an odd operator cancels the cat variance") {
    const int n = 4, d = 1 << n;
    Eigen::MatrixXcd doublet = Eigen::MatrixXcd::Zero(d, 2);
    doublet(0, 0) = 1.0;
    doublet(d - 1, 1) = 1.0;
    const auto jz = spin_collective(n, Axis::Z);
    const double f_deg = degenerate_ground_qfi(doublet, jz);
    Eigen::VectorXcd cat = Eigen::VectorXcd::Zero(d);
    cat(0) = cat(d - 1) = 1.0 / std::sqrt(2.0);
    const double f_cat = pure_state_qfi(cat, jz);
    CHECK(f_cat == doctest::Approx(16.0));
    CHECK(std::abs(f_deg) < 1e-12);
  }

  SUBCASE("non-orthonormal input is rejected") {
    Eigen::MatrixXcd bad(dim, 2);
    bad.col(0) = q.col(0).cast<std::complex<double>>();
    bad.col(1) = (0.6 * q.col(0) + 0.8 * q.col(1)).cast<std::complex<double>>();
    CHECK_THROWS_AS(degenerate_ground_qfi(bad, op), ConfigError);
  }
}

TEST_CASE("crossover temperature") {
  const int n = 40;
  Eigen::VectorXd ts(n), fs(n);
  for (int i = 0; i < n; ++i) {
    ts(i) = std::pow(10.0, -1.5 + 2.5 * i / (n - 1.0));
    fs(i) = std::pow(std::tanh(1.0 / (2.0 * ts(i))), 2);
  }

  SUBCASE("pure tanh^2 knee sits at Delta over 2.70") {
    const double tc = crossover_temperature(ts, fs);
    CHECK(1.0 / tc == doctest::Approx(2.70).epsilon(0.02));
  }

  SUBCASE("affine rescaling of the values moves nothing") {
    const double tc = crossover_temperature(ts, fs);
    const Eigen::VectorXd scaled = 3.7 * fs.array() + 1.2;
    CHECK(crossover_temperature(ts, scaled) == doctest::Approx(tc).epsilon(1e-9));
  }

  SUBCASE("rising samples are rejected") {
    Eigen::VectorXd bad = fs.reverse();
    CHECK_THROWS_AS(crossover_temperature(ts, bad), ConfigError);
  }

  SUBCASE("a pure power law has no knee") {
    Eigen::VectorXd pw(n);
    for (int i = 0; i < n; ++i) pw(i) = 0.5 / ts(i);
    CHECK_THROWS_AS(crossover_temperature(ts, pw), NumericError);
  }

  SUBCASE("too few samples") {
    CHECK_THROWS_AS(crossover_temperature(ts.head(10), fs.head(10)), ConfigError);
  }
}

TEST_CASE("power law fitting") {
  const int n = 12;
  Eigen::VectorXd xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs(i) = std::pow(10.0, 2.0 * i / (n - 1.0));
    ys(i) = 3.0 * std::pow(xs(i), 0.75) * (1.0 + 0.01 * std::sin(7.0 * i));
  }
  const auto fit = fit_power_law(xs, ys);
  CHECK(fit.exponent == doctest::Approx(0.75).epsilon(0.027));
  CHECK(fit.amplitude == doctest::Approx(3.0).epsilon(0.05));
  CHECK(fit.residual_rms < 0.02);

  SUBCASE("scale equivariance") {
    const auto scaled = fit_power_law(xs, (2.5 * ys.array()).matrix());
    CHECK(scaled.exponent == doctest::Approx(fit.exponent).epsilon(1e-12));
    CHECK(scaled.amplitude == doctest::Approx(2.5 * fit.amplitude).epsilon(1e-10));
  }

  SUBCASE("offset refinement recovers an additive constant") {
    Eigen::VectorXd yo(n);
    for (int i = 0; i < n; ++i) yo(i) = 2.0 * std::pow(xs(i), 0.6) + 5.0;
    const auto off = fit_power_law(xs, yo, true);
    CHECK(off.offset_used);
    CHECK(off.exponent == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(off.amplitude == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(off.offset == doctest::Approx(5.0).epsilon(1e-4));
  }

  SUBCASE("input validation") {
    Eigen::VectorXd bad = ys;
    bad(3) = -1.0;
    CHECK_THROWS_AS(fit_power_law(xs, bad), ConfigError);
    CHECK_THROWS_AS(fit_power_law(xs.head(4), ys.head(4)), ConfigError);
  }

  SUBCASE("extrapolation guard") {
    CHECK_THROWS_AS(fit.evaluate(2.1 * fit.x_hi), ConfigError);
    CHECK(fit.evaluate(2.1 * fit.x_hi, true) > 0.0);
    CHECK(fit.evaluate(fit.x_hi) > 0.0);
  }
}

TEST_CASE("exponential fitting") {
  const int n = 9;
  Eigen::VectorXd xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs(i) = 1.0 + 2.0 * i;
    ys(i) = 2.2 * std::exp(-xs(i) / 3.5);
  }
  const auto fit = fit_exponential(xs, ys);
  CHECK(fit.decay_scale == doctest::Approx(3.5).epsilon(1e-10));
  CHECK(fit.amplitude == doctest::Approx(2.2).epsilon(1e-10));
  CHECK(fit.evaluate(5.0) == doctest::Approx(2.2 * std::exp(-5.0 / 3.5)).epsilon(1e-10));
}

TEST_CASE("quantum critical decay window") {
  const int n = 30;
  Eigen::VectorXd ts(n), pw(n), knee(n);
  for (int i = 0; i < n; ++i) {
    ts(i) = std::pow(10.0, -1.3 + 1.6 * i / (n - 1.0));
    pw(i) = 0.5 / ts(i);
    knee(i) = std::pow(std::tanh(1.0 / (2.0 * ts(i))), 2);
  }

  const auto good = qc_decay_exponent(ts, pw, 0.1, 1.0);
  CHECK(good.slope == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(good.amplitude == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(good.accepted);

  const auto bad = qc_decay_exponent(ts, knee, 0.1, 1.0);
  CHECK_FALSE(bad.accepted);

  CHECK_THROWS_AS(qc_decay_exponent(ts, pw, 0.2, 0.5), ConfigError);
}

TEST_CASE("data collapse") {
  auto phi = [](double x) { return std::tanh(1.0 / (2.0 * x)); };
  std::vector<CollapseCurve> curves;
  for (double n : {500.0, 1000.0, 2000.0}) {
    const int pts = 25;
    CollapseCurve c;
    c.n = n;
    c.ts.resize(pts);
    c.fs.resize(pts);
    for (int i = 0; i < pts; ++i) {
      const double x = 0.05 * std::pow(20.0 / 0.05, i / (pts - 1.0));
      c.ts(i) = x / std::pow(n, 1.0 / 3.0);
      c.fs(i) = std::pow(n, 4.0 / 3.0) * phi(x);
    }
    curves.push_back(c);
  }

  CHECK(data_collapse(curves, 4.0 / 3.0, 1.0 / 3.0) < 0.01);
  CHECK(data_collapse(curves, 1.0, 1.0) > 0.20);
  CHECK_THROWS_AS(
      data_collapse({curves[0], curves[1]}, 4.0 / 3.0, 1.0 / 3.0), ConfigError);

  SUBCASE("single-amplitude profile fit") {
    std::vector<CollapseCurve> scaled = curves;
    for (auto& c : scaled) c.fs *= 0.93;
    const auto res = collapse_against_profile(scaled, 4.0 / 3.0, 1.0 / 3.0, phi);
    CHECK(res.amplitude == doctest::Approx(0.93).epsilon(1e-6));
    CHECK(res.rms < 1e-6);
  }
}

TEST_CASE("inverse size extrapolation") {
  Eigen::VectorXd ns(4), vals(4);
  ns << 500, 1000, 2000, 4000;
  for (int i = 0; i < 4; ++i) vals(i) = -1.272 + 3.1 / ns(i);
  CHECK(extrapolate_inverse_size(ns, vals) == doctest::Approx(-1.272).epsilon(1e-10));
}
