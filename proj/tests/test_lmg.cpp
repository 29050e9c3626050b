#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qcrit/linalg.hpp"
#include "qcrit/lmg.hpp"
#include "qcrit/scaling.hpp"

using namespace qcrit;

namespace {

LmgSpec make_spec(int sites, double lambda, double delta = 0.0) {
  LmgSpec s;
  s.sites = sites;
  s.lambda = lambda;
  s.delta = delta;
  return s;
}

}  // namespace

TEST_CASE("two-spin matrix reproduces hand eigenvalues and the flip symmetry") {
  const Eigen::MatrixXd h = build_lmg(make_spec(2, 1.0));
  REQUIRE(h.rows() == 3);
  CHECK(h(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h(1, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h(0, 1) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  const EighResult es = dense_eigh(h);
  // lambda/4 +- sqrt(1 + lambda^2/16) on the even block, lambda/2 on the odd
  CHECK(es.values(0) == doctest::Approx(0.25 - std::sqrt(1.0625)).epsilon(1e-12));
  CHECK(es.values(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(es.values(2) == doctest::Approx(0.25 + std::sqrt(1.0625)).epsilon(1e-12));

  const Eigen::MatrixXd g = build_lmg(make_spec(200, -0.7));
  const int n = g.rows();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(g(i, j) - g(n - 1 - i, n - 1 - j)));
  CHECK(worst == 0.0);

  const Eigen::MatrixXd b = build_lmg(make_spec(2, 1.0, 0.25));
  CHECK(b(0, 0) - b(2, 2) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("noninteracting ladder is equally spaced") {
  const Eigen::MatrixXd h = build_lmg(make_spec(200, 0.0));
  const EighResult es = dense_eigh(h, false);
  for (int k = 0; k + 1 < 6; ++k)
    CHECK(es.values(k + 1) - es.values(k) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(es.values(0) == doctest::Approx(-100.0).epsilon(1e-10));
}

TEST_CASE("low-lying gaps match the closed forms on both sides") {
  const LmgGaps squeezed = lmg_gaps(make_spec(2000, -0.5));
  CHECK(std::abs(squeezed.delta1 - std::sqrt(0.5)) / std::sqrt(0.5) < 0.02);
  CHECK(squeezed.delta1 == doctest::Approx(0.707367).epsilon(5e-6));

  const LmgGaps broken = lmg_gaps(make_spec(2000, -1.5));
  CHECK(broken.delta1 < 1e-3);
  CHECK(std::abs(broken.delta2 - std::sqrt(1.25)) / std::sqrt(1.25) < 0.02);
  CHECK(broken.delta2 == doctest::Approx(1.115733).epsilon(5e-6));
}

TEST_CASE("critical gap shrinks with the cube root of size") {
  std::vector<double> ln_n, ln_gap;
  for (int n : {200, 500, 1000, 2000, 4000}) {
    ln_n.push_back(std::log(static_cast<double>(n)));
    ln_gap.push_back(std::log(lmg_gaps(make_spec(n, -1.0)).delta1));
  }
  const LinearFit fit = linear_fit(ln_n, ln_gap);
  CHECK(std::abs(fit.slope + 1.0 / 3.0) < 0.05);
  CHECK(fit.slope == doctest::Approx(-0.3240).epsilon(5e-3));
}

TEST_CASE("broken-phase cat saturates the macroscopic bound") {
  const LmgGroundResult r = lmg_ground_qfi(make_spec(1000, -2.0));
  const double want = 1000 * (1.0 - 1.0 / 4.0);
  CHECK(std::abs(r.f_z - want) / want < 0.02);
  CHECK(r.f_z == doctest::Approx(749.689946).epsilon(1e-7));
  CHECK(r.axis == Axis::Z);
  CHECK(r.fq_density == r.f_z);
}

TEST_CASE("squeezed-phase densities follow the Fisher diagonal") {
  const LmgGroundResult r = lmg_ground_qfi(make_spec(1000, -0.5));
  CHECK(std::abs(r.f_z - std::sqrt(2.0)) / std::sqrt(2.0) < 0.02);
  CHECK(r.f_z == doctest::Approx(1.413088).epsilon(1e-6));
  CHECK(std::abs(r.f_y - std::sqrt(0.5)) / std::sqrt(0.5) < 0.02);
  CHECK(r.f_y == doctest::Approx(0.707585).epsilon(1e-6));
  CHECK(r.f_x < 0.01);
  CHECK(std::abs(r.xi2_r - std::sqrt(0.5)) / std::sqrt(0.5) < 0.02);
  CHECK(r.xi2_r == doctest::Approx(0.707670).epsilon(1e-6));
  CHECK(r.f_z * r.xi2_r == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.axis == Axis::Z);
}

TEST_CASE("strong repulsion drives the ground state to a twin-Fock probe") {
  const LmgGroundResult r = lmg_ground_qfi(make_spec(50, 1e6));
  const double want = 0.5 * (50 + 2);
  CHECK(std::abs(r.f_y - want) / want < 0.01);
  CHECK(r.f_y == doctest::Approx(25.999984).epsilon(1e-6));
  CHECK(r.axis == Axis::Y);
}

TEST_CASE("a longitudinal bias selects the matching symmetry-broken branch") {
  const double want = std::sqrt(0.75);
  const LmgGroundResult plus = lmg_ground_qfi(make_spec(2000, -2.0, -1e-6));
  CHECK(std::abs(plus.order_parameter - want) / want < 0.02);
  CHECK(plus.order_parameter == doctest::Approx(0.865853).epsilon(1e-6));
  const LmgGroundResult minus = lmg_ground_qfi(make_spec(2000, -2.0, +1e-6));
  CHECK(minus.order_parameter == doctest::Approx(-0.865853).epsilon(1e-6));
  const LmgGroundResult cat = lmg_ground_qfi(make_spec(2000, -2.0));
  CHECK(std::abs(cat.order_parameter) < 1e-12);
}

TEST_CASE("squeezing balance point extrapolates to the golden-ratio coupling") {
  const std::vector<double> pinned{-1.277315, -1.274657, -1.273336, -1.272677};
  std::vector<double> inv_n, roots;
  int i = 0;
  for (int n : {500, 1000, 2000, 4000}) {
    const double root = critical_squeezing_coupling(n);
    CHECK(root == doctest::Approx(pinned[i++]).epsilon(1e-6));
    inv_n.push_back(1.0 / n);
    roots.push_back(root);
  }
  const LinearFit fit = linear_fit(inv_n, roots);
  const double golden = -std::sqrt(0.5 * (1.0 + std::sqrt(5.0)));
  CHECK(std::abs(fit.intercept - golden) < 0.01);
  CHECK(fit.intercept == doctest::Approx(-1.272011).epsilon(1e-6));
}

TEST_CASE("fidelity susceptibility matches both closed-form branches") {
  const double intensive = lmg_fidelity_susceptibility(make_spec(2000, -0.5));
  CHECK(std::abs(intensive - 0.125) / 0.125 < 0.03);
  CHECK(intensive == doctest::Approx(0.124605).epsilon(1e-5));
  CHECK(lmg_chi_closed_form(-0.5, 2000) == doctest::Approx(0.125).epsilon(1e-12));

  const double extensive = lmg_fidelity_susceptibility(make_spec(2000, -1.5));
  const double want = lmg_chi_closed_form(-1.5, 2000);
  CHECK(std::abs(extensive - want) / want < 0.05);
  CHECK(extensive == doctest::Approx(132.9059).epsilon(1e-5));
  CHECK(want == doctest::Approx(132.5077).epsilon(1e-6));

  // intensive branch is size-free, the broken branch doubles with size
  const double half = lmg_fidelity_susceptibility(make_spec(1000, -0.5));
  CHECK(std::abs(intensive / half - 1.0) < 0.01);
  const double half_b = lmg_fidelity_susceptibility(make_spec(1000, -1.5));
  CHECK(std::abs(extensive / half_b - 2.0) < 0.05);
}

TEST_CASE("ground-state sensitivity scales critically and the peak drifts in") {
  std::vector<double> ln_n, ln_chi, ln_fq, ln_shift;
  std::vector<double> peak_positions;
  for (int n : {200, 500, 1000, 2000}) {
    ln_n.push_back(std::log(static_cast<double>(n)));
    ln_chi.push_back(std::log(lmg_fidelity_susceptibility(make_spec(n, -1.0))));
    ln_fq.push_back(std::log(lmg_ground_qfi(make_spec(n, -1.0)).fq_density));

    const double w = std::pow(n, -2.0 / 3.0);
    std::vector<double> grid, vals;
    for (int i = 0; i < 37; ++i) {
      grid.push_back(-1.0 - 6.0 * w + 9.0 * w * i / 36.0);
      vals.push_back(lmg_fidelity_susceptibility(make_spec(n, grid.back())));
    }
    int ib = 0;
    for (size_t i = 1; i < vals.size(); ++i)
      if (vals[i] > vals[ib]) ib = static_cast<int>(i);
    REQUIRE(ib > 0);
    REQUIRE(ib + 1 < static_cast<int>(vals.size()));
    const double a = vals[ib - 1], b = vals[ib], c = vals[ib + 1];
    const double dx = 0.5 * (a - c) / (a - 2 * b + c) * (grid[1] - grid[0]);
    peak_positions.push_back(grid[ib] + dx);
    ln_shift.push_back(std::log(std::abs(grid[ib] + dx + 1.0)));
  }
  const double fq_slope = linear_fit(ln_n, ln_fq).slope;
  CHECK(std::abs(fq_slope - 1.0 / 3.0) < 0.05);
  CHECK(fq_slope == doctest::Approx(0.3262).epsilon(5e-3));

  const double chi_slope = linear_fit(ln_n, ln_chi).slope;
  CHECK(std::abs(chi_slope - 4.0 / 3.0) < 0.07);
  CHECK(chi_slope == doctest::Approx(1.3209).epsilon(5e-3));

  const double shift_slope = linear_fit(ln_n, ln_shift).slope;
  CHECK(std::abs(shift_slope + 2.0 / 3.0) < 0.07);
  CHECK(shift_slope == doctest::Approx(-0.6626).epsilon(5e-3));

  CHECK(peak_positions[1] == doctest::Approx(-1.04270).epsilon(1e-4));
  CHECK(peak_positions[3] == doctest::Approx(-1.01706).epsilon(1e-4));
  for (size_t i = 0; i + 1 < peak_positions.size(); ++i)
    CHECK(peak_positions[i] < peak_positions[i + 1]);
}

TEST_CASE("thermal decay follows the two-level envelope below the gap") {
  const LmgThermalSetup setup = lmg_thermal_setup(make_spec(2000, -0.5));
  const double d1 = setup.levels(1);
  CHECK(d1 == doctest::Approx(0.707367).epsilon(5e-6));
  const double f0 = lmg_ground_qfi(make_spec(2000, -0.5)).f_z * 2000;
  CHECK(f0 / 2000 == doctest::Approx(1.413650).epsilon(1e-6));
  double worst = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double t = 0.02 + (d1 - 0.02) * i / 14.0;
    const double law = kmode_thermal_law(f0, d1, t, INFINITY);
    const LmgThermalResult th = lmg_thermal_qfi(setup, t);
    worst = std::max(worst, std::abs(th.f_max - law) / law);
    CHECK(th.axis == Axis::Z);
  }
  CHECK(worst < 0.03);
  CHECK(worst < 1.5e-3);
}

TEST_CASE("the partitioned thermal law hits its analytic limits") {
  for (double t : {0.1, 0.37, 1.0, 4.0}) {
    const double two = kmode_thermal_law(1.0, 1.0, t, 2.0);
    const double tanh2 = std::tanh(0.5 / t) * std::tanh(0.5 / t);
    CHECK(std::abs(two - tanh2) < 1e-12);
  }
  const double many = kmode_thermal_law(1.0, 1.0, 1.0, 1e4);
  CHECK(std::abs(many - std::tanh(0.5)) < 1e-6);
  const double infinite = kmode_thermal_law(3.0, 0.5, 0.2, INFINITY);
  CHECK(infinite == doctest::Approx(3.0 * std::tanh(1.25)).epsilon(1e-12));
  // deep cold: no overflow, saturates at f0
  CHECK(kmode_thermal_law(2.0, 1.0, 1e-6, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
  // equally spaced k levels always lie below the two-level envelope
  for (double k : {2.0, 3.0, 10.0, 300.0})
    CHECK(kmode_thermal_law(1.0, 1.0, 0.5, k) < std::tanh(1.0));
}

TEST_CASE("the crossover knee sits at the universal gap ratio") {
  const double ratio = lmg_crossover_ratio(make_spec(2000, -0.5));
  CHECK(std::abs(ratio - 2.40) / 2.40 < 0.10);
  CHECK(ratio == doctest::Approx(2.4006).epsilon(2e-3));
}

TEST_CASE("the thermal state reduces to the ground state at low temperature") {
  const LmgThermalSetup setup = lmg_thermal_setup(make_spec(1000, -0.5));
  const LmgThermalResult cold = lmg_thermal_qfi(setup, 1e-4);
  const LmgGroundResult ground = lmg_ground_qfi(make_spec(1000, -0.5));
  CHECK(cold.f_max / 1000 == doctest::Approx(ground.fq_density).epsilon(1e-9));
  CHECK(cold.axis == ground.axis);
  CHECK(cold.xi2_r == doctest::Approx(ground.xi2_r).epsilon(1e-6));
}

TEST_CASE("the ferromagnetic plateau pins the longitudinal component") {
  const LmgThermalSetup setup = lmg_thermal_setup(make_spec(2000, -1.5));
  const double plateau = 2000 / (1.5 * std::sqrt(1.25));
  for (double t : {0.01, 0.02, 0.05}) {
    const LmgThermalResult th = lmg_thermal_qfi(setup, t);
    CHECK(std::abs(th.f_z - plateau) / plateau < 0.05);
    CHECK(th.f_z == doctest::Approx(1195.51).epsilon(1e-4));
    // the Fisher maximum has already switched to the transverse plane here
    CHECK(std::max(th.f_x, th.f_y) > th.f_z);
  }
  const LmgThermalResult th = lmg_thermal_qfi(setup, 0.02);
  const double transverse = 2000 * std::sqrt(1.0 - 1.0 / 2.25);
  CHECK(std::abs(th.f_x - transverse) / transverse < 0.01);
  CHECK(th.f_x == doctest::Approx(1490.25).epsilon(1e-4));
}

TEST_CASE("antiferromagnetic decay keeps the transverse axis") {
  const LmgThermalSetup setup = lmg_thermal_setup(make_spec(500, 5.0));
  const double d1 = setup.levels(1);
  CHECK(std::abs(d1 - std::sqrt(6.0)) / std::sqrt(6.0) < 0.01);
  const double f0 = lmg_thermal_qfi(setup, 1e-4).f_y;
  double worst = 0.0;
  for (int i = 0; i < 14; ++i) {
    const double t = 0.1 + (2.0 - 0.1) * i / 13.0;
    const LmgThermalResult th = lmg_thermal_qfi(setup, t);
    worst = std::max(worst, std::abs(th.f_max - f0 * std::tanh(0.5 * d1 / t)) /
                                (f0 * std::tanh(0.5 * d1 / t)));
    CHECK(th.axis == Axis::Y);
  }
  CHECK(worst < 0.03);
}

TEST_CASE("thermal sensitivity and squeezing stay reciprocal off criticality") {
  double worst = 0.0;
  for (double lambda : {-1.2, -0.8, -0.3, 0.0, 0.5, 1.0, 2.0}) {
    const LmgThermalSetup setup = lmg_thermal_setup(make_spec(500, lambda));
    for (double t : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
      const LmgThermalResult th = lmg_thermal_qfi(setup, t);
      worst = std::max(worst, std::abs(th.f_max - 500.0 / th.xi2_r) / th.f_max);
    }
  }
  CHECK(worst < 0.03);
}

TEST_CASE("critical thermal decay has unit exponent and half amplitude") {
  const LmgThermalSetup setup = lmg_thermal_setup(make_spec(2000, -1.0));
  Eigen::VectorXd ts(12), fs(12);
  for (int i = 0; i < 12; ++i) {
    ts(i) = std::pow(10.0, -1.0 + i / 11.0);
    fs(i) = lmg_thermal_qfi(setup, ts(i)).f_max / 2000;
  }
  const QcDecayResult qc = qc_decay_exponent(ts, fs, 0.1, 1.0);
  CHECK(qc.accepted);
  CHECK(std::abs(qc.slope + 1.0) < 0.1);
  CHECK(qc.slope == doctest::Approx(-0.9657).epsilon(5e-3));
  const double tail = fs(11) * ts(11);
  CHECK(std::abs(tail - 0.5) < 0.1);
  CHECK(tail == doctest::Approx(0.4906).epsilon(5e-3));
}

TEST_CASE("critical thermal curves collapse onto one envelope") {
  std::vector<CollapseCurve> curves;
  for (int n : {500, 1000, 2000}) curves.push_back(critical_collapse_curve(n));
  const ProfileCollapseResult fit = collapse_against_profile(
      curves, 4.0 / 3.0, 1.0 / 3.0, [](double x) { return std::tanh(0.5 / x); });
  CHECK(fit.amplitude > 0.85);
  CHECK(fit.amplitude < 1.05);
  CHECK(fit.rms < 0.05);
  CHECK(fit.amplitude == doctest::Approx(0.9342).epsilon(2e-3));
  CHECK(fit.rms == doctest::Approx(0.0080).epsilon(0.05));

  const double right = data_collapse(curves, 4.0 / 3.0, 1.0 / 3.0);
  const double wrong = data_collapse(curves, 1.0, 1.0);
  CHECK(right < 0.05);
  CHECK(right == doctest::Approx(0.0039).epsilon(0.05));
  CHECK(wrong > 5.0 * right);
}

TEST_CASE("the witness temperature peaks just below one half") {
  const WitnessPeak small = max_witness_temperature(200);
  CHECK(small.temperature == doctest::Approx(0.46956).epsilon(5e-4));
  const WitnessPeak mid = max_witness_temperature(500);
  CHECK(mid.temperature == doctest::Approx(0.48047).epsilon(5e-4));
  CHECK(mid.temperature > small.temperature);
  CHECK(mid.temperature < 0.5);
  CHECK(std::abs(mid.lambda + 1.0) < 0.1);
}

TEST_CASE("variance witness boundaries follow the closed forms") {
  const auto afm = lmg_entanglement_boundary(5.0, 1, 2000);
  REQUIRE(afm.has_value());
  CHECK(std::abs(*afm - 2.5) / 2.5 < 0.20);
  CHECK(*afm == doctest::Approx(2.8252).epsilon(1e-4));
  const auto afm2 = lmg_entanglement_boundary(5.0, 2, 2000);
  REQUIRE(afm2.has_value());
  CHECK(*afm2 < *afm);

  double best = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double lambda = -0.999 + 0.799 * i / 199.0;
    const auto t = lmg_entanglement_boundary(lambda, 1, 2000);
    if (t) best = std::max(best, *t);
  }
  CHECK(std::abs(best - 0.5) < 0.01);
  CHECK(best == doctest::Approx(0.49983).epsilon(1e-4));

  CHECK(!lmg_entanglement_boundary(-1.3, 1, 2000).has_value());
  const auto near = lmg_entanglement_boundary(-1.2, 1, 2000);
  REQUIRE(near.has_value());
  CHECK(*near == doctest::Approx(0.3050).epsilon(1e-3));
  CHECK(!lmg_entanglement_boundary(5.0, 2000, 2000).has_value());
  CHECK(lmg_entanglement_boundary(-1.0, 1, 2000).value() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("the metastable branch window closes at the transition") {
  CHECK(metastability_threshold(-1.0) == 0.0);
  CHECK(std::abs(metastability_threshold(-2.0) - 0.4502) < 1e-3);
  CHECK(metastability_threshold(-2.0) == doctest::Approx(0.450196).epsilon(1e-6));
  CHECK(metastability_threshold(-8.0) ==
        doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS((void)metastability_threshold(-0.5), ConfigError);
}

TEST_CASE("the continuum image matches the ladder spectrum") {
  for (double lambda : {-2.0, -1.5, -0.5, 0.0, 1.0}) {
    const LmgSpec spec = make_spec(500, lambda);
    const SemiclassicalResult sc = semiclassical_solve(spec, 10);
    const Eigen::MatrixXd h = build_lmg(spec);
    const EighResult ed = dense_eigh(h, false);
    for (int k = 0; k < 10; ++k)
      CHECK(std::abs(sc.values(k) - ed.values(k)) / std::abs(ed.values(k)) < 0.01);

    if (lambda == -1.5) {
      CHECK(sc.values(1) - sc.values(0) < 1e-3);
      double z2 = 0.0;
      for (int i = 0; i < sc.z.size(); ++i)
        z2 += sc.z(i) * sc.z(i) * sc.modes(i, 0) * sc.modes(i, 0);
      const double want = 1.0 - 1.0 / 2.25;
      CHECK(std::abs(z2 - want) / want < 0.02);
      CHECK(z2 == doctest::Approx(0.55020).epsilon(1e-4));
    }
    if (lambda == 0.0) {
      for (int k = 0; k + 1 < 10; ++k)
        CHECK(sc.values(k + 1) - sc.values(k) == doctest::Approx(1.0).epsilon(0.01));
    }
  }
  const SemiclassicalResult sc = semiclassical_solve(make_spec(2000, -0.5), 2);
  const double gap = sc.values(1) - sc.values(0);
  CHECK(std::abs(gap - std::sqrt(0.5)) / std::sqrt(0.5) < 0.01);
  CHECK(gap == doctest::Approx(0.707544).epsilon(1e-5));

  CHECK_THROWS_WITH_AS((void)semiclassical_solve(make_spec(10, -2.0), 4),
                       doctest::Contains("validity cutoff"), ConfigError);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS((void)lmg_gaps(make_spec(3, 0.0)), ConfigError);
  CHECK_THROWS_AS((void)lmg_gaps(make_spec(0, 0.0)), ConfigError);
  CHECK_THROWS_AS((void)lmg_gaps(make_spec(100, 1e9)), ConfigError);
  CHECK_THROWS_AS((void)lmg_gaps(make_spec(100, 0.0, NAN)), ConfigError);
  CHECK_THROWS_AS((void)build_lmg(make_spec(8000, 0.0)), ConfigError);
  CHECK_THROWS_AS((void)lmg_thermal_qfi(make_spec(100, -0.5), 0.0), ConfigError);
  CHECK_THROWS_AS((void)lmg_thermal_qfi(make_spec(100, -0.5), -1.0), ConfigError);
  CHECK_THROWS_AS((void)lmg_fidelity_susceptibility(make_spec(100, -0.5, 1e-3)),
                  ConfigError);
  CHECK_THROWS_AS((void)lmg_fidelity_susceptibility(make_spec(100, -0.5), -1e-4),
                  ConfigError);
  CHECK_THROWS_AS((void)lmg_chi_closed_form(0.5, 100), ConfigError);
  CHECK_THROWS_AS((void)lmg_chi_closed_form(-1.0, 100), ConfigError);
  CHECK_THROWS_AS((void)kmode_thermal_law(1.0, 1.0, 1.0, 1.5), ConfigError);
  CHECK_THROWS_AS((void)kmode_thermal_law(1.0, -1.0, 1.0, 2.0), ConfigError);
  CHECK_THROWS_AS((void)kmode_thermal_law(1.0, 1.0, 0.0, 2.0), ConfigError);
  CHECK_THROWS_AS((void)lmg_entanglement_boundary(0.0, 0, 100), ConfigError);
  CHECK_THROWS_AS((void)lmg_entanglement_boundary(0.0, 101, 100), ConfigError);
  CHECK_THROWS_AS((void)semiclassical_solve(make_spec(100, 0.0), 1, {500}),
                  ConfigError);
  CHECK_THROWS_AS((void)semiclassical_solve(make_spec(100, 0.0), 1, {502}),
                  ConfigError);
  CHECK_THROWS_AS((void)semiclassical_solve(make_spec(100, 0.0), 0), ConfigError);
}
