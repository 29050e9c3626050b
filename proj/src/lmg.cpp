#include "qcrit/lmg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qcrit/linalg.hpp"

namespace qcrit {

namespace {

constexpr int kDenseSitesCap = 6000;

struct LmgTridiag {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;
  Eigen::VectorXd m;  // ladder labels -J..J
};

double ladder_coeff(double jj, double m) {
  return std::sqrt(std::max(0.0, jj * (jj + 1.0) - m * (m + 1.0)));
}

LmgTridiag lmg_tridiagonal(const LmgSpec& spec) {
  const int n = spec.sites + 1;
  const double jj = 0.5 * spec.sites;
  LmgTridiag t;
  t.m.resize(n);
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double m = i - jj;
    t.m(i) = m;
    t.diag(i) = (spec.lambda / spec.sites) * m * m + spec.delta * m;
  }
  for (int i = 0; i + 1 < n; ++i) t.off(i) = -0.5 * ladder_coeff(jj, i - jj);
  return t;
}

// Parity-even block in the basis {|0>, (|m> + |-m>)/sqrt(2)}, m = 1..J. Still
// tridiagonal; the m = 0 <-> 1 coupling picks up a sqrt(2).
void lmg_even_block(int sites, double lambda, Eigen::VectorXd& diag,
                    Eigen::VectorXd& off) {
  const int jmax = sites / 2;
  const double jj = 0.5 * sites;
  diag.resize(jmax + 1);
  off.resize(jmax);
  for (int m = 0; m <= jmax; ++m)
    diag(m) = (lambda / sites) * static_cast<double>(m) * m;
  for (int m = 0; m + 1 <= jmax; ++m) off(m) = -0.5 * ladder_coeff(jj, m);
  if (jmax >= 1) off(0) *= std::sqrt(2.0);
}

Eigen::VectorXd lift_even_block(const Eigen::VectorXd& v, int sites) {
  const int jmax = sites / 2;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(sites + 1);
  full(jmax) = v(0);
  const double inv = 1.0 / std::sqrt(2.0);
  for (int m = 1; m <= jmax; ++m) {
    full(jmax + m) = inv * v(m);
    full(jmax - m) = inv * v(m);
  }
  return full;
}

Eigen::VectorXd even_block_ground(int sites, double lambda, double* energy) {
  Eigen::VectorXd d, e;
  lmg_even_block(sites, lambda, d, e);
  const EighResult low = tridiag_lowest(d, e, 1, true);
  if (energy) *energy = low.values(0);
  return low.vectors.col(0);
}

// Ground vector in the full ladder basis. delta = 0 goes through the
// parity-even block so the broken phase returns the cat branch instead of an
// arbitrary rotation within the quasi-degenerate doublet.
Eigen::VectorXd ground_vector(const LmgSpec& spec, double* energy) {
  if (spec.delta == 0.0)
    return lift_even_block(even_block_ground(spec.sites, spec.lambda, energy),
                           spec.sites);
  const LmgTridiag t = lmg_tridiagonal(spec);
  const EighResult low = tridiag_lowest(t.diag, t.off, 1, true);
  if (energy) *energy = low.values(0);
  return low.vectors.col(0);
}

struct CollectiveMoments {
  double mx = 0.0, mz = 0.0;
  double varx = 0.0, vary = 0.0, varz = 0.0;
};

CollectiveMoments collective_moments(const Eigen::VectorXd& g, int sites) {
  const int n = sites + 1;
  const double jj = 0.5 * sites;
  Eigen::VectorXd raise = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(n);
  for (int i = 0; i + 1 < n; ++i) {
    const double c = ladder_coeff(jj, i - jj);
    raise(i + 1) = c * g(i);
    lower(i) = c * g(i + 1);
  }
  const Eigen::VectorXd xg = 0.5 * (raise + lower);
  const Eigen::VectorXd yg = 0.5 * (raise - lower);  // i J_y g for real g
  CollectiveMoments mo;
  double mz = 0.0, zz = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = i - jj;
    const double w = g(i) * g(i);
    mz += m * w;
    zz += m * m * w;
  }
  mo.mz = mz;
  mo.mx = g.dot(xg);
  mo.varz = zz - mz * mz;
  mo.varx = xg.squaredNorm() - mo.mx * mo.mx;
  mo.vary = yg.squaredNorm();
  return mo;
}

double well_fraction(double lambda) {
  if (lambda == -1.0) return 1.0;
  if (lambda > -1.0) return (lambda + 2.0) / (2.0 * std::sqrt(1.0 + lambda));
  return 1.0 / (std::abs(lambda) * std::sqrt(lambda * lambda - 1.0));
}

}  // namespace

void LmgSpec::validate() const {
  if (sites < 2 || sites % 2 != 0)
    throw ConfigError("lmg: sites must be even and at least 2");
  if (sites > 200000) throw ConfigError("lmg: sites capped at 200000");
  if (!std::isfinite(lambda) || std::abs(lambda) > 1e8)
    throw ConfigError("lmg: lambda must be finite with |lambda| <= 1e8");
  if (!std::isfinite(delta) || std::abs(delta) > 100.0)
    throw ConfigError("lmg: delta must be finite with |delta| <= 100");
}

Eigen::MatrixXd build_lmg(const LmgSpec& spec) {
  spec.validate();
  if (spec.sites > kDenseSitesCap)
    throw ConfigError("build_lmg: dense matrix capped at 6000 sites");
  const LmgTridiag t = lmg_tridiagonal(spec);
  const int n = spec.sites + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.diagonal() = t.diag;
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = t.off(i);
    h(i + 1, i) = t.off(i);
  }
  return h;
}

LmgGaps lmg_gaps(const LmgSpec& spec) {
  spec.validate();
  const LmgTridiag t = lmg_tridiagonal(spec);
  const int count = std::min(3, spec.sites + 1);
  const EighResult low = tridiag_lowest(t.diag, t.off, count, false);
  LmgGaps g;
  g.delta1 = low.values(1) - low.values(0);
  g.delta2 = (count > 2 ? low.values(2) : low.values(1)) - low.values(0);
  return g;
}

LmgGroundResult lmg_ground_qfi(const LmgSpec& spec) {
  spec.validate();
  LmgGroundResult out;
  const Eigen::VectorXd g = ground_vector(spec, &out.energy);
  const CollectiveMoments mo = collective_moments(g, spec.sites);
  const double n = spec.sites;
  out.f_x = 4.0 * mo.varx / n;
  out.f_y = 4.0 * mo.vary / n;
  out.f_z = 4.0 * mo.varz / n;
  out.fq_density = out.f_z;
  out.axis = Axis::Z;
  if (out.f_y > out.fq_density) {
    out.fq_density = out.f_y;
    out.axis = Axis::Y;
  }
  if (out.f_x > out.fq_density) {
    out.fq_density = out.f_x;
    out.axis = Axis::X;
  }
  const double mx2 = mo.mx * mo.mx;
  out.xi2_r = mx2 > 1e-300 ? n * std::min(mo.vary, mo.varz) / mx2
                           : std::numeric_limits<double>::infinity();
  out.order_parameter = 2.0 * mo.mz / n;
  return out;
}

LmgThermalSetup lmg_thermal_setup(const LmgSpec& spec) {
  spec.validate();
  if (spec.sites > kDenseSitesCap)
    throw ConfigError("lmg_thermal_setup: dense eigenbasis capped at 6000 sites");
  const LmgTridiag t = lmg_tridiagonal(spec);
  const EighResult es = tridiag_eigh(t.diag, t.off, true);
  const int n = spec.sites + 1;
  const double jj = 0.5 * spec.sites;
  Eigen::VectorXd cp(n - 1);
  for (int i = 0; i + 1 < n; ++i) cp(i) = ladder_coeff(jj, i - jj);

  Eigen::MatrixXd shifted = Eigen::MatrixXd::Zero(n, n);
  shifted.bottomRows(n - 1) = cp.asDiagonal() * es.vectors.topRows(n - 1);
  const Eigen::MatrixXd p = es.vectors.transpose() * shifted;  // <n|J_+|m>

  LmgThermalSetup setup;
  setup.sites = spec.sites;
  setup.levels = es.values.array() - es.values(0);
  setup.wx = 0.5 * (p + p.transpose());
  setup.wy = 0.5 * (p - p.transpose());
  setup.wz = es.vectors.transpose() * (t.m.asDiagonal() * es.vectors);
  return setup;
}

LmgThermalResult lmg_thermal_qfi(const LmgThermalSetup& setup, double temperature) {
  if (setup.sites < 2 || setup.levels.size() != setup.sites + 1)
    throw ConfigError("lmg_thermal_qfi: setup not initialized");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw ConfigError("lmg_thermal_qfi: temperature must be positive");
  const int n = setup.sites + 1;
  const double cut = -temperature * std::log(kWeightCutoff);
  int nk = 1;
  while (nk < n && setup.levels(nk) <= cut) ++nk;
  const Eigen::VectorXd z = (-setup.levels.head(nk) / temperature).array().exp();
  const Eigen::VectorXd prob = z / z.sum();

  const std::array<const Eigen::MatrixXd*, 3> ws{&setup.wx, &setup.wy, &setup.wz};
  std::array<double, 3> f{};
  std::array<double, 3> second_moment{};
  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXd w2 = ws[a]->topLeftCorner(nk, nk).array().square();
    const Eigen::VectorXd o2 =
        ws[a]->leftCols(nk).colwise().squaredNorm().transpose();
    f[a] = qfi_from_overlaps(prob, w2, o2);
    second_moment[a] = prob.dot(o2);
  }

  LmgThermalResult out;
  out.f_x = f[0];
  out.f_y = f[1];
  out.f_z = f[2];
  out.f_max = out.f_z;
  out.axis = Axis::Z;
  if (out.f_y > out.f_max) {
    out.f_max = out.f_y;
    out.axis = Axis::Y;
  }
  if (out.f_x > out.f_max) {
    out.f_max = out.f_x;
    out.axis = Axis::X;
  }
  double jx = 0.0, jz = 0.0;
  for (int i = 0; i < nk; ++i) {
    jx += prob(i) * setup.wx(i, i);
    jz += prob(i) * setup.wz(i, i);
  }
  const double var_y = second_moment[1];  // <J_y> = 0 in this basis
  const double var_z = second_moment[2] - jz * jz;
  out.xi2_r = jx * jx > 1e-300
                  ? setup.sites * std::min(var_y, var_z) / (jx * jx)
                  : std::numeric_limits<double>::infinity();
  return out;
}

LmgThermalResult lmg_thermal_qfi(const LmgSpec& spec, double temperature) {
  return lmg_thermal_qfi(lmg_thermal_setup(spec), temperature);
}

SemiclassicalResult semiclassical_solve(const LmgSpec& spec, int count,
                                        const SemiclassicalGrid& grid) {
  spec.validate();
  if (grid.points < 501 || grid.points % 2 == 0)
    throw ConfigError("semiclassical grid needs an odd point count, at least 501");
  if (count < 1) throw ConfigError("semiclassical_solve: need at least one level");
  const double n_max =
      0.5 * spec.sites * std::min(1.0, well_fraction(spec.lambda));
  if (count - 1 > n_max)
    throw ConfigError(
        "semiclassical_solve: level " + std::to_string(count - 1) +
        " lies beyond the validity cutoff n_max = " + std::to_string(n_max));

  const int mpts = grid.points;
  const double h = 2.0 / (mpts + 1);
  const double nn = spec.sites;
  const double kin = 2.0 / (nn * nn * h * h);
  Eigen::VectorXd z(mpts), diag(mpts), off(mpts - 1);
  Eigen::VectorXd s_half(mpts + 1);
  for (int i = 0; i <= mpts; ++i) {
    const double zm = -1.0 + (i + 0.5) * h;
    s_half(i) = std::sqrt(std::max(0.0, 1.0 - zm * zm));
  }
  for (int i = 0; i < mpts; ++i) {
    z(i) = -1.0 + (i + 1) * h;
    const double pot = 0.5 * spec.lambda * z(i) * z(i) -
                       std::sqrt(1.0 - z(i) * z(i)) + spec.delta * z(i);
    diag(i) = 0.5 * nn * (kin * (s_half(i) + s_half(i + 1)) + pot);
  }
  for (int i = 0; i + 1 < mpts; ++i) off(i) = -0.5 * nn * kin * s_half(i + 1);

  const EighResult low = tridiag_lowest(diag, off, count, true);
  SemiclassicalResult out;
  out.z = std::move(z);
  out.values = low.values;
  out.modes = low.vectors;
  return out;
}

double kmode_thermal_law(double f0, double gap, double temperature, double modes) {
  if (!(f0 >= 0.0) || !std::isfinite(f0))
    throw ConfigError("kmode_thermal_law: f0 must be finite and nonnegative");
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw ConfigError("kmode_thermal_law: gap must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw ConfigError("kmode_thermal_law: temperature must be positive");
  if (!(modes >= 2.0)) throw ConfigError("kmode_thermal_law: need at least 2 modes");
  const double d = gap / temperature;
  double ratio = 0.0;
  if (std::isfinite(modes)) {
    if (modes * d > 700.0)
      ratio = modes * std::exp((1.0 - modes) * d) * (-std::expm1(-d)) /
              (-std::expm1(-modes * d));
    else
      ratio = modes * std::expm1(d) / std::expm1(modes * d);
  }
  return f0 * std::tanh(0.5 * d) * (1.0 - ratio);
}

std::optional<double> lmg_entanglement_boundary(double lambda, int kappa,
                                                int sites) {
  if (sites < 2 || sites % 2 != 0)
    throw ConfigError("lmg_entanglement_boundary: sites must be even, at least 2");
  if (kappa < 1 || kappa > sites)
    throw ConfigError("lmg_entanglement_boundary: kappa must lie in [1, sites]");
  if (!std::isfinite(lambda))
    throw ConfigError("lmg_entanglement_boundary: lambda must be finite");
  const double dk = k_producibility_bound(sites, kappa) / sites;
  double scale = 0.0, arg = 0.0;
  if (lambda == -1.0) {
    // Common limit of both neighbouring branches.
    return 1.0 / (2.0 * dk);
  } else if (lambda > 0.0) {
    scale = std::sqrt(1.0 + lambda);
    arg = dk / scale;
  } else if (lambda > -1.0) {
    scale = std::sqrt(1.0 + lambda);
    arg = dk * scale;
  } else {
    scale = std::sqrt(lambda * lambda - 1.0);
    arg = dk * std::abs(lambda) * scale;
  }
  if (arg >= 1.0) return std::nullopt;  // no thermal entanglement witnessed
  return scale / (2.0 * std::atanh(arg));
}

double lmg_fidelity_susceptibility(const LmgSpec& spec, double dlambda) {
  spec.validate();
  if (spec.delta != 0.0)
    throw ConfigError(
        "lmg_fidelity_susceptibility: defined on the parity-even block, "
        "needs delta = 0");
  if (!(dlambda > 0.0) || !std::isfinite(dlambda))
    throw ConfigError("lmg_fidelity_susceptibility: step must be positive");
  const Eigen::VectorXd vp =
      even_block_ground(spec.sites, spec.lambda + 0.5 * dlambda, nullptr);
  const Eigen::VectorXd vm =
      even_block_ground(spec.sites, spec.lambda - 0.5 * dlambda, nullptr);
  const double overlap = std::abs(vp.dot(vm));
  if (overlap < 0.99)
    throw NumericError(
        "lmg_fidelity_susceptibility: ground state turned over within the "
        "probe step; reduce dlambda");
  return 2.0 * (1.0 - overlap) / (dlambda * dlambda);
}

double lmg_chi_closed_form(double lambda, int sites) {
  if (lambda > -1.0 && lambda < 0.0)
    return 1.0 / (32.0 * (1.0 + lambda) * (1.0 + lambda));
  if (lambda < -1.0) {
    const double a = std::abs(lambda);
    return sites / (4.0 * a * a * a * std::sqrt(lambda * lambda - 1.0));
  }
  throw ConfigError(
      "lmg_chi_closed_form: closed forms cover -1 < lambda < 0 and lambda < -1");
}

double metastability_threshold(double lambda) {
  if (!(lambda <= -1.0))
    throw ConfigError("metastability_threshold: defined for lambda <= -1");
  const double t = std::cbrt(lambda * lambda) - 1.0;
  return t <= 0.0 ? 0.0 : std::pow(t, 1.5);
}

double critical_squeezing_coupling(int sites) {
  if (sites < 2 || sites % 2 != 0)
    throw ConfigError("critical_squeezing_coupling: sites must be even, >= 2");
  const auto imbalance = [sites](double lambda) {
    LmgSpec spec;
    spec.sites = sites;
    spec.lambda = lambda;
    return lmg_ground_qfi(spec).xi2_r - 1.0;
  };
  return find_root_brent(imbalance, -1.45, -1.05, 1e-8);
}

double witness_temperature(const LmgThermalSetup& setup) {
  const auto excess = [&setup](double t) {
    return lmg_thermal_qfi(setup, t).f_max / setup.sites - 1.0;
  };
  const double lo = 1e-3, hi = 1.2;
  if (excess(lo) < 0.0) return 0.0;
  if (excess(hi) > 0.0)
    throw NumericError("witness_temperature: still above the bound at T = 1.2");
  return find_root_brent(excess, lo, hi, 1e-5);
}

double witness_temperature(const LmgSpec& spec) {
  return witness_temperature(lmg_thermal_setup(spec));
}

WitnessPeak max_witness_temperature(int sites) {
  const auto probe = [sites](double lambda) {
    LmgSpec spec;
    spec.sites = sites;
    spec.lambda = lambda;
    return witness_temperature(spec);
  };
  constexpr int kCoarse = 13;
  std::array<double, kCoarse> grid{};
  for (int i = 0; i < kCoarse; ++i)
    grid[i] = -1.0 + (-0.35 + 0.6 * i / (kCoarse - 1));
  WitnessPeak best;
  int arg = 0;
  for (int i = 0; i < kCoarse; ++i) {
    const double t = probe(grid[i]);
    if (t > best.temperature) {
      best = {grid[i], t};
      arg = i;
    }
  }
  const double lo = grid[std::max(0, arg - 1)];
  const double hi = grid[std::min(kCoarse - 1, arg + 1)];
  for (int i = 0; i < 9; ++i) {
    const double lambda = lo + (hi - lo) * i / 8.0;
    const double t = probe(lambda);
    if (t > best.temperature) best = {lambda, t};
  }
  return best;
}

CollapseCurve critical_collapse_curve(int sites, int n_points) {
  if (n_points < 2) throw ConfigError("critical_collapse_curve: need >= 2 points");
  LmgSpec spec;
  spec.sites = sites;
  spec.lambda = -1.0;
  const LmgThermalSetup setup = lmg_thermal_setup(spec);
  const double scale = std::pow(static_cast<double>(sites), 1.0 / 3.0);
  CollapseCurve curve;
  curve.n = sites;
  curve.ts.resize(n_points);
  curve.fs.resize(n_points);
  const double x_lo = std::log10(0.05), x_hi = std::log10(20.0);
  for (int i = 0; i < n_points; ++i) {
    const double x = std::pow(10.0, x_lo + (x_hi - x_lo) * i / (n_points - 1));
    curve.ts(i) = x / scale;
    curve.fs(i) = lmg_thermal_qfi(setup, curve.ts(i)).f_max;
  }
  return curve;
}

double lmg_crossover_ratio(const LmgSpec& spec) {
  const double delta1 = lmg_gaps(spec).delta1;
  if (!(delta1 > 1e-12))
    throw NumericError("lmg_crossover_ratio: first gap closed, no knee to find");
  const LmgThermalSetup setup = lmg_thermal_setup(spec);
  constexpr int kPoints = 60;
  Eigen::VectorXd ts(kPoints), fs(kPoints);
  const double lo = std::log10(0.05 * delta1), hi = std::log10(3.0 * delta1);
  for (int i = 0; i < kPoints; ++i) {
    ts(i) = std::pow(10.0, lo + (hi - lo) * i / (kPoints - 1));
    fs(i) = lmg_thermal_qfi(setup, ts(i)).f_max;
  }
  return delta1 / crossover_temperature(ts, fs);
}

}
