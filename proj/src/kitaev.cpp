#include "qcrit/kitaev.hpp"

#include <cmath>
#include <algorithm>

namespace qcrit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_sites(int sites) {
  if (sites < 4 || sites % 2 != 0)
    throw ConfigError("momentum grid needs an even site count of at least 4");
}

void check_params(const KitaevChainParams& p) {
  if (!(p.coupling > 0.0)) throw ConfigError("hopping scale must be positive");
  if (std::isnan(p.alpha) || p.alpha < 0.0)
    throw ConfigError("decay exponent must be non-negative");
  if (!std::isfinite(p.mu) || !std::isfinite(p.pairing))
    throw ConfigError("chain parameters must be finite");
}

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

struct ModeAngle {
  double eps;
  double theta;
};

ModeAngle mode_angle(double k, int sites, const KitaevChainParams& p) {
  double f = pairing_function(k, sites, p.alpha);
  double x = -(p.coupling * std::cos(k) + p.mu);
  double y = -0.5 * p.pairing * f;
  return {std::hypot(x, y), std::atan2(y, x)};
}

// dTheta_k/dlambda for the three couplings, from Theta = atan2(y, x):
// dTheta = (x dy - y dx)/eps^2.
double angle_derivative(KitaevCoupling which, double k, int sites,
                        const KitaevChainParams& p) {
  double f = pairing_function(k, sites, p.alpha);
  double x = -(p.coupling * std::cos(k) + p.mu);
  double y = -0.5 * p.pairing * f;
  double e2 = x * x + y * y;
  switch (which) {
    case KitaevCoupling::ChemicalPotential:
      return y / e2;
    case KitaevCoupling::PairingStrength:
      return -x * 0.5 * f / e2;
    case KitaevCoupling::DecayExponent:
      return -x * 0.5 * p.pairing *
             pairing_function_alpha_derivative(k, sites, p.alpha) / e2;
  }
  throw ConfigError("unknown coupling");
}

KitaevChainParams shifted(KitaevCoupling which, const KitaevChainParams& p,
                          double delta) {
  KitaevChainParams q = p;
  switch (which) {
    case KitaevCoupling::ChemicalPotential:
      q.mu += delta;
      break;
    case KitaevCoupling::PairingStrength:
      q.pairing += delta;
      break;
    case KitaevCoupling::DecayExponent:
      if (!std::isfinite(p.alpha))
        throw ConfigError("cannot vary an infinite decay exponent");
      q.alpha += delta;
      if (q.alpha < 0.0) throw ConfigError("step crosses zero decay exponent");
      break;
  }
  return q;
}

double overlap_chi_at_step(KitaevCoupling which, const KitaevChainParams& p,
                           int sites, double d) {
  KitaevChainParams plus = shifted(which, p, d);
  KitaevChainParams minus = shifted(which, p, -d);
  double log_overlap = 0.0;
  for (int n = 0; n < sites / 2; ++n) {
    double k = (2.0 * kPi / sites) * (n + 0.5);
    double dth = mode_angle(k, sites, plus).theta -
                 mode_angle(k, sites, minus).theta;
    double c = std::cos(0.5 * wrap_angle(dth));
    if (c <= 0.0)
      throw NumericError("ground states decohered across the probe step");
    log_overlap += std::log(c);
  }
  double fidelity = std::exp(log_overlap);
  return 2.0 * (1.0 - fidelity) / (4.0 * d * d);
}

}  // namespace

MomentumGrid antiperiodic_grid(int sites) {
  check_sites(sites);
  MomentumGrid grid;
  grid.sites = sites;
  grid.k.resize(sites);
  for (int n = 0; n < sites; ++n)
    grid.k(n) = (2.0 * kPi / sites) * (n + 0.5);
  return grid;
}

double pairing_function(double k, int sites, double alpha) {
  check_sites(sites);
  if (std::isnan(alpha) || alpha < 0.0)
    throw ConfigError("decay exponent must be non-negative");
  if (!(k > 0.0 && k < 2.0 * kPi))
    throw ConfigError("momentum must lie in (0, 2 pi)");
  if (std::isinf(alpha))
    return std::sin(k) + std::sin(k * (sites - 1));
  double sum = 0.0;
  for (int l = 1; l < sites; ++l) {
    double d = std::min(l, sites - l);
    sum += std::sin(k * l) / std::pow(d, alpha);
  }
  return sum;
}

double pairing_function_alpha_derivative(double k, int sites, double alpha) {
  check_sites(sites);
  if (std::isnan(alpha) || alpha < 0.0)
    throw ConfigError("decay exponent must be non-negative");
  if (!(k > 0.0 && k < 2.0 * kPi))
    throw ConfigError("momentum must lie in (0, 2 pi)");
  if (std::isinf(alpha)) return 0.0;
  double sum = 0.0;
  for (int l = 1; l < sites; ++l) {
    double d = std::min(l, sites - l);
    sum -= std::log(d) * std::sin(k * l) / std::pow(d, alpha);
  }
  return sum;
}

BogoliubovSolution bogoliubov_solution(const MomentumGrid& grid,
                                       const KitaevChainParams& params) {
  check_sites(grid.sites);
  check_params(params);
  if (grid.k.size() != grid.sites)
    throw ConfigError("grid size does not match its site count");
  BogoliubovSolution sol;
  sol.k = grid.k;
  sol.f.resize(grid.sites);
  sol.eps.resize(grid.sites);
  sol.theta.resize(grid.sites);
  for (int n = 0; n < grid.sites; ++n) {
    sol.f(n) = pairing_function(grid.k(n), grid.sites, params.alpha);
    ModeAngle m = mode_angle(grid.k(n), grid.sites, params);
    sol.eps(n) = m.eps;
    sol.theta(n) = m.theta;
  }
  return sol;
}

double minimum_gap(const KitaevChainParams& params, int sites) {
  check_sites(sites);
  check_params(params);
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < sites; ++n) {
    double k = (2.0 * kPi / sites) * (n + 0.5);
    best = std::min(best, mode_angle(k, sites, params).eps);
  }
  return best;
}

double gap_amplitude_closed_form(double alpha) {
  if (std::isnan(alpha) || alpha < 0.0)
    throw ConfigError("decay exponent must be non-negative");
  if (std::isinf(alpha)) return kPi;
  if (std::abs(alpha - 2.0) < 1e-12) return kPi * std::log(2.0);
  return kPi *
         std::abs((std::pow(2.0, 2.0 - alpha) - 1.0) *
                  std::riemann_zeta(alpha - 1.0));
}

double winding_number(const KitaevChainParams& params, int sites) {
  check_sites(sites);
  check_params(params);
  Eigen::VectorXd theta(sites);
  double min_eps = std::numeric_limits<double>::infinity();
  for (int n = 0; n < sites; ++n) {
    double k = (2.0 * kPi / sites) * (n + 0.5);
    ModeAngle m = mode_angle(k, sites, params);
    min_eps = std::min(min_eps, m.eps);
    theta(n) = m.theta;
  }
  if (min_eps < 1e-6 * params.coupling)
    throw NumericError("winding undefined at criticality");
  if (params.alpha < 1.0) {
    if (params.mu == params.coupling)
      throw NumericError("winding undefined at criticality");
    double s = params.mu > params.coupling ? 1.0 : -1.0;
    double ds = params.pairing > 0.0 ? 1.0 : (params.pairing < 0.0 ? -1.0 : 0.0);
    return 0.5 * ds * s;
  }
  double total = 0.0;
  for (int n = 1; n < sites; ++n) {
    double step = wrap_angle(theta(n) - theta(n - 1));
    if (sites >= 32 && !(std::abs(step) < kPi))
      throw NumericError("angle step ambiguous between branches");
    total += step;
  }
  total += wrap_angle(theta(0) - theta(sites - 1));
  double w = total / (2.0 * kPi);
  double snapped = std::round(2.0 * w) / 2.0;
  if (std::abs(w - snapped) >= 0.1)
    throw NumericError("winding did not converge to a half-integer");
  return snapped;
}

double chi_closed_form(KitaevCoupling which, const KitaevChainParams& params,
                       int sites) {
  check_sites(sites);
  check_params(params);
  double sum = 0.0;
  for (int n = 0; n < sites / 2; ++n) {
    double k = (2.0 * kPi / sites) * (n + 0.5);
    double d = angle_derivative(which, k, sites, params);
    sum += 0.25 * d * d;
  }
  return sum;
}

double chi_alpha_single_mode(const KitaevChainParams& params, int sites) {
  check_sites(sites);
  check_params(params);
  double k_min = kPi / sites;
  double d = angle_derivative(KitaevCoupling::DecayExponent, k_min, sites,
                              params);
  return 0.25 * d * d;
}

double fidelity_susceptibility_overlap(KitaevCoupling which,
                                       const KitaevChainParams& params,
                                       int sites, double step) {
  check_sites(sites);
  check_params(params);
  if (!(step > 0.0) || !std::isfinite(step))
    throw ConfigError("probe step must be positive");
  double coarse = overlap_chi_at_step(which, params, sites, step);
  double fine = overlap_chi_at_step(which, params, sites, 0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

LocalQfiComponents local_qfi(const KitaevChainParams& params, int sites) {
  check_sites(sites);
  check_params(params);
  LocalQfiComponents out;
  out.f_xx = sites;
  out.f_yy = sites;
  double sum = 0.0;
  for (int n = 0; n < sites; ++n) {
    double k = (2.0 * kPi / sites) * (n + 0.5);
    double f = pairing_function(k, sites, params.alpha);
    ModeAngle m = mode_angle(k, sites, params);
    double r = 0.5 * params.pairing * f / m.eps;
    sum += r * r;
  }
  out.f_zz = 2.0 * sum;
  return out;
}

double mean_particle_number(const KitaevChainParams& params, int sites) {
  check_sites(sites);
  check_params(params);
  double total = 0.0;
  for (int n = 0; n < sites; ++n) {
    double k = (2.0 * kPi / sites) * (n + 0.5);
    ModeAngle m = mode_angle(k, sites, params);
    total += 0.5 * (1.0 + (params.coupling * std::cos(k) + params.mu) / m.eps);
  }
  return total;
}

}  // namespace qcrit
