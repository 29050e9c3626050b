#include "qcrit/spin_ed.hpp"

#include <lapacke.h>

#include <cmath>
#include <utility>
#include <vector>

namespace qcrit {

namespace {

constexpr int kDenseCap = 14;

double pair_weight(int i, int j, const IsingSpec& spec) {
  int d = j - i;
  if (spec.geometry == ChainGeometry::Closed) d = std::min(d, spec.sites - d);
  if (std::isinf(spec.alpha)) return d == 1 ? 1.0 : 0.0;
  return std::pow(d, -spec.alpha);
}

double site_sign(int i, bool staggered) {
  return staggered && (i % 2 == 1) ? -1.0 : 1.0;
}

// Rotate every degenerate cluster to spin-flip parity eigenstates, even
// parity first; valid because the flip commutes with the eps = 0 chain.
void adapt_parity(Eigen::VectorXd& energies, Eigen::MatrixXd& states) {
  const int dim = static_cast<int>(energies.size());
  const int mask = dim - 1;
  const double tol = 1e-9 * std::max(1.0, energies.cwiseAbs().maxCoeff());
  int start = 0;
  while (start < dim) {
    int end = start + 1;
    while (end < dim && energies(end) - energies(end - 1) <= tol) ++end;
    const int size = end - start;
    if (size > 1) {
      Eigen::MatrixXd flipped(dim, size);
      for (int c = 0; c < size; ++c)
        for (int s = 0; s < dim; ++s)
          flipped(s, c) = states(s ^ mask, start + c);
      Eigen::MatrixXd pm =
          states.middleCols(start, size).transpose() * flipped;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          0.5 * (pm + pm.transpose()));
      states.middleCols(start, size) =
          states.middleCols(start, size) *
          es.eigenvectors().rowwise().reverse();
    }
    start = end;
  }
}

}  // namespace

void IsingSpec::validate() const {
  if (sites < 2 || sites % 2 != 0)
    throw ConfigError("chain needs an even site count of at least 2");
  if (sites > kDenseCap)
    throw ConfigError(
        "dense diagonalization caps at 14 sites; use the quadratic-fermion "
        "module for larger chains");
  if (!(std::abs(theta) <= 3.15))
    throw ConfigError("coupling angle must lie within [-pi, pi]");
  if (std::isnan(alpha) || alpha < 0.0)
    throw ConfigError("decay exponent must be non-negative");
  if (!std::isfinite(coupling) || coupling == 0.0)
    throw ConfigError("coupling must be finite and nonzero");
  if (!std::isfinite(eps_long))
    throw ConfigError("longitudinal field must be finite");
}

Eigen::MatrixXd build_ising(const IsingSpec& spec) {
  spec.validate();
  const int n = spec.sites;
  const int dim = 1 << n;
  const double jzz = spec.coupling * std::sin(spec.theta);
  const double jx = spec.coupling * std::cos(spec.theta);
  const double eps = spec.coupling * spec.eps_long;

  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) weights(i, j) = pair_weight(i, j, spec);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<double> z(n);
  for (int s = 0; s < dim; ++s) {
    for (int i = 0; i < n; ++i) z[i] = ((s >> i) & 1) ? -1.0 : 1.0;
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      diag += eps * site_sign(i, spec.staggered_eps) * z[i];
      for (int j = i + 1; j < n; ++j)
        if (weights(i, j) != 0.0) diag += jzz * weights(i, j) * z[i] * z[j];
    }
    h(s, s) = diag;
    for (int i = 0; i < n; ++i) h(s ^ (1 << i), s) += jx;
  }
  return h;
}

EDResult ground_state_ed(const IsingSpec& spec) {
  Eigen::MatrixXd h = build_ising(spec);
  const int dim = static_cast<int>(h.rows());
  EDResult result;
  result.energies.resize(dim);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', dim, h.data(),
                                   dim, result.energies.data());
  if (info != 0) throw NumericError("eigensolver failed to converge");
  result.states = std::move(h);
  if (spec.eps_long == 0.0) adapt_parity(result.energies, result.states);
  result.delta1 = result.energies(1) - result.energies(0);
  result.delta2 = result.energies(2) - result.energies(1);
  return result;
}

double first_resolved_gap(const EDResult& result, double tol) {
  for (int i = 1; i < result.energies.size(); ++i) {
    double gap = result.energies(i) - result.energies(0);
    if (gap > tol) return gap;
  }
  throw NumericError("spectrum has no resolved separation");
}

double parity_expectation(const Eigen::VectorXd& state, int sites) {
  const int dim = 1 << sites;
  if (state.size() != dim)
    throw ConfigError("state dimension does not match the site count");
  const int mask = dim - 1;
  double sum = 0.0;
  for (int s = 0; s < dim; ++s) sum += state(s ^ mask) * state(s);
  return sum;
}

double order_parameter(const EDResult& result, const IsingSpec& spec) {
  const int n = spec.sites;
  const int dim = 1 << n;
  if (result.states.rows() != dim)
    throw ConfigError("result does not match the spec dimension");
  const bool staggered = spec.theta > 0.0;
  double phi = 0.0;
  for (int s = 0; s < dim; ++s) {
    double p = result.states(s, 0) * result.states(s, 0);
    if (p == 0.0) continue;
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      m += site_sign(i, staggered) * (((s >> i) & 1) ? -1.0 : 1.0);
    phi += p * m;
  }
  return phi / n;
}

FidelityNumericResult fidelity_susceptibility_numeric(
    const std::function<Eigen::VectorXd(double)>& ground_state, double lambda,
    double dlambda) {
  if (!ground_state) throw ConfigError("ground-state provider is empty");
  if (!(dlambda > 0.0) || !std::isfinite(dlambda))
    throw ConfigError("probe step must be positive");

  auto chi_at = [&](double d) {
    Eigen::VectorXd gp = ground_state(lambda + 0.5 * d);
    Eigen::VectorXd gm = ground_state(lambda - 0.5 * d);
    if (gp.size() == 0 || gp.size() != gm.size())
      throw ConfigError("ground-state provider returned mismatched states");
    double overlap = std::abs(gp.dot(gm)) / (gp.norm() * gm.norm());
    return std::make_pair(2.0 * (1.0 - overlap) / (d * d), overlap);
  };

  auto [chi, overlap] = chi_at(dlambda);
  auto [chi_refined, overlap_refined] = chi_at(0.5 * dlambda);
  FidelityNumericResult out;
  out.chi = chi;
  out.chi_refined = chi_refined;
  out.crossing = overlap < 0.99 || overlap_refined < 0.99;
  double scale = std::max({std::abs(chi), std::abs(chi_refined), 1e-12});
  out.consistent = !out.crossing && std::abs(chi - chi_refined) <= 0.01 * scale;
  return out;
}

double thermal_qfi_ed(const EDResult& result, double temperature,
                      const CollectiveOperator& op) {
  if (!(temperature > 0.0))
    throw ConfigError("temperature must be positive");
  SpectralDecomposition rho = SpectralDecomposition::thermal(
      result.energies, result.states.cast<std::complex<double>>(),
      temperature);
  return mixed_state_qfi(rho, op);
}

OptimalQfiResult optimal_ising_qfi(const EDResult& result,
                                   const IsingSpec& spec) {
  if (spec.eps_long != 0.0)
    throw ConfigError("optimal-probe path needs the symmetric chain (eps = 0)");
  const int n = spec.sites;
  const int dim = 1 << n;
  if (result.states.rows() != dim)
    throw ConfigError("result does not match the spec dimension");
  const Staggering staggering =
      spec.theta > 0.0 ? Staggering::Alternating : Staggering::Uniform;
  const Eigen::VectorXcd ground =
      result.states.col(0).cast<std::complex<double>>();

  OptimalQfiResult out;
  out.staggering = staggering;
  double best = -1.0;
  for (Axis axis : {Axis::Z, Axis::X, Axis::Y}) {
    double fq = pure_state_qfi(ground, spin_collective(n, axis, staggering)) / n;
    if (fq > best + 1e-15) {
      best = fq;
      out.axis = axis;
    }
  }
  out.fq_density = best;

  if (out.axis == Axis::Z) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < dim; ++s) {
      double p = result.states(s, 0) * result.states(s, 0);
      if (p == 0.0) continue;
      for (int i = 0; i < n; ++i) {
        double zi = ((s >> i) & 1) ? -1.0 : 1.0;
        mean(i) += p * zi;
        corr(i, i) += p;
        for (int j = i + 1; j < n; ++j) {
          double zij = zi * (((s >> j) & 1) ? -1.0 : 1.0);
          corr(i, j) += p * zij;
        }
      }
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double c = (j > i ? corr(i, j) : corr(j, i)) - mean(i) * mean(j);
        double sign = staggering == Staggering::Alternating && ((i - j) & 1)
                          ? -1.0
                          : 1.0;
        sum += sign * c;
      }
    out.correlator_sum = sum / n;
  }
  return out;
}

PerturbativeQfi perturbative_fq_jy(int sites, double theta, double alpha) {
  if (sites < 2) throw ConfigError("need at least two spins");
  if (std::isnan(alpha) || alpha < 0.0)
    throw ConfigError("decay exponent must be non-negative");
  auto harmonic = [sites](double a) {
    double sum = 0.0;
    for (int k = 1; k <= sites; ++k) sum += std::pow(k, -a);
    return sum;
  };
  PerturbativeQfi out;
  out.interaction_strength =
      (sites * harmonic(alpha) - harmonic(alpha - 1.0)) /
      std::sqrt(8.0 * sites * (sites - 1.0));
  out.value = 1.0 + std::sqrt(8.0) * theta * out.interaction_strength;
  out.within_validity =
      std::abs(theta) * std::abs(out.interaction_strength) < 0.1;
  return out;
}

}  // namespace qcrit
