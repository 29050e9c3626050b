#include "qcrit/free_fermion.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qcrit {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Signed determinant, LU with partial pivoting. The argument is destroyed.
double signed_det(Eigen::MatrixXd m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  std::vector<lapack_int> piv(n);
  const lapack_int info =
      LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, m.data(), n, piv.data());
  if (info < 0) throw NumericError("LU factorization failed");
  double det = 1.0;
  for (int i = 0; i < n; ++i) {
    det *= m(i, i);
    if (piv[i] != i + 1) det = -det;
  }
  return det;
}

double ring_weight(int dist, int sites, double alpha) {
  const int d = std::min(dist, sites - dist);
  if (std::isinf(alpha)) return d == 1 ? 1.0 : 0.0;
  return std::pow(static_cast<double>(d), -alpha);
}

// The two string-determinant families, as blocks of G. RowShift starts one
// row below the diagonal, ColShift one column right of it; i is 1-based.
enum class StringPattern { RowShift, ColShift };

double pattern_det(const GreenMatrix& green, StringPattern pattern, int i,
                   int j) {
  const int d = j - i;
  if (pattern == StringPattern::RowShift)
    return signed_det(green.g.block(i, i - 1, d, d));
  return signed_det(green.g.block(i - 1, i, d, d));
}

StringPattern pattern_for(FermionProvenance provenance, Axis axis) {
  if (provenance == FermionProvenance::Kitaev) {
    if (axis == Axis::X) return StringPattern::RowShift;
    if (axis == Axis::Y) return StringPattern::ColShift;
    throw ConfigError(
        "z probe of the pairing chain is local; use the momentum-space module");
  }
  if (axis == Axis::Z) return StringPattern::ColShift;
  if (axis == Axis::Y) return StringPattern::RowShift;
  throw ConfigError(
      "x correlator of the transverse-field chain is a two-point function, "
      "not a string family");
}

// C(l) = C(L-l) on the ring, so only l <= L/2 needs a determinant.
Eigen::VectorXd closed_string_correlations(const GreenMatrix& green,
                                           StringPattern pattern) {
  const int sites = green.sites;
  Eigen::VectorXd c(sites - 1);
  for (int l = 1; l <= sites / 2; ++l) c(l - 1) = pattern_det(green, pattern, 1, 1 + l);
  for (int l = sites / 2 + 1; l < sites; ++l) c(l - 1) = c(sites - l - 1);
  return c;
}

double string_sum(const Eigen::VectorXd& c, Staggering staggering) {
  double s = 0.0;
  for (int l = 1; l <= c.size(); ++l) {
    const double sign =
        staggering == Staggering::Alternating && (l % 2) ? -1.0 : 1.0;
    s += sign * c(l - 1);
  }
  return s;
}

// Open chain: no translation invariance, so f_Q needs every pair. Site
// reversal i -> L+1-i is a symmetry, which halves the determinant work.
void open_pair_sums(const GreenMatrix& green, StringPattern pattern,
                    double* uniform, double* alternating) {
  const int sites = green.sites;
  double su = 0.0;
  double sa = 0.0;
  for (int i = 1; i < sites; ++i) {
    for (int j = i + 1; i + j <= sites + 1; ++j) {
      const double weight = (i + j == sites + 1) ? 1.0 : 2.0;
      const double c = weight * pattern_det(green, pattern, i, j);
      su += c;
      sa += ((j - i) % 2) ? -c : c;
    }
  }
  *uniform = 1.0 + 2.0 * su / sites;
  *alternating = 1.0 + 2.0 * sa / sites;
}

double string_qfi(const GreenMatrix& green, StringPattern pattern,
                  Staggering staggering) {
  if (green.boundary == Boundary::Open) {
    double u = 0.0;
    double a = 0.0;
    open_pair_sums(green, pattern, &u, &a);
    return staggering == Staggering::Alternating ? a : u;
  }
  return 1.0 + string_sum(closed_string_correlations(green, pattern),
                          staggering);
}

}  // namespace

void QuadraticFermionModel::validate() const {
  if (sites < 2 || sites % 2)
    throw ConfigError("site count must be even and at least 2, got " +
                      std::to_string(sites));
  if (a.rows() != sites || a.cols() != sites || b.rows() != sites ||
      b.cols() != sites)
    throw ConfigError("matrix dimensions do not match the site count");
  if (max_abs(a - a.transpose()) >= 1e-12)
    throw ConfigError("hopping matrix is not symmetric");
  if (max_abs(b + b.transpose()) >= 1e-12)
    throw ConfigError("pairing matrix is not antisymmetric");
}

QuadraticFermionModel build_ising_nn_fermion(int sites, double theta,
                                             double coupling,
                                             Boundary boundary) {
  QuadraticFermionModel model;
  model.sites = sites;
  model.boundary = boundary;
  model.provenance = FermionProvenance::IsingNN;
  model.coupling = coupling;
  model.theta = theta;
  if (sites < 2 || sites % 2)
    throw ConfigError("site count must be even and at least 2, got " +
                      std::to_string(sites));
  const double t = coupling * std::sin(theta);
  model.a = 2.0 * coupling * std::cos(theta) *
            Eigen::MatrixXd::Identity(sites, sites);
  model.b = Eigen::MatrixXd::Zero(sites, sites);
  for (int j = 0; j + 1 < sites; ++j) {
    model.a(j, j + 1) = model.a(j + 1, j) = t;
    model.b(j, j + 1) = -t;
    model.b(j + 1, j) = t;
  }
  if (boundary == Boundary::AntiperiodicClosed) {
    model.a(0, sites - 1) = model.a(sites - 1, 0) = -t;
    model.b(0, sites - 1) = -t;
    model.b(sites - 1, 0) = t;
  } else if (boundary == Boundary::PeriodicClosed) {
    model.a(0, sites - 1) = model.a(sites - 1, 0) = t;
    model.b(0, sites - 1) = t;
    model.b(sites - 1, 0) = -t;
  }
  model.validate();
  return model;
}

QuadraticFermionModel build_kitaev(int sites, double coupling, double mu,
                                   double pairing, double alpha) {
  QuadraticFermionModel model;
  model.sites = sites;
  model.boundary = Boundary::AntiperiodicClosed;
  model.provenance = FermionProvenance::Kitaev;
  model.coupling = coupling;
  model.mu = mu;
  model.pairing = pairing;
  model.alpha = alpha;
  if (sites < 2 || sites % 2)
    throw ConfigError("site count must be even and at least 2, got " +
                      std::to_string(sites));
  if (alpha < 0.0) throw ConfigError("decay exponent must be non-negative");
  model.a = -mu * Eigen::MatrixXd::Identity(sites, sites);
  for (int j = 0; j + 1 < sites; ++j)
    model.a(j, j + 1) = model.a(j + 1, j) = -coupling / 2.0;
  model.a(0, sites - 1) = model.a(sites - 1, 0) = coupling / 2.0;
  model.b = Eigen::MatrixXd::Zero(sites, sites);
  for (int j = 0; j < sites; ++j) {
    for (int l = 1; l < sites - j; ++l) {
      const double w = ring_weight(l, sites, alpha);
      if (w == 0.0) continue;
      model.b(j, j + l) += -0.5 * pairing * w;
      model.b(j + l, j) += 0.5 * pairing * w;
    }
  }
  model.validate();
  return model;
}

GreenMatrix diagonalize(const QuadraticFermionModel& model) {
  model.validate();
  const int n = model.sites;
  Eigen::MatrixXd m = model.a + model.b;
  const double scale = std::max(max_abs(m), 1e-12);

  Eigen::MatrixXd u(n, n);
  Eigen::MatrixXd vt(n, n);
  Eigen::VectorXd s(n);
  Eigen::MatrixXd work = m;
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'A', n, n, work.data(), n, s.data(),
                     u.data(), n, vt.data(), n);
  if (info != 0)
    throw NumericError("singular value decomposition failed (info=" +
                       std::to_string(info) + ")");

  work.resize(0, 0);
  GreenMatrix green;
  green.sites = n;
  green.boundary = model.boundary;
  green.provenance = model.provenance;
  green.energies.resize(n);
  green.phi.resize(n, n);
  green.psi.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;  // LAPACK returns descending order
    green.energies(k) = s(src);
    green.phi.row(k) = u.col(src).transpose();
    green.psi.row(k) = vt.row(src);
  }
  u.resize(0, 0);
  vt.resize(0, 0);
  green.g.noalias() = -green.psi.transpose() * green.phi;

  {
    Eigen::MatrixXd recon = green.phi.transpose() *
                            green.energies.asDiagonal() * green.psi;
    if (max_abs(recon - m) >= 1e-8 * scale)
      throw NumericError("decomposition does not reconstruct the model");
  }
  m.resize(0, 0);
  {
    Eigen::MatrixXd gram = green.g.transpose() * green.g;
    gram.diagonal().array() -= 1.0;
    if (max_abs(gram) >= 1e-10)
      throw NumericError("Green matrix lost orthogonality");
  }

  const double det_g = signed_det(green.g);
  const double parity = (n % 2 ? -1.0 : 1.0) * det_g;
  green.vacuum_parity = parity >= 0.0 ? +1 : -1;
  return green;
}

double ground_energy(const GreenMatrix& green) {
  return -green.energies.sum() / 2.0;
}

double mean_occupation(const GreenMatrix& green, int site) {
  if (site < 1 || site > green.sites)
    throw ConfigError("site index out of range");
  return (1.0 + green.g(site - 1, site - 1)) / 2.0;
}

double total_occupation(const GreenMatrix& green) {
  return (green.sites + green.g.trace()) / 2.0;
}

double sector_ground_energy(const GreenMatrix& green, bool want_even_parity) {
  double e = ground_energy(green);
  const bool vacuum_even = green.vacuum_parity > 0;
  if (vacuum_even != want_even_parity) e += green.energies(0);
  return e;
}

double ising_ring_gap(int sites, double theta, double coupling) {
  const GreenMatrix even = diagonalize(build_ising_nn_fermion(
      sites, theta, coupling, Boundary::AntiperiodicClosed));
  const GreenMatrix odd = diagonalize(build_ising_nn_fermion(
      sites, theta, coupling, Boundary::PeriodicClosed));
  return sector_ground_energy(odd, false) - sector_ground_energy(even, true);
}

StaticCorrelators static_correlators(const GreenMatrix& green, int i, int j) {
  if (i < 1 || j <= i || j > green.sites)
    throw ConfigError("correlator indices must satisfy 1 <= i < j <= L");
  StaticCorrelators c;
  const Eigen::MatrixXd& g = green.g;
  c.c_xx = g(i - 1, i - 1) * g(j - 1, j - 1) - g(j - 1, i - 1) * g(i - 1, j - 1);
  c.c_yy = pattern_det(green, StringPattern::RowShift, i, j);
  c.c_zz = pattern_det(green, StringPattern::ColShift, i, j);
  return c;
}

double nonlocal_qfi(const GreenMatrix& green, Axis axis,
                    Staggering staggering) {
  return string_qfi(green, pattern_for(green.provenance, axis), staggering);
}

double optimal_nonlocal_qfi(const GreenMatrix& green) {
  double best = -std::numeric_limits<double>::infinity();
  for (const StringPattern pattern :
       {StringPattern::RowShift, StringPattern::ColShift}) {
    if (green.boundary == Boundary::Open) {
      double u = 0.0;
      double a = 0.0;
      open_pair_sums(green, pattern, &u, &a);
      best = std::max({best, u, a});
    } else {
      const Eigen::VectorXd c = closed_string_correlations(green, pattern);
      best = std::max(best, 1.0 + string_sum(c, Staggering::Uniform));
      best = std::max(best, 1.0 + string_sum(c, Staggering::Alternating));
    }
  }
  return best;
}

namespace {

ScalingSeries scaling_series_impl(
    const std::function<QuadraticFermionModel(int)>& family,
    const std::vector<int>& sizes,
    const std::function<double(const GreenMatrix&)>& evaluate) {
  if (sizes.size() < 5)
    throw ConfigError("scaling series needs at least 5 sizes");
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (sizes[k] <= sizes[k - 1])
      throw ConfigError("scaling series sizes must be strictly ascending");
  ScalingSeries series;
  for (const int n : sizes) {
    series.sizes.push_back(n);
    series.values.push_back(evaluate(diagonalize(family(n))));
  }
  return series;
}

}  // namespace

ScalingSeries qfi_scaling_series(
    const std::function<QuadraticFermionModel(int)>& family,
    const std::vector<int>& sizes) {
  return scaling_series_impl(family, sizes, [](const GreenMatrix& green) {
    return optimal_nonlocal_qfi(green);
  });
}

ScalingSeries qfi_scaling_series(
    const std::function<QuadraticFermionModel(int)>& family,
    const std::vector<int>& sizes, Axis axis, Staggering staggering) {
  return scaling_series_impl(
      family, sizes, [axis, staggering](const GreenMatrix& green) {
        return nonlocal_qfi(green, axis, staggering);
      });
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double ising_mode_angle(double theta, double k) {
  double a = 2.0 * (std::cos(theta) + std::sin(theta) * std::cos(k));
  double b = 2.0 * std::sin(theta) * std::sin(k);
  return std::atan2(-b, -a);
}

double ising_overlap_chi_at_step(int sites, double theta, double d) {
  double log_overlap = 0.0;
  for (int n = 0; n < sites / 2; ++n) {
    double k = (2 * n + 1) * kPi / sites;
    double dth = ising_mode_angle(theta + d, k) - ising_mode_angle(theta - d, k);
    dth = std::remainder(dth, 2.0 * kPi);
    double c = std::cos(0.5 * dth);
    if (c <= 0.0)
      throw NumericError("ground states decohered across the probe step");
    log_overlap += std::log(c);
  }
  return 2.0 * (1.0 - std::exp(log_overlap)) / (4.0 * d * d);
}

}  // namespace

double ising_chi_theta_analytic(int sites, double theta) {
  if (sites < 2 || sites % 2 != 0)
    throw ConfigError("chain needs an even site count of at least 2");
  double sum = 0.0;
  for (int n = 0; n < sites / 2; ++n) {
    double k = (2 * n + 1) * kPi / sites;
    double s = std::sin(k);
    double denom = 1.0 + std::sin(2.0 * theta) * std::cos(k);
    sum += s * s / (denom * denom);
  }
  return 0.25 * sum;
}

double ising_chi_theta_overlap(int sites, double theta, double step) {
  if (sites < 2 || sites % 2 != 0)
    throw ConfigError("chain needs an even site count of at least 2");
  if (!(step > 0.0) || !std::isfinite(step))
    throw ConfigError("probe step must be positive");
  double coarse = ising_overlap_chi_at_step(sites, theta, step);
  double fine = ising_overlap_chi_at_step(sites, theta, 0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace qcrit
