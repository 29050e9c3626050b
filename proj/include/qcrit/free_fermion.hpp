#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qcrit/errors.hpp"
#include "qcrit/qfi.hpp"

namespace qcrit {

enum class Boundary { AntiperiodicClosed, PeriodicClosed, Open };
enum class FermionProvenance { IsingNN, Kitaev };

// Quadratic fermion form H = a^+ A a + (1/2)(a^+ B a^+ + h.c.) - Tr(A)/2.
// A symmetric, B antisymmetric, both real, in units of J.
struct QuadraticFermionModel {
  int sites = 0;
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Boundary boundary = Boundary::AntiperiodicClosed;
  FermionProvenance provenance = FermionProvenance::IsingNN;

  // model parameters kept for reporting
  double coupling = 1.0;  // J
  double theta = 0.0;     // IsingNN
  double mu = 0.0;        // Kitaev
  double pairing = 0.0;   // Kitaev
  double alpha = 0.0;     // Kitaev (may be +infinity)

  void validate() const;
};

// Transverse-field chain in the fermion picture. The closed-chain sectors
// differ only in the wrap bond: AntiperiodicClosed pairs with even spin
// parity, PeriodicClosed with odd. Open drops the wrap bond entirely.
QuadraticFermionModel build_ising_nn_fermion(
    int sites, double theta, double coupling = 1.0,
    Boundary boundary = Boundary::AntiperiodicClosed);

// Long-range pairing chain on the closed ring, distances measured with the
// ring metric min(l, L-l). alpha may be +infinity (nearest-neighbour band).
QuadraticFermionModel build_kitaev(int sites, double coupling, double mu,
                                   double pairing, double alpha);

struct GreenMatrix {
  int sites = 0;
  Eigen::VectorXd energies;  // quasiparticle energies, ascending
  Eigen::MatrixXd phi;
  Eigen::MatrixXd psi;
  Eigen::MatrixXd g;  // G = -Psi^T Phi, orthogonal
  int vacuum_parity = +1;
  Boundary boundary = Boundary::AntiperiodicClosed;
  FermionProvenance provenance = FermionProvenance::IsingNN;
};

// Singular value decomposition A+B = Phi^T Lambda Psi. Verifies the
// reconstruction and the orthogonality of G before returning.
GreenMatrix diagonalize(const QuadraticFermionModel& model);

double ground_energy(const GreenMatrix& green);

// <a_i^+ a_i> in the vacuum, site index 1-based.
double mean_occupation(const GreenMatrix& green, int site);
double total_occupation(const GreenMatrix& green);

// Lowest many-body energy of a closed-chain sector once the fermion-parity
// constraint is enforced (a single quasiparticle is added when the vacuum
// parity disagrees with the sector).
double sector_ground_energy(const GreenMatrix& green, bool want_even_parity);

// E0(odd, periodic) - E0(even, antiperiodic) for the closed chain.
double ising_ring_gap(int sites, double theta, double coupling = 1.0);

struct StaticCorrelators {
  double c_xx = 0.0;
  double c_yy = 0.0;
  double c_zz = 0.0;
};

// Determinant correlators between sites i < j (1-based). c_zz and c_yy are
// (j-i) x (j-i) subdeterminants of G, c_xx a 2x2 combination.
StaticCorrelators static_correlators(const GreenMatrix& green, int i, int j);

// QFI density 1 + sum_l s(l) C(l) of a string observable. Which determinant
// family an axis selects depends on provenance: the pairing chain supports
// x and y strings, the transverse-field chain z (order direction) and y.
// Closed chains use translation invariance; the open chain sums all pairs.
double nonlocal_qfi(const GreenMatrix& green, Axis axis,
                    Staggering staggering = Staggering::Uniform);

// Maximum of nonlocal_qfi over the four available string observables.
double optimal_nonlocal_qfi(const GreenMatrix& green);

struct ScalingSeries {
  std::vector<double> sizes;
  std::vector<double> values;
};

// f_Q(L) across >= 5 ascending sizes, optimal-operator selection.
ScalingSeries qfi_scaling_series(
    const std::function<QuadraticFermionModel(int)>& family,
    const std::vector<int>& sizes);

// Same with a fixed string observable.
ScalingSeries qfi_scaling_series(
    const std::function<QuadraticFermionModel(int)>& family,
    const std::vector<int>& sizes, Axis axis, Staggering staggering);

// Fidelity susceptibility of the closed nearest-neighbour chain in the
// coupling angle: (1/4) sum over the half zone of sin^2 k/(1+sin 2t cos k)^2
// at antiperiodic momenta k = (2n+1) pi / N. Peaks at N(N-1)/8.
double ising_chi_theta_analytic(int sites, double theta);

// Same quantity from the mode-overlap product 2(1-prod cos(dTheta_k/2))/dt^2
// with a Richardson-extrapolated step; independent of the closed form.
double ising_chi_theta_overlap(int sites, double theta, double step = 1e-4);

}  // namespace qcrit
