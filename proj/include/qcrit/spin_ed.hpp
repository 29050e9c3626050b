#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>

#include "qcrit/errors.hpp"
#include "qcrit/qfi.hpp"

namespace qcrit {

enum class ChainGeometry { Closed, Open };

// Longitudinal pinning field used by the order-parameter figures, in units
// of the coupling.
inline constexpr double kDefaultSymmetryBreaking = -1e-3;

struct IsingSpec {
  int sites = 2;  // even, <= 14 for dense work
  double theta = 0.0;
  double alpha = std::numeric_limits<double>::infinity();
  double eps_long = 0.0;  // longitudinal field in units of the coupling
  bool staggered_eps = false;
  double coupling = 1.0;
  ChainGeometry geometry = ChainGeometry::Closed;

  void validate() const;
};

// J sin(theta) sum_{i<j} sigma_z sigma_z / d_ij^alpha
//   + J cos(theta) sum_i sigma_x + J eps sum_i (+-1)^i sigma_z,
// d_ij = |i-j| for open chains and min(|i-j|, N-|i-j|) for closed ones.
Eigen::MatrixXd build_ising(const IsingSpec& spec);

struct EDResult {
  Eigen::VectorXd energies;  // ascending
  // Columns; within every degenerate cluster at eps = 0 they are rotated to
  // definite spin-flip parity, even parity first.
  Eigen::MatrixXd states;
  double delta1 = 0.0;  // E1 - E0
  double delta2 = 0.0;  // E2 - E1
};

EDResult ground_state_ed(const IsingSpec& spec);

// E_k - E_0 for the first level resolved above `tol` (two-level thermal laws
// with a possibly degenerate ground manifold).
double first_resolved_gap(const EDResult& result, double tol = 1e-10);

// <state| prod_i sigma_x |state>; +-1 on symmetry eigenstates.
double parity_expectation(const Eigen::VectorXd& state, int sites);

// 2<J_z>/N on the ground state for theta <= 0, staggered for theta > 0.
double order_parameter(const EDResult& result, const IsingSpec& spec);

struct FidelityNumericResult {
  double chi = 0.0;
  double chi_refined = 0.0;  // recomputed with the step halved
  bool consistent = false;   // coarse and refined within 1%
  bool crossing = false;     // overlap collapsed inside the step
};

// chi = 2[1 - |<psi(l-dl/2)|psi(l+dl/2)>|]/dl^2 from a ground-state provider.
FidelityNumericResult fidelity_susceptibility_numeric(
    const std::function<Eigen::VectorXd(double)>& ground_state, double lambda,
    double dlambda = 1e-4);

// Boltzmann-weighted QFI of the full spectrum for the given probe.
double thermal_qfi_ed(const EDResult& result, double temperature,
                      const CollectiveOperator& op);

struct OptimalQfiResult {
  double fq_density = 0.0;
  Axis axis = Axis::Z;
  Staggering staggering = Staggering::Uniform;
  // (1/N) sum_ij (+-1)^{i-j} C_zz when the z probe wins; 0 otherwise.
  double correlator_sum = 0.0;
};

// Max of 4 Var(A)/N over the collective triple, uniform for theta <= 0 and
// staggered for theta > 0; symmetric-Hamiltonian (eps = 0) path only.
OptimalQfiResult optimal_ising_qfi(const EDResult& result,
                                   const IsingSpec& spec);

struct PerturbativeQfi {
  double value = 0.0;
  double interaction_strength = 0.0;  // G_N(alpha)
  bool within_validity = false;       // |theta| G_N < 0.1
};

// f_Q[J_y] = 1 + sqrt(8) theta G_N(alpha) from generalized harmonic numbers,
// G_N = (N H_{N,alpha} - H_{N,alpha-1}) / sqrt(8N(N-1)).
PerturbativeQfi perturbative_fq_jy(int sites, double theta, double alpha);

}  // namespace qcrit
