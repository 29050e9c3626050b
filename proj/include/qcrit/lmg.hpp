#pragma once

#include <Eigen/Dense>
#include <optional>

#include "qcrit/errors.hpp"
#include "qcrit/qfi.hpp"
#include "qcrit/scaling.hpp"

namespace qcrit {

// Uniform all-to-all Ising model in a transverse field, restricted to the
// maximal spin multiplet J = N/2:
//
//   H = (lambda / N) J_z^2 - J_x + delta J_z
//
// in units of the transverse field. Negative lambda is ferromagnetic with a
// symmetry-broken phase below lambda = -1; delta selects a branch there.
struct LmgSpec {
  int sites = 2;         // N, even
  double lambda = 0.0;   // interaction strength over field
  double delta = 0.0;    // longitudinal bias
  void validate() const;
};

// Dense (N+1) x (N+1) matrix in the ladder basis |J, m>, m = -J..J (ascending).
// At delta = 0 the m -> -m parity blocks decouple.
Eigen::MatrixXd build_lmg(const LmgSpec& spec);

struct LmgGaps {
  double delta1 = 0.0;  // E1 - E0
  double delta2 = 0.0;  // E2 - E0; spans the quasi-degenerate doublet in the
                        // broken phase, where it is the physical excitation gap
};

LmgGaps lmg_gaps(const LmgSpec& spec);

struct LmgGroundResult {
  double energy = 0.0;
  double f_x = 0.0, f_y = 0.0, f_z = 0.0;  // 4 Var(J_a) / N per component
  double fq_density = 0.0;                 // largest of the three
  Axis axis = Axis::Z;
  double xi2_r = 0.0;            // N min(Var J_y, Var J_z) / <J_x>^2
  double order_parameter = 0.0;  // 2 <J_z> / N
};

// Ground-state metrology data. At delta = 0 the parity-even combination is
// used, so the broken phase deterministically returns the cat branch; a
// nonzero delta picks the corresponding symmetry-broken branch instead.
LmgGroundResult lmg_ground_qfi(const LmgSpec& spec);

// Eigenbasis matrix elements of the collective components, built once per
// spec and reused across temperatures. wy is the real antisymmetric matrix
// <n|(J_+ - J_-)/2|m>; its elementwise square equals |<n|J_y|m>|^2.
struct LmgThermalSetup {
  int sites = 0;
  Eigen::VectorXd levels;  // E_n - E_0, ascending
  Eigen::MatrixXd wx;      // <n|J_x|m>
  Eigen::MatrixXd wy;
  Eigen::MatrixXd wz;      // <n|J_z|m>
};

LmgThermalSetup lmg_thermal_setup(const LmgSpec& spec);

struct LmgThermalResult {
  double f_x = 0.0, f_y = 0.0, f_z = 0.0;  // extensive QFI per component
  double f_max = 0.0;
  Axis axis = Axis::Z;
  double xi2_r = 0.0;  // thermal Wineland parameter about the mean spin (x)
};

LmgThermalResult lmg_thermal_qfi(const LmgThermalSetup& setup, double temperature);
LmgThermalResult lmg_thermal_qfi(const LmgSpec& spec, double temperature);

// Continuum image on z = 2 J_z / N: the flux-form discretization of
//   (N/2) [ -(2/N^2) d/dz sqrt(1-z^2) d/dz + V(z) ],
//   V(z) = (lambda/2) z^2 - sqrt(1-z^2) + delta z,
// with Dirichlet walls at z = +-1 and the kinetic coefficient evaluated at
// the cell midpoints. Valid below the well edge: requesting levels past
// n_max = (N/2) min{1, L(lambda)} is a configuration error.
struct SemiclassicalGrid {
  int points = 2001;  // interior nodes, odd
};

struct SemiclassicalResult {
  Eigen::VectorXd z;       // interior nodes
  Eigen::VectorXd values;  // lowest eigenvalues, ascending
  Eigen::MatrixXd modes;   // columns, unit l2 norm on the grid
};

SemiclassicalResult semiclassical_solve(const LmgSpec& spec, int count,
                                        const SemiclassicalGrid& grid = {});

// Thermal QFI of a spectrum made of k equally spaced levels above the ground
// doublet: f0 tanh(g/2T) [1 - k (e^{g/T} - 1)/(e^{kg/T} - 1)]. k = 2 reduces
// to f0 tanh^2(g/2T); k -> infinity approaches f0 tanh(g/2T) from below.
double kmode_thermal_law(double f0, double gap, double temperature, double modes);

// Largest temperature at which the collective thermal state still witnesses
// (kappa+1)-spin entanglement, from the closed-form variance bound. Empty when
// the witness never fires (subcritical ferromagnetic couplings included).
std::optional<double> lmg_entanglement_boundary(double lambda, int kappa, int sites);

// Ground-state fidelity susceptibility 2(1 - |<g(l+d/2)|g(l-d/2)>|)/d^2 from
// the parity-even block; requires delta = 0.
double lmg_fidelity_susceptibility(const LmgSpec& spec, double dlambda = 1e-4);

// Thermodynamic-limit fidelity susceptibility: 1/(32 (1+lambda)^2) per the
// intensive branch on -1 < lambda < 0, and N/(4 |lambda|^3 sqrt(lambda^2-1))
// on the extensive branch lambda < -1.
double lmg_chi_closed_form(double lambda, int sites);

// Bias window (|lambda|^{2/3} - 1)^{3/2} inside which the metastable branch
// survives; defined for lambda <= -1.
double metastability_threshold(double lambda);

// Coupling where the ground-state Wineland parameter crosses 1 on the
// ferromagnetic side, by bisection on [-1.45, -1.05].
double critical_squeezing_coupling(int sites);

// Root of max-axis thermal QFI density = 1 on T in [1e-3, 1.2]; 0 when the
// density is below 1 already at the left edge.
double witness_temperature(const LmgThermalSetup& setup);
double witness_temperature(const LmgSpec& spec);

struct WitnessPeak {
  double lambda = 0.0;
  double temperature = 0.0;
};

// Scan of witness_temperature over couplings around the critical point
// (coarse 13-point grid on [-1.35, -0.75], then a 9-point refinement around
// the coarse maximum).
WitnessPeak max_witness_temperature(int sites);

// Max-axis thermal QFI at the critical coupling, sampled at temperatures
// T = x N^{-1/3} for x in [0.05, 20] (log-spaced). Returns the raw (T, F)
// pairs; feed into data_collapse / collapse_against_profile for rescaling.
CollapseCurve critical_collapse_curve(int sites, int n_points = 25);

// Delta1 / T_cross with the crossover knee extracted from the max-axis
// thermal decay on a 60-point log grid spanning [0.05, 3] Delta1.
double lmg_crossover_ratio(const LmgSpec& spec);

}
