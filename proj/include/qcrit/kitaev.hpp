#pragma once

#include <Eigen/Dense>
#include <limits>

#include "qcrit/errors.hpp"

namespace qcrit {

struct KitaevChainParams {
  double coupling = 1.0;  // J
  double mu = 0.0;
  double pairing = 1.0;  // Delta
  double alpha = std::numeric_limits<double>::infinity();
};

struct MomentumGrid {
  int sites = 0;
  Eigen::VectorXd k;  // (2pi/L)(n+1/2), n = 0..L-1
};

// Antiperiodic quasimomenta; k = 0 and k = pi are never on the grid.
MomentumGrid antiperiodic_grid(int sites);

// sum_{l=1}^{L-1} sin(kl)/d_l^alpha with the ring metric d_l = min(l, L-l).
// alpha = infinity keeps only the two d = 1 terms (2 sin k on the grid).
double pairing_function(double k, int sites, double alpha);

// Termwise -ln(d_l) derivative; analytic, never finite differences.
double pairing_function_alpha_derivative(double k, int sites, double alpha);

struct BogoliubovSolution {
  Eigen::VectorXd k;
  Eigen::VectorXd f;      // pairing-function samples
  Eigen::VectorXd eps;    // quasiparticle energies >= 0
  Eigen::VectorXd theta;  // Bogoliubov angles
};

BogoliubovSolution bogoliubov_solution(const MomentumGrid& grid,
                                       const KitaevChainParams& params);

double minimum_gap(const KitaevChainParams& params, int sites);

// L * eps_min / J at mu = J = Delta: pi |(2^{2-alpha}-1) zeta(alpha-1)|,
// with the removable point alpha = 2 evaluating to pi ln 2.
double gap_amplitude_closed_form(double alpha);

// Half-integer winding of (cos Theta_k, sin Theta_k) around the zone.
// Gapless input (min eps < 1e-6 J) is rejected as undefined.
double winding_number(const KitaevChainParams& params, int sites);

enum class KitaevCoupling { ChemicalPotential, PairingStrength, DecayExponent };

// Fidelity susceptibility per the closed-form half-zone sums (0 < k < pi).
double chi_closed_form(KitaevCoupling which, const KitaevChainParams& params,
                       int sites);

// Single k_min = pi/L mode of chi_alpha; grows as (log L)^2 at alpha = 1.
double chi_alpha_single_mode(const KitaevChainParams& params, int sites);

// Numeric route: overlap product prod cos(dTheta_k/2) over the half zone,
// chi = 2(1-F)/(2d)^2, Richardson-extrapolated in d.
double fidelity_susceptibility_overlap(KitaevCoupling which,
                                       const KitaevChainParams& params,
                                       int sites, double step = 1e-4);

struct LocalQfiComponents {
  double f_xx = 0.0;
  double f_yy = 0.0;
  double f_zz = 0.0;
};

// Collective local probes: F_xx = F_yy = L, F_zz = 2 sum (Delta f/2)^2/eps^2.
LocalQfiComponents local_qfi(const KitaevChainParams& params, int sites);

// sum_k sin^2(Theta_k/2), in [0, L].
double mean_particle_number(const KitaevChainParams& params, int sites);

}  // namespace qcrit
