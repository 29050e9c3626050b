#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>

#include "qcrit/errors.hpp"

namespace qcrit {

// Index pairs whose probabilities sum below this are dropped from the QFI kernel.
inline constexpr double kPairCutoff = 1e-14;
// Thermal weights below this fraction of the largest weight are truncated
// before normalization.
inline constexpr double kWeightCutoff = 1e-16;

enum class Axis { X, Y, Z };
enum class Staggering { Uniform, Alternating };
enum class Representation { CollectiveSpin, SiteLocalFermion, StringNonlocal, Custom };

// A probe observable: metadata plus a matrix-free application. `matrix` is
// materialized on demand via materialize(); large Hilbert spaces only ever
// see apply().
struct CollectiveOperator {
  Axis axis = Axis::Z;
  Staggering staggering = Staggering::Uniform;
  Representation representation = Representation::Custom;
  int dim = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply;

  Eigen::MatrixXcd materialize() const;
};

// Collective spin component (1/2) sum_i (+-1)^i sigma_i^axis on N spin-1/2
// sites (dimension 2^N). Bit i of a basis index set means sigma_z = -1 there.
CollectiveOperator spin_collective(int n_spins, Axis axis,
                                   Staggering staggering = Staggering::Uniform);

CollectiveOperator custom_operator(const Eigen::MatrixXcd& m, Axis label = Axis::Z);

struct SpectralDecomposition {
  Eigen::VectorXd probabilities;  // descending
  Eigen::MatrixXcd states;        // columns, same order
  Eigen::VectorXd energies;       // optional, same order; size 0 when absent

  // Boltzmann populations exp(-(E-E0)/T) with sub-cutoff weights truncated,
  // then normalized. Columns of `vectors` must be orthonormal eigenstates.
  static SpectralDecomposition thermal(const Eigen::VectorXd& energies,
                                       const Eigen::MatrixXcd& vectors,
                                       double temperature);

  void validate(bool check_orthonormal = true) const;
};

// 4 (<O^2> - <O>^2) for a normalized pure state.
double pure_state_qfi(const Eigen::VectorXcd& state, const CollectiveOperator& op);

// 2 sum_{k!=l} (p_k-p_l)^2/(p_k+p_l) |<k|O|l>|^2, with the exact correction
// for population outside the kept states.
double mixed_state_qfi(const SpectralDecomposition& rho, const CollectiveOperator& op);

// Shared kernel used by every mixed-state QFI in the tree. w2(k,l) = |<k|O|l>|^2
// over the kept states and o2diag(k) = <k|O^2|k>.
double qfi_from_overlaps(const Eigen::VectorXd& p, const Eigen::MatrixXd& w2,
                         const Eigen::VectorXd& o2diag);

struct FisherMatrixResult {
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Zero();
  double optimal_value = 0.0;
  Eigen::Vector3d optimal_direction = Eigen::Vector3d::Zero();
  bool degenerate = false;
};

// 3x3 QFI matrix over an orthogonal operator triple; optimal_value is the
// largest eigenvalue, the direction its eigenvector. Degenerate maxima are
// flagged and resolved to the lexicographically largest eigenvector.
FisherMatrixResult fisher_matrix_su2(const SpectralDecomposition& rho,
                                     const std::array<CollectiveOperator, 3>& ops);

// {floor(N/kappa) kappa^2 + (N - floor(N/kappa) kappa)^2} spread^2.
double k_producibility_bound(int n_particles, int kappa, double spread = 1.0);

// Largest kappa witnessed by fq_density (strict inequality), capped at N-1.
int entanglement_depth(double fq_density, int n_particles);

struct SqueezingResult {
  double xi2 = 0.0;
  Eigen::Vector3d mean_spin = Eigen::Vector3d::Zero();
  Eigen::Vector3d min_direction = Eigen::Vector3d::Zero();
};

// Wineland parameter N (Delta J_perp)^2_min / |<J>|^2; the perpendicular-plane
// minimum comes from the closed-form eigenvalue of the 2x2 covariance block.
SqueezingResult wineland_squeezing(const SpectralDecomposition& rho,
                                   const std::array<CollectiveOperator, 3>& ops,
                                   int n_particles);

struct ClassicalFisherResult {
  double value = 0.0;
  int excluded = 0;  // outcomes with P=0 but a nonzero central difference
};

// sum_e (dP/dphi)^2 / P with central differences from P(phi+-dphi).
ClassicalFisherResult classical_fisher_information(const Eigen::VectorXd& p0,
                                                   const Eigen::VectorXd& p_plus,
                                                   const Eigen::VectorXd& p_minus,
                                                   double dphi);

}
