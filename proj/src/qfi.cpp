#include "qcrit/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qcrit {

namespace {

using Cplx = std::complex<double>;

Eigen::VectorXcd apply_checked(const CollectiveOperator& op, const Eigen::VectorXcd& v) {
  if (!op.apply) throw ConfigError("operator has no application rule");
  if (op.dim > 0 && v.size() != op.dim)
    throw ConfigError("dimension mismatch between state and operator");
  return op.apply(v);
}

}  // namespace

Eigen::MatrixXcd CollectiveOperator::materialize() const {
  if (dim <= 0) throw ConfigError("cannot materialize an operator without a dimension");
  Eigen::MatrixXcd m(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  for (int j = 0; j < dim; ++j) {
    e(j) = 1.0;
    m.col(j) = apply(e);
    e(j) = 0.0;
  }
  return m;
}

CollectiveOperator spin_collective(int n_spins, Axis axis, Staggering staggering) {
  if (n_spins < 1 || n_spins > 20)
    throw ConfigError("spin_collective: spin count must be in [1, 20]");
  const int dim = 1 << n_spins;
  CollectiveOperator op;
  op.axis = axis;
  op.staggering = staggering;
  op.representation = Representation::CollectiveSpin;
  op.dim = dim;
  const bool alt = staggering == Staggering::Alternating;
  if (axis == Axis::Z) {
    Eigen::VectorXd diag(dim);
    for (int b = 0; b < dim; ++b) {
      double v = 0.0;
      for (int i = 0; i < n_spins; ++i) {
        const double s = (b >> i) & 1 ? -0.5 : 0.5;
        v += (alt && (i & 1)) ? -s : s;
      }
      diag(b) = v;
    }
    op.apply = [diag](const Eigen::VectorXcd& in) {
      return Eigen::VectorXcd(diag.cast<Cplx>().cwiseProduct(in));
    };
    return op;
  }
  op.apply = [n_spins, dim, axis, alt](const Eigen::VectorXcd& in) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int b = 0; b < dim; ++b) {
      const Cplx amp = in(b);
      if (amp == 0.0) continue;
      for (int i = 0; i < n_spins; ++i) {
        const double sign = (alt && (i & 1)) ? -0.5 : 0.5;
        const int flipped = b ^ (1 << i);
        if (axis == Axis::X) {
          out(flipped) += sign * amp;
        } else {
          // sigma_y maps up->down with +i and down->up with -i
          const Cplx phase = (b >> i) & 1 ? Cplx(0.0, -1.0) : Cplx(0.0, 1.0);
          out(flipped) += sign * phase * amp;
        }
      }
    }
    return out;
  };
  return op;
}

CollectiveOperator custom_operator(const Eigen::MatrixXcd& m, Axis label) {
  if (m.rows() != m.cols()) throw ConfigError("custom_operator: matrix not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw ConfigError("custom_operator: matrix not Hermitian");
  CollectiveOperator op;
  op.axis = label;
  op.representation = Representation::Custom;
  op.dim = static_cast<int>(m.rows());
  Eigen::MatrixXcd held = m;
  op.apply = [held](const Eigen::VectorXcd& in) { return Eigen::VectorXcd(held * in); };
  return op;
}

SpectralDecomposition SpectralDecomposition::thermal(const Eigen::VectorXd& energies,
                                                     const Eigen::MatrixXcd& vectors,
                                                     double temperature) {
  if (temperature <= 0.0) throw ConfigError("thermal: temperature must be positive");
  if (energies.size() != vectors.cols())
    throw ConfigError("thermal: energies and vectors disagree in count");
  const Eigen::Index n = energies.size();
  if (n == 0) throw ConfigError("thermal: empty spectrum");
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return energies(a) < energies(b); });
  const double e0 = energies(order.front());
  std::vector<Eigen::Index> kept;
  std::vector<double> w;
  for (Eigen::Index idx : order) {
    const double wi = std::exp(-(energies(idx) - e0) / temperature);
    if (wi > kWeightCutoff) {
      kept.push_back(idx);
      w.push_back(wi);
    }
  }
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  SpectralDecomposition rho;
  rho.probabilities.resize(static_cast<Eigen::Index>(kept.size()));
  rho.states.resize(vectors.rows(), static_cast<Eigen::Index>(kept.size()));
  rho.energies.resize(static_cast<Eigen::Index>(kept.size()));
  for (size_t j = 0; j < kept.size(); ++j) {
    rho.probabilities(static_cast<Eigen::Index>(j)) = w[j] / z;
    rho.states.col(static_cast<Eigen::Index>(j)) = vectors.col(kept[j]);
    rho.energies(static_cast<Eigen::Index>(j)) = energies(kept[j]);
  }
  return rho;
}

void SpectralDecomposition::validate(bool check_orthonormal) const {
  const Eigen::Index m = probabilities.size();
  if (states.cols() != m)
    throw ConfigError("decomposition: probability and state counts differ");
  if (m == 0) throw ConfigError("decomposition: empty");
  for (Eigen::Index k = 0; k < m; ++k) {
    if (probabilities(k) < -1e-12)
      throw ConfigError("decomposition: negative probability");
    if (k > 0 && probabilities(k) > probabilities(k - 1) + 1e-12)
      throw ConfigError("decomposition: probabilities not sorted descending");
  }
  if (std::abs(probabilities.sum() - 1.0) > 1e-12)
    throw ConfigError("decomposition: probabilities do not sum to 1");
  if (check_orthonormal) {
    const Eigen::MatrixXcd gram = states.adjoint() * states;
    const double dev =
        (gram - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) throw ConfigError("decomposition: states not orthonormal");
  }
}

double pure_state_qfi(const Eigen::VectorXcd& state, const CollectiveOperator& op) {
  if (std::abs(state.norm() - 1.0) > 1e-10)
    throw ConfigError("pure_state_qfi: state not normalized");
  const Eigen::VectorXcd v = apply_checked(op, state);
  const double mean = state.dot(v).real();
  const double second = v.squaredNorm();
  const double f = 4.0 * (second - mean * mean);
  if (f < -1e-8) throw NumericError("pure_state_qfi: negative variance");
  return std::max(f, 0.0);
}

double qfi_from_overlaps(const Eigen::VectorXd& p, const Eigen::MatrixXd& w2,
                         const Eigen::VectorXd& o2diag) {
  const Eigen::Index m = p.size();
  if (w2.rows() != m || w2.cols() != m || o2diag.size() != m)
    throw ConfigError("qfi_from_overlaps: inconsistent sizes");
  double f = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l < k; ++l) {
      const double s = p(k) + p(l);
      if (s < kPairCutoff) continue;
      const double d = p(k) - p(l);
      f += 2.0 * (d * d / s) * (w2(k, l) + w2(l, k));
    }
  }
  for (Eigen::Index k = 0; k < m; ++k)
    f += 4.0 * p(k) * (o2diag(k) - w2.row(k).sum());
  return f;
}

double mixed_state_qfi(const SpectralDecomposition& rho, const CollectiveOperator& op) {
  if (op.dim > 0 && rho.states.rows() != op.dim)
    throw ConfigError("mixed_state_qfi: dimension mismatch between states and op");
  const Eigen::Index m = rho.probabilities.size();
  Eigen::MatrixXcd ov(rho.states.rows(), m);
  for (Eigen::Index k = 0; k < m; ++k) ov.col(k) = apply_checked(op, rho.states.col(k));
  const Eigen::MatrixXcd w = rho.states.adjoint() * ov;
  const Eigen::MatrixXd w2 = w.cwiseAbs2();
  const Eigen::VectorXd o2 = ov.colwise().squaredNorm().real();
  return qfi_from_overlaps(rho.probabilities, w2, o2);
}

FisherMatrixResult fisher_matrix_su2(const SpectralDecomposition& rho,
                                     const std::array<CollectiveOperator, 3>& ops) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (ops[i].axis == ops[j].axis ||
          ops[i].staggering != ops[j].staggering ||
          ops[i].representation != ops[j].representation)
        throw ConfigError("fisher_matrix_su2: non-orthogonal axis set");

  const Eigen::Index m = rho.probabilities.size();
  const Eigen::Index dim = rho.states.rows();
  std::array<Eigen::MatrixXcd, 3> ov;
  std::array<Eigen::MatrixXcd, 3> w;
  for (int i = 0; i < 3; ++i) {
    ov[i].resize(dim, m);
    for (Eigen::Index k = 0; k < m; ++k)
      ov[i].col(k) = apply_checked(ops[i], rho.states.col(k));
    w[i] = rho.states.adjoint() * ov[i];
  }

  FisherMatrixResult res;
  const Eigen::VectorXd& p = rho.probabilities;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double f = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = 0; l < m; ++l) {
          if (l == k) continue;
          const double s = p(k) + p(l);
          if (s < kPairCutoff) continue;
          const double d = p(k) - p(l);
          f += 2.0 * (d * d / s) * (w[i](k, l) * std::conj(w[j](k, l))).real();
        }
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        const double cross = ov[i].col(k).dot(ov[j].col(k)).real();
        const double kept = (w[i].row(k).conjugate().cwiseProduct(w[j].row(k))).sum().real();
        f += 4.0 * p(k) * (cross - kept);
      }
      res.matrix(i, j) = f;
      res.matrix(j, i) = f;
    }
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(res.matrix);
  const Eigen::Vector3d ev = es.eigenvalues();
  res.optimal_value = ev(2);
  const double tol = 1e-9 * std::max(1.0, std::abs(ev(2)));
  auto canonical = [](Eigen::Vector3d v) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    return v;
  };
  Eigen::Vector3d best = canonical(es.eigenvectors().col(2));
  int n_deg = 1;
  for (int c = 1; c >= 0; --c) {
    if (ev(2) - ev(c) <= tol) {
      ++n_deg;
      const Eigen::Vector3d cand = canonical(es.eigenvectors().col(c));
      if (std::lexicographical_compare(best.data(), best.data() + 3, cand.data(),
                                       cand.data() + 3))
        best = cand;
    }
  }
  res.degenerate = n_deg > 1;
  res.optimal_direction = best;
  return res;
}

double k_producibility_bound(int n_particles, int kappa, double spread) {
  if (n_particles < 1) throw ConfigError("k_producibility_bound: N must be positive");
  if (kappa < 1 || kappa > n_particles)
    throw ConfigError("k_producibility_bound: kappa outside [1, N]");
  const int s = n_particles / kappa;
  const int r = n_particles - s * kappa;
  return (static_cast<double>(s) * kappa * kappa + static_cast<double>(r) * r) *
         spread * spread;
}

int entanglement_depth(double fq_density, int n_particles) {
  if (fq_density < 0.0) throw ConfigError("entanglement_depth: density must be >= 0");
  if (n_particles < 1) throw ConfigError("entanglement_depth: N must be positive");
  const int k = static_cast<int>(std::ceil(fq_density - 1e-12)) - 1;
  return std::clamp(k, 0, n_particles - 1);
}

SqueezingResult wineland_squeezing(const SpectralDecomposition& rho,
                                   const std::array<CollectiveOperator, 3>& ops,
                                   int n_particles) {
  if (n_particles < 1) throw ConfigError("wineland_squeezing: N must be positive");
  const Eigen::Index m = rho.probabilities.size();
  const Eigen::Index dim = rho.states.rows();
  std::array<Eigen::MatrixXcd, 3> ov;
  for (int i = 0; i < 3; ++i) {
    ov[i].resize(dim, m);
    for (Eigen::Index k = 0; k < m; ++k)
      ov[i].col(k) = apply_checked(ops[i], rho.states.col(k));
  }
  SqueezingResult res;
  for (int i = 0; i < 3; ++i) {
    double mi = 0.0;
    for (Eigen::Index k = 0; k < m; ++k)
      mi += rho.probabilities(k) * rho.states.col(k).dot(ov[i].col(k)).real();
    res.mean_spin(i) = mi;
  }
  const double mlen = res.mean_spin.norm();
  if (mlen < 1e-8 * 0.5 * n_particles)
    throw SqueezingUndefinedError("squeezing undefined: vanishing mean spin");

  const Eigen::Vector3d n_hat = res.mean_spin / mlen;
  Eigen::Vector3d seed = std::abs(n_hat(2)) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                  : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d e1 = n_hat.cross(seed).normalized();
  const Eigen::Vector3d e2 = n_hat.cross(e1);

  auto second_moment = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::VectorXcd va = a(0) * ov[0].col(k) + a(1) * ov[1].col(k) + a(2) * ov[2].col(k);
      const Eigen::VectorXcd vb = b(0) * ov[0].col(k) + b(1) * ov[1].col(k) + b(2) * ov[2].col(k);
      s += rho.probabilities(k) * va.dot(vb).real();
    }
    return s;
  };
  const double s11 = second_moment(e1, e1);
  const double s22 = second_moment(e2, e2);
  const double s12 = second_moment(e1, e2);
  const double half_tr = 0.5 * (s11 + s22);
  const double disc = std::sqrt(0.25 * (s11 - s22) * (s11 - s22) + s12 * s12);
  const double lam_min = half_tr - disc;
  res.xi2 = n_particles * lam_min / (mlen * mlen);
  const double phi = 0.5 * std::atan2(2.0 * s12, s11 - s22);
  // eigenvector of the smaller eigenvalue of [[s11,s12],[s12,s22]]
  const Eigen::Vector2d dir(-std::sin(phi), std::cos(phi));
  const Eigen::Vector2d check(std::cos(phi), std::sin(phi));
  const double val_check = s11 * check(0) * check(0) + 2 * s12 * check(0) * check(1) +
                           s22 * check(1) * check(1);
  const Eigen::Vector2d chosen = (std::abs(val_check - lam_min) <
                                  std::abs((s11 * dir(0) * dir(0) +
                                            2 * s12 * dir(0) * dir(1) +
                                            s22 * dir(1) * dir(1)) - lam_min))
                                     ? check
                                     : dir;
  res.min_direction = chosen(0) * e1 + chosen(1) * e2;
  return res;
}

ClassicalFisherResult classical_fisher_information(const Eigen::VectorXd& p0,
                                                   const Eigen::VectorXd& p_plus,
                                                   const Eigen::VectorXd& p_minus,
                                                   double dphi) {
  if (dphi <= 0.0) throw ConfigError("classical_fisher_information: dphi must be positive");
  if (p_plus.size() != p0.size() || p_minus.size() != p0.size())
    throw ConfigError("classical_fisher_information: outcome counts differ");
  ClassicalFisherResult res;
  for (Eigen::Index i = 0; i < p0.size(); ++i) {
    const double deriv = (p_plus(i) - p_minus(i)) / (2.0 * dphi);
    if (p0(i) <= 0.0) {
      if (std::abs(deriv) > 0.0) ++res.excluded;
      continue;
    }
    res.value += deriv * deriv / p0(i);
  }
  return res;
}

}
