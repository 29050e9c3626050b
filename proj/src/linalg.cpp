#include "qcrit/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <vector>

#include "qcrit/errors.hpp"

namespace qcrit {

EighResult dense_eigh(const Eigen::MatrixXd& a, bool want_vectors) {
  if (a.rows() != a.cols()) throw ConfigError("dense_eigh: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EighResult r;
  r.values.resize(n);
  if (n == 0) return r;
  Eigen::MatrixXd work = a;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n,
                     work.data(), n, r.values.data());
  if (info != 0) throw NumericError("dense_eigh: dsyevd did not converge");
  if (want_vectors) r.vectors = std::move(work);
  return r;
}

EighResult tridiag_eigh(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                        bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  if (off.size() != std::max<Eigen::Index>(n - 1, 0))
    throw ConfigError("tridiag_eigh: off-diagonal size must be n-1");
  EighResult r;
  r.values = diag;
  if (n == 0) return r;
  Eigen::VectorXd e = off;
  if (want_vectors) r.vectors.resize(n, n);
  const lapack_int info = LAPACKE_dstevd(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', n, r.values.data(),
      n > 1 ? e.data() : nullptr, want_vectors ? r.vectors.data() : nullptr, n);
  if (info != 0) throw NumericError("tridiag_eigh: dstevd did not converge");
  return r;
}

EighResult tridiag_lowest(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                          int count, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  if (off.size() != std::max<Eigen::Index>(n - 1, 0))
    throw ConfigError("tridiag_lowest: off-diagonal size must be n-1");
  if (count < 1 || count > n) throw ConfigError("tridiag_lowest: count out of range");
  Eigen::VectorXd d = diag;
  Eigen::VectorXd e(n);
  if (n > 1) e.head(n - 1) = off;
  // dstevr uses the eigenvalue array as length-n workspace even when only
  // il..iu are requested, so size it by n rather than count.
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, count);
  lapack_int m = 0;
  std::vector<lapack_int> isuppz(2 * std::max(1, count));
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, d.data(), e.data(),
      0.0, 0.0, 1, count, 0.0, &m, w.data(), z.data(), n, isuppz.data());
  if (info != 0) throw NumericError("tridiag_lowest: dstevr did not converge");
  if (m < count) throw NumericError("tridiag_lowest: fewer eigenvalues than requested");
  EighResult r;
  r.values = w.head(count);
  if (want_vectors) r.vectors = std::move(z);
  return r;
}

double find_root_brent(const std::function<double(double)>& f, double lo, double hi,
                       double xtol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw NumericError("find_root_brent: no sign change on interval");
  double c = a, fc = fa;
  double d = b - a, e = b - a;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (xm > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}
