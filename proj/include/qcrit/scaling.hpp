#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qcrit/errors.hpp"
#include "qcrit/qfi.hpp"

namespace qcrit {

// Two lowest levels with degeneracies; enough to predict the full thermal
// QFI decay below the second gap.
struct TwoLevelSpectrum {
  double f0 = 0.0;     // zero-temperature QFI
  double delta = 0.0;  // first nonvanishing separation
  int mu_deg = 1;      // ground-level degeneracy
  int nu_deg = 1;      // first-excited degeneracy
};

// F0 tanh^2(Delta/2T) mu (1+e^{-Delta/T}) / (mu + nu e^{-Delta/T})
double two_level_law(const TwoLevelSpectrum& spec, double temperature);

// (4/mu) sum_n [<O^2>_n - sum_m |<n|O|m>|^2] over mu orthonormal columns.
double degenerate_ground_qfi(const Eigen::MatrixXcd& states,
                             const CollectiveOperator& op);

// Natural cubic spline with analytic first and second derivatives.
class CubicSpline {
 public:
  CubicSpline(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);
  double operator()(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;
  double x_min() const { return xs_(0); }
  double x_max() const { return xs_(xs_.size() - 1); }

 private:
  int interval(double x) const;
  Eigen::VectorXd xs_, ys_, m_;  // m_: second derivatives at the knots
};

// T at the knee of a monotone decay: root of d^2F/dT^2 from a natural cubic
// spline in log T; multiple roots resolved by the largest |dF/dT|.
double crossover_temperature(const Eigen::VectorXd& ts, const Eigen::VectorXd& fs);

enum class FitModel { PowerLaw, Exponential };

// residual_rms is the log-residual RMS for pure log-log/log-linear fits and
// the residual RMS relative to the data scale when an offset is refined.
struct FitResult {
  FitModel model = FitModel::PowerLaw;
  double amplitude = 0.0, amplitude_sigma = 0.0;
  double exponent = 0.0, exponent_sigma = 0.0;      // b of a x^b
  double decay_scale = 0.0, decay_scale_sigma = 0.0;  // x0 of a e^{-x/x0}
  double offset = 0.0;
  bool offset_used = false;
  double residual_rms = 0.0;
  double x_lo = 0.0, x_hi = 0.0;

  // Refuses x beyond twice the sampled range unless explicitly allowed.
  double evaluate(double x, bool allow_extrapolation = false) const;
};

FitResult fit_power_law(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys,
                        bool with_offset = false);
FitResult fit_power_law(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        bool with_offset = false);
FitResult fit_exponential(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);
FitResult fit_exponential(const std::vector<double>& xs,
                          const std::vector<double>& ys);

struct LinearFit {
  double slope = 0.0, intercept = 0.0;
  double slope_sigma = 0.0, intercept_sigma = 0.0;
  double rms = 0.0;
};

LinearFit linear_fit(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);
LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

struct QcDecayResult {
  double slope = 0.0;
  double amplitude = 0.0;  // prefactor of the power law inside the window
  double rms_log = 0.0;
  bool accepted = false;  // goodness-of-fit gate at rms_log <= 0.05
};

// Log-log slope of F(T) restricted to [t_lo, t_hi]; the window must span at
// least half a decade.
QcDecayResult qc_decay_exponent(const Eigen::VectorXd& ts, const Eigen::VectorXd& fs,
                                double t_lo, double t_hi);

struct CollapseCurve {
  double n = 0.0;        // system size
  Eigen::VectorXd ts;    // abscissae (ascending)
  Eigen::VectorXd fs;    // values
};

// Rescale each curve to (t n^b, f / n^a) and report the RMS spread across
// curves on a common interpolation grid, relative to the mean curve scale.
double data_collapse(const std::vector<CollapseCurve>& curves, double a, double b);

struct ProfileCollapseResult {
  double amplitude = 0.0;  // single fitted scale factor
  double rms = 0.0;        // relative to the profile scale
};

// Fit one overall amplitude of `profile` against all rescaled samples.
ProfileCollapseResult collapse_against_profile(
    const std::vector<CollapseCurve>& curves, double a, double b,
    const std::function<double(double)>& profile);

// Intercept of a linear fit in 1/N (thermodynamic extrapolation).
double extrapolate_inverse_size(const Eigen::VectorXd& ns, const Eigen::VectorXd& vals);

}
