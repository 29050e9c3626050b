#include "qcrit/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcrit {

double two_level_law(const TwoLevelSpectrum& spec, double temperature) {
  if (temperature <= 0.0) throw ConfigError("two_level_law: temperature must be positive");
  if (spec.f0 < 0.0 || spec.delta <= 0.0 || spec.mu_deg < 1 || spec.nu_deg < 1)
    throw ConfigError("two_level_law: invalid spectrum parameters");
  const double x = std::exp(-spec.delta / temperature);
  const double th = std::tanh(spec.delta / (2.0 * temperature));
  return spec.f0 * th * th * spec.mu_deg * (1.0 + x) /
         (spec.mu_deg + spec.nu_deg * x);
}

double degenerate_ground_qfi(const Eigen::MatrixXcd& states,
                             const CollectiveOperator& op) {
  const Eigen::Index mu = states.cols();
  if (mu < 2) throw ConfigError("degenerate_ground_qfi: need at least two states");
  const Eigen::MatrixXcd gram = states.adjoint() * states;
  if ((gram - Eigen::MatrixXcd::Identity(mu, mu)).cwiseAbs().maxCoeff() > 1e-10)
    throw ConfigError("degenerate_ground_qfi: states not orthonormal");
  Eigen::MatrixXcd ov(states.rows(), mu);
  for (Eigen::Index n = 0; n < mu; ++n) ov.col(n) = op.apply(states.col(n));
  const Eigen::MatrixXcd w = states.adjoint() * ov;
  double f = 0.0;
  for (Eigen::Index n = 0; n < mu; ++n)
    f += ov.col(n).squaredNorm() - w.row(n).squaredNorm();
  return 4.0 / static_cast<double>(mu) * f;
}

CubicSpline::CubicSpline(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys)
    : xs_(xs), ys_(ys) {
  const Eigen::Index n = xs.size();
  if (ys.size() != n || n < 3) throw ConfigError("spline: need >= 3 matching samples");
  for (Eigen::Index i = 1; i < n; ++i)
    if (xs(i) <= xs(i - 1)) throw ConfigError("spline: abscissae must ascend strictly");
  m_ = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd a(n), b(n), c(n), r(n);
  a(0) = 0; b(0) = 1; c(0) = 0; r(0) = 0;
  a(n - 1) = 0; b(n - 1) = 1; c(n - 1) = 0; r(n - 1) = 0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double hl = xs(i) - xs(i - 1);
    const double hr = xs(i + 1) - xs(i);
    a(i) = hl / 6.0;
    b(i) = (hl + hr) / 3.0;
    c(i) = hr / 6.0;
    r(i) = (ys(i + 1) - ys(i)) / hr - (ys(i) - ys(i - 1)) / hl;
  }
  // Thomas algorithm
  for (Eigen::Index i = 1; i < n; ++i) {
    const double w = a(i) / b(i - 1);
    b(i) -= w * c(i - 1);
    r(i) -= w * r(i - 1);
  }
  m_(n - 1) = r(n - 1) / b(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) m_(i) = (r(i) - c(i) * m_(i + 1)) / b(i);
}

int CubicSpline::interval(double x) const {
  const Eigen::Index n = xs_.size();
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (xs_(mid) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return static_cast<int>(lo);
}

double CubicSpline::operator()(double x) const {
  const int i = interval(x);
  const double h = xs_(i + 1) - xs_(i);
  const double u = xs_(i + 1) - x, v = x - xs_(i);
  return m_(i) * u * u * u / (6 * h) + m_(i + 1) * v * v * v / (6 * h) +
         (ys_(i) / h - m_(i) * h / 6) * u + (ys_(i + 1) / h - m_(i + 1) * h / 6) * v;
}

double CubicSpline::deriv(double x) const {
  const int i = interval(x);
  const double h = xs_(i + 1) - xs_(i);
  const double u = xs_(i + 1) - x, v = x - xs_(i);
  return -m_(i) * u * u / (2 * h) + m_(i + 1) * v * v / (2 * h) +
         (ys_(i + 1) - ys_(i)) / h - (m_(i + 1) - m_(i)) * h / 6;
}

double CubicSpline::deriv2(double x) const {
  const int i = interval(x);
  const double h = xs_(i + 1) - xs_(i);
  return (m_(i) * (xs_(i + 1) - x) + m_(i + 1) * (x - xs_(i))) / h;
}

double crossover_temperature(const Eigen::VectorXd& ts, const Eigen::VectorXd& fs) {
  const Eigen::Index n = ts.size();
  if (n < 20) throw ConfigError("crossover_temperature: need >= 20 samples");
  if (fs.size() != n) throw ConfigError("crossover_temperature: size mismatch");
  for (Eigen::Index i = 0; i < n; ++i)
    if (ts(i) <= 0.0) throw ConfigError("crossover_temperature: temperatures must be positive");
  for (Eigen::Index i = 1; i < n; ++i)
    if (fs(i) > fs(i - 1) * (1.0 + 1e-8) + 1e-12)
      throw ConfigError("crossover_temperature: samples must decay monotonically");

  Eigen::VectorXd xs(n);
  for (Eigen::Index i = 0; i < n; ++i) xs(i) = std::log(ts(i));
  const CubicSpline s(xs, fs);
  // d2F/dT2 = (S'' - S') / T^2 in log-abscissa form
  const auto g = [&](double x) { return s.deriv2(x) - s.deriv(x); };

  const int samples_per_interval = 64;
  std::vector<double> roots;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    double prev_x = xs(i);
    double prev_g = g(prev_x);
    for (int j = 1; j <= samples_per_interval; ++j) {
      const double x = xs(i) + (xs(i + 1) - xs(i)) * j / samples_per_interval;
      const double gx = g(x);
      if (prev_g == 0.0) roots.push_back(prev_x);
      if (prev_g * gx < 0.0) {
        double lo = prev_x, hi = x, glo = prev_g;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if (glo * gm <= 0.0)
            hi = mid;
          else {
            lo = mid;
            glo = gm;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      prev_x = x;
      prev_g = gx;
    }
  }
  if (roots.empty()) throw NumericError("no crossover in range");
  double best = roots.front();
  double best_slope = -1.0;
  for (double r : roots) {
    const double slope = std::abs(s.deriv(r)) * std::exp(-r);  // |dF/dT|
    if (slope > best_slope) {
      best_slope = slope;
      best = r;
    }
  }
  return std::exp(best);
}

LinearFit linear_fit(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  const Eigen::Index n = xs.size();
  if (ys.size() != n || n < 2) throw ConfigError("linear_fit: need >= 2 matching samples");
  const double xm = xs.mean(), ym = ys.mean();
  const double sxx = (xs.array() - xm).square().sum();
  if (sxx <= 0.0) throw ConfigError("linear_fit: degenerate abscissae");
  const double sxy = ((xs.array() - xm) * (ys.array() - ym)).sum();
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = ym - f.slope * xm;
  const Eigen::ArrayXd r = ys.array() - (f.intercept + f.slope * xs.array());
  f.rms = std::sqrt(r.square().mean());
  if (n > 2) {
    const double s2 = r.square().sum() / static_cast<double>(n - 2);
    f.slope_sigma = std::sqrt(s2 / sxx);
    f.intercept_sigma = std::sqrt(s2 * (1.0 / n + xm * xm / sxx));
  }
  return f;
}

namespace {

void check_fit_inputs(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  if (xs.size() != ys.size()) throw ConfigError("fit: sample size mismatch");
  if (xs.size() < 5) throw ConfigError("fit: need at least 5 samples");
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    if (!(xs(i) > 0.0) || !(ys(i) > 0.0))
      throw ConfigError("fit: non-positive data for log fit");
}

}  // namespace

FitResult fit_power_law(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys,
                        bool with_offset) {
  check_fit_inputs(xs, ys);
  const Eigen::VectorXd lx = xs.array().log();
  const Eigen::VectorXd ly = ys.array().log();
  const LinearFit lin = linear_fit(lx, ly);
  FitResult res;
  res.model = FitModel::PowerLaw;
  res.amplitude = std::exp(lin.intercept);
  res.exponent = lin.slope;
  res.amplitude_sigma = res.amplitude * lin.intercept_sigma;
  res.exponent_sigma = lin.slope_sigma;
  res.residual_rms = lin.rms;
  res.x_lo = xs.minCoeff();
  res.x_hi = xs.maxCoeff();
  if (!with_offset) return res;

  // Gauss-Newton on y = a x^b + d seeded from the log fit
  double a = res.amplitude, b = res.exponent, d = 0.0;
  const Eigen::Index n = xs.size();
  Eigen::MatrixXd j(n, 3);
  Eigen::VectorXd r(n);
  for (int it = 0; it < 200; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double xb = std::pow(xs(i), b);
      r(i) = ys(i) - (a * xb + d);
      j(i, 0) = xb;
      j(i, 1) = a * xb * std::log(xs(i));
      j(i, 2) = 1.0;
    }
    const Eigen::Matrix3d jtj = j.transpose() * j;
    const Eigen::Vector3d jtr = j.transpose() * r;
    const Eigen::Vector3d step = (jtj + 1e-12 * Eigen::Matrix3d::Identity())
                                     .ldlt()
                                     .solve(jtr);
    a += step(0);
    b += step(1);
    d += step(2);
    if (step.cwiseAbs().maxCoeff() < 1e-13 * (1.0 + std::abs(b))) break;
  }
  for (Eigen::Index i = 0; i < n; ++i) r(i) = ys(i) - (a * std::pow(xs(i), b) + d);
  const double scale = std::sqrt(ys.array().square().mean());
  res.amplitude = a;
  res.exponent = b;
  res.offset = d;
  res.offset_used = true;
  res.residual_rms = std::sqrt(r.array().square().mean()) / std::max(scale, 1e-300);
  const double s2 = r.squaredNorm() / std::max<Eigen::Index>(n - 3, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xb = std::pow(xs(i), b);
    j(i, 0) = xb;
    j(i, 1) = a * xb * std::log(xs(i));
    j(i, 2) = 1.0;
  }
  const Eigen::Matrix3d cov =
      (j.transpose() * j + 1e-12 * Eigen::Matrix3d::Identity()).inverse() * s2;
  res.amplitude_sigma = std::sqrt(std::max(cov(0, 0), 0.0));
  res.exponent_sigma = std::sqrt(std::max(cov(1, 1), 0.0));
  return res;
}

FitResult fit_exponential(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  if (xs.size() != ys.size()) throw ConfigError("fit: sample size mismatch");
  if (xs.size() < 5) throw ConfigError("fit: need at least 5 samples");
  for (Eigen::Index i = 0; i < ys.size(); ++i)
    if (!(ys(i) > 0.0)) throw ConfigError("fit: non-positive data for log fit");
  const Eigen::VectorXd ly = ys.array().log();
  const LinearFit lin = linear_fit(xs, ly);
  if (lin.slope == 0.0) throw NumericError("fit_exponential: flat data");
  FitResult res;
  res.model = FitModel::Exponential;
  res.amplitude = std::exp(lin.intercept);
  res.amplitude_sigma = res.amplitude * lin.intercept_sigma;
  res.decay_scale = -1.0 / lin.slope;
  res.decay_scale_sigma = lin.slope_sigma / (lin.slope * lin.slope);
  res.residual_rms = lin.rms;
  res.x_lo = xs.minCoeff();
  res.x_hi = xs.maxCoeff();
  return res;
}

double FitResult::evaluate(double x, bool allow_extrapolation) const {
  if (!allow_extrapolation && (x > 2.0 * x_hi || x < 0.5 * x_lo))
    throw ConfigError("fit evaluation beyond twice the sampled range");
  if (model == FitModel::PowerLaw) return amplitude * std::pow(x, exponent) + offset;
  return amplitude * std::exp(-x / decay_scale);
}

namespace {
Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}
}  // namespace

FitResult fit_power_law(const std::vector<double>& xs,
                        const std::vector<double>& ys, bool with_offset) {
  return fit_power_law(as_vector(xs), as_vector(ys), with_offset);
}

FitResult fit_exponential(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  return fit_exponential(as_vector(xs), as_vector(ys));
}

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  return linear_fit(as_vector(xs), as_vector(ys));
}

QcDecayResult qc_decay_exponent(const Eigen::VectorXd& ts, const Eigen::VectorXd& fs,
                                double t_lo, double t_hi) {
  if (fs.size() != ts.size()) throw ConfigError("qc_decay_exponent: size mismatch");
  if (!(t_lo > 0.0) || t_hi <= t_lo)
    throw ConfigError("qc_decay_exponent: bad window");
  if (std::log10(t_hi / t_lo) < 0.5)
    throw ConfigError("qc_decay_exponent: window narrower than half a decade");
  std::vector<double> lx, ly;
  for (Eigen::Index i = 0; i < ts.size(); ++i) {
    if (ts(i) < t_lo || ts(i) > t_hi) continue;
    if (!(ts(i) > 0.0) || !(fs(i) > 0.0))
      throw ConfigError("qc_decay_exponent: non-positive data in window");
    lx.push_back(std::log(ts(i)));
    ly.push_back(std::log(fs(i)));
  }
  if (lx.size() < 5) throw ConfigError("qc_decay_exponent: fewer than 5 samples in window");
  const Eigen::Map<Eigen::VectorXd> vx(lx.data(), static_cast<Eigen::Index>(lx.size()));
  const Eigen::Map<Eigen::VectorXd> vy(ly.data(), static_cast<Eigen::Index>(ly.size()));
  const LinearFit lin = linear_fit(vx, vy);
  QcDecayResult res;
  res.slope = lin.slope;
  res.amplitude = std::exp(lin.intercept);
  res.rms_log = lin.rms;
  res.accepted = lin.rms <= 0.05;
  return res;
}

namespace {

struct RescaledFamily {
  std::vector<Eigen::VectorXd> xs, ys;  // rescaled, per curve
  double x_lo = 0.0, x_hi = 0.0;        // common window
};

RescaledFamily rescale_curves(const std::vector<CollapseCurve>& curves, double a,
                              double b) {
  if (curves.size() < 3)
    throw ConfigError("data_collapse: need at least 3 system sizes");
  RescaledFamily fam;
  fam.x_lo = -std::numeric_limits<double>::infinity();
  fam.x_hi = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    if (c.n <= 0.0 || c.ts.size() != c.fs.size() || c.ts.size() < 2)
      throw ConfigError("data_collapse: malformed curve");
    const double sa = std::pow(c.n, a), sb = std::pow(c.n, b);
    fam.xs.push_back(c.ts * sb);
    fam.ys.push_back(c.fs / sa);
    fam.x_lo = std::max(fam.x_lo, fam.xs.back().minCoeff());
    fam.x_hi = std::min(fam.x_hi, fam.xs.back().maxCoeff());
  }
  if (!(fam.x_hi > fam.x_lo))
    throw ConfigError("data_collapse: insufficient overlap of rescaled abscissae");
  return fam;
}

double interp_loglinear(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys, double x) {
  // linear in log x between samples; xs ascending and positive
  Eigen::Index lo = 0, hi = xs.size() - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (xs(mid) <= x)
      lo = mid;
    else
      hi = mid;
  }
  const double w = (std::log(x) - std::log(xs(lo))) /
                   (std::log(xs(lo + 1)) - std::log(xs(lo)));
  return ys(lo) * (1.0 - w) + ys(lo + 1) * w;
}

}  // namespace

double data_collapse(const std::vector<CollapseCurve>& curves, double a, double b) {
  const RescaledFamily fam = rescale_curves(curves, a, b);
  if (!(fam.x_lo > 0.0))
    throw ConfigError("data_collapse: rescaled abscissae must be positive");
  const int grid_n = 50;
  double var_sum = 0.0, scale_sum = 0.0;
  for (int g = 0; g < grid_n; ++g) {
    const double x = fam.x_lo * std::pow(fam.x_hi / fam.x_lo,
                                         static_cast<double>(g) / (grid_n - 1));
    double mean = 0.0;
    std::vector<double> vals;
    for (size_t c = 0; c < fam.xs.size(); ++c) {
      vals.push_back(interp_loglinear(fam.xs[c], fam.ys[c], x));
      mean += vals.back();
    }
    mean /= static_cast<double>(vals.size());
    for (double v : vals) var_sum += (v - mean) * (v - mean);
    scale_sum += std::abs(mean);
  }
  const double rms = std::sqrt(var_sum / (grid_n * static_cast<double>(fam.xs.size())));
  const double scale = scale_sum / grid_n;
  if (scale <= 0.0) throw NumericError("data_collapse: degenerate curve scale");
  return rms / scale;
}

ProfileCollapseResult collapse_against_profile(
    const std::vector<CollapseCurve>& curves, double a, double b,
    const std::function<double(double)>& profile) {
  const RescaledFamily fam = rescale_curves(curves, a, b);
  double num = 0.0, den = 0.0;
  for (size_t c = 0; c < fam.xs.size(); ++c) {
    for (Eigen::Index i = 0; i < fam.xs[c].size(); ++i) {
      const double x = fam.xs[c](i);
      if (x < fam.x_lo || x > fam.x_hi) continue;
      const double ph = profile(x);
      num += ph * fam.ys[c](i);
      den += ph * ph;
    }
  }
  if (den <= 0.0) throw NumericError("collapse_against_profile: degenerate profile");
  ProfileCollapseResult res;
  res.amplitude = num / den;
  double sq = 0.0, sc = 0.0;
  int count = 0;
  for (size_t c = 0; c < fam.xs.size(); ++c) {
    for (Eigen::Index i = 0; i < fam.xs[c].size(); ++i) {
      const double x = fam.xs[c](i);
      if (x < fam.x_lo || x > fam.x_hi) continue;
      const double ph = res.amplitude * profile(x);
      sq += (fam.ys[c](i) - ph) * (fam.ys[c](i) - ph);
      sc += std::abs(ph);
      ++count;
    }
  }
  res.rms = std::sqrt(sq / count) / (sc / count);
  return res;
}

double extrapolate_inverse_size(const Eigen::VectorXd& ns, const Eigen::VectorXd& vals) {
  if (ns.size() != vals.size() || ns.size() < 2)
    throw ConfigError("extrapolate_inverse_size: need >= 2 sizes");
  Eigen::VectorXd inv(ns.size());
  for (Eigen::Index i = 0; i < ns.size(); ++i) {
    if (ns(i) <= 0.0) throw ConfigError("extrapolate_inverse_size: sizes must be positive");
    inv(i) = 1.0 / ns(i);
  }
  return linear_fit(inv, vals).intercept;
}

}
