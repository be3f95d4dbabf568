#include "elastica/plane_geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_to_pi(double x) {
  return x - 2.0 * kPi * std::round(x / (2.0 * kPi));
}

void check_equal_lengths(const VectorXd& a, const VectorXd& b) {
  if (a.size() != b.size())
    throw ValidationError("sequence length mismatch");
}

}  // namespace

VectorXd unwrap_angles(const VectorXd& phi) {
  VectorXd out(phi.size());
  if (phi.size() == 0) return out;
  out(0) = phi(0);
  for (Index i = 1; i < phi.size(); ++i)
    out(i) = out(i - 1) + wrap_to_pi(phi(i) - phi(i - 1));
  return out;
}

VectorXd srv_speed_analytic(const VectorXd& omega, const VectorXd& omega_dot,
                            const VectorXd& kappa) {
  check_equal_lengths(omega, omega_dot);
  check_equal_lengths(omega, kappa);
  VectorXd out(omega.size());
  for (Index i = 0; i < omega.size(); ++i) {
    const double w = omega(i);
    if (w <= 0.0)
      throw NumericalError("speed must be positive at sample " +
                           std::to_string(i));
    const double wd = omega_dot(i);
    const double k = kappa(i);
    out(i) = std::sqrt(wd * wd / (4.0 * w) + w * w * w * k * k);
  }
  return out;
}

ImmersionReport srv_is_immersion(const VectorXd& omega_dot,
                                 const VectorXd& kappa) {
  check_equal_lengths(omega_dot, kappa);
  const double eps_wd = 1e-7 * omega_dot.cwiseAbs().maxCoeff();
  const double eps_k = 1e-7 * kappa.cwiseAbs().maxCoeff();
  ImmersionReport rep;
  for (Index i = 0; i < kappa.size(); ++i)
    if (std::abs(kappa(i)) <= eps_k && std::abs(omega_dot(i)) <= eps_wd)
      rep.offending.push_back(i);
  rep.immersed = rep.offending.empty();
  return rep;
}

VectorXd srv_curvature_analytic(const VectorXd& omega,
                                const VectorXd& omega_dot,
                                const VectorXd& kappa, bool closed) {
  return analyze_plane_data(omega, omega_dot, kappa, closed).kappa_tilde;
}

PlaneGeometry analyze_plane_data(const VectorXd& omega,
                                 const VectorXd& omega_dot,
                                 const VectorXd& kappa, bool closed) {
  const ImmersionReport rep = srv_is_immersion(omega_dot, kappa);
  if (!rep.immersed)
    throw NumericalError("srv image is not an immersion at sample " +
                         std::to_string(rep.offending.front()));

  PlaneGeometry g;
  g.omega = omega;
  g.omega_dot = omega_dot;
  g.kappa = kappa;
  g.omega_tilde = srv_speed_analytic(omega, omega_dot, kappa);

  const Index n = omega.size();
  VectorXd raw(n);
  for (Index i = 0; i < n; ++i)
    raw(i) = std::atan2(2.0 * omega(i) * omega(i) * kappa(i), omega_dot(i));
  g.phi = unwrap_angles(raw);

  if (closed) {
    // Differentiate through the wrap in increments so a winding angle does
    // not fake a jump at the seam.
    const double dt = 1.0 / double(n);
    g.phi_dot.resize(n);
    auto inc = [&](Index i) {
      return wrap_to_pi(raw((i + 1) % n) - raw(i));
    };
    for (Index i = 0; i < n; ++i)
      g.phi_dot(i) = (inc((i + n - 1) % n) + inc(i)) / (2.0 * dt);
  } else {
    g.phi_dot = derivative(g.phi, false);
  }

  const double floor = 1e-7 * g.omega_tilde.maxCoeff();
  g.kappa_tilde.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double wt = g.omega_tilde(i);
    g.kappa_tilde(i) =
        wt > floor ? (kappa(i) * omega(i) + g.phi_dot(i)) / wt
                   : std::numeric_limits<double>::quiet_NaN();
  }
  return g;
}

PlaneGeometry analyze_plane_curve(const DiscreteCurve& c) {
  const VectorXd omega = speed(c);
  const VectorXd omega_dot = derivative(omega, c.closed);
  const VectorXd kappa = plane_curvature(c);
  return analyze_plane_data(omega, omega_dot, kappa, c.closed);
}

double total_curvature(const DiscreteCurve& c) {
  const VectorXd omega = speed(c);
  const VectorXd kappa = plane_curvature(c);
  return integrate_trapezoid((kappa.array() * omega.array()).matrix(),
                             c.closed);
}

int turning_number(const DiscreteCurve& c) {
  if (!c.closed)
    throw ValidationError("turning number is defined for closed curves only");
  return int(std::lround(total_curvature(c) / (2.0 * kPi)));
}

DiscreteCurve curve_from_speed_curvature(
    const std::function<double(double)>& omega,
    const std::function<double(double)>& kappa, Index n) {
  if (n < 3) throw ValidationError("need at least 3 samples");
  const double h = 1.0 / double(n - 1);

  // State (c, T, N); N stays the left normal of T under the Frenet system.
  Eigen::Vector2d pos(0.0, 0.0);
  Eigen::Vector2d tan(1.0, 0.0);
  Eigen::Vector2d nor(0.0, 1.0);

  MatrixXd samples(n, 2);
  samples.row(0) = pos;

  auto rhs = [&](double t, const Eigen::Vector2d& tv, const Eigen::Vector2d& nv,
                 Eigen::Vector2d& dc, Eigen::Vector2d& dt_, Eigen::Vector2d& dn) {
    const double w = omega(t);
    const double lam = w * kappa(t);
    dc = w * tv;
    dt_ = lam * nv;
    dn = -lam * tv;
  };

  for (Index i = 1; i < n; ++i) {
    const double t0 = double(i - 1) * h;
    Eigen::Vector2d k1c, k1t, k1n, k2c, k2t, k2n, k3c, k3t, k3n, k4c, k4t, k4n;
    rhs(t0, tan, nor, k1c, k1t, k1n);
    rhs(t0 + h / 2, tan + h / 2 * k1t, nor + h / 2 * k1n, k2c, k2t, k2n);
    rhs(t0 + h / 2, tan + h / 2 * k2t, nor + h / 2 * k2n, k3c, k3t, k3n);
    rhs(t0 + h, tan + h * k3t, nor + h * k3n, k4c, k4t, k4n);
    pos += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
    tan += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    nor += h / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n);
    tan.normalize();
    nor -= nor.dot(tan) * tan;
    nor.normalize();
    samples.row(i) = pos;
  }
  return DiscreteCurve(std::move(samples), false);
}

DiscreteCurve straightening_curve(double a, double b, double A, Index n) {
  if (!(a * b > 0.0) || !(A > 0.0))
    throw ValidationError("straightening family requires ab > 0 and A > 0");
  const double lo = std::min(b, a + b);
  const double hi = std::max(b, a + b);
  // sin(a t + b) must not vanish for t in [0,1].
  const double k_lo = std::ceil(lo / kPi);
  if (k_lo * kPi <= hi) throw ValidationError("speed pole in domain");

  auto omega = [=](double t) {
    const double s = std::sin(a * t + b);
    return A / (s * s);
  };
  auto kappa = [=](double t) {
    const double s = std::sin(a * t + b);
    return a * s * s / A;
  };
  return curve_from_speed_curvature(omega, kappa, n);
}

}  // namespace elastica
