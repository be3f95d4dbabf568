#ifndef ELASTICA_PLANE_GEOMETRY_HPP
#define ELASTICA_PLANE_GEOMETRY_HPP

#include <functional>
#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

/// Differential data of a plane curve and of its SRV image: speed omega,
/// its derivative, signed curvature kappa, the SRV-image speed omega_tilde,
/// the auxiliary angle phi with derivative, and the SRV-image curvature
/// kappa_tilde. kappa_tilde is NaN where omega_tilde is below the detection
/// floor.
struct PlaneGeometry {
  VectorXd omega;
  VectorXd omega_dot;
  VectorXd kappa;
  VectorXd phi;
  VectorXd phi_dot;
  VectorXd omega_tilde;
  VectorXd kappa_tilde;
};

struct ImmersionReport {
  bool immersed = false;
  std::vector<Index> offending;
};

/// Speed of the SRV image: sqrt(omega_dot^2/(4 omega) + omega^3 kappa^2).
VectorXd srv_speed_analytic(const VectorXd& omega, const VectorXd& omega_dot,
                            const VectorXd& kappa);

/// The SRV image is immersed iff kappa and omega_dot share no zero. A sample
/// counts as a zero when its magnitude is at most 1e-7 times the sup norm of
/// its sequence (so an identically zero sequence vanishes everywhere).
ImmersionReport srv_is_immersion(const VectorXd& omega_dot,
                                 const VectorXd& kappa);

/// Curvature of the SRV image via kappa_tilde * omega_tilde = kappa*omega +
/// phi_dot with phi the unwrapped two-argument arctangent of
/// (2 omega^2 kappa, omega_dot).
VectorXd srv_curvature_analytic(const VectorXd& omega,
                                const VectorXd& omega_dot,
                                const VectorXd& kappa, bool closed);

/// Full bundle from given (omega, omega_dot, kappa).
PlaneGeometry analyze_plane_data(const VectorXd& omega,
                                 const VectorXd& omega_dot,
                                 const VectorXd& kappa, bool closed);

/// Full bundle from a sampled plane curve, with omega, omega_dot, kappa
/// obtained by the finite-difference scheme.
PlaneGeometry analyze_plane_curve(const DiscreteCurve& c);

/// Integral of kappa*omega over [0,1].
double total_curvature(const DiscreteCurve& c);

/// total_curvature / 2pi rounded; closed curves only.
int turning_number(const DiscreteCurve& c);

/// Plane curve realizing prescribed speed and curvature, from the origin
/// with initial tangent (1,0), by 4th-order fixed-step integration of the
/// Frenet system.
DiscreteCurve curve_from_speed_curvature(
    const std::function<double(double)>& omega,
    const std::function<double(double)>& kappa, Index n);

/// The straightening family: omega = A/sin^2(a t + b), kappa = a/omega.
/// Its SRV image is a straight line.
DiscreteCurve straightening_curve(double a, double b, double A, Index n);

/// Unwraps an angle sequence so consecutive increments lie in [-pi, pi].
VectorXd unwrap_angles(const VectorXd& phi);

}  // namespace elastica

#endif
