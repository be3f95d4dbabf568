#ifndef ELASTICA_HOMOGENEOUS_HPP
#define ELASTICA_HOMOGENEOUS_HPP

#include <vector>

#include "elastica/curve.hpp"
#include "elastica/registration.hpp"
#include "elastica/so3.hpp"

namespace elastica {

/// Curve in SO(3); frames[i] is the group element at t_i = i/(N-1).
struct RotationCurve {
  std::vector<Eigen::Matrix3d> frames;

  Index size() const { return Index(frames.size()); }
};

/// Lie-algebra SRV of a rotation curve: the starting frame plus
/// xi_i = v_i/sqrt|v_i| where v_i is the discrete body velocity of segment i
/// (the last row repeats the previous one so lengths match).
struct AlgebraSrv {
  Eigen::Matrix3d start;
  MatrixXd xi;  // N x 3
};

/// Curve on the unit sphere, optionally augmented with a scalar channel
/// (empty aux means plain S^2).
struct SphereCurve {
  MatrixXd points;  // N x 3, unit rows
  VectorXd aux;     // empty or length N

  Index size() const { return points.rows(); }
  bool has_aux() const { return aux.size() > 0; }
};

/// Frame curve alpha with alpha(t) e3 = gamma(t) and horizontal discrete
/// body velocity, built by composing minimal rotations between successive
/// points from a frame adapted to gamma(0).
RotationCurve horizontal_lift(const SphereCurve& g);

/// Same, but starting from a caller-chosen initial frame (its third column
/// must be gamma(0)). Changing the initial frame by k in SO(2) about e3
/// conjugates the body velocities by k^{-1}.
RotationCurve horizontal_lift(const SphereCurve& g,
                              const Eigen::Matrix3d& initial);

AlgebraSrv group_srv(const RotationCurve& a);

/// Reconstructs the rotation curve by exponential stepping from start.
RotationCurve group_srv_inverse(const AlgebraSrv& s);

struct HomoOptions {
  double lambda = 1.0;   // weight of the aux channel
  bool reparam = false;  // also quotient by reparametrizations of [0,1]
  Index grid = 0;        // DP grid when reparam is on, 0 = default
};

struct HomoDistance {
  double distance = 0;
  double theta = 0;           // minimizing fiber angle
  Eigen::Matrix3d minimizer;  // rotation about e3 by theta
  Warp warp;                  // identity unless reparam was requested
};

/// Quotient distance on sphere curves: infimum over the fiber group SO(2) of
/// the start-frame distance plus the L2 gap of the Lie-algebra SRVs (the
/// second curve's transported by Ad of the fiber element). Aux channels, when
/// present on both, contribute their own scalar SRV gap and starting-value
/// gap, scaled by lambda. With opts.reparam the fiber search alternates with
/// the dynamic-programming warp search over the stacked chart coordinates
/// (xi plus the scaled aux SRV), mirroring shape_distance.
HomoDistance homo_distance(const SphereCurve& g1, const SphereCurve& g2,
                           const HomoOptions& opts = {});

/// Geodesic through the chart (start, xi): the start moves along the SO(3)
/// geodesic toward alpha_2(0) x*, xi moves linearly toward the transported
/// xi_2, and each step projects back to the sphere. With opts.reparam the
/// second endpoint is the aligned representative of its orbit, so the path
/// ends at a reparametrization of g2.
std::vector<SphereCurve> homo_geodesic(const SphereCurve& g1,
                                       const SphereCurve& g2, Index steps,
                                       const HomoOptions& opts = {});

/// exp_x(v) = cos|v| x + sin|v| v/|v| for tangent v at unit x.
Eigen::Vector3d sphere_exp(const Eigen::Vector3d& x, const Eigen::Vector3d& v);

/// Inverse of sphere_exp for non-antipodal y.
Eigen::Vector3d sphere_log(const Eigen::Vector3d& x, const Eigen::Vector3d& y);

/// Great-circle distance between unit vectors.
double sphere_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& y);

/// Resampling uniform in great-circle arc length, interpolating segments by
/// slerp; the aux channel follows the same parameter linearly.
SphereCurve resample_sphere_uniform(const SphereCurve& g, Index m);

}  // namespace elastica

#endif
