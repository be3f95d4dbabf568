#ifndef ELASTICA_SO3_HPP
#define ELASTICA_SO3_HPP

#include <Eigen/Core>

namespace elastica {

/// Hat map: v in R^3 to the skew matrix with hat(v)w = v x w.
Eigen::Matrix3d hat(const Eigen::Vector3d& v);

/// Inverse of hat on skew-symmetric matrices (uses the skew part).
Eigen::Vector3d vee(const Eigen::Matrix3d& m);

/// Rodrigues exponential exp(hat(v)).
Eigen::Matrix3d so3_exp(const Eigen::Vector3d& v);

/// Principal logarithm as a vector; |result| <= pi. Handles angles near 0
/// and near pi. At exactly pi the sign of the axis is chosen
/// deterministically.
Eigen::Vector3d so3_log(const Eigen::Matrix3d& r);

/// Geodesic (bi-invariant) distance from the identity, in [0, pi].
double rotation_angle(const Eigen::Matrix3d& r);

/// The rotation with smallest angle taking unit vector a to unit vector b;
/// its axis is a x b. Throws NumericalError for antipodal inputs.
Eigen::Matrix3d minimal_rotation(const Eigen::Vector3d& a,
                                 const Eigen::Vector3d& b);

/// Rotation by theta about the z axis.
Eigen::Matrix3d rotation_about_e3(double theta);

}  // namespace elastica

#endif
