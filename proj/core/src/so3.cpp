#include "elastica/so3.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "elastica/errors.hpp"

namespace elastica {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Eigen::Matrix3d hat(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& m) {
  return Eigen::Vector3d(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
                         0.5 * (m(1, 0) - m(0, 1)));
}

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& v) {
  const double th = v.norm();
  const Eigen::Matrix3d k = hat(v);
  if (th < 1e-10) {
    // 2nd-order series keeps the result orthogonal to machine precision here.
    return Eigen::Matrix3d::Identity() + k + 0.5 * k * k;
  }
  const double a = std::sin(th) / th;
  const double b = (1.0 - std::cos(th)) / (th * th);
  return Eigen::Matrix3d::Identity() + a * k + b * k * k;
}

double rotation_angle(const Eigen::Matrix3d& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  return std::acos(c);
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d& r) {
  const double th = rotation_angle(r);
  const Eigen::Vector3d w = vee(r);  // sin(th) * axis
  if (th < 1e-10) return w;          // axis*sin(th) = axis*th to 3rd order
  if (th < kPi - 1e-6) return (th / std::sin(th)) * w;

  // Near pi: (r + I)/2 approaches the projector axis*axis^T.
  const Eigen::Matrix3d p = 0.5 * (r + Eigen::Matrix3d::Identity());
  int j = 0;
  p.diagonal().maxCoeff(&j);
  Eigen::Vector3d axis = p.col(j).normalized();
  // Fix the sign from the skew part when it is informative, otherwise make
  // the largest component positive.
  if (w.norm() > 1e-12) {
    if (axis.dot(w) < 0.0) axis = -axis;
  } else {
    int m = 0;
    axis.cwiseAbs().maxCoeff(&m);
    if (axis(m) < 0.0) axis = -axis;
  }
  return th * axis;
}

Eigen::Matrix3d minimal_rotation(const Eigen::Vector3d& a,
                                 const Eigen::Vector3d& b) {
  const Eigen::Vector3d v = a.cross(b);
  const double c = a.dot(b);
  const double s2 = v.squaredNorm();
  if (s2 < 1e-30) {
    if (c < 0.0)
      throw NumericalError("no minimal rotation between antipodal points");
    return Eigen::Matrix3d::Identity();
  }
  const Eigen::Matrix3d k = hat(v);
  return Eigen::Matrix3d::Identity() + k + k * k * ((1.0 - c) / s2);
}

Eigen::Matrix3d rotation_about_e3(double theta) {
  Eigen::Matrix3d r;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

}  // namespace elastica
