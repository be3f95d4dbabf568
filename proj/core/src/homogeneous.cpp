#include "elastica/homogeneous.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_unit_points(const SphereCurve& g) {
  for (Index i = 0; i < g.size(); ++i)
    if (std::abs(g.points.row(i).norm() - 1.0) > 1e-8)
      throw ValidationError("sphere curve points must be unit vectors");
  if (g.has_aux() && g.aux.size() != g.size())
    throw ValidationError("aux channel length differs from point count");
}

void check_immersed_sphere(const SphereCurve& g) {
  if (g.size() < 3)
    throw ValidationError("curve must have at least 3 samples");
  DiscreteCurve c(g.points, false);
  require_immersed(c);
}

void check_rotation_curve(const RotationCurve& a) {
  if (a.size() < 3)
    throw ValidationError("curve must have at least 3 samples");
  for (const Eigen::Matrix3d& f : a.frames) {
    const double ortho =
        (f.transpose() * f - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (ortho > 1e-8 || f.determinant() < 0.0)
      throw ValidationError("frame is not a rotation");
  }
}

// Scalar SRV of the aux channel on segments: q_i = sign(v_i) sqrt|v_i| for
// the forward difference v_i, padded at the end. Inverse by stepping, so the
// round trip is exact.
VectorXd aux_srv(const VectorXd& a) {
  const Index n = a.size();
  const double dt = 1.0 / double(n - 1);
  VectorXd q(n);
  for (Index i = 0; i + 1 < n; ++i) {
    const double v = (a(i + 1) - a(i)) / dt;
    q(i) = (v < 0.0 ? -1.0 : 1.0) * std::sqrt(std::abs(v));
  }
  q(n - 1) = q(n - 2);
  return q;
}

VectorXd aux_srv_inverse(const VectorXd& q, double start) {
  const Index n = q.size();
  const double dt = 1.0 / double(n - 1);
  VectorXd a(n);
  a(0) = start;
  for (Index i = 0; i + 1 < n; ++i)
    a(i + 1) = a(i) + dt * q(i) * std::abs(q(i));
  return a;
}

// Segment-sum L2 over the first n-1 entries (the padded row is excluded).
double segment_l2_sq(const VectorXd& sq_values) {
  const Index n = sq_values.size();
  const double dt = 1.0 / double(n - 1);
  double total = 0.0;
  for (Index i = 0; i + 1 < n; ++i) total += sq_values(i) * dt;
  return total;
}

Eigen::Matrix3d adapted_frame(const Eigen::Vector3d& p) {
  if (p.dot(Eigen::Vector3d::UnitZ()) < -1.0 + 1e-12) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(1, 1) = -1.0;
    flip(2, 2) = -1.0;  // half turn about e1, sends e3 to -e3
    return minimal_rotation(-Eigen::Vector3d::UnitZ(), p) * flip;
  }
  return minimal_rotation(Eigen::Vector3d::UnitZ(), p);
}

struct GoldenResult {
  double x = 0;
  double value = 0;
};

template <typename F>
GoldenResult golden_section(const F& f, double lo, double hi, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  GoldenResult r;
  r.x = 0.5 * (a + b);
  r.value = f(r.x);
  return r;
}

}  // namespace

RotationCurve horizontal_lift(const SphereCurve& g) {
  check_unit_points(g);
  check_immersed_sphere(g);
  return horizontal_lift(g, adapted_frame(g.points.row(0)));
}

RotationCurve horizontal_lift(const SphereCurve& g,
                              const Eigen::Matrix3d& initial) {
  check_unit_points(g);
  check_immersed_sphere(g);
  if ((initial.col(2) - g.points.row(0).transpose()).norm() > 1e-8)
    throw ValidationError("initial frame does not project to the start point");

  const Index n = g.size();
  RotationCurve a;
  a.frames.resize(size_t(n));
  a.frames[0] = initial;
  for (Index i = 0; i + 1 < n; ++i) {
    const Eigen::Vector3d p = g.points.row(i);
    const Eigen::Vector3d q = g.points.row(i + 1);
    if (p.dot(q) < -1.0 + 1e-12) throw NumericalError("lift undefined");
    a.frames[size_t(i + 1)] = minimal_rotation(p, q) * a.frames[size_t(i)];
  }
  return a;
}

AlgebraSrv group_srv(const RotationCurve& a) {
  check_rotation_curve(a);
  const Index n = a.size();
  const double dt = 1.0 / double(n - 1);

  AlgebraSrv s;
  s.start = a.frames[0];
  s.xi.resize(n, 3);
  for (Index i = 0; i + 1 < n; ++i) {
    const Eigen::Matrix3d d =
        a.frames[size_t(i)].transpose() * a.frames[size_t(i + 1)];
    if (rotation_angle(d) < 1e-14)
      throw NumericalError("consecutive equal frames at sample " +
                           std::to_string(i));
    const Eigen::Vector3d v = so3_log(d) / dt;
    s.xi.row(i) = v / std::sqrt(v.norm());
  }
  s.xi.row(n - 1) = s.xi.row(n - 2);
  return s;
}

RotationCurve group_srv_inverse(const AlgebraSrv& s) {
  const Index n = s.xi.rows();
  if (n < 3) throw ValidationError("curve must have at least 3 samples");
  const double dt = 1.0 / double(n - 1);

  RotationCurve a;
  a.frames.resize(size_t(n));
  a.frames[0] = s.start;
  for (Index i = 0; i + 1 < n; ++i) {
    const Eigen::Vector3d xi = s.xi.row(i);
    const Eigen::Vector3d v = xi * xi.norm();
    a.frames[size_t(i + 1)] = a.frames[size_t(i)] * so3_exp(dt * v);
  }
  return a;
}

HomoDistance homo_distance(const SphereCurve& g1, const SphereCurve& g2,
                           const HomoOptions& opts) {
  if (g1.size() != g2.size())
    throw ValidationError("sphere curves must share sample count");
  if (g1.has_aux() != g2.has_aux())
    throw ValidationError("aux channel mismatch");

  const AlgebraSrv q1 = group_srv(horizontal_lift(g1));
  const AlgebraSrv q2 = group_srv(horizontal_lift(g2));
  const Index n = g1.size();
  const double dt = 1.0 / double(n - 1);
  const bool aux = g1.has_aux();

  VectorXd qa1, qa2;
  double aux_start_sq = 0.0;
  if (aux) {
    qa1 = aux_srv(opts.lambda * g1.aux);
    qa2 = aux_srv(opts.lambda * g2.aux);
    const double d0 = opts.lambda * (g1.aux(0) - g2.aux(0));
    aux_start_sq = d0 * d0;
  }

  const Eigen::Matrix3d rel = q1.start.transpose() * q2.start;
  auto objective = [&](double theta, const MatrixXd& xi2,
                       const VectorXd& qa2w) {
    const Eigen::Matrix3d x = rotation_about_e3(theta);
    const double dh = rotation_angle(rel * x);
    double total = dh * dh;
    const Eigen::Matrix3d xt = x.transpose();
    for (Index i = 0; i + 1 < n; ++i) {
      const Eigen::Vector3d d =
          q1.xi.row(i).transpose() - xt * xi2.row(i).transpose();
      total += d.squaredNorm() * dt;
    }
    if (aux) {
      const VectorXd dq = qa1 - qa2w;
      total += segment_l2_sq(dq.cwiseProduct(dq)) + aux_start_sq;
    }
    return total;
  };

  auto best_theta = [&](const MatrixXd& xi2, const VectorXd& qa2w) {
    const int grid = 720;
    auto f = [&](double theta) { return objective(theta, xi2, qa2w); };
    int best_j = 0;
    double best_f = f(0.0);
    for (int j = 1; j < grid; ++j) {
      const double fj = f(2.0 * kPi * j / grid);
      if (fj < best_f) {
        best_f = fj;
        best_j = j;
      }
    }
    const double span = 2.0 * kPi / grid;
    const double center = 2.0 * kPi * best_j / grid;
    return golden_section(f, center - span, center + span, 1e-10);
  };

  GoldenResult gr = best_theta(q2.xi, qa2);

  HomoDistance out;
  out.theta = gr.x;
  out.minimizer = rotation_about_e3(gr.x);
  out.warp = identity_warp(n);

  if (opts.reparam) {
    // alternate the fiber angle with the warp search; the DP runs on the
    // stacked chart coordinates, with the fiber rotation folded into the
    // xi block. Rotation acts pointwise on rows, so it commutes with the
    // warp action and the working copy can stay unrotated.
    const Index cols = aux ? 4 : 3;
    auto stack = [&](const MatrixXd& xi, const VectorXd& qa) {
      SrvCurve s;
      s.closed = false;
      s.q.resize(n, cols);
      s.q.leftCols(3) = xi;
      if (aux) s.q.col(3) = qa;
      s.basepoint = Eigen::RowVectorXd::Zero(cols);
      return s;
    };
    const SrvCurve s1 = stack(q1.xi, qa1);

    MatrixXd xi2 = q2.xi;
    VectorXd qa2w = qa2;
    double theta = gr.x;
    double best = gr.value;
    Warp total_warp = identity_warp(n);
    for (int round = 0; round < 20; ++round) {
      SrvCurve s2 = stack(xi2 * rotation_about_e3(theta), qa2w);
      const ReparamResult rr = optimal_reparam(s1, s2, opts.grid);
      const SrvCurve warped = apply_warp(stack(xi2, qa2w), rr.warp);
      MatrixXd xi2_next = warped.q.leftCols(3);
      VectorXd qa2_next;
      if (aux) qa2_next = warped.q.col(3);
      const GoldenResult step = best_theta(xi2_next, qa2_next);
      if (step.value >= best - 1e-8) break;
      best = step.value;
      theta = step.x;
      xi2 = std::move(xi2_next);
      qa2w = std::move(qa2_next);
      total_warp = compose_warps(total_warp, rr.warp);
    }
    gr.value = best;
    gr.x = theta;
    out.theta = theta;
    out.minimizer = rotation_about_e3(theta);
    out.warp = total_warp;
  }

  out.distance = std::sqrt(gr.value);
  return out;
}

std::vector<SphereCurve> homo_geodesic(const SphereCurve& g1,
                                       const SphereCurve& g2, Index steps,
                                       const HomoOptions& opts) {
  if (steps < 2) throw ValidationError("geodesic needs at least 2 steps");
  const HomoDistance hd = homo_distance(g1, g2, opts);

  const AlgebraSrv q1 = group_srv(horizontal_lift(g1));
  const AlgebraSrv q2 = group_srv(horizontal_lift(g2));
  const Index n = g1.size();

  const Eigen::Matrix3d start2 = q2.start * hd.minimizer;

  MatrixXd xi2_rows = q2.xi;
  VectorXd qa1, qa2;
  if (g1.has_aux()) {
    qa1 = aux_srv(g1.aux);
    qa2 = aux_srv(g2.aux);
  }
  if (opts.reparam) {
    const Index cols = g1.has_aux() ? 4 : 3;
    SrvCurve s;
    s.closed = false;
    s.q.resize(n, cols);
    s.q.leftCols(3) = xi2_rows;
    if (g1.has_aux()) s.q.col(3) = qa2;
    s.basepoint = Eigen::RowVectorXd::Zero(cols);
    const SrvCurve w = apply_warp(s, hd.warp);
    xi2_rows = w.q.leftCols(3);
    if (g1.has_aux()) qa2 = w.q.col(3);
  }
  const MatrixXd xi2 = xi2_rows * hd.minimizer;  // rows become x^T xi
  const Eigen::Vector3d dstart = so3_log(q1.start.transpose() * start2);

  std::vector<SphereCurve> path;
  path.reserve(size_t(steps));
  for (Index k = 0; k < steps; ++k) {
    const double tau = double(k) / double(steps - 1);
    AlgebraSrv s;
    s.start = q1.start * so3_exp(tau * dstart);
    s.xi = (1.0 - tau) * q1.xi + tau * xi2;
    const RotationCurve rec = group_srv_inverse(s);

    SphereCurve g;
    g.points.resize(n, 3);
    for (Index i = 0; i < n; ++i)
      g.points.row(i) = rec.frames[size_t(i)].col(2);
    if (g1.has_aux()) {
      const VectorXd q = (1.0 - tau) * qa1 + tau * qa2;
      const double a0 = (1.0 - tau) * g1.aux(0) + tau * g2.aux(0);
      g.aux = aux_srv_inverse(q, a0);
    }
    path.push_back(std::move(g));
  }
  return path;
}

Eigen::Vector3d sphere_exp(const Eigen::Vector3d& x, const Eigen::Vector3d& v) {
  if (std::abs(x.norm() - 1.0) > 1e-8)
    throw ValidationError("basepoint must be a unit vector");
  if (std::abs(v.dot(x)) > 1e-8)
    throw ValidationError("vector is not tangent to the sphere at x");
  const double m = v.norm();
  if (m == 0.0) return x;
  return (std::cos(m) * x + (std::sin(m) / m) * v).normalized();
}

Eigen::Vector3d sphere_log(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  if (std::abs(x.norm() - 1.0) > 1e-8 || std::abs(y.norm() - 1.0) > 1e-8)
    throw ValidationError("sphere_log requires unit vectors");
  const double c = std::clamp(x.dot(y), -1.0, 1.0);
  const double th = std::acos(c);
  if (th < 1e-12) return Eigen::Vector3d::Zero();
  if (th > kPi - 1e-9)
    throw NumericalError("log undefined between antipodal points");
  const Eigen::Vector3d u = y - c * x;
  return th * u / u.norm();
}

double sphere_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return std::acos(std::clamp(x.dot(y), -1.0, 1.0));
}

SphereCurve resample_sphere_uniform(const SphereCurve& g, Index m) {
  if (m < 3) throw ValidationError("resampling requires m >= 3");
  check_unit_points(g);
  const Index n = g.size();
  if (n < 2) throw ValidationError("curve must have at least 3 samples");

  VectorXd cum(n);
  cum(0) = 0.0;
  for (Index i = 0; i + 1 < n; ++i)
    cum(i + 1) = cum(i) + sphere_distance(g.points.row(i), g.points.row(i + 1));
  const double total = cum(n - 1);
  if (total <= 0.0) throw NumericalError("degenerate curve");

  SphereCurve out;
  out.points.resize(m, 3);
  if (g.has_aux()) out.aux.resize(m);

  Index seg = 0;
  for (Index k = 0; k < m; ++k) {
    const double s = total * double(k) / double(m - 1);
    while (seg + 2 < n && cum(seg + 1) < s) ++seg;
    const double len = cum(seg + 1) - cum(seg);
    const double f = len > 0.0 ? (s - cum(seg)) / len : 0.0;
    const Eigen::Vector3d a = g.points.row(seg);
    const Eigen::Vector3d b = g.points.row(seg + 1);
    const double th = sphere_distance(a, b);
    Eigen::Vector3d p;
    if (th < 1e-12) {
      p = a;
    } else {
      p = (std::sin((1.0 - f) * th) * a + std::sin(f * th) * b) / std::sin(th);
    }
    out.points.row(k) = p.normalized();
    if (g.has_aux()) out.aux(k) = (1.0 - f) * g.aux(seg) + f * g.aux(seg + 1);
  }
  out.points.row(m - 1) = g.points.row(n - 1);
  if (g.has_aux()) out.aux(m - 1) = g.aux(n - 1);
  return out;
}

}  // namespace elastica
