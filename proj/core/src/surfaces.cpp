#include "elastica/surfaces.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "elastica/errors.hpp"
#include "elastica/srv.hpp"

namespace elastica {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_tube(const TubeSpec& spec) {
  if (spec.center.dim() != 3)
    throw ValidationError("tube center must be a space curve");
  if (spec.radius.size() != spec.center.size())
    throw ValidationError("radius length differs from center sample count");
  for (Index i = 0; i < spec.radius.size(); ++i)
    if (!(spec.radius(i) > 0.0))
      throw ValidationError("tube radius must be positive");
}

void check_ruled(const RuledSpec& spec) {
  if (spec.base.dim() != 3)
    throw ValidationError("ruled base must be a space curve");
  if (spec.ruling.rows() != spec.base.size() || spec.ruling.cols() != 3)
    throw ValidationError("ruling shape differs from base sample count");
  for (Index i = 0; i < spec.ruling.rows(); ++i)
    if (std::abs(spec.ruling.row(i).norm() - 1.0) > 1e-10)
      throw ValidationError("ruling directions must be unit vectors");
}

void check_strip(const StripSpec& spec) {
  if (spec.bandwidth.size() != spec.base.size())
    throw ValidationError("bandwidth length differs from base sample count");
  for (Index i = 0; i < spec.bandwidth.size(); ++i)
    if (!(spec.bandwidth(i) > 0.0 && spec.bandwidth(i) < kPi / 2.0))
      throw ValidationError("strip bandwidth must lie in (0, pi/2)");
}

// Triangulates the (rows x cols) vertex grid with index (i, j) -> i*cols+j.
// Wraps in i when wrap_rows, in j when wrap_cols.
Eigen::MatrixXi grid_faces(Index rows, Index cols, bool wrap_rows,
                           bool wrap_cols) {
  const Index ni = wrap_rows ? rows : rows - 1;
  const Index nj = wrap_cols ? cols : cols - 1;
  Eigen::MatrixXi faces(2 * ni * nj, 3);
  Index f = 0;
  for (Index i = 0; i < ni; ++i) {
    const Index i1 = (i + 1) % rows;
    for (Index j = 0; j < nj; ++j) {
      const Index j1 = (j + 1) % cols;
      const int a = int(i * cols + j);
      const int b = int(i1 * cols + j);
      const int c = int(i1 * cols + j1);
      const int d = int(i * cols + j1);
      faces.row(f++) << a, b, c;
      faces.row(f++) << a, c, d;
    }
  }
  return faces;
}

Eigen::Matrix3d kabsch3(const Eigen::Matrix3d& a) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector3d diag = Eigen::Vector3d::Ones();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0)
    diag(2) = -1.0;
  return svd.matrixU() * diag.asDiagonal() * svd.matrixV().transpose();
}

// Optimal common rotation of the 3-column blocks starting at the given
// offsets (Procrustes restricted to a block-diagonal action).
Eigen::Matrix3d block_rotation(const SrvCurve& s1, const SrvCurve& s2,
                               const std::vector<Index>& offsets) {
  const VectorXd w = trapezoid_weights(s1.size(), s1.closed);
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  for (Index off : offsets)
    a += s1.q.middleCols(off, 3).transpose() * w.asDiagonal() *
         s2.q.middleCols(off, 3);
  return kabsch3(a);
}

DiscreteCurve rotate_blocks(const DiscreteCurve& c, const Eigen::Matrix3d& r,
                            const std::vector<Index>& offsets) {
  DiscreteCurve out = c;
  for (Index off : offsets)
    out.samples.middleCols(off, 3) =
        c.samples.middleCols(off, 3) * r.transpose();
  return out;
}

}  // namespace

DiscreteCurve tube_encode(const TubeSpec& spec, double mu) {
  check_tube(spec);
  if (!(mu > 0.0)) throw ValidationError("channel weight must be positive");
  DiscreteCurve out;
  out.closed = spec.center.closed;
  out.samples.resize(spec.center.size(), 4);
  out.samples.leftCols(3) = spec.center.samples;
  out.samples.col(3) = mu * spec.radius;
  return out;
}

TubeSpec tube_decode(const DiscreteCurve& c, double mu) {
  if (c.dim() != 4) throw ValidationError("tube state must be 4-dimensional");
  if (!(mu > 0.0)) throw ValidationError("channel weight must be positive");
  TubeSpec spec;
  spec.center = DiscreteCurve(c.samples.leftCols(3), c.closed);
  spec.radius = c.samples.col(3) / mu;
  for (Index i = 0; i < spec.radius.size(); ++i)
    if (!(spec.radius(i) > 0.0)) throw NumericalError("invalid tube state");
  return spec;
}

Mesh tube_mesh(const TubeSpec& spec, Index circle_samples) {
  check_tube(spec);
  if (circle_samples < 3)
    throw ValidationError("tube needs at least 3 circle samples");
  const FrameField frame = frenet_frame(spec.center);
  const Index n = spec.center.size();
  const Index cs = circle_samples;

  Mesh mesh;
  mesh.vertices.resize(n * cs, 3);
  for (Index i = 0; i < n; ++i) {
    const Eigen::RowVector3d g = spec.center.samples.row(i);
    const Eigen::RowVector3d nr = frame.N.row(i);
    const Eigen::RowVector3d bn = frame.B.row(i);
    const double r = spec.radius(i);
    for (Index j = 0; j < cs; ++j) {
      const double s = 2.0 * kPi * double(j) / double(cs);
      mesh.vertices.row(i * cs + j) =
          g + r * (std::cos(s) * nr + std::sin(s) * bn);
    }
  }
  mesh.faces = grid_faces(n, cs, spec.center.closed, true);
  return mesh;
}

DiscreteCurve ruled_encode(const RuledSpec& spec, double nu) {
  check_ruled(spec);
  if (!(nu > 0.0)) throw ValidationError("channel weight must be positive");
  DiscreteCurve out;
  out.closed = spec.base.closed;
  out.samples.resize(spec.base.size(), 6);
  out.samples.leftCols(3) = spec.base.samples;
  out.samples.rightCols(3) = nu * spec.ruling;
  return out;
}

RuledDecode ruled_decode(const DiscreteCurve& c, double nu) {
  if (c.dim() != 6)
    throw ValidationError("ruled state must be 6-dimensional");
  if (!(nu > 0.0)) throw ValidationError("channel weight must be positive");
  RuledDecode out;
  out.spec.base = DiscreteCurve(c.samples.leftCols(3), c.closed);
  out.spec.ruling = c.samples.rightCols(3) / nu;
  for (Index i = 0; i < out.spec.ruling.rows(); ++i) {
    const double norm = out.spec.ruling.row(i).norm();
    if (norm < 1e-6) throw NumericalError("ruling direction vanished");
    out.max_correction = std::max(out.max_correction, std::abs(norm - 1.0));
    out.spec.ruling.row(i) /= norm;
  }
  out.corrected = out.max_correction > 1e-3;
  return out;
}

Mesh ruled_mesh(const RuledSpec& spec, Index s_samples) {
  check_ruled(spec);
  if (s_samples < 2)
    throw ValidationError("ruled surface needs at least 2 ruling samples");
  const Index n = spec.base.size();
  const Index m = s_samples;

  Mesh mesh;
  mesh.vertices.resize(n * m, 3);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) {
      const double s = double(j) / double(m - 1);
      mesh.vertices.row(i * m + j) =
          spec.base.samples.row(i) + s * spec.ruling.row(i);
    }
  mesh.faces = grid_faces(n, m, spec.base.closed, false);
  return mesh;
}

Mesh strip_mesh(const StripSpec& spec, Index s_samples) {
  check_strip(spec);
  if (s_samples < 2)
    throw ValidationError("strip needs at least 2 offset samples");
  DiscreteCurve base(spec.base.points, false);
  const MatrixXd tang = unit_tangent(base);
  const Index n = spec.base.size();
  const Index m = s_samples;

  Mesh mesh;
  mesh.vertices.resize(n * m, 3);
  for (Index i = 0; i < n; ++i) {
    const Eigen::Vector3d g = spec.base.points.row(i);
    const Eigen::Vector3d t = tang.row(i);
    const Eigen::Vector3d b = g.cross(t).normalized();
    for (Index j = 0; j < m; ++j) {
      const double s = double(j) / double(m - 1);
      mesh.vertices.row(i * m + j) =
          sphere_exp(g, s * spec.bandwidth(i) * b).transpose();
    }
  }
  mesh.faces = grid_faces(n, m, false, false);
  return mesh;
}

Mesh surface_mesh(const SurfaceSpec& spec, Index cross_samples) {
  if (std::holds_alternative<TubeSpec>(spec))
    return tube_mesh(std::get<TubeSpec>(spec), cross_samples);
  if (std::holds_alternative<RuledSpec>(spec))
    return ruled_mesh(std::get<RuledSpec>(spec), cross_samples);
  return strip_mesh(std::get<StripSpec>(spec), cross_samples);
}

SurfaceGeodesic surface_geodesic(const SurfaceSpec& a, const SurfaceSpec& b,
                                 const SurfaceGeodesicOptions& opts) {
  if (a.index() != b.index())
    throw ValidationError("surface class mismatch");
  if (opts.steps < 2) throw ValidationError("geodesic needs at least 2 steps");

  SurfaceGeodesic out;
  out.specs.reserve(size_t(opts.steps));

  if (std::holds_alternative<StripSpec>(a)) {
    const StripSpec& sa = std::get<StripSpec>(a);
    const StripSpec& sb = std::get<StripSpec>(b);
    check_strip(sa);
    check_strip(sb);
    SphereCurve ga = sa.base;
    ga.aux = sa.bandwidth;
    SphereCurve gb = sb.base;
    gb.aux = sb.bandwidth;
    HomoOptions ho;
    ho.lambda = opts.lambda;
    for (SphereCurve& step : homo_geodesic(ga, gb, opts.steps, ho)) {
      StripSpec spec;
      spec.bandwidth = step.aux;
      step.aux.resize(0);
      spec.base = std::move(step);
      out.specs.emplace_back(std::move(spec));
    }
  } else {
    const bool tube = std::holds_alternative<TubeSpec>(a);
    DiscreteCurve ca, cb;
    std::vector<Index> offsets;
    if (tube) {
      ca = tube_encode(std::get<TubeSpec>(a), opts.mu);
      cb = tube_encode(std::get<TubeSpec>(b), opts.mu);
      offsets = {0};
    } else {
      ca = ruled_encode(std::get<RuledSpec>(a), opts.nu);
      cb = ruled_encode(std::get<RuledSpec>(b), opts.nu);
      offsets = {0, 3};
    }
    if (ca.size() != cb.size() || ca.closed != cb.closed)
      throw ValidationError("shape mismatch between curves");

    if (opts.prealign) {
      const Eigen::Matrix3d r =
          block_rotation(srv_transform(ca), srv_transform(cb), offsets);
      cb = rotate_blocks(cb, r, offsets);
    }

    const SrvGeodesic path = srv_geodesic(ca, cb, opts.steps);
    for (const DiscreteCurve& step : path.steps) {
      if (tube)
        out.specs.emplace_back(tube_decode(step, opts.mu));
      else
        out.specs.emplace_back(ruled_decode(step, opts.nu).spec);
    }
  }

  out.meshes.reserve(out.specs.size());
  for (const SurfaceSpec& spec : out.specs)
    out.meshes.push_back(surface_mesh(spec, opts.cross_samples));
  return out;
}

void write_obj(const Mesh& mesh, std::ostream& out) {
  char buf[128];
  for (Index i = 0; i < mesh.vertices.rows(); ++i) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", mesh.vertices(i, 0),
                  mesh.vertices(i, 1), mesh.vertices(i, 2));
    out << buf;
  }
  for (Index f = 0; f < mesh.faces.rows(); ++f) {
    std::snprintf(buf, sizeof(buf), "f %d %d %d\n", mesh.faces(f, 0) + 1,
                  mesh.faces(f, 1) + 1, mesh.faces(f, 2) + 1);
    out << buf;
  }
}

}  // namespace elastica
