#ifndef ELASTICA_CURVE_HPP
#define ELASTICA_CURVE_HPP

#include <Eigen/Core>
#include <vector>

namespace elastica {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Index = Eigen::Index;

/// Uniformly sampled curve in R^d. Rows of `samples` are the points.
/// The parameter domain is [0,1] with spacing 1/(N-1) for open curves and
/// 1/N for closed ones; closed curves do not store a duplicated endpoint.
struct DiscreteCurve {
  MatrixXd samples;  // N x d
  bool closed = false;

  DiscreteCurve() = default;
  DiscreteCurve(MatrixXd s, bool c) : samples(std::move(s)), closed(c) {}

  Index size() const { return samples.rows(); }
  Index dim() const { return samples.cols(); }
  double dt() const {
    return closed ? 1.0 / double(size()) : 1.0 / double(size() - 1);
  }
};

/// Orthonormal moving frame along a curve in R^3. Rows are unit vectors;
/// each triple (T_i, N_i, B_i) is right-handed.
struct FrameField {
  MatrixXd T;  // N x 3
  MatrixXd N;  // N x 3
  MatrixXd B;  // N x 3
};

// -- Finite differences ------------------------------------------------------
// Interior samples: central differences. Open-curve endpoints: one-sided
// 2nd-order stencils. Closed curves: cyclic central differences.

/// d/dt of a sampled sequence (rows = samples), spacing from (N, closed).
MatrixXd derivative(const MatrixXd& y, bool closed);

/// d^2/dt^2 of a sampled sequence.
MatrixXd second_derivative(const MatrixXd& y, bool closed);

VectorXd derivative(const VectorXd& y, bool closed);

// -- Quadrature ---------------------------------------------------------------

/// Trapezoid weights on the uniform [0,1] grid. For closed curves this is the
/// cyclic trapezoid, i.e. the plain Riemann sum with weight 1/N.
VectorXd trapezoid_weights(Index n, bool closed);

double integrate_trapezoid(const VectorXd& values, bool closed);

/// Running integral from 0 to t_i; element 0 is 0.
VectorXd cumulative_trapezoid(const VectorXd& values, bool closed);
MatrixXd cumulative_trapezoid(const MatrixXd& values, bool closed);

// -- Scale and degeneracy -----------------------------------------------------

/// Diagonal of the axis-aligned bounding box of the samples.
double bounding_box_diagonal(const MatrixXd& samples);

/// Scale-relative speed floor: 1e-8 x bounding-box diagonal.
double speed_epsilon(const DiscreteCurve& c);

/// Polyline length (sum of chords, including the wrap chord when closed).
double arc_length(const DiscreteCurve& c);

/// Index of the first sample with speed below speed_epsilon, or -1 if none.
Index first_non_immersed_sample(const DiscreteCurve& c);

/// Throws NumericalError("not an immersion at sample i") unless every sample
/// has speed >= speed_epsilon.
void require_immersed(const DiscreteCurve& c);

// -- Differential geometry ----------------------------------------------------

/// Per-sample speed w_i = |c'(t_i)|.
VectorXd speed(const DiscreteCurve& c);

/// Unit tangents c'(t)/|c'(t)|; requires immersion.
MatrixXd unit_tangent(const DiscreteCurve& c);

/// Signed curvature of a plane curve, positive for a counterclockwise circle.
/// Requires immersion.
VectorXd plane_curvature(const DiscreteCurve& c);

/// Frenet frame of a curve in R^3 with a rotation-minimizing (double
/// reflection) fallback wherever |T'| < eps_frame. Requires immersion.
FrameField frenet_frame(const DiscreteCurve& c);

/// Threshold on |T'| below which the Frenet normal is considered undefined.
inline constexpr double kFrameEpsilon = 1e-6;

// -- Resampling ----------------------------------------------------------------

/// Piecewise-linear resampling to m samples uniform in polyline arc length.
/// Keeps the first sample fixed. Throws NumericalError on degenerate input.
DiscreteCurve resample_uniform(const DiscreteCurve& c, Index m);

}  // namespace elastica

#endif
