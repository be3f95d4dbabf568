#ifndef ELASTICA_SRV_HPP
#define ELASTICA_SRV_HPP

#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

/// Square root velocity representation q = c'/sqrt|c'| of a curve, plus the
/// basepoint c(0) dropped by the transform.
struct SrvCurve {
  MatrixXd q;  // N x d
  Eigen::RowVectorXd basepoint;
  bool closed = false;

  Index size() const { return q.rows(); }
  Index dim() const { return q.cols(); }
};

SrvCurve srv_transform(const DiscreteCurve& c);

/// c(t) = basepoint + integral of q|q|. Total inverse of srv_transform up to
/// discretization error; accepts vanishing q (the inverse side is total).
DiscreteCurve srv_inverse(const SrvCurve& s);

/// sqrt(int |q|^2 dt), the L2 norm. Equals sqrt(length of the curve).
double l2_norm(const SrvCurve& s);

/// Flat L2 distance sqrt(int |q1-q2|^2 dt). Basepoints are ignored: the
/// metric lives on curves modulo translations.
double l2_distance(const SrvCurve& a, const SrvCurve& b);

/// Norm of int q|q| dt; zero for an exactly closed curve. The straight-line
/// geodesic does not preserve closure, so intermediate steps report this.
double closure_gap(const SrvCurve& s);

struct SrvGeodesic {
  std::vector<DiscreteCurve> steps;
  std::vector<bool> immersed;       // per step
  std::vector<double> closure_gaps;  // per step; empty for open curves
};

/// Geodesic under the flat metric: a straight line in q-space, realized as
/// curves. Basepoints interpolate linearly. Endpoints are the round-tripped
/// inputs. Interior steps may lose immersion where q crosses zero; they are
/// returned regardless, flagged in `immersed`.
SrvGeodesic srv_geodesic(const DiscreteCurve& c0, const DiscreteCurve& c1,
                         Index steps);

}  // namespace elastica

#endif
