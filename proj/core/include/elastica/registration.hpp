#ifndef ELASTICA_REGISTRATION_HPP
#define ELASTICA_REGISTRATION_HPP

#include <utility>
#include <vector>

#include "elastica/srv.hpp"

namespace elastica {

/// Reparametrization gamma of [0,1] sampled on the uniform grid: monotone
/// nondecreasing, gamma(0)=0 and gamma(1)=1 for open curves. For closed
/// curves the values stay in [0,1) on the cyclic grid and any seed-point
/// shift is carried separately.
struct Warp {
  VectorXd values;

  Index size() const { return values.size(); }
};

Warp identity_warp(Index n);

/// gamma1 after gamma2, i.e. t -> gamma1(gamma2(t)), by linear interpolation
/// of gamma1 at the values of gamma2. Open-curve warps only.
Warp compose_warps(const Warp& gamma1, const Warp& gamma2);

/// Action of a warp on SRV coordinates: q -> (q o gamma) sqrt(gamma').
SrvCurve apply_warp(const SrvCurve& s, const Warp& w);

/// Cyclic reindexing of a closed SRV curve by k samples.
SrvCurve apply_shift(const SrvCurve& s, Index k);

struct ProcrustesResult {
  MatrixXd rotation;
  bool degenerate = false;  // cross-covariance nearly rank-deficient
};

/// argmin over SO(d) of the L2 distance between q1 and R q2 (Procrustes via
/// SVD with determinant correction).
ProcrustesResult optimal_rotation(const SrvCurve& s1, const SrvCurve& s2);

/// Cost of one linear warp segment between nodes (i0,j0) and (i1,j1) of a
/// g x g graph over [0,1]^2: the trapezoid quadrature of
/// |q1(t) - q2(gamma(t)) sqrt(gamma')|^2 along the edge. Exposed so search
/// strategies over the same graph are comparable.
double warp_edge_cost(const SrvCurve& s1, const SrvCurve& s2, Index g,
                      Index i0, Index j0, Index i1, Index j1);

/// Slopes (di, dj) allowed per step of the warp graph; the first entry is
/// the diagonal, which wins ties.
const std::vector<std::pair<Index, Index>>& warp_slopes();

struct ReparamResult {
  Warp warp;
  Index shift = 0;  // cyclic seed shift, closed curves only
  double cost = 0;  // squared objective value at the DP optimum
};

/// Best piecewise-linear monotone reparametrization of s2 onto s1 by dynamic
/// programming on a g x g graph (g = min(N,128) when grid == 0). For closed
/// curves the search repeats over `coarse_shifts` cyclic shifts of s2 and
/// then over every integer shift inside the winning bracket.
ReparamResult optimal_reparam(const SrvCurve& s1, const SrvCurve& s2,
                              Index grid = 0, Index coarse_shifts = 32);

struct ShapeDistanceOptions {
  bool rotations = true;
  bool reparams = true;
  Index grid = 0;            // DP grid, 0 = default
  Index shift_samples = 32;  // coarse cyclic shifts for closed curves
};

struct ShapeAlignment {
  MatrixXd rotation;
  Warp warp;
  Index shift = 0;
  double distance = 0;
  int iterations = 0;
  bool degenerate_rotation = false;
};

/// Distance on the quotient by translations, rotations and
/// reparametrizations: alternates optimal_rotation and optimal_reparam
/// (rotation first) until improvement falls under 1e-8 or 20 rounds. The
/// reported state is the best visited, so the distance never exceeds the
/// unaligned one.
ShapeAlignment shape_distance(const DiscreteCurve& c0, const DiscreteCurve& c1,
                              const ShapeDistanceOptions& opts = {});

}  // namespace elastica

#endif
