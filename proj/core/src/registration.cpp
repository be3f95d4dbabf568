#include "elastica/registration.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_compatible(const SrvCurve& a, const SrvCurve& b) {
  if (a.size() != b.size() || a.dim() != b.dim() || a.closed != b.closed)
    throw ValidationError("shape mismatch between SRV curves");
}

// Piecewise-linear row interpolation over the uniform open grid on [0,1].
Eigen::RowVectorXd interp_row(const MatrixXd& q, double t) {
  const Index m = q.rows();
  const double u = t * double(m - 1);
  const Index j = std::clamp(Index(std::floor(u)), Index(0), m - 2);
  const double f = u - double(j);
  return (1.0 - f) * q.row(j) + f * q.row(j + 1);
}

// A closed SRV curve viewed as an open one with the seam sample repeated,
// which is exactly its piecewise-linear interpolant on [0,1].
SrvCurve opened(const SrvCurve& s) {
  if (!s.closed) return s;
  SrvCurve o;
  o.q.resize(s.size() + 1, s.dim());
  o.q.topRows(s.size()) = s.q;
  o.q.row(s.size()) = s.q.row(0);
  o.basepoint = s.basepoint;
  o.closed = false;
  return o;
}

Index default_grid(Index n, Index requested) {
  const Index g = requested > 0 ? std::min(requested, n) : std::min<Index>(n, 128);
  return std::max<Index>(g, 2);
}

struct DpOut {
  double cost = kInf;
  std::vector<std::pair<Index, Index>> path;  // nodes from (0,0) to (g-1,g-1)
};

DpOut dp_search(const SrvCurve& a, const SrvCurve& b, Index g) {
  const auto& slopes = warp_slopes();
  MatrixXd cost = MatrixXd::Constant(g, g, kInf);
  Eigen::MatrixXi from = Eigen::MatrixXi::Constant(g, g, -1);
  cost(0, 0) = 0.0;
  for (Index i = 0; i < g; ++i) {
    for (Index j = 0; j < g; ++j) {
      if (i == 0 && j == 0) continue;
      double best = kInf;
      int arg = -1;
      for (size_t s = 0; s < slopes.size(); ++s) {
        const Index pi = i - slopes[s].first;
        const Index pj = j - slopes[s].second;
        if (pi < 0 || pj < 0) continue;
        if (cost(pi, pj) == kInf) continue;
        const double cand = cost(pi, pj) + warp_edge_cost(a, b, g, pi, pj, i, j);
        if (cand < best) {
          best = cand;
          arg = int(s);
        }
      }
      cost(i, j) = best;
      from(i, j) = arg;
    }
  }

  DpOut out;
  out.cost = cost(g - 1, g - 1);
  Index i = g - 1, j = g - 1;
  out.path.emplace_back(i, j);
  while (i != 0 || j != 0) {
    const int s = from(i, j);
    if (s < 0) break;  // unreachable; cannot happen for g >= 2
    i -= slopes[size_t(s)].first;
    j -= slopes[size_t(s)].second;
    out.path.emplace_back(i, j);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

// Samples the piecewise-linear lattice path at n uniform parameters.
VectorXd path_to_values(const std::vector<std::pair<Index, Index>>& path,
                        Index g, Index n) {
  VectorXd values(n);
  size_t seg = 0;
  for (Index l = 0; l < n; ++l) {
    const double t = double(l) / double(n - 1);
    const double x = t * double(g - 1);
    while (seg + 2 < path.size() && double(path[seg + 1].first) < x) ++seg;
    const double x0 = double(path[seg].first);
    const double x1 = double(path[seg + 1].first);
    const double y0 = double(path[seg].second);
    const double y1 = double(path[seg + 1].second);
    const double f = (x - x0) / (x1 - x0);
    values(l) = (y0 + f * (y1 - y0)) / double(g - 1);
  }
  values(0) = 0.0;
  values(n - 1) = 1.0;
  return values;
}

SrvCurve rotate_srv(const SrvCurve& s, const MatrixXd& r) {
  SrvCurve out = s;
  out.q = s.q * r.transpose();
  out.basepoint = s.basepoint * r.transpose();
  return out;
}

}  // namespace

const std::vector<std::pair<Index, Index>>& warp_slopes() {
  static const std::vector<std::pair<Index, Index>> slopes = {
      {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}};
  return slopes;
}

double warp_edge_cost(const SrvCurve& s1, const SrvCurve& s2, Index g,
                      Index i0, Index j0, Index i1, Index j1) {
  const Index di = i1 - i0;
  const Index dj = j1 - j0;
  const Index n = s1.size();
  const double slope = double(dj) / double(di);
  const double root = std::sqrt(slope);

  const Index ratio = std::max<Index>(
      1, Index(std::llround(double(n - 1) / double(g - 1))));
  const Index k = di * ratio;

  const double t0 = double(i0) / double(g - 1);
  const double t1 = double(i1) / double(g - 1);
  const double y0 = double(j0) / double(g - 1);
  const double y1 = double(j1) / double(g - 1);
  const double ht = (t1 - t0) / double(k);

  double sum = 0.0;
  for (Index m = 0; m <= k; ++m) {
    const double f = double(m) / double(k);
    const double t = t0 + f * (t1 - t0);
    const double y = y0 + f * (y1 - y0);
    const double val =
        (interp_row(s1.q, t) - root * interp_row(s2.q, y)).squaredNorm();
    sum += (m == 0 || m == k) ? 0.5 * val : val;
  }
  return sum * ht;
}

Warp identity_warp(Index n) {
  Warp w;
  w.values.setLinSpaced(n, 0.0, 1.0);
  return w;
}

Warp compose_warps(const Warp& gamma1, const Warp& gamma2) {
  Warp out;
  out.values.resize(gamma2.size());
  for (Index i = 0; i < gamma2.size(); ++i)
    out.values(i) = interp_row(MatrixXd(gamma1.values), gamma2.values(i))(0);
  return out;
}

SrvCurve apply_shift(const SrvCurve& s, Index k) {
  if (k == 0) return s;
  if (!s.closed)
    throw ValidationError("cyclic shift applies to closed curves only");
  const Index n = s.size();
  k = ((k % n) + n) % n;
  SrvCurve out = s;
  for (Index i = 0; i < n; ++i) out.q.row(i) = s.q.row((i + k) % n);
  out.basepoint = srv_inverse(s).samples.row(k);
  return out;
}

SrvCurve apply_warp(const SrvCurve& s, const Warp& w) {
  if (w.size() != s.size())
    throw ValidationError("warp and curve sample counts differ");
  const Index n = s.size();
  const SrvCurve view = opened(s);
  SrvCurve out = s;

  VectorXd gdot(n);
  if (s.closed) {
    // gamma extends to gamma(t+1) = gamma(t)+1; differentiate increments.
    const double dt = 1.0 / double(n);
    auto inc = [&](Index i) {
      return i + 1 < n ? w.values(i + 1) - w.values(i)
                       : w.values(0) + 1.0 - w.values(n - 1);
    };
    for (Index i = 0; i < n; ++i)
      gdot(i) = (inc((i + n - 1) % n) + inc(i)) / (2.0 * dt);
  } else {
    gdot = derivative(w.values, false);
  }

  for (Index i = 0; i < n; ++i) {
    const double root = std::sqrt(std::max(gdot(i), 0.0));
    out.q.row(i) = root * interp_row(view.q, w.values(i));
  }
  return out;
}

ProcrustesResult optimal_rotation(const SrvCurve& s1, const SrvCurve& s2) {
  check_compatible(s1, s2);
  const VectorXd w = trapezoid_weights(s1.size(), s1.closed);
  const MatrixXd a = s1.q.transpose() * w.asDiagonal() * s2.q;

  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixXd& u = svd.matrixU();
  const MatrixXd& v = svd.matrixV();
  const Index d = a.rows();

  VectorXd diag = VectorXd::Ones(d);
  if ((u * v.transpose()).determinant() < 0.0) diag(d - 1) = -1.0;

  ProcrustesResult res;
  res.rotation = u * diag.asDiagonal() * v.transpose();
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(d - 1);
  res.degenerate = smin < 1e-10 * smax || smax == 0.0;
  return res;
}

ReparamResult optimal_reparam(const SrvCurve& s1, const SrvCurve& s2,
                              Index grid, Index coarse_shifts) {
  check_compatible(s1, s2);
  const Index n = s1.size();

  if (!s1.closed) {
    const Index g = default_grid(n, grid);
    DpOut dp = dp_search(s1, s2, g);
    ReparamResult res;
    res.warp.values = path_to_values(dp.path, g, n);
    res.cost = dp.cost;
    return res;
  }

  const SrvCurve a = opened(s1);
  const Index g = default_grid(n + 1, grid);

  auto evaluate = [&](Index k) {
    return dp_search(a, opened(apply_shift(s2, k)), g);
  };

  const Index coarse = std::min<Index>(std::max<Index>(coarse_shifts, 1), n);
  std::vector<Index> ks(static_cast<size_t>(coarse));
  for (Index j = 0; j < coarse; ++j) ks[size_t(j)] = j * n / coarse;

  Index best_j = 0;
  double best_cost = kInf;
  DpOut best_dp;
  for (Index j = 0; j < coarse; ++j) {
    DpOut dp = evaluate(ks[size_t(j)]);
    if (dp.cost < best_cost) {
      best_cost = dp.cost;
      best_dp = std::move(dp);
      best_j = j;
    }
  }
  Index best_k = ks[size_t(best_j)];

  // Every integer shift strictly inside the bracket around the winner.
  const Index lo = ks[size_t((best_j + coarse - 1) % coarse)];
  const Index hi = ks[size_t((best_j + 1) % coarse)];
  for (Index k = (lo + 1) % n; k != hi; k = (k + 1) % n) {
    if (k == best_k) continue;
    DpOut dp = evaluate(k);
    if (dp.cost < best_cost) {
      best_cost = dp.cost;
      best_dp = std::move(dp);
      best_k = k;
    }
  }

  ReparamResult res;
  VectorXd vals = path_to_values(best_dp.path, g, n + 1);
  res.warp.values = vals.head(n);
  res.shift = best_k;
  res.cost = best_cost;
  return res;
}

ShapeAlignment shape_distance(const DiscreteCurve& c0, const DiscreteCurve& c1,
                              const ShapeDistanceOptions& opts) {
  if (c0.size() != c1.size() || c0.dim() != c1.dim() ||
      c0.closed != c1.closed)
    throw ValidationError("shape mismatch between curves");
  const SrvCurve q1 = srv_transform(c0);
  const SrvCurve q2 = srv_transform(c1);
  const Index n = q1.size();
  const Index d = q1.dim();

  auto aligned = [&](const MatrixXd& r, const Warp& w, Index k) {
    return rotate_srv(apply_warp(apply_shift(q2, k), w), r);
  };

  ShapeAlignment best;
  best.rotation = MatrixXd::Identity(d, d);
  best.warp = identity_warp(n);
  if (q1.closed) best.warp.values = VectorXd::LinSpaced(n + 1, 0.0, 1.0).head(n);
  best.shift = 0;
  best.distance = l2_distance(q1, q2);

  MatrixXd rot = best.rotation;
  Warp warp = best.warp;
  Index shift = 0;
  bool degenerate = false;

  for (int round = 0; round < 20; ++round) {
    const double before = best.distance;

    if (opts.rotations) {
      const SrvCurve warped = aligned(MatrixXd::Identity(d, d), warp, shift);
      ProcrustesResult pr = optimal_rotation(q1, warped);
      rot = pr.rotation;
      degenerate = pr.degenerate;
      const double dist = l2_distance(q1, aligned(rot, warp, shift));
      if (dist < best.distance) {
        best.rotation = rot;
        best.warp = warp;
        best.shift = shift;
        best.distance = dist;
        best.degenerate_rotation = degenerate;
      }
    }

    if (opts.reparams) {
      ReparamResult rep = optimal_reparam(q1, rotate_srv(q2, rot), opts.grid,
                                          opts.shift_samples);
      warp = rep.warp;
      shift = rep.shift;
      const double dist = l2_distance(q1, aligned(rot, warp, shift));
      if (dist < best.distance) {
        best.rotation = rot;
        best.warp = warp;
        best.shift = shift;
        best.distance = dist;
        best.degenerate_rotation = degenerate;
      }
    }

    best.iterations = round + 1;
    if (!opts.rotations && !opts.reparams) break;
    if (before - best.distance < 1e-8) break;
  }
  return best;
}

}  // namespace elastica
