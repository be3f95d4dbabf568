#pragma once

// Analytic plane-curve corpus shared by the unit and acceptance suites.
// Every case carries closed-form position/velocity/acceleration so tests can
// compare discrete pipelines against exact speed, speed derivative and
// curvature without trusting any library differencing.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "elastica/curve.hpp"

namespace testsup {

using elastica::DiscreteCurve;
using elastica::Index;

struct PlaneCase {
  std::string name;
  bool closed = true;
  std::function<Eigen::Vector2d(double)> c, dc, ddc;
};

// c(t) = a0 + sum_k ac[k-1] cos(2 pi k t) + as[k-1] sin(2 pi k t)
inline PlaneCase fourier_case(std::string name, Eigen::Vector2d a0,
                              std::vector<Eigen::Vector2d> ac,
                              std::vector<Eigen::Vector2d> as) {
  const double tau = 2.0 * M_PI;
  auto c = [=](double t) {
    Eigen::Vector2d p = a0;
    for (std::size_t k = 1; k <= ac.size(); ++k)
      p += ac[k - 1] * std::cos(tau * double(k) * t) +
           as[k - 1] * std::sin(tau * double(k) * t);
    return p;
  };
  auto dc = [=](double t) {
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    for (std::size_t k = 1; k <= ac.size(); ++k) {
      const double w = tau * double(k);
      p += -w * ac[k - 1] * std::sin(w * t) + w * as[k - 1] * std::cos(w * t);
    }
    return p;
  };
  auto ddc = [=](double t) {
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    for (std::size_t k = 1; k <= ac.size(); ++k) {
      const double w = tau * double(k);
      p += -w * w * (ac[k - 1] * std::cos(w * t) + as[k - 1] * std::sin(w * t));
    }
    return p;
  };
  return PlaneCase{std::move(name), true, c, dc, ddc};
}

inline PlaneCase circle_case() {
  return fourier_case("circle", {0, 0}, {{1, 0}}, {{0, 1}});
}

inline PlaneCase ellipse_case() {
  return fourier_case("ellipse", {0, 0}, {{2, 0}}, {{0, 1}});
}

inline PlaneCase doubled_circle_case() {
  return fourier_case("doubled_circle", {0, 0}, {{0, 0}, {1, 0}},
                      {{0, 0}, {0, 1}});
}

inline PlaneCase limacon_case() {
  // r(theta) = 1 + 0.5 cos(theta) expanded into harmonics
  return fourier_case("limacon", {0.25, 0}, {{1, 0}, {0.25, 0}},
                      {{0, 1}, {0, 0.25}});
}

// logarithmic spiral, open: c(t) = 0.4 * exp((0.9 + 3.5 i) t + 0.7 i)
inline PlaneCase spiral_case() {
  const std::complex<double> lam(0.9, 3.5);
  auto eval = [=](double t, int order) {
    std::complex<double> z =
        0.4 * std::exp(lam * t + std::complex<double>(0.0, 0.7));
    for (int k = 0; k < order; ++k) z *= lam;
    return Eigen::Vector2d(z.real(), z.imag());
  };
  PlaneCase pc;
  pc.name = "spiral";
  pc.closed = false;
  pc.c = [=](double t) { return eval(t, 0); };
  pc.dc = [=](double t) { return eval(t, 1); };
  pc.ddc = [=](double t) { return eval(t, 2); };
  return pc;
}

inline PlaneCase random_fourier_case(unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::Vector2d> ac{{1, 0}}, as{{0, 1}};
  for (int k = 2; k <= 5; ++k) {
    const double s = 0.22 / double(k * k);
    ac.push_back({s * gauss(rng), s * gauss(rng)});
    as.push_back({s * gauss(rng), s * gauss(rng)});
  }
  return fourier_case("fourier_" + std::to_string(seed), {0, 0}, ac, as);
}

inline const std::vector<PlaneCase>& plane_corpus() {
  static const std::vector<PlaneCase> cases = [] {
    std::vector<PlaneCase> v;
    v.push_back(circle_case());
    v.push_back(ellipse_case());
    v.push_back(doubled_circle_case());
    v.push_back(limacon_case());
    v.push_back(spiral_case());
    for (unsigned seed : {11u, 23u, 37u, 58u, 71u})
      v.push_back(random_fourier_case(seed));
    return v;
  }();
  return cases;
}

inline Eigen::VectorXd case_grid(const PlaneCase& pc, Index n) {
  Eigen::VectorXd t(n);
  const double dt = pc.closed ? 1.0 / double(n) : 1.0 / double(n - 1);
  for (Index i = 0; i < n; ++i) t[i] = double(i) * dt;
  return t;
}

inline DiscreteCurve sample_plane(const PlaneCase& pc, Index n) {
  DiscreteCurve c;
  c.closed = pc.closed;
  c.samples.resize(n, 2);
  const Eigen::VectorXd t = case_grid(pc, n);
  for (Index i = 0; i < n; ++i) c.samples.row(i) = pc.c(t[i]).transpose();
  return c;
}

inline Eigen::VectorXd analytic_speed(const PlaneCase& pc, Index n) {
  const Eigen::VectorXd t = case_grid(pc, n);
  Eigen::VectorXd w(n);
  for (Index i = 0; i < n; ++i) w[i] = pc.dc(t[i]).norm();
  return w;
}

inline Eigen::VectorXd analytic_speed_dot(const PlaneCase& pc, Index n) {
  const Eigen::VectorXd t = case_grid(pc, n);
  Eigen::VectorXd wd(n);
  for (Index i = 0; i < n; ++i) {
    const Eigen::Vector2d d = pc.dc(t[i]), dd = pc.ddc(t[i]);
    wd[i] = d.dot(dd) / d.norm();
  }
  return wd;
}

inline Eigen::VectorXd analytic_curvature(const PlaneCase& pc, Index n) {
  const Eigen::VectorXd t = case_grid(pc, n);
  Eigen::VectorXd k(n);
  for (Index i = 0; i < n; ++i) {
    const Eigen::Vector2d d = pc.dc(t[i]), dd = pc.ddc(t[i]);
    const double w = d.norm();
    k[i] = (d.x() * dd.y() - d.y() * dd.x()) / (w * w * w);
  }
  return k;
}

}  // namespace testsup
