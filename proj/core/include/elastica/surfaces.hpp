#ifndef ELASTICA_SURFACES_HPP
#define ELASTICA_SURFACES_HPP

#include <iosfwd>
#include <variant>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/homogeneous.hpp"

namespace elastica {

/// Tube around a center curve: circles of per-sample radius in the normal
/// plane.
struct TubeSpec {
  DiscreteCurve center;  // R^3
  VectorXd radius;       // > 0, length N
};

/// Ruled surface: base curve plus a unit ruling direction per sample.
struct RuledSpec {
  DiscreteCurve base;  // R^3
  MatrixXd ruling;     // N x 3, unit rows
};

/// Spherical strip: sphere base curve offset along its binormal up to a
/// per-sample bandwidth (radians, in (0, pi/2)).
struct StripSpec {
  SphereCurve base;
  VectorXd bandwidth;
};

struct Mesh {
  MatrixXd vertices;       // V x 3
  Eigen::MatrixXi faces;   // F x 3, zero-based
};

/// (gamma_i, mu * r_i) as a curve in R^4. The weight mu sets how strongly
/// the radius channel counts in curve comparisons.
DiscreteCurve tube_encode(const TubeSpec& spec, double mu = 1.0);

/// Splits the channels back; throws "invalid tube state" when the radius
/// channel is nonpositive anywhere.
TubeSpec tube_decode(const DiscreteCurve& c, double mu = 1.0);

/// Vertices gamma_i + r_i (N_i cos s + B_i sin s) on circle_samples values
/// of s, stitched into triangles; wraps in s always and in t when the
/// center is closed.
Mesh tube_mesh(const TubeSpec& spec, Index circle_samples);

/// (gamma_i, nu * v_i) as a curve in R^6.
DiscreteCurve ruled_encode(const RuledSpec& spec, double nu = 1.0);

struct RuledDecode {
  RuledSpec spec;
  double max_correction = 0;  // largest | |v| - 1 | before renormalizing
  bool corrected = false;     // max_correction > 1e-3
};

/// Splits channels and renormalizes the ruling back to unit length (flat
/// geodesics leave the constraint); the deviation is reported, not hidden.
RuledDecode ruled_decode(const DiscreteCurve& c, double nu = 1.0);

/// Vertices gamma_i + s_j v_i, s_j uniform on [0,1].
Mesh ruled_mesh(const RuledSpec& spec, Index s_samples);

/// Vertices exp_gamma(s_j r_i B_i) with B = normalize(gamma x T); all on the
/// unit sphere.
Mesh strip_mesh(const StripSpec& spec, Index s_samples);

using SurfaceSpec = std::variant<TubeSpec, RuledSpec, StripSpec>;

/// Meshes any spec; cross_samples subdivides the circle (tube) or the
/// ruling/offset direction (ruled, strip).
Mesh surface_mesh(const SurfaceSpec& spec, Index cross_samples);

struct SurfaceGeodesicOptions {
  Index steps = 8;
  Index cross_samples = 24;
  double mu = 1.0;      // tube radius weight
  double nu = 1.0;      // ruling weight
  double lambda = 1.0;  // strip bandwidth weight
  bool prealign = false;  // rotate b's spatial part onto a's before the path
};

struct SurfaceGeodesic {
  std::vector<SurfaceSpec> specs;
  std::vector<Mesh> meshes;
};

/// Geodesic between same-class surfaces, through the flat R^4/R^6 chart for
/// tubes and ruled surfaces and through the sphere pipeline with the
/// bandwidth as aux channel for strips. Pre-alignment, when requested,
/// rotates only the spatial block (strips are left as given).
SurfaceGeodesic surface_geodesic(const SurfaceSpec& a, const SurfaceSpec& b,
                                 const SurfaceGeodesicOptions& opts = {});

/// ASCII OBJ with 1-based indices.
void write_obj(const Mesh& mesh, std::ostream& out);

}  // namespace elastica

#endif
