#ifndef ELASTICA_IO_HPP
#define ELASTICA_IO_HPP

#include <string>

#include "elastica/homogeneous.hpp"
#include "elastica/srv.hpp"
#include "elastica/surfaces.hpp"

namespace elastica {

// JSON schemas. Curves: {"closed": bool, "dim": d, "samples": [[...],...]}
// with d in {2,3,4,6}. SRV curves add "kind":"srv" and "basepoint". Sphere
// curves: {"dim":"S2", "points":[[x,y,z],...]} with optional "aux". Surface
// specs carry "class": "tube" | "ruled" | "strip" plus their channels.
// All readers throw ValidationError on schema violations.

std::string curve_to_json(const DiscreteCurve& c);
DiscreteCurve curve_from_json(const std::string& text);

std::string srv_to_json(const SrvCurve& s);
SrvCurve srv_from_json(const std::string& text);

std::string sphere_to_json(const SphereCurve& g);
SphereCurve sphere_from_json(const std::string& text);

std::string surface_to_json(const SurfaceSpec& spec);
SurfaceSpec surface_from_json(const std::string& text);

/// CSV with one point per row; the format carries no closed flag, so the
/// caller supplies it.
std::string curve_to_csv(const DiscreteCurve& c);
DiscreteCurve curve_from_csv(const std::string& text, bool closed);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Loads a curve from a .json or .csv file by extension.
DiscreteCurve load_curve(const std::string& path, bool csv_closed = false);

}  // namespace elastica

#endif
