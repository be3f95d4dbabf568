#include "elastica/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("invalid JSON");
  return j;
}

void check_dim(Index d) {
  if (d != 2 && d != 3 && d != 4 && d != 6)
    throw ValidationError("curve dimension must be 2, 3, 4 or 6");
}

MatrixXd matrix_from_json(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty())
    throw ValidationError(std::string(what) + " must be a nonempty array");
  const size_t n = rows.size();
  size_t d = 0;
  MatrixXd m;
  for (size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array())
      throw ValidationError(std::string(what) + " rows must be arrays");
    if (i == 0) {
      d = row.size();
      if (d == 0)
        throw ValidationError(std::string(what) + " rows must be nonempty");
      m.resize(Index(n), Index(d));
    }
    if (row.size() != d)
      throw ValidationError(std::string(what) + " rows have unequal lengths");
    for (size_t k = 0; k < d; ++k) {
      if (!row[k].is_number())
        throw ValidationError(std::string(what) + " entries must be numbers");
      m(Index(i), Index(k)) = row[k].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

VectorXd vector_from_json(const json& arr, const char* what) {
  if (!arr.is_array())
    throw ValidationError(std::string(what) + " must be an array");
  VectorXd v(Index(arr.size()));
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ValidationError(std::string(what) + " entries must be numbers");
    v(Index(i)) = arr[i].get<double>();
  }
  return v;
}

json vector_to_json(const VectorXd& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

bool get_closed(const json& j) {
  if (!j.contains("closed") || !j["closed"].is_boolean())
    throw ValidationError("missing boolean 'closed'");
  return j["closed"].get<bool>();
}

DiscreteCurve curve_from_object(const json& j) {
  if (!j.is_object()) throw ValidationError("curve must be a JSON object");
  const bool closed = get_closed(j);
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ValidationError("missing integer 'dim'");
  const Index dim = j["dim"].get<Index>();
  check_dim(dim);
  if (!j.contains("samples"))
    throw ValidationError("missing 'samples'");
  MatrixXd samples = matrix_from_json(j["samples"], "samples");
  if (samples.cols() != dim)
    throw ValidationError("samples do not match 'dim'");
  if (samples.rows() < 3)
    throw ValidationError("curve must have at least 3 samples");
  return DiscreteCurve(std::move(samples), closed);
}

json curve_to_object(const DiscreteCurve& c) {
  json j;
  j["closed"] = c.closed;
  j["dim"] = c.dim();
  j["samples"] = matrix_to_json(c.samples);
  return j;
}

}  // namespace

std::string curve_to_json(const DiscreteCurve& c) {
  return curve_to_object(c).dump(2) + "\n";
}

DiscreteCurve curve_from_json(const std::string& text) {
  return curve_from_object(parse_json(text));
}

std::string srv_to_json(const SrvCurve& s) {
  json j;
  j["kind"] = "srv";
  j["closed"] = s.closed;
  j["dim"] = s.dim();
  j["samples"] = matrix_to_json(s.q);
  j["basepoint"] = vector_to_json(s.basepoint.transpose());
  return j.dump(2) + "\n";
}

SrvCurve srv_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("kind") || j["kind"] != "srv")
    throw ValidationError("missing 'kind':'srv'");
  const DiscreteCurve c = curve_from_object(j);
  if (!j.contains("basepoint"))
    throw ValidationError("missing 'basepoint'");
  const VectorXd bp = vector_from_json(j["basepoint"], "basepoint");
  if (bp.size() != c.dim())
    throw ValidationError("basepoint does not match 'dim'");
  SrvCurve s;
  s.q = c.samples;
  s.basepoint = bp.transpose();
  s.closed = c.closed;
  return s;
}

std::string sphere_to_json(const SphereCurve& g) {
  json j;
  j["dim"] = "S2";
  j["points"] = matrix_to_json(g.points);
  if (g.has_aux()) j["aux"] = vector_to_json(g.aux);
  return j.dump(2) + "\n";
}

SphereCurve sphere_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("dim") || j["dim"] != "S2")
    throw ValidationError("missing 'dim':'S2'");
  if (!j.contains("points")) throw ValidationError("missing 'points'");
  SphereCurve g;
  g.points = matrix_from_json(j["points"], "points");
  if (g.points.cols() != 3)
    throw ValidationError("sphere points must have 3 coordinates");
  for (Index i = 0; i < g.points.rows(); ++i)
    if (std::abs(g.points.row(i).norm() - 1.0) > 1e-8)
      throw ValidationError("sphere points must be unit vectors");
  if (j.contains("aux")) {
    g.aux = vector_from_json(j["aux"], "aux");
    if (g.aux.size() != g.points.rows())
      throw ValidationError("aux length differs from point count");
  }
  return g;
}

std::string surface_to_json(const SurfaceSpec& spec) {
  json j;
  if (std::holds_alternative<TubeSpec>(spec)) {
    const TubeSpec& t = std::get<TubeSpec>(spec);
    j["class"] = "tube";
    j["closed"] = t.center.closed;
    j["center"] = matrix_to_json(t.center.samples);
    j["radius"] = vector_to_json(t.radius);
  } else if (std::holds_alternative<RuledSpec>(spec)) {
    const RuledSpec& r = std::get<RuledSpec>(spec);
    j["class"] = "ruled";
    j["closed"] = r.base.closed;
    j["base"] = matrix_to_json(r.base.samples);
    j["ruling"] = matrix_to_json(r.ruling);
  } else {
    const StripSpec& s = std::get<StripSpec>(spec);
    j["class"] = "strip";
    j["points"] = matrix_to_json(s.base.points);
    j["bandwidth"] = vector_to_json(s.bandwidth);
  }
  return j.dump(2) + "\n";
}

SurfaceSpec surface_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("class") || !j["class"].is_string())
    throw ValidationError("missing surface 'class'");
  const std::string cls = j["class"].get<std::string>();

  if (cls == "tube") {
    if (!j.contains("center") || !j.contains("radius"))
      throw ValidationError("tube needs 'center' and 'radius'");
    TubeSpec t;
    t.center = DiscreteCurve(matrix_from_json(j["center"], "center"),
                             get_closed(j));
    if (t.center.dim() != 3)
      throw ValidationError("tube center must have 3 coordinates");
    t.radius = vector_from_json(j["radius"], "radius");
    if (t.radius.size() != t.center.size())
      throw ValidationError("radius length differs from center sample count");
    return t;
  }
  if (cls == "ruled") {
    if (!j.contains("base") || !j.contains("ruling"))
      throw ValidationError("ruled surface needs 'base' and 'ruling'");
    RuledSpec r;
    r.base = DiscreteCurve(matrix_from_json(j["base"], "base"), get_closed(j));
    if (r.base.dim() != 3)
      throw ValidationError("ruled base must have 3 coordinates");
    r.ruling = matrix_from_json(j["ruling"], "ruling");
    if (r.ruling.rows() != r.base.size() || r.ruling.cols() != 3)
      throw ValidationError("ruling shape differs from base sample count");
    return r;
  }
  if (cls == "strip") {
    if (!j.contains("points") || !j.contains("bandwidth"))
      throw ValidationError("strip needs 'points' and 'bandwidth'");
    StripSpec s;
    s.base.points = matrix_from_json(j["points"], "points");
    if (s.base.points.cols() != 3)
      throw ValidationError("strip points must have 3 coordinates");
    s.bandwidth = vector_from_json(j["bandwidth"], "bandwidth");
    if (s.bandwidth.size() != s.base.points.rows())
      throw ValidationError("bandwidth length differs from point count");
    return s;
  }
  throw ValidationError("unknown surface class '" + cls + "'");
}

std::string curve_to_csv(const DiscreteCurve& c) {
  std::ostringstream out;
  out.precision(17);
  for (Index i = 0; i < c.size(); ++i) {
    for (Index j = 0; j < c.dim(); ++j) {
      if (j > 0) out << ',';
      out << c.samples(i, j);
    }
    out << '\n';
  }
  return out.str();
}

DiscreteCurve curve_from_csv(const std::string& text, bool closed) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (...) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": malformed number '" + field + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError("line " + std::to_string(line_no) +
                            ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 3)
    throw ValidationError("curve must have at least 3 samples");
  check_dim(Index(rows.front().size()));

  MatrixXd samples(Index(rows.size()), Index(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      samples(Index(i), Index(j)) = rows[i][j];
  return DiscreteCurve(std::move(samples), closed);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file '" + path + "'");
  out << content;
}

DiscreteCurve load_curve(const std::string& path, bool csv_closed) {
  const std::string text = read_text_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return curve_from_csv(text, csv_closed);
  return curve_from_json(text);
}

}  // namespace elastica
