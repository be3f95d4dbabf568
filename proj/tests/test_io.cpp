#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "elastica/errors.hpp"
#include "elastica/io.hpp"
#include "elastica/srv.hpp"
#include "elastica/surfaces.hpp"
#include "oracles.hpp"

using namespace elastica;

namespace {

DiscreteCurve awkward_curve(Index n, Index dim, bool closed) {
  // values that exercise the full double width
  MatrixXd m(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < dim; ++j)
      m(i, j) = std::sin(double(i + 1) * M_PI / 7.0 + double(j)) / 3.0 +
                double(i) * 0.1;
  return DiscreteCurve(std::move(m), closed);
}

}  // namespace

TEST_CASE("curve json") {
  SUBCASE("round trips are bitwise for every supported dimension") {
    for (Index dim : {2, 3, 4, 6})
      for (bool closed : {false, true}) {
        const DiscreteCurve c = awkward_curve(9, dim, closed);
        const DiscreteCurve back = curve_from_json(curve_to_json(c));
        CHECK(back.closed == c.closed);
        REQUIRE(back.dim() == dim);
        CHECK((back.samples - c.samples).cwiseAbs().maxCoeff() == 0.0);
      }
  }
  SUBCASE("text shape") {
    const std::string text = curve_to_json(awkward_curve(3, 2, false));
    CHECK(text.front() == '{');
    CHECK(text.back() == '\n');
    CHECK(text.find("\"closed\": false") != std::string::npos);
    CHECK(text.find("\"dim\": 2") != std::string::npos);
    CHECK(text.find("\"samples\"") != std::string::npos);
  }
  SUBCASE("schema violations are named") {
    CHECK_THROWS_WITH_AS(curve_from_json("nonsense"), "invalid JSON",
                         ValidationError);
    CHECK_THROWS_WITH_AS(curve_from_json("[1,2,3]"),
                         "curve must be a JSON object", ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_json(R"({"closed": false, "samples": [[0,0],[1,0],[1,1]]})"),
        "missing integer 'dim'", ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_json(
            R"({"closed": false, "dim": 5,
                "samples": [[0,0,0,0,0],[1,0,0,0,0],[1,1,0,0,0]]})"),
        "curve dimension must be 2, 3, 4 or 6", ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_json(
            R"({"closed": false, "dim": 3, "samples": [[0,0],[1,0],[1,1]]})"),
        "samples do not match 'dim'", ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_json(R"({"closed": false, "dim": 2, "samples": [[0,0],[1,0]]})"),
        "curve must have at least 3 samples", ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_json(R"({"dim": 2, "samples": [[0,0],[1,0],[1,1]]})"),
        "missing boolean 'closed'", ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_json(
            R"({"closed": false, "dim": 2, "samples": [[0,"x"],[1,0],[1,1]]})"),
        "samples entries must be numbers", ValidationError);
  }
}

TEST_CASE("srv json") {
  SUBCASE("round trip is bitwise") {
    for (bool closed : {false, true}) {
      const SrvCurve s = srv_transform(awkward_curve(16, 2, closed));
      const SrvCurve back = srv_from_json(srv_to_json(s));
      CHECK(back.closed == s.closed);
      CHECK((back.q - s.q).cwiseAbs().maxCoeff() == 0.0);
      CHECK((back.basepoint - s.basepoint).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("schema violations") {
    const SrvCurve s = srv_transform(awkward_curve(8, 2, false));
    const std::string good = srv_to_json(s);
    CHECK_THROWS_WITH_AS(
        srv_from_json(curve_to_json(awkward_curve(8, 2, false))),
        "missing 'kind':'srv'", ValidationError);
    std::string broken = good;
    const size_t at = broken.find("\"basepoint\"");
    REQUIRE(at != std::string::npos);
    broken.replace(at, 11, "\"basepoInt\"");
    CHECK_THROWS_WITH_AS(srv_from_json(broken), "missing 'basepoint'",
                         ValidationError);
  }
}

TEST_CASE("sphere json") {
  SUBCASE("round trip with and without aux") {
    SphereCurve g = testsup::random_sphere_curve(5, 20);
    SphereCurve back = sphere_from_json(sphere_to_json(g));
    CHECK((back.points - g.points).cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(back.has_aux());

    g.aux = VectorXd::LinSpaced(20, 0.0, 1.4);
    back = sphere_from_json(sphere_to_json(g));
    REQUIRE(back.has_aux());
    CHECK((back.aux - g.aux).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sphere_to_json(g).find("\"dim\": \"S2\"") != std::string::npos);
  }
  SUBCASE("schema violations") {
    CHECK_THROWS_WITH_AS(
        sphere_from_json(R"({"dim": 2, "points": [[1,0,0],[0,1,0],[0,0,1]]})"),
        "missing 'dim':'S2'", ValidationError);
    CHECK_THROWS_WITH_AS(sphere_from_json(R"({"dim": "S2"})"),
                         "missing 'points'", ValidationError);
    CHECK_THROWS_WITH_AS(
        sphere_from_json(
            R"({"dim": "S2", "points": [[2,0,0],[0,1,0],[0,0,1]]})"),
        "sphere points must be unit vectors", ValidationError);
    CHECK_THROWS_WITH_AS(
        sphere_from_json(
            R"({"dim": "S2", "points": [[1,0],[0,1],[0,0]]})"),
        "sphere points must have 3 coordinates", ValidationError);
    CHECK_THROWS_WITH_AS(
        sphere_from_json(
            R"({"dim": "S2", "points": [[1,0,0],[0,1,0],[0,0,1]],
                "aux": [1,2]})"),
        "aux length differs from point count", ValidationError);
  }
}

TEST_CASE("surface json") {
  SUBCASE("tube round trip") {
    TubeSpec spec;
    spec.center = awkward_curve(10, 3, false);
    spec.radius =
        (0.1 + 0.02 * VectorXd::LinSpaced(10, 0.0, 1.0).array()).matrix();
    const std::string text = surface_to_json(spec);
    CHECK(text.find("\"class\": \"tube\"") != std::string::npos);
    const SurfaceSpec back = surface_from_json(text);
    REQUIRE(std::holds_alternative<TubeSpec>(back));
    const TubeSpec& t = std::get<TubeSpec>(back);
    CHECK((t.center.samples - spec.center.samples).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((t.radius - spec.radius).cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.center.closed == spec.center.closed);
  }
  SUBCASE("ruled round trip") {
    RuledSpec spec;
    spec.base = awkward_curve(8, 3, false);
    spec.ruling.resize(8, 3);
    for (Index i = 0; i < 8; ++i) {
      const double t = double(i) / 7.0;
      spec.ruling.row(i) =
          Eigen::RowVector3d(std::cos(t), std::sin(t), 0.0);
    }
    const std::string text = surface_to_json(spec);
    CHECK(text.find("\"class\": \"ruled\"") != std::string::npos);
    const SurfaceSpec back = surface_from_json(text);
    REQUIRE(std::holds_alternative<RuledSpec>(back));
    const RuledSpec& r = std::get<RuledSpec>(back);
    CHECK((r.base.samples - spec.base.samples).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.ruling - spec.ruling).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("strip round trip") {
    StripSpec spec;
    spec.base = testsup::random_sphere_curve(3, 12);
    spec.bandwidth = VectorXd::Constant(12, 0.25);
    const std::string text = surface_to_json(spec);
    CHECK(text.find("\"class\": \"strip\"") != std::string::npos);
    const SurfaceSpec back = surface_from_json(text);
    REQUIRE(std::holds_alternative<StripSpec>(back));
    const StripSpec& s = std::get<StripSpec>(back);
    CHECK((s.base.points - spec.base.points).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.bandwidth - spec.bandwidth).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("schema violations") {
    CHECK_THROWS_WITH_AS(surface_from_json(R"({"class": "cone"})"),
                         "unknown surface class 'cone'", ValidationError);
    CHECK_THROWS_WITH_AS(
        surface_from_json(R"({"class": "tube", "center":
            {"closed": false, "dim": 3,
             "samples": [[0,0,0],[1,0,0],[2,0,0]]}})"),
        "tube needs 'center' and 'radius'", ValidationError);
    CHECK_THROWS_WITH_AS(surface_from_json(R"({"kind": "x"})"),
                         "missing surface 'class'", ValidationError);
  }
}

TEST_CASE("curve csv") {
  SUBCASE("round trip is bitwise") {
    const DiscreteCurve c = awkward_curve(11, 3, true);
    const DiscreteCurve back = curve_from_csv(curve_to_csv(c), true);
    CHECK(back.closed);
    CHECK((back.samples - c.samples).cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(curve_from_csv(curve_to_csv(c), false).closed);
  }
  SUBCASE("format is one row per sample") {
    DiscreteCurve c;
    c.closed = false;
    c.samples.resize(3, 2);
    c.samples << 0, 0, 1, 0, 1, 0.5;
    CHECK(curve_to_csv(c) == "0,0\n1,0\n1,0.5\n");
  }
  SUBCASE("malformed inputs are rejected with line numbers") {
    try {
      curve_from_csv("0,0\n1,zzz\n2,0\n", false);
      FAIL_CHECK("expected a parse error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line 2: malformed number 'zzz'") !=
            std::string::npos);
    }
    try {
      curve_from_csv("0,0\n1,0,3\n2,0\n", false);
      FAIL_CHECK("expected a parse error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line 2: inconsistent column count") !=
            std::string::npos);
    }
    CHECK_THROWS_WITH_AS(curve_from_csv("0,0\n1,0\n", false),
                         "curve must have at least 3 samples",
                         ValidationError);
    CHECK_THROWS_WITH_AS(
        curve_from_csv("0,0,0,0,0\n1,0,0,0,0\n2,0,0,0,0\n", false),
        "curve dimension must be 2, 3, 4 or 6", ValidationError);
  }
}

TEST_CASE("files and extension dispatch") {
  const DiscreteCurve c = awkward_curve(7, 2, false);
  const std::string stem = "io_roundtrip_tmp";

  SUBCASE("text files round trip") {
    const std::string path = stem + ".txt";
    write_text_file(path, "alpha\nbeta\n");
    CHECK(read_text_file(path) == "alpha\nbeta\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("definitely_missing_file.json"),
                    ValidationError);
  }
  SUBCASE("load_curve picks the parser by extension") {
    const std::string jpath = stem + ".json";
    const std::string cpath = stem + ".csv";
    write_text_file(jpath, curve_to_json(c));
    write_text_file(cpath, curve_to_csv(c));
    const DiscreteCurve fromj = load_curve(jpath);
    const DiscreteCurve fromc = load_curve(cpath, true);
    CHECK((fromj.samples - c.samples).cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(fromj.closed);
    CHECK((fromc.samples - c.samples).cwiseAbs().maxCoeff() == 0.0);
    CHECK(fromc.closed);
    std::remove(jpath.c_str());
    std::remove(cpath.c_str());
  }
}
