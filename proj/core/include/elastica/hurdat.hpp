#ifndef ELASTICA_HURDAT_HPP
#define ELASTICA_HURDAT_HPP

#include <optional>
#include <string>
#include <vector>

#include "elastica/homogeneous.hpp"

namespace elastica {

/// One best-track fix. Missing values (wind -99, pressure -999 in the file)
/// are represented as empty optionals.
struct StormFix {
  long long timestamp = 0;  // YYYYMMDDHHMM
  std::string record_id;    // e.g. "L" for landfall, often empty
  std::string status;       // e.g. "HU", "TS"
  double lat = 0;           // degrees, south negative
  double lon = 0;           // degrees in (-180, 180], west negative
  std::optional<int> maxwind;   // knots
  std::optional<int> pressure;  // millibars
};

struct StormRecord {
  std::string id;    // e.g. "AL092010"
  std::string name;  // e.g. "KARL"
  std::vector<StormFix> fixes;

  int year() const;  // of the first fix
  /// Peak maxwind across fixes; empty when no fix carries a wind.
  std::optional<int> peak_wind() const;
};

/// Parses HURDAT2 text (header lines followed by the declared number of data
/// lines). Throws ValidationError naming the offending line on count
/// mismatches, malformed coordinates, or non-monotone timestamps.
std::vector<StormRecord> parse_hurdat2(const std::string& text);

/// Canonical fixed-width layout; parse(serialize(r)) == r and
/// serialize(parse(serialize(r))) == serialize(r).
std::string serialize_hurdat2(const std::vector<StormRecord>& records);

struct TrackOptions {
  Index n = 0;               // resample target; 0 keeps the merged fixes
  double lambda_w = 0.01;    // radians per knot for the aux channel
  bool interpolate_missing_wind = false;
};

/// Unit-sphere trajectory with aux_i = lambda_w * maxwind_i. Fixes without
/// wind are dropped (or filled linearly between valid neighbors when the
/// flag is set), consecutive duplicate positions are merged, and the result
/// is resampled to n samples by chordal interpolation pushed back to the
/// sphere. Throws "track too short" under 3 usable fixes.
SphereCurve track_to_curve(const StormRecord& s, const TrackOptions& opts = {});

/// Saffir-Simpson thresholds in knots for categories 1..5.
int category_threshold(int category);

/// Storms whose first-fix year lies in [year_lo, year_hi] and whose peak
/// wind reaches min_category (0 = no wind requirement).
std::vector<StormRecord> filter_storms(const std::vector<StormRecord>& records,
                                       int year_lo, int year_hi,
                                       int min_category);

}  // namespace elastica

#endif
