#include "elastica/hurdat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  const std::string tail = trim(cur);
  if (!tail.empty()) out.push_back(tail);
  return out;
}

[[noreturn]] void fail(size_t line_no, const std::string& what) {
  throw ValidationError("line " + std::to_string(line_no) + ": " + what);
}

long long parse_int(const std::string& s, size_t line_no,
                    const std::string& what) {
  try {
    size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) fail(line_no, "malformed " + what + " '" + s + "'");
    return v;
  } catch (const ValidationError&) {
    throw;
  } catch (...) {
    fail(line_no, "malformed " + what + " '" + s + "'");
  }
}

double parse_coordinate(const std::string& s, bool is_lat, size_t line_no) {
  if (s.size() < 2) fail(line_no, "malformed coordinate '" + s + "'");
  const char suffix = s.back();
  double sign = 0.0;
  if (is_lat && suffix == 'N') sign = 1.0;
  if (is_lat && suffix == 'S') sign = -1.0;
  if (!is_lat && suffix == 'E') sign = 1.0;
  if (!is_lat && suffix == 'W') sign = -1.0;
  if (sign == 0.0) fail(line_no, "malformed coordinate '" + s + "'");
  double value = 0.0;
  try {
    size_t used = 0;
    value = std::stod(s.substr(0, s.size() - 1), &used);
    if (used != s.size() - 1)
      fail(line_no, "malformed coordinate '" + s + "'");
  } catch (const ValidationError&) {
    throw;
  } catch (...) {
    fail(line_no, "malformed coordinate '" + s + "'");
  }
  value *= sign;
  if (is_lat) {
    if (value < -90.0 || value > 90.0)
      fail(line_no, "latitude out of range '" + s + "'");
    return value;
  }
  while (value <= -180.0) value += 360.0;
  while (value > 180.0) value -= 360.0;
  return value;
}

std::string format_coordinate(double value, bool is_lat) {
  const char pos = is_lat ? 'N' : 'E';
  const char neg = is_lat ? 'S' : 'W';
  const char suffix = value < 0.0 ? neg : pos;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%c", std::abs(value), suffix);
  return buf;
}

std::string rjust(const std::string& s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

int StormRecord::year() const {
  if (fixes.empty()) return 0;
  return int(fixes.front().timestamp / 100000000LL);
}

std::optional<int> StormRecord::peak_wind() const {
  std::optional<int> peak;
  for (const StormFix& f : fixes)
    if (f.maxwind && (!peak || *f.maxwind > *peak)) peak = *f.maxwind;
  return peak;
}

std::vector<StormRecord> parse_hurdat2(const std::string& text) {
  std::vector<StormRecord> records;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;

    const std::vector<std::string> head = split_fields(line);
    if (head.size() < 3) fail(line_no, "malformed header '" + trim(line) + "'");
    StormRecord rec;
    rec.id = head[0];
    rec.name = head[1];
    const long long count = parse_int(head[2], line_no, "fix count");
    if (count < 0) fail(line_no, "negative fix count");

    const size_t header_line = line_no;
    for (long long k = 0; k < count; ++k) {
      if (!std::getline(in, line)) {
        fail(header_line, "storm " + rec.id + " declares " +
                              std::to_string(count) + " fixes but the file ends after " +
                              std::to_string(k));
      }
      ++line_no;
      const std::vector<std::string> f = split_fields(line);
      if (f.size() < 7) fail(line_no, "too few fields in data line");

      StormFix fix;
      const long long date = parse_int(f[0], line_no, "date");
      const long long time = parse_int(f[1], line_no, "time");
      fix.timestamp = date * 10000 + time;
      fix.record_id = f[2];
      fix.status = f[3];
      fix.lat = parse_coordinate(f[4], true, line_no);
      fix.lon = parse_coordinate(f[5], false, line_no);
      const long long wind = parse_int(f[6], line_no, "maxwind");
      if (wind >= 0) fix.maxwind = int(wind);
      if (f.size() > 7) {
        const long long pressure = parse_int(f[7], line_no, "pressure");
        if (pressure >= 0) fix.pressure = int(pressure);
      }
      if (!rec.fixes.empty() && fix.timestamp < rec.fixes.back().timestamp)
        fail(line_no, "non-monotone timestamp");
      rec.fixes.push_back(std::move(fix));
    }

    // A line that parses as another storm's data here means the declared
    // count was too small.
    records.push_back(std::move(rec));
  }
  return records;
}

std::string serialize_hurdat2(const std::vector<StormRecord>& records) {
  std::string out;
  for (const StormRecord& rec : records) {
    out += rec.id + ',' + rjust(rec.name, 16) + ',' +
           rjust(std::to_string(rec.fixes.size()), 7) + ",\n";
    for (const StormFix& f : rec.fixes) {
      char date[24], time[24];
      std::snprintf(date, sizeof(date), "%08lld", f.timestamp / 10000);
      std::snprintf(time, sizeof(time), "%04lld", f.timestamp % 10000);
      out += std::string(date) + ',' + rjust(time, 5) + ',' +
             rjust(f.record_id, 2) + ',' + rjust(f.status, 3) + ',' +
             rjust(format_coordinate(f.lat, true), 6) + ',' +
             rjust(format_coordinate(f.lon, false), 7) + ',' +
             rjust(f.maxwind ? std::to_string(*f.maxwind) : "-99", 4) + ',' +
             rjust(f.pressure ? std::to_string(*f.pressure) : "-999", 5) +
             ",\n";
    }
  }
  return out;
}

SphereCurve track_to_curve(const StormRecord& s, const TrackOptions& opts) {
  std::vector<double> lat, lon, wind;
  if (opts.interpolate_missing_wind) {
    // Fill gaps linearly in fix index between valid neighbors; fixes before
    // the first or after the last valid wind stay missing.
    std::vector<std::optional<double>> filled(s.fixes.size());
    for (size_t i = 0; i < s.fixes.size(); ++i)
      if (s.fixes[i].maxwind) filled[i] = double(*s.fixes[i].maxwind);
    size_t prev = size_t(-1);
    for (size_t i = 0; i < filled.size(); ++i) {
      if (!filled[i]) continue;
      if (prev != size_t(-1) && i > prev + 1) {
        for (size_t j = prev + 1; j < i; ++j) {
          const double f = double(j - prev) / double(i - prev);
          filled[j] = (1.0 - f) * *filled[prev] + f * *filled[i];
        }
      }
      prev = i;
    }
    for (size_t i = 0; i < s.fixes.size(); ++i) {
      if (!filled[i]) continue;
      lat.push_back(s.fixes[i].lat);
      lon.push_back(s.fixes[i].lon);
      wind.push_back(*filled[i]);
    }
  } else {
    for (const StormFix& f : s.fixes) {
      if (!f.maxwind) continue;
      lat.push_back(f.lat);
      lon.push_back(f.lon);
      wind.push_back(double(*f.maxwind));
    }
  }

  // Merge runs of identical positions, keeping the first fix of each run.
  std::vector<size_t> keep;
  for (size_t i = 0; i < lat.size(); ++i)
    if (i == 0 || lat[i] != lat[i - 1] || lon[i] != lon[i - 1])
      keep.push_back(i);

  if (keep.size() < 3) throw ValidationError("track too short");

  SphereCurve g;
  g.points.resize(Index(keep.size()), 3);
  g.aux.resize(Index(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) {
    const double phi = lat[keep[k]] * kDegToRad;
    const double lam = lon[keep[k]] * kDegToRad;
    g.points.row(Index(k)) << std::cos(phi) * std::cos(lam),
        std::cos(phi) * std::sin(lam), std::sin(phi);
    g.aux(Index(k)) = opts.lambda_w * wind[keep[k]];
  }

  if (opts.n <= 0 || opts.n == g.size()) return g;

  // Chordal arc-length resampling, pushed back to the sphere.
  const Index n = g.size();
  VectorXd cum(n);
  cum(0) = 0.0;
  for (Index i = 0; i + 1 < n; ++i)
    cum(i + 1) = cum(i) + (g.points.row(i + 1) - g.points.row(i)).norm();
  const double total = cum(n - 1);
  if (total <= 0.0) throw ValidationError("track too short");

  SphereCurve out;
  out.points.resize(opts.n, 3);
  out.aux.resize(opts.n);
  Index seg = 0;
  for (Index k = 0; k < opts.n; ++k) {
    const double t = total * double(k) / double(opts.n - 1);
    while (seg + 2 < n && cum(seg + 1) < t) ++seg;
    const double len = cum(seg + 1) - cum(seg);
    const double f = len > 0.0 ? (t - cum(seg)) / len : 0.0;
    const Eigen::RowVector3d p =
        (1.0 - f) * g.points.row(seg) + f * g.points.row(seg + 1);
    out.points.row(k) = p.normalized();
    out.aux(k) = (1.0 - f) * g.aux(seg) + f * g.aux(seg + 1);
  }
  out.points.row(opts.n - 1) = g.points.row(n - 1);
  out.aux(opts.n - 1) = g.aux(n - 1);
  return out;
}

int category_threshold(int category) {
  switch (category) {
    case 1: return 64;
    case 2: return 83;
    case 3: return 96;
    case 4: return 113;
    case 5: return 137;
    default: throw ValidationError("category must be 1..5");
  }
}

std::vector<StormRecord> filter_storms(const std::vector<StormRecord>& records,
                                       int year_lo, int year_hi,
                                       int min_category) {
  std::vector<StormRecord> out;
  for (const StormRecord& rec : records) {
    const int y = rec.year();
    if (y < year_lo || y > year_hi) continue;
    if (min_category > 0) {
      const std::optional<int> peak = rec.peak_wind();
      if (!peak || *peak < category_threshold(min_category)) continue;
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace elastica
