#pragma once

#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/error.hpp"
#include "wavelab/frames.hpp"

namespace wavelab {

/// One received frame, stamped with time, receiver position and power.
struct CaptureRecord {
  double t = 0.0;
  std::optional<double> lat;
  std::optional<double> lon;
  double rssi_mw = 0.0;
  Frame frame;

  friend bool operator==(const CaptureRecord&, const CaptureRecord&) = default;
};

using Capture = std::vector<CaptureRecord>;

inline std::string capture_line(const CaptureRecord& r) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  if (r.lat) j["lat"] = *r.lat;
  if (r.lon) j["lon"] = *r.lon;
  j["rssi_mw"] = r.rssi_mw;
  j["frame_hex"] = encode_frame_hex(r.frame);
  return j.dump();
}

inline void write_capture(std::ostream& os, const Capture& records) {
  for (const auto& r : records) os << capture_line(r) << '\n';
}

inline std::string capture_to_string(const Capture& records) {
  std::ostringstream os;
  write_capture(os, records);
  return os.str();
}

/// Parses one JSON Lines record; throws ParseError on any defect.
inline CaptureRecord parse_capture_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("frame_hex") || !j["frame_hex"].is_string())
    throw Error(ErrorKind::ParseError, "record lacks frame_hex");
  CaptureRecord r;
  auto number = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) throw Error(ErrorKind::ParseError, std::string("non-numeric field ") + key);
    return j[key].get<double>();
  };
  r.t = number("t").value_or(0.0);
  r.lat = number("lat");
  r.lon = number("lon");
  r.rssi_mw = number("rssi_mw").value_or(0.0);
  try {
    r.frame = decode_frame_hex(j["frame_hex"].get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, std::string(kind_name(e.kind())) + ": " + e.detail());
  }
  return r;
}

struct IngestWarning {
  std::size_t line = 0;
  std::string detail;
};

/// Order-preserving JSON Lines reader. Tolerant mode skips malformed lines
/// and reports them; strict mode raises ParseError naming the line.
inline Capture read_capture(std::istream& is, bool strict = false, std::vector<IngestWarning>* warnings = nullptr) {
  Capture out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(parse_capture_line(line));
    } catch (const Error& e) {
      if (strict) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + e.detail());
      if (warnings) warnings->push_back({lineno, e.detail()});
    }
  }
  return out;
}

inline Capture ingest(const std::string& path, bool strict = false, std::vector<IngestWarning>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  return read_capture(in, strict, warnings);
}

}  // namespace wavelab
