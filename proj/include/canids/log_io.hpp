#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "canids/can_frame.hpp"
#include "canids/error.hpp"

namespace canids {

// Log line grammar (UTF-8, LF endings):
//
//   timestamp,hex_id,dlc,space-separated hex bytes,label
//
// e.g. "0.000000,0545,8,D8 00 00 8A 00 00 00 00,R". The payload field is
// empty when dlc is 0. Labels: R (normal), T_FLOOD, T_FUZZY, T_MALF.
// Lines starting with '#' are comments/headers and are skipped.

namespace detail {

inline double parse_double_field(std::string_view s, std::size_t line,
                                 const char* field) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError("not a number: '" + std::string(s) + "'", line, field);
  return v;
}

inline unsigned long parse_hex_field(std::string_view s, std::size_t line,
                                     const char* field) {
  unsigned long v = 0;
  if (s.empty())
    throw ParseError("empty hex value", line, field);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError("not a hex value: '" + std::string(s) + "'", line, field);
  return v;
}

inline unsigned long parse_uint_field(std::string_view s, std::size_t line,
                                      const char* field) {
  unsigned long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError("not an integer: '" + std::string(s) + "'", line, field);
  return v;
}

inline TrafficClass parse_label(std::string_view s, std::size_t line) {
  if (s == "R") return TrafficClass::Normal;
  if (s == "T_FLOOD") return TrafficClass::Flooding;
  if (s == "T_FUZZY") return TrafficClass::Fuzzy;
  if (s == "T_MALF") return TrafficClass::Malfunction;
  throw ParseError("unknown label '" + std::string(s) + "'", line, "label");
}

inline const char* label_text(TrafficClass c) {
  switch (c) {
    case TrafficClass::Normal: return "R";
    case TrafficClass::Flooding: return "T_FLOOD";
    case TrafficClass::Fuzzy: return "T_FUZZY";
    case TrafficClass::Malfunction: return "T_MALF";
  }
  return "R";
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

// Parses one log line (no trailing newline). line_no is for error messages.
inline CanFrame parse_log_line(std::string_view line, std::size_t line_no) {
  const auto fields = detail::split(line, ',');
  if (fields.size() != 5)
    throw ParseError("expected 5 comma-separated fields, got " +
                         std::to_string(fields.size()),
                     line_no);
  CanFrame f;
  f.timestamp = detail::parse_double_field(fields[0], line_no, "timestamp");
  if (!(std::isfinite(f.timestamp) && f.timestamp >= 0.0))
    throw ParseError("timestamp must be finite and non-negative", line_no,
                     "timestamp");
  const unsigned long id = detail::parse_hex_field(fields[1], line_no, "id");
  if (id > kMaxCanId)
    throw ParseError("id out of 11-bit range", line_no, "id");
  f.can_id = static_cast<std::uint16_t>(id);
  const unsigned long dlc = detail::parse_uint_field(fields[2], line_no, "dlc");
  if (dlc > kMaxDlc)
    throw ParseError("dlc out of range 0-8", line_no, "dlc");
  f.dlc = static_cast<std::uint8_t>(dlc);

  // payload: dlc space-separated hex bytes (empty for dlc=0)
  std::size_t count = 0;
  const std::string_view payload = fields[3];
  if (!payload.empty()) {
    for (const auto byte_text : detail::split(payload, ' ')) {
      const unsigned long b =
          detail::parse_hex_field(byte_text, line_no, "payload");
      if (b > 0xff)
        throw ParseError("payload byte out of range", line_no, "payload");
      if (count >= 8)
        throw ParseError("more than 8 payload bytes", line_no, "payload");
      f.payload[count++] = static_cast<std::uint8_t>(b);
    }
  }
  if (count != f.dlc)
    throw ParseError("dlc/payload length mismatch: dlc=" +
                         std::to_string(dlc) + " but " +
                         std::to_string(count) + " bytes",
                     line_no, "payload");
  f.label = detail::parse_label(fields[4], line_no);
  return f;
}

// Parses a whole log. Empty lines and '#' comment lines are skipped.
inline std::vector<CanFrame> parse_log(std::istream& in) {
  std::vector<CanFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    frames.push_back(parse_log_line(line, line_no));
  }
  if (in.bad()) throw IoError("stream error while reading log");
  return frames;
}

inline void write_log_line(const CanFrame& f, std::string& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f,%04X,%d,", f.timestamp,
                unsigned(f.can_id), int(f.dlc));
  out += buf;
  for (int i = 0; i < f.dlc; ++i) {
    std::snprintf(buf, sizeof buf, i + 1 < f.dlc ? "%02X " : "%02X",
                  unsigned(f.payload[i]));
    out += buf;
  }
  out += ',';
  out += detail::label_text(f.label);
  out += '\n';
}

// Writes frames so that parse_log reads back an equal list.
inline void write_log(const std::vector<CanFrame>& frames, std::ostream& out) {
  std::string text;
  text.reserve(frames.size() * 48);
  for (const auto& f : frames) {
    validate_frame(f);
    write_log_line(f, text);
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("stream error while writing log");
}

// Adapter for the published three-file-per-vehicle capture layout, where
// payload bytes are comma-separated and the flag column is R (regular) or
// T (injected). Each capture file holds one attack campaign, so the class
// assigned to 'T' rows is supplied by the caller:
//
//   1513409470.736550,0545,8,d8,00,00,8a,00,00,00,00,R
//
// Timestamps are rebased so the first frame starts at zero.
inline std::vector<CanFrame> parse_capture_csv(std::istream& in,
                                               TrafficClass injected_class) {
  std::vector<CanFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  double t0 = -1.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() < 4)
      throw ParseError("expected at least 4 fields", line_no);
    CanFrame f;
    f.timestamp = detail::parse_double_field(fields[0], line_no, "timestamp");
    const unsigned long id = detail::parse_hex_field(fields[1], line_no, "id");
    if (id > kMaxCanId)
      throw ParseError("id out of 11-bit range", line_no, "id");
    f.can_id = static_cast<std::uint16_t>(id);
    const unsigned long dlc =
        detail::parse_uint_field(fields[2], line_no, "dlc");
    if (dlc > kMaxDlc)
      throw ParseError("dlc out of range 0-8", line_no, "dlc");
    f.dlc = static_cast<std::uint8_t>(dlc);
    if (fields.size() != 4 + dlc)
      throw ParseError("expected " + std::to_string(4 + dlc) +
                           " fields for dlc=" + std::to_string(dlc),
                       line_no, "payload");
    for (unsigned long i = 0; i < dlc; ++i) {
      const unsigned long b =
          detail::parse_hex_field(fields[3 + i], line_no, "payload");
      if (b > 0xff)
        throw ParseError("payload byte out of range", line_no, "payload");
      f.payload[i] = static_cast<std::uint8_t>(b);
    }
    const std::string_view flag = fields[3 + dlc];
    if (flag == "R")
      f.label = TrafficClass::Normal;
    else if (flag == "T")
      f.label = injected_class;
    else
      throw ParseError("unknown flag '" + std::string(flag) + "'", line_no,
                       "flag");
    if (t0 < 0.0) t0 = f.timestamp;
    f.timestamp -= t0;
    if (!(std::isfinite(f.timestamp) && f.timestamp >= 0.0))
      throw ParseError("timestamps must be non-decreasing from the first row",
                       line_no, "timestamp");
    frames.push_back(f);
  }
  if (in.bad()) throw IoError("stream error while reading capture");
  return frames;
}

}  // namespace canids
