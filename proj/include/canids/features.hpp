#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "canids/can_frame.hpp"
#include "canids/dataset.hpp"
#include "canids/error.hpp"

namespace canids {

// Fixed 77-wide feature layout, all values in [0,1]:
//   [0..11)   identifier bits, MSB first
//   [11]      dlc / 8
//   [12..76)  payload bits, per byte MSB first, bytes beyond dlc are zero
//   [76]      inter-arrival time to the previous frame with the same id,
//             clamped to [0, cap] and divided by cap; 1.0 for the first
//             occurrence of an id
inline constexpr std::size_t kFeatureWidth = 77;
inline constexpr std::size_t kIdBitsOffset = 0;
inline constexpr std::size_t kDlcOffset = 11;
inline constexpr std::size_t kPayloadBitsOffset = 12;
inline constexpr std::size_t kIntervalOffset = 76;

inline constexpr double kDefaultIntervalCap = 1.0;  // seconds

// Writes one frame's features into out[0..77). interval is the raw seconds
// gap to the previous same-id frame, or a negative value for "never seen".
inline void encode_frame(const CanFrame& f, double interval,
                         double interval_cap, double* out) {
  for (int b = 0; b < 11; ++b)
    out[kIdBitsOffset + b] = double((f.can_id >> (10 - b)) & 1u);
  out[kDlcOffset] = double(f.dlc) / 8.0;
  for (int byte = 0; byte < 8; ++byte) {
    const std::uint8_t v = byte < f.dlc ? f.payload[byte] : 0;
    for (int b = 0; b < 8; ++b)
      out[kPayloadBitsOffset + byte * 8 + b] = double((v >> (7 - b)) & 1u);
  }
  double iv = interval < 0.0 ? interval_cap : interval;
  if (iv > interval_cap) iv = interval_cap;
  if (iv < 0.0) iv = 0.0;
  out[kIntervalOffset] = iv / interval_cap;
}

// Converts a time-ordered frame list into a Full-split dataset: one row per
// frame, in stream order. A pure fold over the stream: the only state is the
// last-seen timestamp per id.
inline Dataset extract_features(const std::vector<CanFrame>& frames,
                                const std::string& vehicle,
                                double interval_cap = kDefaultIntervalCap) {
  if (!(interval_cap > 0.0)) throw ConfigError("interval_cap must be > 0");
  Dataset d;
  d.vehicle = vehicle;
  d.split = Split::Full;
  d.features.resize(frames.size() * kFeatureWidth);
  d.labels.resize(frames.size());

  std::array<double, kMaxCanId + 1> last_seen;
  last_seen.fill(-1.0);
  double prev_t = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const CanFrame& f = frames[i];
    validate_frame(f);
    if (i > 0 && f.timestamp < prev_t)
      throw ContractError("frames must be sorted by timestamp (row " +
                          std::to_string(i) + ")");
    prev_t = f.timestamp;
    const double last = last_seen[f.can_id];
    const double interval = last < 0.0 ? -1.0 : f.timestamp - last;
    encode_frame(f, interval, interval_cap, &d.features[i * kFeatureWidth]);
    last_seen[f.can_id] = f.timestamp;
    d.labels[i] = f.label;
  }
  return d;
}

}  // namespace canids
