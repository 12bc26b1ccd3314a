#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "canids/error.hpp"

namespace canids {

// The four traffic classes. The integer encoding is fixed and shared by
// every module, the on-disk containers, and the metric tables.
enum class TrafficClass : std::uint8_t {
  Normal = 0,
  Flooding = 1,
  Fuzzy = 2,
  Malfunction = 3,
};

inline constexpr int kNumClasses = 4;

inline const char* traffic_class_name(TrafficClass c) {
  switch (c) {
    case TrafficClass::Normal: return "normal";
    case TrafficClass::Flooding: return "flooding";
    case TrafficClass::Fuzzy: return "fuzzy";
    case TrafficClass::Malfunction: return "malfunction";
  }
  return "?";
}

// One timestamped CAN packet in base-frame (11-bit identifier) format.
struct CanFrame {
  double timestamp = 0.0;  // seconds since capture start
  std::uint16_t can_id = 0;
  std::uint8_t dlc = 0;
  std::array<std::uint8_t, 8> payload{};  // first dlc bytes are meaningful
  TrafficClass label = TrafficClass::Normal;

  bool operator==(const CanFrame& o) const {
    if (timestamp != o.timestamp || can_id != o.can_id || dlc != o.dlc ||
        label != o.label)
      return false;
    for (int i = 0; i < dlc; ++i)
      if (payload[i] != o.payload[i]) return false;
    return true;
  }
};

inline constexpr std::uint16_t kMaxCanId = 2047;  // 11-bit base frame
inline constexpr int kMaxDlc = 8;

// Throws ContractError if the frame violates a domain invariant.
inline void validate_frame(const CanFrame& f) {
  if (!(std::isfinite(f.timestamp) && f.timestamp >= 0.0))
    throw ContractError("frame timestamp must be finite and non-negative");
  if (f.can_id > kMaxCanId)
    throw ContractError("can_id " + std::to_string(f.can_id) +
                        " exceeds the 11-bit range");
  if (f.dlc > kMaxDlc)
    throw ContractError("dlc " + std::to_string(int(f.dlc)) + " exceeds 8");
}

}  // namespace canids
