#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "canids/can_frame.hpp"
#include "canids/error.hpp"
#include "canids/rng.hpp"

namespace canids {

// One periodic sender on the synthetic bus: a fixed identifier repeating a
// fixed payload template at a fixed period.
struct NormalIdSpec {
  std::uint16_t can_id = 0;
  double period = 0.1;  // seconds between frames
  std::uint8_t dlc = 8;
  std::array<std::uint8_t, 8> payload_template{};
};

// Recipe for one vehicle's labeled traffic.
struct SynthProfile {
  std::string vehicle_name;
  std::vector<NormalIdSpec> normal_id_pool;
  std::array<double, 4> attack_mix{1.0, 0.0, 0.0, 0.0};  // by TrafficClass
  double duration = 10.0;  // seconds
  std::uint64_t rng_seed = 0;
  std::size_t malfunction_index = 0;  // pool entry targeted by malfunction
};

inline void validate_profile(const SynthProfile& p) {
  if (p.normal_id_pool.empty())
    throw ConfigError("profile '" + p.vehicle_name + "': empty id pool");
  double mix_sum = 0.0;
  for (double m : p.attack_mix) {
    if (!(m >= 0.0)) throw ConfigError("attack_mix fractions must be >= 0");
    mix_sum += m;
  }
  if (std::fabs(mix_sum - 1.0) > 1e-9)
    throw ConfigError("attack_mix must sum to 1");
  if (!(p.duration > 0.0)) throw ConfigError("duration must be > 0");
  for (const auto& e : p.normal_id_pool) {
    if (!(e.period > 0.0)) throw ConfigError("normal id periods must be > 0");
    if (e.can_id < 1 || e.can_id > kMaxCanId)
      throw ConfigError("pool ids must lie in [1, 2047]");
    if (e.dlc > kMaxDlc) throw ConfigError("pool dlc out of range");
  }
  if (p.malfunction_index >= p.normal_id_pool.size())
    throw ConfigError("malfunction_index outside the id pool");
  if (p.attack_mix[static_cast<int>(TrafficClass::Malfunction)] > 0.0 &&
      p.normal_id_pool[p.malfunction_index].dlc == 0)
    throw ConfigError("malfunction target id needs a non-empty payload");
}

namespace detail {

inline double min_pool_period(const SynthProfile& p) {
  double m = p.normal_id_pool.front().period;
  for (const auto& e : p.normal_id_pool) m = std::min(m, e.period);
  return m;
}

}  // namespace detail

// Generates one vehicle's frame list. Deterministic: equal profiles
// (including the seed) give bit-identical output.
//
// Traffic structure:
//  - Normal: each pool id fires at its period with a random phase and a
//    uniform +-5% of period jitter per frame.
//  - Flooding: one id-0 burst at inter-arrival <= 1/10 of the smallest pool
//    period (the highest-priority message wins arbitration).
//  - Fuzzy: frames at uniform times with uniform random id and payload.
//  - Malfunction: frames reusing the designated pool id with a payload that
//    differs from that id's template in at least one byte.
//
// Class counts follow attack_mix, anchored on the realized normal count.
inline std::vector<CanFrame> synthesize(const SynthProfile& profile) {
  validate_profile(profile);
  Rng rng(profile.rng_seed);
  std::vector<CanFrame> frames;

  const double mix_normal =
      profile.attack_mix[static_cast<int>(TrafficClass::Normal)];

  // Expected pool event count; anchors attack counts when no normal traffic
  // is requested.
  double expected_normal = 0.0;
  for (const auto& e : profile.normal_id_pool)
    expected_normal += std::floor(profile.duration / e.period);

  // Normal streams, pool order.
  std::size_t realized_normal = 0;
  if (mix_normal > 0.0) {
    for (const auto& e : profile.normal_id_pool) {
      const double phase = rng.uniform(0.0, e.period);
      for (std::size_t k = 0;; ++k) {
        const double jitter = rng.uniform(-0.05 * e.period, 0.05 * e.period);
        const double t = std::max(0.0, phase + double(k) * e.period + jitter);
        if (t >= profile.duration) break;
        CanFrame f;
        f.timestamp = t;
        f.can_id = e.can_id;
        f.dlc = e.dlc;
        f.payload = e.payload_template;
        f.label = TrafficClass::Normal;
        frames.push_back(f);
        ++realized_normal;
      }
    }
    if (realized_normal == 0)
      throw GenerationError("profile '" + profile.vehicle_name +
                            "': duration too short for any normal frame");
  }

  const double anchor_total = mix_normal > 0.0
                                  ? double(realized_normal) / mix_normal
                                  : expected_normal;
  std::array<std::size_t, 4> want{};
  want[0] = realized_normal;
  for (int c = 1; c < kNumClasses; ++c) {
    const double m = profile.attack_mix[c];
    want[c] = static_cast<std::size_t>(std::llround(anchor_total * m));
    if (m > 0.0 && want[c] == 0)
      throw GenerationError(
          std::string("profile '") + profile.vehicle_name + "': class " +
          traffic_class_name(static_cast<TrafficClass>(c)) +
          " would receive zero frames");
  }

  // Flooding: a contiguous id-0 burst.
  if (want[1] > 0) {
    const double dt_max = detail::min_pool_period(profile) / 10.0;
    double span = 0.0;
    std::vector<double> gaps(want[1]);
    for (auto& g : gaps) {
      g = dt_max * rng.uniform(0.5, 1.0);
      span += g;
    }
    const double start =
        span < profile.duration ? rng.uniform(0.0, profile.duration - span)
                                : 0.0;
    double t = start;
    for (std::size_t k = 0; k < want[1]; ++k) {
      t += gaps[k];
      CanFrame f;
      f.timestamp = t;
      f.can_id = 0;
      f.dlc = 8;
      f.label = TrafficClass::Flooding;
      frames.push_back(f);
    }
  }

  // Fuzzy: random ids, random payloads, uniform times.
  if (want[2] > 0) {
    std::vector<CanFrame> fuzzy(want[2]);
    for (auto& f : fuzzy) {
      f.timestamp = rng.uniform(0.0, profile.duration);
      f.can_id = static_cast<std::uint16_t>(rng.below(kMaxCanId + 1));
      f.dlc = 8;
      for (auto& b : f.payload)
        b = static_cast<std::uint8_t>(rng.below(256));
      f.label = TrafficClass::Fuzzy;
    }
    std::stable_sort(fuzzy.begin(), fuzzy.end(),
                     [](const CanFrame& a, const CanFrame& b) {
                       return a.timestamp < b.timestamp;
                     });
    frames.insert(frames.end(), fuzzy.begin(), fuzzy.end());
  }

  // Malfunction: designated id, payload forced off-template.
  if (want[3] > 0) {
    const auto& target = profile.normal_id_pool[profile.malfunction_index];
    std::vector<CanFrame> malf(want[3]);
    for (auto& f : malf) {
      f.timestamp = rng.uniform(0.0, profile.duration);
      f.can_id = target.can_id;
      f.dlc = target.dlc;
      do {
        for (int i = 0; i < target.dlc; ++i)
          f.payload[i] = static_cast<std::uint8_t>(rng.below(256));
      } while (std::equal(f.payload.begin(), f.payload.begin() + target.dlc,
                          target.payload_template.begin()));
      f.label = TrafficClass::Malfunction;
    }
    std::stable_sort(malf.begin(), malf.end(),
                     [](const CanFrame& a, const CanFrame& b) {
                       return a.timestamp < b.timestamp;
                     });
    frames.insert(frames.end(), malf.begin(), malf.end());
  }

  std::stable_sort(frames.begin(), frames.end(),
                   [](const CanFrame& a, const CanFrame& b) {
                     return a.timestamp < b.timestamp;
                   });
  return frames;
}

}  // namespace canids
