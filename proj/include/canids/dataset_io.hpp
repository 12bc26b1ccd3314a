#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "canids/binary_io.hpp"
#include "canids/dataset.hpp"
#include "canids/error.hpp"

namespace canids {

// Dataset container, format version 1.
//
//   bytes 0..7   magic "CANIDSDS"
//   u32          container version (1)
//   u32+bytes    header JSON: vehicle, split, n, width, seed, source,
//                plus an optional free-form "extra" object (adversarial
//                provenance lives there)
//   n*width f64  row-major feature matrix, IEEE-754 little-endian
//   n u8         labels
//
// The float payload is stored bit-exactly; save followed by load returns an
// identical dataset.

inline constexpr char kDatasetMagic[9] = "CANIDSDS";
inline constexpr std::uint32_t kDatasetVersion = 1;

inline std::string serialize_dataset(const Dataset& d,
                                     const nlohmann::json& extra = {}) {
  nlohmann::json header{
      {"vehicle", d.vehicle},    {"split", split_name(d.split)},
      {"n", d.size()},           {"width", d.width()},
      {"seed", d.seed},          {"source", d.source},
  };
  if (!extra.is_null() && !extra.empty()) header["extra"] = extra;

  std::string out;
  out.reserve(32 + d.features.size() * 8 + d.labels.size());
  bio::put_bytes(out, kDatasetMagic, 8);
  bio::put_u32(out, kDatasetVersion);
  bio::put_string(out, header.dump());
  bio::put_f64_array(out, d.features.data(), d.features.size());
  for (TrafficClass c : d.labels)
    out.push_back(char(static_cast<std::uint8_t>(c)));
  return out;
}

struct LoadedDataset {
  Dataset dataset;
  nlohmann::json extra;  // null when the file has none
};

inline LoadedDataset deserialize_dataset(std::istream& in) {
  bio::Reader r(in);
  char magic[8];
  r.read(magic, 8);
  if (std::string(magic, 8) != kDatasetMagic)
    throw FormatError("not a dataset container");
  const std::uint32_t version = r.u32();
  if (version != kDatasetVersion)
    throw VersionError("unsupported dataset container version " +
                       std::to_string(version));
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(r.str());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad dataset header: ") + e.what());
  }

  LoadedDataset out;
  Dataset& d = out.dataset;
  try {
    d.vehicle = header.at("vehicle").get<std::string>();
    d.split = split_from_name(header.at("split").get<std::string>());
    d.seed = header.at("seed").get<std::uint64_t>();
    d.source = header.at("source").get<std::string>();
    const auto n = header.at("n").get<std::size_t>();
    const auto width = header.at("width").get<std::size_t>();
    d.features.resize(n * width);
    d.labels.resize(n);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad dataset header: ") + e.what());
  }
  if (header.contains("extra")) out.extra = header["extra"];

  r.f64_array(d.features.data(), d.features.size());
  for (auto& label : d.labels) {
    unsigned char b;
    r.read(&b, 1);
    if (b >= kNumClasses) throw FormatError("label byte out of range");
    label = static_cast<TrafficClass>(b);
  }
  return out;
}

inline void save_dataset(const Dataset& d, const std::string& path,
                         const nlohmann::json& extra = {}) {
  write_file_atomic(path, serialize_dataset(d, extra));
}

inline LoadedDataset load_dataset(const std::string& path) {
  std::istringstream in(read_file(path));
  return deserialize_dataset(in);
}

}  // namespace canids
