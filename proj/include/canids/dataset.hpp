#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "canids/can_frame.hpp"
#include "canids/error.hpp"
#include "canids/rng.hpp"

namespace canids {

enum class Split : std::uint8_t { Train = 0, Test = 1, Full = 2 };

inline const char* split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Test: return "test";
    case Split::Full: return "full";
  }
  return "?";
}

inline Split split_from_name(const std::string& s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  if (s == "full") return Split::Full;
  throw ConfigError("unknown split '" + s + "'");
}

// A fixed-width feature matrix with one class label per row. Immutable after
// construction; safe to share across threads.
struct Dataset {
  std::string vehicle;
  Split split = Split::Full;
  std::vector<double> features;  // row-major, n x width
  std::vector<TrafficClass> labels;
  std::string source;  // free-form provenance
  std::uint64_t seed = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t width() const {
    return labels.empty() ? 0 : features.size() / labels.size();
  }
  const double* row(std::size_t i) const { return &features[i * width()]; }

  std::array<std::size_t, 4> class_counts() const {
    std::array<std::size_t, 4> counts{};
    for (TrafficClass c : labels) ++counts[static_cast<int>(c)];
    return counts;
  }
};

namespace detail {

inline Dataset take_rows(const Dataset& d, const std::vector<std::size_t>& rows,
                         Split split) {
  Dataset out;
  out.vehicle = d.vehicle;
  out.split = split;
  out.source = d.source;
  out.seed = d.seed;
  const std::size_t w = d.width();
  out.features.resize(rows.size() * w);
  out.labels.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double* src = d.row(rows[i]);
    std::copy(src, src + w, &out.features[i * w]);
    out.labels[i] = d.labels[rows[i]];
  }
  return out;
}

inline std::array<std::vector<std::size_t>, 4> rows_by_class(const Dataset& d) {
  std::array<std::vector<std::size_t>, 4> by_class;
  for (std::size_t i = 0; i < d.size(); ++i)
    by_class[static_cast<int>(d.labels[i])].push_back(i);
  return by_class;
}

}  // namespace detail

// Undersamples every class to the minimum class count (seeded, without
// replacement) and reshuffles the surviving rows.
inline Dataset balance(const Dataset& d, std::uint64_t seed) {
  const auto by_class = detail::rows_by_class(d);
  std::size_t min_count = d.size();
  for (int c = 0; c < kNumClasses; ++c) {
    if (by_class[c].empty())
      throw ContractError(std::string("balance: class ") +
                          traffic_class_name(static_cast<TrafficClass>(c)) +
                          " has zero rows");
    min_count = std::min(min_count, by_class[c].size());
  }
  Rng rng(seed);
  std::vector<std::size_t> keep;
  keep.reserve(min_count * kNumClasses);
  for (int c = 0; c < kNumClasses; ++c) {
    for (std::size_t pick :
         rng.sample_without_replacement(by_class[c].size(), min_count))
      keep.push_back(by_class[c][pick]);
  }
  rng.shuffle(keep);
  Dataset out = detail::take_rows(d, keep, d.split);
  out.seed = seed;
  return out;
}

// Stratified train/test split: per class, floor(train_fraction * count) rows
// go to Train after a seeded shuffle, the remainder to Test.
inline std::pair<Dataset, Dataset> split_dataset(const Dataset& d,
                                                 double train_fraction,
                                                 std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train_fraction must lie in (0,1)");
  auto by_class = detail::rows_by_class(d);
  Rng rng(seed);
  std::vector<std::size_t> train_rows, test_rows;
  for (int c = 0; c < kNumClasses; ++c) {
    auto& rows = by_class[c];
    if (rows.size() < 2)
      throw ContractError(std::string("split: class ") +
                          traffic_class_name(static_cast<TrafficClass>(c)) +
                          " has fewer than 2 rows");
    rng.shuffle(rows);
    const std::size_t n_train =
        static_cast<std::size_t>(train_fraction * double(rows.size()));
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + n_train);
    test_rows.insert(test_rows.end(), rows.begin() + n_train, rows.end());
  }
  rng.shuffle(train_rows);
  rng.shuffle(test_rows);
  Dataset train = detail::take_rows(d, train_rows, Split::Train);
  Dataset test = detail::take_rows(d, test_rows, Split::Test);
  train.seed = seed;
  test.seed = seed;
  return {std::move(train), std::move(test)};
}

}  // namespace canids
