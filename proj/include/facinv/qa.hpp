#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "facinv/geostats.hpp"

namespace facinv {

struct QaConfig {
  Index3 patch_size{100, 100, 50};
  std::size_t patch_count = 100;
  // Largest lag per axis (x, y, z); 0 selects half the smallest extent
  // among the patches and realizations along that axis.
  std::array<std::size_t, 3> max_lag{0, 0, 0};
  double variogram_threshold = 0.01;
  double connectivity_threshold = 0.1;
  double proportion_threshold = 0.02;
  std::uint64_t seed = 0;
  Neighborhood neighborhood = Neighborhood::face6;
  std::vector<std::uint8_t> facies{facies::mud, facies::channel};
  unsigned threads = 1;
};

// Curves of one grid keyed by (kind, facies, axis).
struct CurveKey {
  StatKind kind;
  std::uint8_t facies;
  Axis axis;
  friend auto operator<=>(const CurveKey&, const CurveKey&) = default;
};
using CurveSet = std::map<CurveKey, StatCurve>;

CurveSet compute_curves(const FaciesGrid& grid, const std::vector<std::uint8_t>& facies,
                        const std::array<std::size_t, 3>& max_lag, Neighborhood nb);

// Evaluates fn(0..count-1) on up to `threads` workers; results keep index order.
std::vector<CurveSet> compute_curves_parallel(const std::vector<FaciesGrid>& grids,
                                              const std::vector<std::uint8_t>& facies,
                                              const std::array<std::size_t, 3>& max_lag,
                                              Neighborhood nb, unsigned threads);

// Uniform random patch origins such that every patch fits inside dims.
std::vector<Index3> sample_patch_origins(const GridDims& dims, const Index3& patch_size,
                                         std::size_t count, std::uint64_t seed);
std::vector<FaciesGrid> sample_patches(const FaciesGrid& ti, const Index3& patch_size,
                                       std::size_t count, std::uint64_t seed);

struct QaEntry {
  CurveKey key;
  double max_abs_deviation = 0.0;  // max over lags of |mean(realizations) - mean(reference)|
  double band_fraction = 0.0;      // realization curves inside the reference [min, max] at every lag
  double threshold = 0.0;
  bool pass = false;
  Envelope reference;
  Envelope realizations;
};

struct QaReport {
  std::vector<QaEntry> entries;
  std::map<std::uint8_t, double> ti_proportion;
  std::map<std::uint8_t, double> realization_proportion;  // ensemble mean
  std::map<std::uint8_t, double> proportion_delta;
  double proportion_threshold = 0.0;
  std::array<std::size_t, 3> max_lag{};
  std::size_t realization_count = 0;
  std::size_t patch_count = 0;
  bool pass = false;

  double max_deviation(StatKind kind) const;
};

// Compares realization statistics with an envelope from seeded random
// training-image patches. pass requires every deviation within its threshold.
QaReport qa_report(const std::vector<FaciesGrid>& realizations, const FaciesGrid& ti,
                   const QaConfig& config);

// Key-value text, one "key = value" per line, ending with "pass = true|false".
std::string format_qa_report(const QaReport& report);

std::array<std::size_t, 3> resolve_max_lag(const std::array<std::size_t, 3>& requested,
                                           const std::vector<GridDims>& dims);

}  // namespace facinv
