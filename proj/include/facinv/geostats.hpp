#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facinv/grid.hpp"

namespace facinv {

enum class Axis : int { x = 0, y = 1, z = 2 };
enum class StatKind { variogram, connectivity };
enum class Neighborhood { face6 = 6, full26 = 26 };

char axis_name(Axis a);
std::string_view kind_name(StatKind k);
Neighborhood parse_neighborhood(int n);

// One lag of a curve. An empty value marks a lag with no qualifying pair.
struct CurvePoint {
  std::size_t lag = 0;
  std::optional<double> value;
};

struct StatCurve {
  std::uint8_t facies = facies::channel;
  Axis axis = Axis::x;
  StatKind kind = StatKind::variogram;
  std::vector<CurvePoint> points;  // lags 0, 1, ..., max_lag
};

// gamma(h) = 1/2 mean over axis-aligned pairs (u, u+h) of (I(u) - I(u+h))^2
// with I the indicator of `code`. Throws DomainError if max_lag >= extent.
StatCurve indicator_variogram(const FaciesGrid& grid, std::uint8_t code, Axis axis,
                              std::size_t max_lag);

using LabelGrid = Grid<std::uint32_t>;

// Connected components of the cells equal to `code`. Labels are 1..n in
// order of each component's first cell (x-fastest scan); other cells are 0.
LabelGrid label_components(const FaciesGrid& grid, std::uint8_t code,
                           Neighborhood nb = Neighborhood::face6);
std::uint32_t component_count(const LabelGrid& labels);

// tau(h) = P(u ~ u+h | I(u) = I(u+h) = 1), pairs restricted to cells of
// `code`. Lags without such a pair carry no value.
StatCurve connectivity_function(const FaciesGrid& grid, std::uint8_t code, Axis axis,
                                std::size_t max_lag, Neighborhood nb = Neighborhood::face6);

struct EnvelopePoint {
  std::size_t lag = 0;
  std::optional<double> mean, min, max;
  std::size_t count = 0;  // curves with a value at this lag
};

struct Envelope {
  std::uint8_t facies = facies::channel;
  Axis axis = Axis::x;
  StatKind kind = StatKind::variogram;
  std::vector<EnvelopePoint> points;
};

// Per-lag mean/min/max over curves that carry a value at that lag. Throws
// DomainError on an empty list and ShapeError on mismatched curves.
Envelope ensemble_envelope(const std::vector<StatCurve>& curves);

// CSV exports: "lag,value" and "lag,mean,min,max". Gaps are empty fields.
std::string curve_csv(const StatCurve& curve);
std::string envelope_csv(const Envelope& env);

}  // namespace facinv
