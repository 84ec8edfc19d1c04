#include "facinv/geostats.hpp"

#include <algorithm>
#include <charconv>

namespace facinv {

char axis_name(Axis a) { return "xyz"[static_cast<int>(a)]; }

std::string_view kind_name(StatKind k) {
  return k == StatKind::variogram ? "variogram" : "connectivity";
}

Neighborhood parse_neighborhood(int n) {
  if (n == 6) return Neighborhood::face6;
  if (n == 26) return Neighborhood::full26;
  throw DomainError("connectivity neighborhood must be 6 or 26, got " + std::to_string(n));
}

namespace {

struct AxisWalk {
  std::size_t stride;  // linear index step along the axis
  std::size_t extent;
};

AxisWalk axis_walk(const GridDims& d, Axis axis, std::size_t max_lag) {
  const int a = static_cast<int>(axis);
  const std::size_t extent = d.extent(a);
  if (max_lag >= extent) {
    throw DomainError("max lag " + std::to_string(max_lag) + " must be below extent " +
                      std::to_string(extent) + " along " + axis_name(axis));
  }
  const std::size_t stride = a == 0 ? 1 : a == 1 ? d.nx : d.nx * d.ny;
  return {stride, extent};
}

// Calls fn(n, n + h * stride) for every axis-aligned pair at lag h.
template <class Fn>
void for_each_pair(const GridDims& d, Axis axis, std::size_t h, const AxisWalk& w, Fn&& fn) {
  const std::size_t offset = h * w.stride;
  for (std::size_t k = 0; k < d.nz; ++k)
    for (std::size_t j = 0; j < d.ny; ++j) {
      const std::size_t row = d.nx * (j + d.ny * k);
      std::size_t i_end = d.nx;
      if (axis == Axis::x) {
        i_end = d.nx - h;
      } else if ((axis == Axis::y ? j : k) + h >= w.extent) {
        continue;
      }
      for (std::size_t i = 0; i < i_end; ++i) fn(row + i, row + i + offset);
    }
}

}  // namespace

StatCurve indicator_variogram(const FaciesGrid& grid, std::uint8_t code, Axis axis,
                              std::size_t max_lag) {
  const auto& d = grid.dims();
  const AxisWalk w = axis_walk(d, axis, max_lag);
  const auto v = grid.values();
  StatCurve curve{code, axis, StatKind::variogram, {}};
  curve.points.reserve(max_lag + 1);
  curve.points.push_back({0, 0.0});
  for (std::size_t h = 1; h <= max_lag; ++h) {
    std::size_t differing = 0;
    std::size_t pairs = 0;
    for_each_pair(d, axis, h, w, [&](std::size_t a, std::size_t b) {
      differing += static_cast<std::size_t>((v[a] == code) != (v[b] == code));
      ++pairs;
    });
    curve.points.push_back({h, 0.5 * static_cast<double>(differing) / static_cast<double>(pairs)});
  }
  return curve;
}

StatCurve connectivity_function(const FaciesGrid& grid, std::uint8_t code, Axis axis,
                                std::size_t max_lag, Neighborhood nb) {
  const auto& d = grid.dims();
  const AxisWalk w = axis_walk(d, axis, max_lag);
  const LabelGrid labels = label_components(grid, code, nb);
  const auto lab = labels.values();
  StatCurve curve{code, axis, StatKind::connectivity, {}};
  curve.points.reserve(max_lag + 1);
  for (std::size_t h = 0; h <= max_lag; ++h) {
    std::size_t connected = 0;
    std::size_t both = 0;
    for_each_pair(d, axis, h, w, [&](std::size_t a, std::size_t b) {
      if (lab[a] != 0 && lab[b] != 0) {
        ++both;
        connected += static_cast<std::size_t>(lab[a] == lab[b]);
      }
    });
    CurvePoint p{h, std::nullopt};
    if (both > 0) p.value = static_cast<double>(connected) / static_cast<double>(both);
    curve.points.push_back(p);
  }
  return curve;
}

Envelope ensemble_envelope(const std::vector<StatCurve>& curves) {
  if (curves.empty()) throw DomainError("envelope of an empty curve list");
  const StatCurve& first = curves.front();
  Envelope env{first.facies, first.axis, first.kind, {}};
  for (const auto& c : curves) {
    if (c.facies != first.facies || c.axis != first.axis || c.kind != first.kind ||
        c.points.size() != first.points.size()) {
      throw ShapeError("envelope curves differ in facies, axis, kind or lag count");
    }
    for (std::size_t n = 0; n < c.points.size(); ++n) {
      if (c.points[n].lag != first.points[n].lag) throw ShapeError("envelope curves differ in lags");
    }
  }
  for (std::size_t n = 0; n < first.points.size(); ++n) {
    EnvelopePoint p{first.points[n].lag, {}, {}, {}, 0};
    double sum = 0.0;
    for (const auto& c : curves) {
      if (!c.points[n].value) continue;
      const double v = *c.points[n].value;
      sum += v;
      p.min = p.min ? std::min(*p.min, v) : v;
      p.max = p.max ? std::max(*p.max, v) : v;
      ++p.count;
    }
    if (p.count > 0) {
      // Clamp so rounding in the sum cannot push the mean outside [min, max].
      p.mean = std::clamp(sum / static_cast<double>(p.count), *p.min, *p.max);
    }
    env.points.push_back(p);
  }
  return env;
}

namespace {

void append_value(std::string& out, const std::optional<double>& v) {
  if (!v) return;
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), *v);
  out.append(buf, r.ptr);
}

}  // namespace

std::string curve_csv(const StatCurve& curve) {
  std::string out = "lag,value\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.lag);
    out.push_back(',');
    append_value(out, p.value);
    out.push_back('\n');
  }
  return out;
}

std::string envelope_csv(const Envelope& env) {
  std::string out = "lag,mean,min,max\n";
  for (const auto& p : env.points) {
    out += std::to_string(p.lag);
    out.push_back(',');
    append_value(out, p.mean);
    out.push_back(',');
    append_value(out, p.min);
    out.push_back(',');
    append_value(out, p.max);
    out.push_back('\n');
  }
  return out;
}

}  // namespace facinv
