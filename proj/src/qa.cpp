#include "facinv/qa.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "facinv/parallel.hpp"
#include "facinv/random.hpp"

namespace facinv {

CurveSet compute_curves(const FaciesGrid& grid, const std::vector<std::uint8_t>& facies,
                        const std::array<std::size_t, 3>& max_lag, Neighborhood nb) {
  CurveSet out;
  for (auto code : facies)
    for (int a = 0; a < 3; ++a) {
      const Axis axis = static_cast<Axis>(a);
      out[{StatKind::variogram, code, axis}] = indicator_variogram(grid, code, axis, max_lag[a]);
      out[{StatKind::connectivity, code, axis}] =
          connectivity_function(grid, code, axis, max_lag[a], nb);
    }
  return out;
}

std::vector<CurveSet> compute_curves_parallel(const std::vector<FaciesGrid>& grids,
                                              const std::vector<std::uint8_t>& facies,
                                              const std::array<std::size_t, 3>& max_lag,
                                              Neighborhood nb, unsigned threads) {
  std::vector<CurveSet> out(grids.size());
  parallel_for(grids.size(), threads,
               [&](std::size_t n) { out[n] = compute_curves(grids[n], facies, max_lag, nb); });
  return out;
}

std::vector<Index3> sample_patch_origins(const GridDims& dims, const Index3& patch_size,
                                         std::size_t count, std::uint64_t seed) {
  checked_patch_bounds(dims, {0, 0, 0}, patch_size);
  Rng rng(seed);
  std::vector<Index3> out(count);
  for (auto& o : out)
    for (int a = 0; a < 3; ++a) o[a] = rng.below(dims.extent(a) - patch_size[a] + 1);
  return out;
}

std::vector<FaciesGrid> sample_patches(const FaciesGrid& ti, const Index3& patch_size,
                                       std::size_t count, std::uint64_t seed) {
  std::vector<FaciesGrid> out;
  out.reserve(count);
  for (const auto& o : sample_patch_origins(ti.dims(), patch_size, count, seed)) {
    out.push_back(extract_patch(ti, o, patch_size));
  }
  return out;
}

std::array<std::size_t, 3> resolve_max_lag(const std::array<std::size_t, 3>& requested,
                                           const std::vector<GridDims>& dims) {
  std::array<std::size_t, 3> out = requested;
  for (int a = 0; a < 3; ++a) {
    std::size_t smallest = dims.front().extent(a);
    for (const auto& d : dims) smallest = std::min(smallest, d.extent(a));
    if (out[a] == 0) out[a] = smallest / 2;
    if (out[a] >= smallest) {
      throw DomainError(std::string("max lag along ") + "xyz"[a] + " must be below " +
                        std::to_string(smallest));
    }
  }
  return out;
}

double QaReport::max_deviation(StatKind kind) const {
  double m = 0.0;
  for (const auto& e : entries)
    if (e.key.kind == kind) m = std::max(m, e.max_abs_deviation);
  return m;
}

namespace {

constexpr double kBandTolerance = 1e-12;

bool inside_band(const StatCurve& curve, const Envelope& ref) {
  for (std::size_t n = 0; n < curve.points.size(); ++n) {
    const auto& v = curve.points[n].value;
    const auto& r = ref.points[n];
    if (!v || !r.min) continue;
    if (*v < *r.min - kBandTolerance || *v > *r.max + kBandTolerance) return false;
  }
  return true;
}

double max_mean_deviation(const Envelope& a, const Envelope& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.points.size(); ++n) {
    if (a.points[n].mean && b.points[n].mean) {
      m = std::max(m, std::abs(*a.points[n].mean - *b.points[n].mean));
    }
  }
  return m;
}

}  // namespace

QaReport qa_report(const std::vector<FaciesGrid>& realizations, const FaciesGrid& ti,
                   const QaConfig& config) {
  if (realizations.empty()) throw DomainError("QA needs at least one realization");
  if (config.patch_count == 0) throw DomainError("QA needs at least one training-image patch");
  if (config.facies.empty()) throw DomainError("QA needs at least one facies");
  for (double t : {config.variogram_threshold, config.connectivity_threshold,
                   config.proportion_threshold}) {
    if (!(t >= 0.0)) throw DomainError("QA thresholds must be non-negative");
  }

  const auto patches = sample_patches(ti, config.patch_size, config.patch_count, config.seed);
  std::vector<GridDims> all_dims{patches.front().dims()};
  for (const auto& r : realizations) all_dims.push_back(r.dims());
  const auto max_lag = resolve_max_lag(config.max_lag, all_dims);

  const auto ref_curves =
      compute_curves_parallel(patches, config.facies, max_lag, config.neighborhood, config.threads);
  const auto real_curves = compute_curves_parallel(realizations, config.facies, max_lag,
                                                   config.neighborhood, config.threads);

  QaReport report;
  report.max_lag = max_lag;
  report.realization_count = realizations.size();
  report.patch_count = patches.size();
  report.proportion_threshold = config.proportion_threshold;
  report.pass = true;

  for (const auto& [key, unused] : ref_curves.front()) {
    std::vector<StatCurve> ref, real;
    for (const auto& cs : ref_curves) ref.push_back(cs.at(key));
    for (const auto& cs : real_curves) real.push_back(cs.at(key));
    QaEntry e;
    e.key = key;
    e.reference = ensemble_envelope(ref);
    e.realizations = ensemble_envelope(real);
    e.max_abs_deviation = max_mean_deviation(e.realizations, e.reference);
    const auto inside = std::count_if(real.begin(), real.end(),
                                      [&](const StatCurve& c) { return inside_band(c, e.reference); });
    e.band_fraction = static_cast<double>(inside) / static_cast<double>(real.size());
    e.threshold = key.kind == StatKind::variogram ? config.variogram_threshold
                                                  : config.connectivity_threshold;
    e.pass = e.max_abs_deviation <= e.threshold;
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }

  const auto ti_prop = facies_proportions(ti);
  for (auto code : config.facies) {
    const auto it = ti_prop.find(code);
    report.ti_proportion[code] = it == ti_prop.end() ? 0.0 : it->second;
    double sum = 0.0;
    for (const auto& r : realizations) {
      const auto p = facies_proportions(r);
      const auto jt = p.find(code);
      if (jt != p.end()) sum += jt->second;
    }
    report.realization_proportion[code] = sum / static_cast<double>(realizations.size());
    report.proportion_delta[code] =
        std::abs(report.realization_proportion[code] - report.ti_proportion[code]);
    report.pass = report.pass && report.proportion_delta[code] <= config.proportion_threshold;
  }
  return report;
}

namespace {

std::string num(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string format_qa_report(const QaReport& report) {
  std::string out;
  auto kv = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  kv("realizations", std::to_string(report.realization_count));
  kv("reference_patches", std::to_string(report.patch_count));
  kv("max_lag", std::to_string(report.max_lag[0]) + "," + std::to_string(report.max_lag[1]) + "," +
                    std::to_string(report.max_lag[2]));
  for (const auto& e : report.entries) {
    const std::string prefix = std::string(kind_name(e.key.kind)) + ".facies" +
                               std::to_string(e.key.facies) + "." + axis_name(e.key.axis);
    kv(prefix + ".max_abs_deviation", num(e.max_abs_deviation));
    kv(prefix + ".band_fraction", num(e.band_fraction));
    kv(prefix + ".threshold", num(e.threshold));
    kv(prefix + ".pass", e.pass ? "true" : "false");
  }
  kv("variogram.max_abs_deviation", num(report.max_deviation(StatKind::variogram)));
  kv("connectivity.max_abs_deviation", num(report.max_deviation(StatKind::connectivity)));
  for (const auto& [code, delta] : report.proportion_delta) {
    const std::string prefix = "proportion.facies" + std::to_string(code);
    kv(prefix + ".training_image", num(report.ti_proportion.at(code)));
    kv(prefix + ".realizations", num(report.realization_proportion.at(code)));
    kv(prefix + ".delta", num(delta));
  }
  kv("proportion.threshold", num(report.proportion_threshold));
  kv("pass", report.pass ? "true" : "false");
  return out;
}

}  // namespace facinv
