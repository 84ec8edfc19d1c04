#include "facinv/forward.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "facinv/random.hpp"

namespace facinv {

AssignmentMode parse_assignment_mode(const std::string& name) {
  if (name == "midpoint") return AssignmentMode::midpoint;
  if (name == "uniform_sample") return AssignmentMode::uniform_sample;
  throw DomainError("unknown assignment mode '" + name + "'");
}

FaciesPropertyTable FaciesPropertyTable::channel_mud() {
  FaciesPropertyTable t;
  t.set(facies::channel, {{4800.0, 5000.0}, {2.6, 2.8}});
  t.set(facies::mud, {{4000.0, 4300.0}, {1.9, 2.4}});
  return t;
}

void FaciesPropertyTable::set(std::uint8_t code, FaciesProperties props) {
  for (const auto& r : {props.velocity, props.density}) {
    if (!(r.min > 0.0) || !(r.min <= r.max) || !std::isfinite(r.max)) {
      throw DomainError("property range for facies " + std::to_string(code) +
                        " must satisfy 0 < min <= max");
    }
  }
  entries_[code] = props;
}

const FaciesProperties& FaciesPropertyTable::at(std::uint8_t code) const {
  auto it = entries_.find(code);
  if (it == entries_.end()) {
    throw DomainError("no elastic properties for facies " + std::to_string(code));
  }
  return it->second;
}

RealGrid ElasticModel::impedance() const {
  std::vector<double> z(velocity.size());
  const auto v = velocity.values();
  const auto r = density.values();
  for (std::size_t n = 0; n < z.size(); ++n) z[n] = v[n] * r[n];
  return RealGrid(velocity.dims(), std::move(z));
}

ElasticModel facies_to_elastic(const FaciesGrid& grid, const FaciesPropertyTable& table,
                               std::optional<std::uint64_t> seed) {
  std::vector<double> vel(grid.size());
  std::vector<double> rho(grid.size());
  const auto cells = grid.values();
  // Resolve table entries up front so a missing code fails before any work.
  std::array<const FaciesProperties*, 256> lookup{};
  for (auto c : cells) {
    if (!lookup[c]) lookup[c] = &table.at(c);
  }
  if (table.mode == AssignmentMode::midpoint) {
    for (std::size_t n = 0; n < cells.size(); ++n) {
      const auto* p = lookup[cells[n]];
      vel[n] = p->velocity.midpoint();
      rho[n] = p->density.midpoint();
    }
  } else {
    if (!seed) throw DomainError("uniform_sample assignment requires a seed");
    Rng rng(*seed);
    for (std::size_t n = 0; n < cells.size(); ++n) {
      const auto* p = lookup[cells[n]];
      vel[n] = rng.uniform(p->velocity.min, p->velocity.max);
      rho[n] = rng.uniform(p->density.min, p->density.max);
    }
  }
  return {RealGrid(grid.dims(), std::move(vel)), RealGrid(grid.dims(), std::move(rho))};
}

double ricker_value(double frequency, double t) {
  const double a = std::numbers::pi * std::numbers::pi * frequency * frequency * t * t;
  return (1.0 - 2.0 * a) * std::exp(-a);
}

Wavelet ricker(double frequency, double dt, std::size_t half_length) {
  if (!(frequency > 0.0) || !(dt > 0.0) || half_length < 1) {
    throw DomainError("ricker needs f > 0, dt > 0 and half_length >= 1");
  }
  Wavelet w{frequency, dt, std::vector<double>(2 * half_length + 1)};
  for (std::size_t n = 0; n <= half_length; ++n) {
    const double v = ricker_value(frequency, static_cast<double>(n) * dt);
    w.samples[half_length + n] = v;
    w.samples[half_length - n] = v;
  }
  return w;
}

std::size_t default_half_length(double frequency, double dt) {
  if (!(frequency > 0.0) || !(dt > 0.0)) throw DomainError("wavelet needs f > 0 and dt > 0");
  return static_cast<std::size_t>(std::ceil(3.0 / (frequency * dt)));
}

std::string wavelet_csv(const Wavelet& w) {
  std::string out = "t,w\n";
  char buf[64];
  for (std::size_t n = 0; n < w.samples.size(); ++n) {
    auto r = std::to_chars(buf, buf + sizeof(buf), w.time(n));
    out.append(buf, r.ptr);
    out.push_back(',');
    r = std::to_chars(buf, buf + sizeof(buf), w.samples[n]);
    out.append(buf, r.ptr);
    out.push_back('\n');
  }
  return out;
}

RealGrid reflectivity(const RealGrid& impedance) {
  const auto& d = impedance.dims();
  const auto z = impedance.values();
  for (double v : z)
    if (!(v > 0.0)) throw DomainError("impedance must be positive everywhere");
  std::vector<double> r(z.size(), 0.0);
  const std::size_t plane = d.nx * d.ny;
  for (std::size_t k = 0; k + 1 < d.nz; ++k)
    for (std::size_t c = 0; c < plane; ++c) {
      const double a = z[k * plane + c];
      const double b = z[(k + 1) * plane + c];
      r[k * plane + c] = (b - a) / (b + a);
    }
  return RealGrid(d, std::move(r));
}

RealGrid reflectivity(const ElasticModel& elastic) { return reflectivity(elastic.impedance()); }

SeismicCube synthesize(const RealGrid& refl, const Wavelet& wavelet) {
  const auto& d = refl.dims();
  const std::size_t h = wavelet.half_length();
  if (wavelet.samples.size() % 2 == 0 || wavelet.samples.empty()) {
    throw DomainError("wavelet must have odd length");
  }
  if (wavelet.samples.size() > 2 * d.nz + 1) {
    throw DomainError("wavelet of " + std::to_string(wavelet.samples.size()) +
                      " samples exceeds 2*nz+1 = " + std::to_string(2 * d.nz + 1));
  }
  const auto r = refl.values();
  const std::size_t plane = d.nx * d.ny;
  const long long nz = static_cast<long long>(d.nz);
  const long long hh = static_cast<long long>(h);
  std::vector<double> out(r.size(), 0.0);
  std::vector<double> trace(d.nz);
  for (std::size_t c = 0; c < plane; ++c) {
    for (std::size_t m = 0; m < d.nz; ++m) trace[m] = r[m * plane + c];
    for (long long k = 0; k < nz; ++k) {
      double acc = 0.0;
      const long long lo = std::max(0LL, k - hh);
      const long long hi = std::min(nz - 1, k + hh);
      for (long long m = lo; m <= hi; ++m) acc += trace[m] * wavelet.samples[k - m + hh];
      out[k * plane + c] = acc;
    }
  }
  return SeismicCube(d, std::move(out));
}

SeismicCube forward_model(const FaciesGrid& grid, const FaciesPropertyTable& table,
                          const Wavelet& wavelet, std::optional<std::uint64_t> seed) {
  return synthesize(reflectivity(facies_to_elastic(grid, table, seed)), wavelet);
}

SeismicCube add_noise(const SeismicCube& clean, double sd, std::uint64_t seed) {
  if (!(sd >= 0.0)) throw DomainError("noise SD must be non-negative");
  Rng rng(seed);
  std::vector<double> v(clean.values().begin(), clean.values().end());
  for (auto& x : v) x += sd * rng.normal();
  return SeismicCube(clean.dims(), std::move(v));
}

}  // namespace facinv
