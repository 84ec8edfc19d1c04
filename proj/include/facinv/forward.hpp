#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facinv/grid.hpp"

namespace facinv {

struct PropertyRange {
  double min = 0.0;
  double max = 0.0;
  double midpoint() const { return 0.5 * (min + max); }
};

struct FaciesProperties {
  PropertyRange velocity;  // m/s
  PropertyRange density;   // g/cm^3
};

enum class AssignmentMode { midpoint, uniform_sample };

AssignmentMode parse_assignment_mode(const std::string& name);

// Per-facies elastic property ranges.
class FaciesPropertyTable {
 public:
  FaciesPropertyTable() = default;

  // Channel 4800-5000 m/s, 2.6-2.8 g/cm^3; mud 4000-4300 m/s, 1.9-2.4 g/cm^3.
  static FaciesPropertyTable channel_mud();

  // Throws DomainError unless 0 < min <= max for both ranges.
  void set(std::uint8_t code, FaciesProperties props);
  const FaciesProperties& at(std::uint8_t code) const;
  bool contains(std::uint8_t code) const { return entries_.count(code) != 0; }
  const std::map<std::uint8_t, FaciesProperties>& entries() const { return entries_; }

  AssignmentMode mode = AssignmentMode::midpoint;

 private:
  std::map<std::uint8_t, FaciesProperties> entries_;
};

struct ElasticModel {
  RealGrid velocity;
  RealGrid density;

  RealGrid impedance() const;
};

// Midpoint mode ignores the seed. uniform_sample draws velocity then density
// per cell, x-fastest, from Rng(seed) and requires a seed.
ElasticModel facies_to_elastic(const FaciesGrid& grid, const FaciesPropertyTable& table,
                               std::optional<std::uint64_t> seed = std::nullopt);

// Ricker pulse sampled at t = n * dt, n in [-half_length, half_length].
struct Wavelet {
  double frequency = 0.0;
  double dt = 0.0;
  std::vector<double> samples;

  std::size_t half_length() const { return samples.size() / 2; }
  double time(std::size_t n) const {
    return (static_cast<double>(n) - static_cast<double>(half_length())) * dt;
  }
};

// (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2)
double ricker_value(double frequency, double t);
Wavelet ricker(double frequency, double dt, std::size_t half_length);
// ceil(3 / (f * dt)) samples.
std::size_t default_half_length(double frequency, double dt);

// Two-column CSV "t,w".
std::string wavelet_csv(const Wavelet& w);

// Normal-incidence reflectivity along z per trace:
// r_k = (Z_{k+1} - Z_k) / (Z_{k+1} + Z_k), r_{nz-1} = 0.
RealGrid reflectivity(const RealGrid& impedance);
RealGrid reflectivity(const ElasticModel& elastic);

// Per-trace linear convolution along z with "same" alignment: the output
// has nz samples and sample k is centred on the wavelet peak.
SeismicCube synthesize(const RealGrid& refl, const Wavelet& wavelet);

// facies -> elastic -> reflectivity -> seismic in one call.
SeismicCube forward_model(const FaciesGrid& grid, const FaciesPropertyTable& table,
                          const Wavelet& wavelet, std::optional<std::uint64_t> seed = std::nullopt);

// observed = clean + N(0, sd^2) per cell.
SeismicCube add_noise(const SeismicCube& clean, double sd, std::uint64_t seed);

}  // namespace facinv
