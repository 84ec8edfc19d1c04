#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "facinv/grid.hpp"
#include "facinv/random.hpp"

namespace facinv {

struct LatentShape {
  std::uint32_t lx = 3;
  std::uint32_t ly = 3;
  std::uint32_t lz = 3;
  std::uint32_t channels = 1;

  std::size_t size() const { return std::size_t{lx} * ly * lz * channels; }
  friend bool operator==(const LatentShape&, const LatentShape&) = default;
  std::string to_string() const;
};

// Generator input. Entries are stored channel-major, then z, y, x with x
// fastest, the same layout as FeatureStack. Every entry lies in [-1, 1].
class LatentVector {
 public:
  LatentVector() = default;
  LatentVector(LatentShape shape, std::vector<double> values);

  const LatentShape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t n) const { return values_[n]; }
  // Entries must stay inside [-1, 1]; throws DomainError otherwise.
  void set(std::size_t n, double v);

  friend bool operator==(const LatentVector&, const LatentVector&) = default;

 private:
  LatentShape shape_{};
  std::vector<double> values_;
};

// Independent U(-1, 1) draw per entry.
LatentVector sample_latent(const LatentShape& shape, Rng& rng);

enum class ActivationKind : std::uint8_t { none = 0, leaky_relu = 1, tanh = 2 };

struct Activation {
  ActivationKind kind = ActivationKind::none;
  float alpha = 0.2f;  // leaky_relu slope, ignored otherwise

  double apply(double x) const;
  friend bool operator==(const Activation&, const Activation&) = default;
};

double leaky_relu(double x, double alpha);

// Per-axis triples (kernel, stride, padding) are ordered (d, h, w), i.e.
// (z, y, x). Weights are indexed (in, out, kd, kh, kw) with kw fastest.
struct TransposedConvLayer {
  std::uint32_t in_channels = 1;
  std::uint32_t out_channels = 1;
  std::array<std::uint32_t, 3> kernel{1, 1, 1};
  std::array<std::uint32_t, 3> stride{1, 1, 1};
  std::array<std::uint32_t, 3> padding{0, 0, 0};
  Activation activation{};
  std::vector<float> weights;
  std::vector<float> bias;

  std::size_t weight_index(std::size_t in, std::size_t out, std::size_t kd, std::size_t kh,
                           std::size_t kw) const {
    return (((in * out_channels + out) * kernel[0] + kd) * kernel[1] + kh) * kernel[2] + kw;
  }
  std::size_t kernel_volume() const { return std::size_t{kernel[0]} * kernel[1] * kernel[2]; }
  void validate() const;

  friend bool operator==(const TransposedConvLayer&, const TransposedConvLayer&) = default;
};

// (in - 1) * stride - 2 * padding + kernel; throws ShapeError when not positive.
std::size_t transposed_output_size(std::size_t in, std::uint32_t kernel, std::uint32_t stride,
                                   std::uint32_t padding);

// Multi-channel activation volume: channel-major, then z, y, x (x fastest).
struct FeatureStack {
  std::size_t nx = 1, ny = 1, nz = 1;
  std::size_t channels = 1;
  std::vector<double> values;

  std::size_t cells() const { return nx * ny * nz; }
  std::size_t index(std::size_t c, std::size_t i, std::size_t j, std::size_t k) const {
    return c * cells() + i + nx * (j + ny * k);
  }
};

FeatureStack to_feature_stack(const LatentVector& latent);

// Scatter-add transposed convolution followed by the layer activation.
FeatureStack conv_transpose3d(const FeatureStack& input, const TransposedConvLayer& layer);

class GeneratorNetwork {
 public:
  GeneratorNetwork() = default;
  GeneratorNetwork(LatentShape input_shape, std::vector<TransposedConvLayer> layers,
                   double output_threshold = 0.0);

  const LatentShape& input_shape() const { return input_shape_; }
  const std::vector<TransposedConvLayer>& layers() const { return layers_; }
  double output_threshold() const { return output_threshold_; }
  void set_output_threshold(double t) { output_threshold_ = t; }

  // Spatial extent (x, y, z) after every layer, starting with the latent.
  std::vector<Index3> shape_chain() const;
  GridDims output_dims() const;

  friend bool operator==(const GeneratorNetwork& a, const GeneratorNetwork& b) {
    return a.input_shape_ == b.input_shape_ && a.layers_ == b.layers_;
  }

 private:
  void validate() const;

  LatentShape input_shape_{};
  std::vector<TransposedConvLayer> layers_;
  double output_threshold_ = 0.0;
};

// Runs the layer chain on one latent. Pure and deterministic; safe to call
// concurrently on a shared network.
RealGrid generate(const GeneratorNetwork& network, const LatentVector& latent);

// cell > threshold -> channel, otherwise mud.
FaciesGrid binarize(const RealGrid& grid, double threshold = 0.0);

// FACGEN weight file. Little-endian throughout:
//   "FACGEN" | u16 version (1) | u32 lx, ly, lz, channels | u16 layer count
//   per layer: u32 in, out | u32 kernel[3] | u32 stride[3] | u32 padding[3]
//              | u8 activation | f32 alpha | f32 weights[...] | f32 bias[out]
inline constexpr std::uint16_t kFacgenVersion = 1;

std::string encode_facgen(const GeneratorNetwork& network);
GeneratorNetwork decode_facgen(std::string_view bytes);
GeneratorNetwork load_generator(const std::filesystem::path& path);
void save_generator(const GeneratorNetwork& network, const std::filesystem::path& path);

}  // namespace facinv
