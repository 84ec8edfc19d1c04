#include "facinv/generator.hpp"

#include <cmath>

namespace facinv {

std::string LatentShape::to_string() const {
  return std::to_string(lx) + "x" + std::to_string(ly) + "x" + std::to_string(lz) + "x" +
         std::to_string(channels);
}

LatentVector::LatentVector(LatentShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  if (shape_.size() == 0) throw DomainError("latent shape has a zero extent");
  if (values_.size() != shape_.size()) {
    throw ShapeError("latent has " + std::to_string(values_.size()) + " entries, shape " +
                     shape_.to_string() + " requires " + std::to_string(shape_.size()));
  }
  for (double v : values_) {
    if (!(v >= -1.0 && v <= 1.0)) throw DomainError("latent entry outside [-1, 1]");
  }
}

void LatentVector::set(std::size_t n, double v) {
  if (!(v >= -1.0 && v <= 1.0)) throw DomainError("latent entry outside [-1, 1]");
  values_.at(n) = v;
}

LatentVector sample_latent(const LatentShape& shape, Rng& rng) {
  std::vector<double> v(shape.size());
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return LatentVector(shape, std::move(v));
}

double leaky_relu(double x, double alpha) { return x >= 0.0 ? x : alpha * x; }

double Activation::apply(double x) const {
  switch (kind) {
    case ActivationKind::none: return x;
    case ActivationKind::leaky_relu: return leaky_relu(x, alpha);
    case ActivationKind::tanh: return std::tanh(x);
  }
  return x;
}

void TransposedConvLayer::validate() const {
  if (in_channels < 1 || out_channels < 1) throw ShapeError("layer channel counts must be positive");
  for (int a = 0; a < 3; ++a) {
    if (kernel[a] < 1) throw ShapeError("kernel extents must be positive");
    if (stride[a] < 1) throw ShapeError("strides must be positive");
  }
  const std::size_t expected = std::size_t{in_channels} * out_channels * kernel_volume();
  if (weights.size() != expected) {
    throw ShapeError("layer has " + std::to_string(weights.size()) + " weights, expected " +
                     std::to_string(expected));
  }
  if (bias.size() != out_channels) {
    throw ShapeError("layer has " + std::to_string(bias.size()) + " biases, expected " +
                     std::to_string(out_channels));
  }
  if (activation.kind == ActivationKind::leaky_relu &&
      !(activation.alpha > 0.0f && activation.alpha < 1.0f)) {
    throw DomainError("leaky_relu slope must lie in (0, 1)");
  }
  if (static_cast<unsigned>(activation.kind) > 2) throw FormatError("unknown activation tag");
}

std::size_t transposed_output_size(std::size_t in, std::uint32_t kernel, std::uint32_t stride,
                                   std::uint32_t padding) {
  const long long n = (static_cast<long long>(in) - 1) * stride - 2LL * padding + kernel;
  if (n < 1) {
    throw ShapeError("transposed convolution output size " + std::to_string(n) +
                     " is not positive");
  }
  return static_cast<std::size_t>(n);
}

FeatureStack to_feature_stack(const LatentVector& latent) {
  const auto& s = latent.shape();
  return FeatureStack{s.lx, s.ly, s.lz, s.channels, latent.values()};
}

FeatureStack conv_transpose3d(const FeatureStack& input, const TransposedConvLayer& layer) {
  layer.validate();
  if (input.channels != layer.in_channels) {
    throw ShapeError("input has " + std::to_string(input.channels) + " channels, layer expects " +
                     std::to_string(layer.in_channels));
  }
  FeatureStack out;
  out.nz = transposed_output_size(input.nz, layer.kernel[0], layer.stride[0], layer.padding[0]);
  out.ny = transposed_output_size(input.ny, layer.kernel[1], layer.stride[1], layer.padding[1]);
  out.nx = transposed_output_size(input.nx, layer.kernel[2], layer.stride[2], layer.padding[2]);
  out.channels = layer.out_channels;
  out.values.assign(out.channels * out.cells(), 0.0);

  const long long sd = layer.stride[0], sh = layer.stride[1], sw = layer.stride[2];
  const long long pd = layer.padding[0], ph = layer.padding[1], pw = layer.padding[2];
  const long long kd_n = layer.kernel[0], kh_n = layer.kernel[1], kw_n = layer.kernel[2];
  const long long onx = static_cast<long long>(out.nx), ony = static_cast<long long>(out.ny),
                  onz = static_cast<long long>(out.nz);

  for (std::size_t oc = 0; oc < out.channels; ++oc) {
    double* dst = out.values.data() + oc * out.cells();
    for (std::size_t ic = 0; ic < input.channels; ++ic) {
      const double* src = input.values.data() + ic * input.cells();
      const float* w = layer.weights.data() + layer.weight_index(ic, oc, 0, 0, 0);
      for (std::size_t iz = 0; iz < input.nz; ++iz)
        for (std::size_t iy = 0; iy < input.ny; ++iy)
          for (std::size_t ix = 0; ix < input.nx; ++ix) {
            const double x = src[ix + input.nx * (iy + input.ny * iz)];
            if (x == 0.0) continue;
            for (long long kd = 0; kd < kd_n; ++kd) {
              const long long oz = static_cast<long long>(iz) * sd - pd + kd;
              if (oz < 0 || oz >= onz) continue;
              for (long long kh = 0; kh < kh_n; ++kh) {
                const long long oy = static_cast<long long>(iy) * sh - ph + kh;
                if (oy < 0 || oy >= ony) continue;
                double* row = dst + onx * (oy + ony * oz);
                const float* wrow = w + (kd * kh_n + kh) * kw_n;
                const long long ox0 = static_cast<long long>(ix) * sw - pw;
                for (long long kw = 0; kw < kw_n; ++kw) {
                  const long long ox = ox0 + kw;
                  if (ox < 0 || ox >= onx) continue;
                  row[ox] += x * static_cast<double>(wrow[kw]);
                }
              }
            }
          }
    }
    const double b = layer.bias[oc];
    const Activation act = layer.activation;
    for (std::size_t n = 0; n < out.cells(); ++n) dst[n] = act.apply(dst[n] + b);
  }
  return out;
}

GeneratorNetwork::GeneratorNetwork(LatentShape input_shape, std::vector<TransposedConvLayer> layers,
                                   double output_threshold)
    : input_shape_(input_shape), layers_(std::move(layers)), output_threshold_(output_threshold) {
  validate();
}

void GeneratorNetwork::validate() const {
  if (input_shape_.size() == 0) throw ShapeError("latent shape has a zero extent");
  if (layers_.empty()) throw ShapeError("generator has no layers");
  std::uint32_t channels = input_shape_.channels;
  for (std::size_t n = 0; n < layers_.size(); ++n) {
    const auto& l = layers_[n];
    l.validate();
    if (l.in_channels != channels) {
      throw ShapeError("layer " + std::to_string(n) + " expects " + std::to_string(l.in_channels) +
                       " input channels but receives " + std::to_string(channels));
    }
    channels = l.out_channels;
  }
  if (channels != 1) throw ShapeError("final layer must produce exactly 1 channel");
  shape_chain();
}

std::vector<Index3> GeneratorNetwork::shape_chain() const {
  std::vector<Index3> chain;
  Index3 s{input_shape_.lx, input_shape_.ly, input_shape_.lz};
  chain.push_back(s);
  for (const auto& l : layers_) {
    s = {transposed_output_size(s[0], l.kernel[2], l.stride[2], l.padding[2]),
         transposed_output_size(s[1], l.kernel[1], l.stride[1], l.padding[1]),
         transposed_output_size(s[2], l.kernel[0], l.stride[0], l.padding[0])};
    chain.push_back(s);
  }
  return chain;
}

GridDims GeneratorNetwork::output_dims() const {
  const auto s = shape_chain().back();
  return GridDims(s[0], s[1], s[2]);
}

RealGrid generate(const GeneratorNetwork& network, const LatentVector& latent) {
  if (!(latent.shape() == network.input_shape())) {
    throw ShapeError("latent shape " + latent.shape().to_string() + " does not match network input " +
                     network.input_shape().to_string());
  }
  FeatureStack x = to_feature_stack(latent);
  for (const auto& layer : network.layers()) x = conv_transpose3d(x, layer);
  return RealGrid(GridDims(x.nx, x.ny, x.nz), std::move(x.values));
}

FaciesGrid binarize(const RealGrid& grid, double threshold) {
  std::vector<std::uint8_t> out(grid.size());
  const auto v = grid.values();
  for (std::size_t n = 0; n < v.size(); ++n) out[n] = v[n] > threshold ? facies::channel : facies::mud;
  return FaciesGrid(grid.dims(), std::move(out));
}

}  // namespace facinv
