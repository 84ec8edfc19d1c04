// Builds the bundled fixtures under data/:
//   ti_channels_120x150x180.u8   synthetic channel/mud training image
//   fixture_generator.facgen      3x3x3x1 latent -> 32x32x16 generator
// Both are deterministic; rerunning reproduces the committed bytes.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "facinv/generator.hpp"
#include "facinv/grid_io.hpp"
#include "facinv/random.hpp"

using namespace facinv;

namespace {

// Straight channels along y with a flat top and a convex (half-ellipse) base
// in the x-z section, stacked until the channel fraction reaches `target`.
FaciesGrid channel_training_image(const GridDims& dims, double target, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> cells(dims.size(), facies::mud);
  std::size_t channel = 0;
  const double goal = target * static_cast<double>(dims.size());
  while (static_cast<double>(channel) < goal) {
    const double xc = rng.uniform(0.0, static_cast<double>(dims.nx));
    const double top = rng.uniform(0.0, static_cast<double>(dims.nz));
    const double half_width = rng.uniform(4.0, 10.0);
    const double depth = rng.uniform(3.0, 6.0);
    const double drift = rng.uniform(0.0, 2.0);
    const double wavelength = rng.uniform(60.0, 200.0);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < dims.ny; ++j) {
      const double cx = xc + drift * std::sin(2.0 * std::numbers::pi * j / wavelength + phase);
      const long long i0 = std::max(0LL, static_cast<long long>(std::floor(cx - half_width)));
      const long long i1 = std::min<long long>(dims.nx - 1, static_cast<long long>(std::ceil(cx + half_width)));
      for (long long i = i0; i <= i1; ++i) {
        const double u = (static_cast<double>(i) - cx) / half_width;
        if (std::abs(u) > 1.0) continue;
        const double base = top - depth * std::sqrt(1.0 - u * u);
        const long long k0 = std::max(0LL, static_cast<long long>(std::ceil(base)));
        const long long k1 = std::min<long long>(dims.nz - 1, static_cast<long long>(std::floor(top)));
        for (long long k = k0; k <= k1; ++k) {
          auto& c = cells[dims.index(static_cast<std::size_t>(i), j, static_cast<std::size_t>(k))];
          if (c != facies::channel) {
            c = facies::channel;
            ++channel;
          }
        }
      }
    }
  }
  return FaciesGrid(dims, std::move(cells));
}

TransposedConvLayer make_layer(std::uint32_t in, std::uint32_t out, std::array<std::uint32_t, 3> kernel,
                               std::array<std::uint32_t, 3> stride, std::array<std::uint32_t, 3> padding,
                               Activation act) {
  TransposedConvLayer l;
  l.in_channels = in;
  l.out_channels = out;
  l.kernel = kernel;
  l.stride = stride;
  l.padding = padding;
  l.activation = act;
  l.weights.assign(std::size_t{in} * out * l.kernel_volume(), 0.0f);
  l.bias.assign(out, 0.0f);
  return l;
}

// Three transposed convolutions:
//   1. 1x1x1 tanh with steep gain: each latent entry becomes a 4-level code
//      (thresholds -0.5, 0, 0.5), so the output is piecewise constant in
//      the latent away from those thresholds.
//   2. (2,4,4) stride (1,2,2) leaky ReLU mixing, 3x3x3 -> 8x8x4.
//   3. (8,8,8) stride 4 padding 2 tanh: channel templates elongated along y
//      with a flat top and convex base, 8x8x4 -> 32x32x16.
GeneratorNetwork fixture_generator(std::uint64_t seed) {
  Rng rng(seed);
  const float gain = 1000.0f;
  const float thresholds[3] = {-0.5f, 0.0f, 0.5f};

  auto l1 = make_layer(1, 3, {1, 1, 1}, {1, 1, 1}, {0, 0, 0}, {ActivationKind::tanh, 0.2f});
  for (int c = 0; c < 3; ++c) {
    l1.weights[l1.weight_index(0, c, 0, 0, 0)] = gain;
    l1.bias[c] = -gain * thresholds[c];
  }

  const std::uint32_t hidden = 8;
  auto l2 = make_layer(3, hidden, {2, 4, 4}, {1, 2, 2}, {0, 0, 0}, {ActivationKind::leaky_relu, 0.2f});
  for (std::uint32_t in = 0; in < 3; ++in)
    for (std::uint32_t out = 0; out < hidden; ++out) {
      const double a = rng.uniform(-1.0, 1.0);
      for (std::uint32_t kd = 0; kd < 2; ++kd)
        for (std::uint32_t kh = 0; kh < 4; ++kh)
          for (std::uint32_t kw = 0; kw < 4; ++kw) {
            const double v = a + 0.3 * rng.uniform(-1.0, 1.0);
            l2.weights[l2.weight_index(in, out, kd, kh, kw)] = static_cast<float>(0.5 * v);
          }
    }
  for (auto& b : l2.bias) b = static_cast<float>(rng.uniform(-0.2, 0.2));

  auto l3 = make_layer(hidden, 1, {8, 8, 8}, {4, 4, 4}, {2, 2, 2}, {ActivationKind::tanh, 0.2f});
  for (std::uint32_t in = 0; in < hidden; ++in) {
    const double sign = (in % 2 == 0) ? 1.0 : -1.0;
    const double xc = rng.uniform(2.5, 4.5);
    const double half_width = rng.uniform(1.5, 3.0);
    const double top = rng.uniform(4.5, 6.5);
    const double depth = rng.uniform(2.0, 4.0);
    for (std::uint32_t kd = 0; kd < 8; ++kd)
      for (std::uint32_t kh = 0; kh < 8; ++kh)
        for (std::uint32_t kw = 0; kw < 8; ++kw) {
          const double u = (kw - xc) / half_width;
          double v = -0.3;
          if (std::abs(u) <= 1.0) {
            const double base = top - depth * std::sqrt(1.0 - u * u);
            if (kd >= base && kd <= top) v = 1.0;
          }
          l3.weights[l3.weight_index(in, 0, kd, kh, kw)] = static_cast<float>(sign * v);
        }
  }
  l3.bias[0] = 0.0f;
  return GeneratorNetwork(LatentShape{3, 3, 3, 1}, {std::move(l1), std::move(l2), std::move(l3)});
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  const GridDims ti_dims(120, 150, 180);
  const FaciesGrid ti = channel_training_image(ti_dims, 0.51, 20210);
  save_grid(ti, dir / "ti_channels_120x150x180.u8", GridFormat::raw_u8);
  std::printf("training image %s channel fraction %.6f\n", ti_dims.to_string().c_str(),
              facies_proportions(ti).at(facies::channel));

  const GeneratorNetwork net = fixture_generator(4242);
  save_generator(net, dir / "fixture_generator.facgen");
  std::printf("fixture generator output %s\n", net.output_dims().to_string().c_str());
  return 0;
}
