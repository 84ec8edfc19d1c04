// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and
// budgets are fixed here. Exit status is non-zero if any criterion fails;
// the throughput criterion only warns.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cli.hpp"
#include "facinv/forward.hpp"
#include "facinv/generator.hpp"
#include "facinv/geostats.hpp"
#include "facinv/grid_io.hpp"
#include "facinv/inversion.hpp"
#include "facinv/wells.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace facinv;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kVariogramTol = 1e-12;
constexpr double kVariogramBudgetS = 1.0;
constexpr double kConnectivityTol = 1e-12;
constexpr double kConnectivityBudgetS = 5.0;
constexpr double kRickerSymmetryTol = 1e-12;
constexpr double kConvTol = 1e-10;
constexpr double kMcmcStandardErrors = 3.0;
constexpr double kMcmcBudgetS = 60.0;
constexpr double kMapMisfitMax = 0.02;
constexpr double kConditioningMin = 0.95;
constexpr double kEndToEndBudgetS = 600.0;
constexpr double kThroughputMin = 50.0;

constexpr Axis kAxes[] = {Axis::x, Axis::y, Axis::z};

enum class Verdict { pass, fail, warn };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

Outcome variogram_oracle() {
  Rng rng(20240601);
  double worst = 0.0, lib_seconds = 0.0;
  std::size_t compared = 0;
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_grid(rng, 8, rng.uniform(0.1, 0.9));
    for (Axis a : kAxes)
      for (std::uint8_t code : {0, 1}) {
        const std::size_t lag = g.dims().extent(static_cast<int>(a)) - 1;
        const auto t0 = Clock::now();
        const auto curve = indicator_variogram(g, code, a, lag);
        lib_seconds += seconds_since(t0);
        for (std::size_t h = 0; h <= lag; ++h) {
          if (!curve.points[h].value) return {Verdict::fail, "missing value at a lag with pairs"};
          worst = std::max(worst, std::abs(*curve.points[h].value - oracle::variogram(g, code, a, h)));
          ++compared;
        }
      }
  }
  const bool ok = worst <= kVariogramTol && lib_seconds < kVariogramBudgetS;
  return {ok ? Verdict::pass : Verdict::fail, std::to_string(compared) + " lags, max |diff| " + fixed(worst) +
                                                  ", library time " + fixed(lib_seconds) + " s"};
}

Outcome connectivity_oracle() {
  Rng rng(777);
  double worst = 0.0, lib_seconds = 0.0;
  std::size_t compared = 0, gaps = 0;
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_grid(rng, 8, rng.uniform(0.3, 0.8));
    for (Neighborhood nb : {Neighborhood::face6, Neighborhood::full26})
      for (Axis a : kAxes) {
        const std::size_t lag = g.dims().extent(static_cast<int>(a)) - 1;
        const auto t0 = Clock::now();
        const auto curve = connectivity_function(g, 1, a, lag, nb);
        lib_seconds += seconds_since(t0);
        for (std::size_t h = 0; h <= lag; ++h) {
          const auto r = oracle::connectivity(g, 1, a, h, nb == Neighborhood::full26);
          if (r.both == 0) {
            if (curve.points[h].value) return {Verdict::fail, "value reported at a lag without pairs"};
            ++gaps;
            continue;
          }
          if (!curve.points[h].value) return {Verdict::fail, "gap reported at a lag with pairs"};
          const double want = static_cast<double>(r.connected) / static_cast<double>(r.both);
          worst = std::max(worst, std::abs(*curve.points[h].value - want));
          ++compared;
        }
      }
  }
  const bool ok = worst <= kConnectivityTol && lib_seconds < kConnectivityBudgetS;
  return {ok ? Verdict::pass : Verdict::fail,
          std::to_string(compared) + " lags (" + std::to_string(gaps) + " empty), max |diff| " + fixed(worst) +
              ", library time " + fixed(lib_seconds) + " s"};
}

Outcome complement_symmetry() {
  Rng rng(4242);
  std::size_t compared = 0;
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::random_grid(rng, 10, rng.uniform01());
    for (Axis a : kAxes) {
      const std::size_t lag = g.dims().extent(static_cast<int>(a)) - 1;
      const auto channel = indicator_variogram(g, facies::channel, a, lag);
      const auto mud = indicator_variogram(g, facies::mud, a, lag);
      for (std::size_t h = 0; h <= lag; ++h) {
        if (channel.points[h].value != mud.points[h].value) {
          return {Verdict::fail, "grid " + std::to_string(t) + " differs at lag " + std::to_string(h)};
        }
        ++compared;
      }
    }
  }
  return {Verdict::pass, std::to_string(compared) + " lags identical"};
}

Outcome ricker_checks() {
  const double f = 40.0, dt = 1e-4;
  const auto w = ricker(f, dt, default_half_length(f, dt));
  const std::size_t h = w.half_length();
  if (w.samples[h] != 1.0) return {Verdict::fail, "w(0) = " + fixed(w.samples[h], 17)};
  double asym = 0.0;
  for (std::size_t n = 0; n < w.samples.size(); ++n) {
    asym = std::max(asym, std::abs(w.samples[n] - w.samples[w.samples.size() - 1 - n]));
  }
  const double t0 = 1.0 / (std::sqrt(2.0) * std::numbers::pi * f);
  std::optional<double> crossing;
  for (std::size_t n = h; n + 1 < w.samples.size(); ++n) {
    if (w.samples[n] > 0.0 && w.samples[n + 1] <= 0.0) {
      crossing = w.time(n + 1);
      const bool brackets = w.time(n) < t0 && t0 <= w.time(n + 1);
      if (!brackets || w.time(n + 1) - w.time(n) > dt * (1 + 1e-9)) crossing.reset();
      break;
    }
  }
  const bool ok = asym <= kRickerSymmetryTol && crossing.has_value();
  return {ok ? Verdict::pass : Verdict::fail,
          "w(0) = 1, max asymmetry " + fixed(asym) + ", first sign change at " +
              (crossing ? fixed(*crossing, 6) : std::string("none")) + " s vs " + fixed(t0, 6) + " s"};
}

Outcome shape_chain_and_scatter_add() {
  std::vector<TransposedConvLayer> layers;
  for (std::uint32_t pad : {1u, 1u, 1u, 1u, 0u}) {
    TransposedConvLayer l;
    l.kernel = {5, 5, 5};
    l.stride = {2, 2, 2};
    l.padding = {pad, pad, pad};
    l.weights.assign(l.kernel_volume(), 0.01f);
    l.bias = {0.0f};
    layers.push_back(l);
  }
  const GeneratorNetwork net(LatentShape{3, 3, 3, 1}, layers);
  std::string chain;
  for (const auto& s : net.shape_chain()) chain += (chain.empty() ? "" : "->") + std::to_string(s[0]);
  const auto out = net.output_dims();
  if (out.nx != 129 || out.ny != 129 || out.nz != 129) return {Verdict::fail, "shape chain " + chain};

  Rng rng(31337);
  double worst = 0.0;
  int cases = 0;
  while (cases < 100) {
    TransposedConvLayer l;
    l.in_channels = 1 + static_cast<std::uint32_t>(rng.below(3));
    l.out_channels = 1 + static_cast<std::uint32_t>(rng.below(3));
    for (int a = 0; a < 3; ++a) {
      l.kernel[a] = 1 + static_cast<std::uint32_t>(rng.below(4));
      l.stride[a] = 1 + static_cast<std::uint32_t>(rng.below(3));
      l.padding[a] = static_cast<std::uint32_t>(rng.below(2));
    }
    l.activation = {static_cast<ActivationKind>(rng.below(3)), 0.2f};
    l.weights.resize(std::size_t{l.in_channels} * l.out_channels * l.kernel_volume());
    for (auto& v : l.weights) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    l.bias.resize(l.out_channels);
    for (auto& v : l.bias) v = static_cast<float>(rng.uniform(-0.5, 0.5));
    FeatureStack x{1 + rng.below(4), 1 + rng.below(4), 1 + rng.below(4), l.in_channels, {}};
    x.values.resize(x.channels * x.cells());
    for (auto& v : x.values) v = rng.uniform(-1.0, 1.0);
    bool positive = true;
    const std::size_t in[3] = {x.nz, x.ny, x.nx};
    for (int a = 0; a < 3; ++a) {
      positive &= static_cast<long long>(in[a] - 1) * l.stride[a] - 2LL * l.padding[a] + l.kernel[a] >= 1;
    }
    if (!positive) continue;
    const auto got = conv_transpose3d(x, l);
    const auto want = oracle::conv_transpose(x, l);
    if (got.values.size() != want.values.size() || got.nx != want.nx || got.ny != want.ny || got.nz != want.nz) {
      return {Verdict::fail, "output shape disagrees with the oracle"};
    }
    for (std::size_t n = 0; n < got.values.size(); ++n) worst = std::max(worst, std::abs(got.values[n] - want.values[n]));
    ++cases;
  }
  return {worst <= kConvTol ? Verdict::pass : Verdict::fail,
          "chain " + chain + ", " + std::to_string(cases) + " random layers, max |diff| " + fixed(worst)};
}

double batch_means_se(const std::vector<double>& x, std::size_t batches) {
  const std::size_t len = x.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t n = 0; n < len; ++n) means[b] += x[b * len + n];
    means[b] /= static_cast<double>(len);
  }
  double m = 0.0;
  for (double v : means) m += v;
  m /= static_cast<double>(batches);
  double s2 = 0.0;
  for (double v : means) s2 += (v - m) * (v - m);
  return std::sqrt(s2 / static_cast<double>(batches - 1) / static_cast<double>(batches));
}

Outcome analytic_mcmc() {
  const double d0 = 0.3, sigma = 0.2;
  const double exact = oracle::truncated_normal_mean(d0, sigma, -1.0, 1.0);
  const double quad = oracle::truncated_normal_mean_quadrature(d0, sigma, -1.0, 1.0);
  if (std::abs(exact - quad) > 1e-9) return {Verdict::fail, "oracle closed form and quadrature disagree"};

  struct Value {
    double v = 0.0;
  };
  auto identity_generator = [&](const LatentVector& theta) {
    const double r = theta[0] - d0;
    return Evaluation<Value>{-r * r / (2.0 * sigma * sigma), std::abs(r), Value{theta[0]}};
  };
  SamplerSettings s;
  s.iterations = 100000;
  s.burn_in_fraction = 0.5;
  s.thinning = 1;
  s.proposal_fraction = 1.0;
  const auto t0 = Clock::now();
  const auto run = run_metropolis(LatentShape{1, 1, 1, 1}, identity_generator, [](const Value& v) { return v.v; },
                                  s, 20210101);
  const double elapsed = seconds_since(t0);
  std::vector<double> xs;
  xs.reserve(run.samples.size());
  for (const auto& r : run.samples) xs.push_back(r.value);
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(xs.size());
  const double se = batch_means_se(xs, 100);
  const double z = std::abs(mean - exact) / se;
  const bool ok = xs.size() >= 50000 && z <= kMcmcStandardErrors && elapsed < kMcmcBudgetS;
  return {ok ? Verdict::pass : Verdict::fail,
          std::to_string(xs.size()) + " samples, mean " + fixed(mean, 6) + " vs " + fixed(exact, 6) + " (" +
              fixed(z, 3) + " SE, SE " + fixed(se, 3) + "), " + fixed(elapsed, 3) + " s"};
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  InversionProblem p;
  p.network = std::make_shared<const GeneratorNetwork>(load_generator(testutil::data_dir() / "fixture_generator.facgen"));
  Rng truth_rng(99);
  const auto truth = binarize(generate(*p.network, sample_latent(p.network->input_shape(), truth_rng)));
  p.wavelet = ricker(40.0, 0.001, std::min<std::size_t>(default_half_length(40.0, 0.001), truth.dims().nz));
  p.likelihood.sigma_d = 0.01;
  p.likelihood.observed = add_noise(forward_model(truth, p.table, p.wavelet), 0.01, 100);
  p.likelihood.wells = sample_wells(truth, {{5, 5}, {26, 5}, {16, 16}, {5, 26}, {26, 26}});
  p.sampler.iterations = 5000;
  p.sampler.proposal_fraction = 0.05;
  p.chains = 4;
  p.base_seed = 2021;
  const auto chains = run_chains(p, 4);
  const auto stats = posterior_stats(chains);
  const double elapsed = seconds_since(t0);
  const auto& best = chains[stats.map_chain].best;
  const double accuracy = conditioning_accuracy(stats.map, p.likelihood.wells);
  const bool ok = best.misfit <= kMapMisfitMax && accuracy >= kConditioningMin && elapsed < kEndToEndBudgetS;
  std::string per_chain;
  for (const auto& c : chains) per_chain += (per_chain.empty() ? "" : "/") + fixed(c.best.misfit, 3);
  return {ok ? Verdict::pass : Verdict::fail,
          "MAP misfit " + fixed(best.misfit, 4) + " (chains " + per_chain + "), conditioning " + fixed(accuracy, 4) +
              ", " + fixed(elapsed, 3) + " s"};
}

Outcome invert_reproducibility() {
  testutil::TempDir tmp("acceptance_repro");
  std::ostringstream sink, err;
  const std::string weights = (testutil::data_dir() / "fixture_generator.facgen").string();
  int rc = cli::run({"generate", "--weights", weights, "--seed", "5", "--out", (tmp / "truth").string()}, sink, err);
  const auto truth = load_facies_grid(tmp / "truth" / "realization_0000.u8", GridFormat::raw_u8, GridDims(32, 32, 16));
  save_wells(sample_wells(truth, {{8, 8}, {24, 24}}), tmp / "wells.txt");
  rc |= cli::run({"forward", "--input", (tmp / "truth" / "realization_0000.u8").string(), "--dims", "32x32x16",
                  "--out", (tmp / "obs.f32").string(), "--noise-sd", "0.01", "--seed", "6"},
                 sink, err);
  atomic_write(tmp / "invert.json",
               "{\"weights\": \"" + weights + "\", \"observed\": \"" + (tmp / "obs.f32").string() +
                   "\", \"dims\": \"32x32x16\", \"wells\": \"" + (tmp / "wells.txt").string() +
                   "\", \"iterations\": 300, \"chains\": 3, \"proposal_fraction\": 0.05, \"seed\": 17}");
  rc |= cli::run({"invert", "--config", (tmp / "invert.json").string(), "--out", (tmp / "a").string(), "--threads", "3"},
                 sink, err);
  rc |= cli::run({"invert", "--config", (tmp / "invert.json").string(), "--out", (tmp / "b").string(), "--threads", "1"},
                 sink, err);
  if (rc != 0) return {Verdict::fail, "CLI failed: " + err.str()};
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(tmp / "a")) {
    const auto other = tmp / "b" / entry.path().filename().string();
    if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
      return {Verdict::fail, entry.path().filename().string() + " differs between runs"};
    }
    ++files;
  }
  const bool ok = files >= 4 + 3;
  return {ok ? Verdict::pass : Verdict::fail, std::to_string(files) + " output files byte-identical across runs"};
}

Outcome throughput() {
  const auto net = load_generator(testutil::data_dir() / "fixture_generator.facgen");
  Rng rng(1);
  std::size_t count = 0;
  double checksum = 0.0;
  const auto t0 = Clock::now();
  double elapsed = 0.0;
  while (elapsed < 1.0) {
    const auto g = generate(net, sample_latent(net.input_shape(), rng));
    checksum += g[0];
    ++count;
    elapsed = seconds_since(t0);
  }
  const double rate = static_cast<double>(count) / elapsed;
  (void)checksum;
  return {rate >= kThroughputMin ? Verdict::pass : Verdict::warn,
          fixed(rate, 4) + " realizations/s single-threaded (floor " + fixed(kThroughputMin) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"variogram-oracle", variogram_oracle},
      {"connectivity-oracle", connectivity_oracle},
      {"complement-symmetry", complement_symmetry},
      {"ricker", ricker_checks},
      {"transposed-conv-shape-chain", shape_chain_and_scatter_add},
      {"analytic-mcmc-posterior", analytic_mcmc},
      {"end-to-end-recovery", end_to_end},
      {"invert-reproducibility", invert_reproducibility},
      {"generator-throughput", throughput},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "WARN";
    failures += o.verdict == Verdict::fail;
    std::printf("%s %s: %s\n", tag, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
