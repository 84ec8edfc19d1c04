#include "facinv/inversion.hpp"

#include <algorithm>
#include <charconv>
#include <numbers>

#include "facinv/parallel.hpp"

namespace facinv {

void LikelihoodSpec::validate() const {
  if (!(sigma_d > 0.0) || !std::isfinite(sigma_d)) throw DomainError("sigma_d must be positive");
  if (!(well_weight >= 0.0) || !std::isfinite(well_weight)) {
    throw DomainError("well weight must be non-negative");
  }
}

double log_likelihood_seismic(const SeismicCube& observed, const SeismicCube& synthetic,
                              double sigma_d) {
  if (!observed.dims().same_shape(synthetic.dims())) {
    throw ShapeError("observed " + observed.dims().to_string() + " and synthetic " +
                     synthetic.dims().to_string() + " cubes differ in shape");
  }
  if (!(sigma_d > 0.0)) throw DomainError("sigma_d must be positive");
  const auto a = observed.values();
  const auto b = synthetic.values();
  double ss = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double r = a[n] - b[n];
    ss += r * r;
  }
  const double var = sigma_d * sigma_d;
  const double count = static_cast<double>(a.size());
  return -0.5 * count * std::log(2.0 * std::numbers::pi * var) - ss / (2.0 * var);
}

namespace {

std::size_t well_mismatches(const FaciesGrid& grid, const WellSet& wells) {
  wells.validate(grid.dims());
  std::size_t n = 0;
  for (const auto& w : wells.wells)
    for (const auto& o : w.observations) n += static_cast<std::size_t>(grid.at(w.i, w.j, o.k) != o.facies);
  return n;
}

}  // namespace

double log_likelihood_wells(const FaciesGrid& grid, const WellSet& wells, double weight) {
  const std::size_t n = well_mismatches(grid, wells);
  if (weight == 0.0) return 0.0;
  return -weight * static_cast<double>(n);
}

double conditioning_accuracy(const FaciesGrid& grid, const WellSet& wells) {
  const std::size_t n = well_mismatches(grid, wells);
  const std::size_t total = wells.observation_count();
  if (total == 0) return 1.0;
  return static_cast<double>(total - n) / static_cast<double>(total);
}

double misfit_rms(const SeismicCube& observed, const SeismicCube& synthetic) {
  if (!observed.dims().same_shape(synthetic.dims())) throw ShapeError("misfit of cubes with different shapes");
  const auto a = observed.values();
  const auto b = synthetic.values();
  double ss = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) ss += (a[n] - b[n]) * (a[n] - b[n]);
  return std::sqrt(ss / static_cast<double>(a.size()));
}

LatentVector propose(const LatentVector& theta, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DomainError("proposal fraction must lie in [0, 1]");
  LatentVector out = theta;
  if (fraction == 0.0) return out;
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (rng.uniform01() < fraction) out.set(n, rng.uniform(-1.0, 1.0));
  }
  return out;
}

bool metropolis_accept(double current_log_posterior, double candidate_log_posterior, double u) {
  const double delta = candidate_log_posterior - current_log_posterior;
  if (delta >= 0.0) return true;
  return u < std::exp(delta);
}

void SamplerSettings::validate() const {
  if (!(proposal_fraction > 0.0 && proposal_fraction <= 1.0)) {
    throw DomainError("proposal fraction must lie in (0, 1]");
  }
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw DomainError("burn-in fraction must lie in [0, 1)");
  }
  if (thinning < 1) throw DomainError("thinning interval must be at least 1");
}

Index3 InversionProblem::crop_size() const {
  const auto& d = likelihood.observed.dims();
  return {d.nx, d.ny, d.nz};
}

Index3 InversionProblem::resolved_crop_origin() const {
  if (crop_origin) return *crop_origin;
  const auto out = network->output_dims();
  const auto size = crop_size();
  Index3 o{};
  for (int a = 0; a < 3; ++a) {
    if (size[a] > out.extent(a)) throw DomainError("survey is larger than the generator output");
    o[a] = (out.extent(a) - size[a]) / 2;
  }
  return o;
}

void InversionProblem::validate() const {
  if (!network) throw DomainError("inversion problem has no generator");
  if (chains < 1) throw DomainError("chain count must be at least 1");
  likelihood.validate();
  sampler.validate();
  if (wavelet.samples.empty()) throw DomainError("inversion problem has no wavelet");
  checked_patch_bounds(network->output_dims(), resolved_crop_origin(), crop_size());
  likelihood.wells.validate(likelihood.observed.dims());
}

Evaluation<ForwardState> evaluate_latent(const InversionProblem& problem, const LatentVector& theta) {
  const RealGrid raw = generate(*problem.network, theta);
  FaciesGrid model = binarize(raw, problem.threshold);
  if (!model.dims().same_shape(problem.likelihood.observed.dims())) {
    model = extract_patch(model, problem.resolved_crop_origin(), problem.crop_size());
  }
  SeismicCube synthetic = forward_model(model, problem.table, problem.wavelet, problem.property_seed);
  const auto& lk = problem.likelihood;
  Evaluation<ForwardState> e;
  e.log_posterior = log_likelihood_seismic(lk.observed, synthetic, lk.sigma_d) +
                    log_likelihood_wells(model, lk.wells, lk.well_weight);
  e.misfit = misfit_rms(lk.observed, synthetic);
  e.payload = ForwardState{std::move(model), std::move(synthetic)};
  return e;
}

std::uint64_t chain_seed(std::uint64_t base_seed, std::size_t chain_index) {
  return stream_seed(base_seed, chain_index);
}

ChainResult run_chain(const InversionProblem& problem, std::size_t chain_index) {
  problem.validate();
  return run_metropolis(
      problem.network->input_shape(),
      [&](const LatentVector& theta) { return evaluate_latent(problem, theta); },
      [](const ForwardState& s) { return s.facies; }, problem.sampler,
      chain_seed(problem.base_seed, chain_index), chain_index);
}

std::vector<ChainResult> run_chains(const InversionProblem& problem, unsigned threads) {
  problem.validate();
  std::vector<ChainResult> out(problem.chains);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, problem.chains));
  parallel_for(problem.chains, threads, [&](std::size_t c) { out[c] = run_chain(problem, c); });
  return out;
}

PosteriorStats posterior_stats(const std::vector<ScoredGrid>& samples) {
  if (samples.empty()) throw DomainError("posterior statistics need at least one sample");
  const GridDims dims = samples.front().grid->dims();
  std::vector<std::size_t> counts(dims.size(), 0);
  std::size_t best = 0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& g = *samples[s].grid;
    if (!g.dims().same_shape(dims)) throw ShapeError("posterior samples differ in shape");
    const auto v = g.values();
    for (std::size_t n = 0; n < v.size(); ++n) counts[n] += static_cast<std::size_t>(v[n] == facies::channel);
    if (samples[s].log_posterior > samples[best].log_posterior) best = s;
  }
  const double total = static_cast<double>(samples.size());
  std::vector<double> p(dims.size()), var(dims.size()), sd(dims.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    p[n] = static_cast<double>(counts[n]) / total;
    var[n] = p[n] * (1.0 - p[n]);
    sd[n] = std::sqrt(var[n]);
  }
  PosteriorStats out{RealGrid(dims, std::move(p)), RealGrid(dims, std::move(var)),
                     RealGrid(dims, std::move(sd)), *samples[best].grid,
                     samples[best].log_posterior, 0, samples.size(), {}};
  return out;
}

PosteriorStats posterior_stats(const std::vector<ChainResult>& chains) {
  std::vector<ScoredGrid> scored;
  for (const auto& c : chains)
    for (const auto& s : c.samples) scored.push_back({&s.value, s.log_posterior});
  PosteriorStats out = posterior_stats(scored);

  std::size_t best_chain = 0;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (chains[c].best.log_posterior > chains[best_chain].best.log_posterior) best_chain = c;
  }
  out.map = chains[best_chain].best.value;
  out.map_log_posterior = chains[best_chain].best.log_posterior;
  out.map_chain = chains[best_chain].chain_index;

  for (const auto& c : chains) {
    ChainSummary s;
    s.chain_index = c.chain_index;
    s.retained = c.samples.size();
    s.acceptance_rate = c.acceptance_rate();
    s.best_log_posterior = c.best.log_posterior;
    s.best_misfit = c.best.misfit;
    if (!c.samples.empty()) {
      s.min_misfit = s.max_misfit = c.samples.front().misfit;
      double sum = 0.0;
      for (const auto& r : c.samples) {
        s.min_misfit = std::min(s.min_misfit, r.misfit);
        s.max_misfit = std::max(s.max_misfit, r.misfit);
        sum += r.misfit;
      }
      s.mean_misfit = sum / static_cast<double>(c.samples.size());
    }
    out.chains.push_back(s);
  }
  return out;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iteration,log_posterior,acceptance_rate,misfit_sd\n";
  char buf[64];
  auto put = [&](double v) {
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, r.ptr);
  };
  for (const auto& row : trace) {
    out += std::to_string(row.iteration);
    out.push_back(',');
    put(row.log_posterior);
    out.push_back(',');
    put(row.acceptance_rate);
    out.push_back(',');
    put(row.misfit);
    out.push_back('\n');
  }
  return out;
}

}  // namespace facinv
