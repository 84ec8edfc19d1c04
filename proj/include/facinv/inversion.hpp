#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "facinv/forward.hpp"
#include "facinv/generator.hpp"
#include "facinv/grid.hpp"
#include "facinv/random.hpp"
#include "facinv/wells.hpp"

namespace facinv {

// Gaussian seismic noise with covariance sigma_d^2 I plus a per-mismatch
// penalty at observed well cells.
struct LikelihoodSpec {
  double sigma_d = 0.01;
  double well_weight = 10.0;
  SeismicCube observed;
  WellSet wells;

  void validate() const;
};

// -N/2 ln(2 pi sigma^2) - sum (d_i - d(m)_i)^2 / (2 sigma^2)
double log_likelihood_seismic(const SeismicCube& observed, const SeismicCube& synthetic,
                              double sigma_d);
// -weight * (number of observed well cells whose facies differs from grid)
double log_likelihood_wells(const FaciesGrid& grid, const WellSet& wells, double weight);
// Fraction of observed well cells matched by grid; 1 when there are none.
double conditioning_accuracy(const FaciesGrid& grid, const WellSet& wells);
// Root-mean-square residual between two cubes of equal dims.
double misfit_rms(const SeismicCube& observed, const SeismicCube& synthetic);

// Subset resampling: each entry is redrawn from U(-1, 1) with probability
// `fraction`, otherwise kept. Symmetric, so no Hastings correction applies.
// fraction = 0 is accepted as a no-op.
LatentVector propose(const LatentVector& theta, double fraction, Rng& rng);

// Metropolis rule: accept iff u < min(1, exp(candidate - current)).
bool metropolis_accept(double current_log_posterior, double candidate_log_posterior, double u);

struct SamplerSettings {
  double proposal_fraction = 0.1;
  std::size_t iterations = 30000;
  double burn_in_fraction = 0.5;
  std::size_t thinning = 10;

  void validate() const;
  std::size_t burn_in() const {
    return static_cast<std::size_t>(std::floor(burn_in_fraction * static_cast<double>(iterations)));
  }
  bool retains(std::size_t iteration) const {
    const std::size_t b = burn_in();
    return iteration >= b && (iteration - b) % thinning == 0;
  }
};

template <class Payload>
struct Evaluation {
  double log_posterior = 0.0;
  double misfit = 0.0;
  Payload payload;
};

// Current position of one Markov chain.
template <class Payload>
struct ChainState {
  LatentVector theta;
  Payload payload;
  double log_posterior = 0.0;
  double misfit = 0.0;
  std::size_t iteration = 0;
  std::size_t accepted = 0;
};

struct TraceRow {
  std::size_t iteration = 0;
  double log_posterior = 0.0;
  double best_log_posterior = 0.0;  // running maximum
  double acceptance_rate = 0.0;     // accepted / iteration, 0 at iteration 0
  double misfit = 0.0;
};

template <class Sample>
struct RetainedSample {
  std::size_t iteration = 0;
  LatentVector theta;
  double log_posterior = 0.0;
  double misfit = 0.0;
  Sample value;
};

template <class Sample>
struct ChainRun {
  std::size_t chain_index = 0;
  std::uint64_t seed = 0;
  std::vector<RetainedSample<Sample>> samples;  // post-burn-in, thinned
  std::vector<TraceRow> trace;                  // iterations + 1 rows
  RetainedSample<Sample> best;                  // highest log-posterior seen
  std::size_t accepted = 0;

  double acceptance_rate() const {
    return trace.size() > 1 ? static_cast<double>(accepted) / static_cast<double>(trace.size() - 1)
                            : 0.0;
  }
};

// Generic Metropolis driver over a latent vector with a U(-1, 1)^n prior.
// `evaluate(theta)` returns an Evaluation<Payload>; `retain(payload)` maps a
// payload to what is stored per retained sample.
template <class Evaluate, class Retain>
auto run_metropolis(const LatentShape& shape, Evaluate&& evaluate, Retain&& retain,
                    const SamplerSettings& settings, std::uint64_t seed, std::size_t chain_index = 0) {
  using Payload = decltype(evaluate(std::declval<const LatentVector&>()).payload);
  using Sample = std::decay_t<decltype(retain(std::declval<const Payload&>()))>;
  settings.validate();

  Rng rng(seed);
  ChainRun<Sample> run;
  run.chain_index = chain_index;
  run.seed = seed;
  run.trace.reserve(settings.iterations + 1);

  ChainState<Payload> state;
  state.theta = sample_latent(shape, rng);
  {
    auto e = evaluate(state.theta);
    state.payload = std::move(e.payload);
    state.log_posterior = e.log_posterior;
    state.misfit = e.misfit;
  }
  if (!std::isfinite(state.log_posterior)) throw DomainError("initial log-posterior is not finite");

  auto snapshot = [&] {
    return RetainedSample<Sample>{state.iteration, state.theta, state.log_posterior, state.misfit,
                                  retain(state.payload)};
  };
  run.best = snapshot();
  auto record = [&] {
    const double rate = state.iteration == 0 ? 0.0
                                             : static_cast<double>(state.accepted) /
                                                   static_cast<double>(state.iteration);
    run.trace.push_back({state.iteration, state.log_posterior, run.best.log_posterior, rate,
                         state.misfit});
    if (settings.retains(state.iteration)) run.samples.push_back(snapshot());
  };
  record();

  for (std::size_t t = 1; t <= settings.iterations; ++t) {
    LatentVector candidate = propose(state.theta, settings.proposal_fraction, rng);
    const double u = rng.uniform01();
    state.iteration = t;
    if (candidate == state.theta) {
      ++state.accepted;  // identical state, ratio 1
    } else {
      auto e = evaluate(candidate);
      if (!std::isfinite(e.log_posterior)) throw DomainError("candidate log-posterior is not finite");
      if (metropolis_accept(state.log_posterior, e.log_posterior, u)) {
        state.theta = std::move(candidate);
        state.payload = std::move(e.payload);
        state.log_posterior = e.log_posterior;
        state.misfit = e.misfit;
        ++state.accepted;
        if (state.log_posterior > run.best.log_posterior) run.best = snapshot();
      }
    }
    record();
  }
  run.accepted = state.accepted;
  return run;
}

struct InversionProblem {
  std::shared_ptr<const GeneratorNetwork> network;
  double threshold = 0.0;
  // Corner of the survey-sized window cut from the generator output; empty
  // selects the centred window.
  std::optional<Index3> crop_origin;
  FaciesPropertyTable table = FaciesPropertyTable::channel_mud();
  std::uint64_t property_seed = 0;  // used by uniform_sample assignment only
  Wavelet wavelet;
  LikelihoodSpec likelihood;
  SamplerSettings sampler;
  std::size_t chains = 12;
  std::uint64_t base_seed = 0;

  // Throws unless the crop fits the generator output, matches the observed
  // cube and the wells, and all scalars are in range.
  void validate() const;
  Index3 crop_size() const;
  Index3 resolved_crop_origin() const;
};

struct ForwardState {
  FaciesGrid facies;
  SeismicCube synthetic;
};

// generate -> binarize -> crop -> elastic -> reflectivity -> synthesize, then
// log-posterior = seismic + wells terms (the uniform prior is constant).
Evaluation<ForwardState> evaluate_latent(const InversionProblem& problem, const LatentVector& theta);

using ChainResult = ChainRun<FaciesGrid>;

std::uint64_t chain_seed(std::uint64_t base_seed, std::size_t chain_index);
ChainResult run_chain(const InversionProblem& problem, std::size_t chain_index);
// All chains, in parallel on up to `threads` workers, ordered by chain index.
std::vector<ChainResult> run_chains(const InversionProblem& problem, unsigned threads);

struct ScoredGrid {
  const FaciesGrid* grid = nullptr;
  double log_posterior = 0.0;
};

struct ChainSummary {
  std::size_t chain_index = 0;
  std::size_t retained = 0;
  double acceptance_rate = 0.0;
  double best_log_posterior = 0.0;
  double best_misfit = 0.0;  // RMS residual of the chain's best state
  double min_misfit = 0.0;   // over retained samples
  double mean_misfit = 0.0;
  double max_misfit = 0.0;
};

struct PosteriorStats {
  RealGrid probability;  // per-cell channel frequency
  RealGrid variance;     // p (1 - p)
  RealGrid sd;
  FaciesGrid map;        // highest log-posterior state
  double map_log_posterior = 0.0;
  std::size_t map_chain = 0;
  std::size_t sample_count = 0;
  std::vector<ChainSummary> chains;
};

// Indicator moments over the samples; MAP is the highest scored grid.
PosteriorStats posterior_stats(const std::vector<ScoredGrid>& samples);
// Pools every chain's retained samples; MAP is the best state of any chain.
PosteriorStats posterior_stats(const std::vector<ChainResult>& chains);

// "iteration,log_posterior,acceptance_rate,misfit_sd", one row per iteration.
std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace facinv
