#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "facinv/forward.hpp"
#include "facinv/generator.hpp"
#include "facinv/grid_io.hpp"
#include "facinv/parallel.hpp"
#include "facinv/qa.hpp"
#include "facinv/wells.hpp"
#include "json.hpp"

namespace facinv::cli {
namespace {

namespace fs = std::filesystem;

// Bad invocation detected after CLI11 parsing (config merge, flag combos).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

// Every output of a subcommand is staged here and written only after the
// whole computation succeeded. commit() writes temporaries first and renames
// them once all writes went through.
class OutputSet {
 public:
  void add(fs::path path, std::string bytes) { files_.emplace_back(std::move(path), std::move(bytes)); }

  void commit() {
    std::vector<fs::path> staged;
    auto discard = [&] {
      std::error_code ec;
      for (const auto& t : staged) fs::remove(t, ec);
    };
    try {
      for (const auto& [path, bytes] : files_) {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        fs::path tmp = path;
        tmp += ".staged";
        staged.push_back(tmp);
        atomic_write(tmp, bytes);
      }
      for (std::size_t n = 0; n < files_.size(); ++n) {
        std::error_code ec;
        fs::rename(staged[n], files_[n].first, ec);
        if (ec) throw IoError("cannot move output into place at '" + files_[n].first.string() + "'");
      }
    } catch (const fs::filesystem_error& e) {
      discard();
      throw IoError(e.what());
    } catch (...) {
      discard();
      throw;
    }
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

// JSON config: a flat object whose keys are long flag names with '_' in
// place of '-'. Values given on the command line win.
void merge_config(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed config '" + path + "': " + one_line(e.what()));
  }
  if (!j.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
  auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return fmt(v.get<double>());
    throw UsageError("config key '" + key + "' has an unsupported value");
  };
  for (const auto& [key, value] : j.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = flag == "--config" ? nullptr : app.get_option_no_throw(flag);
    if (!opt) throw UsageError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    std::vector<std::string> inputs;
    if (value.is_array()) {
      for (const auto& e : value) inputs.push_back(scalar(key, e));
    } else {
      inputs.push_back(scalar(key, value));
    }
    try {
      opt->add_result(inputs);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + key + "': " + one_line(e.what()));
    }
  }
}

void require(const CLI::App& app, std::initializer_list<const char*> flags) {
  for (const char* f : flags) {
    if (app.get_option(f)->count() == 0) throw UsageError(std::string(f) + " is required");
  }
}

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " '" + path + "' does not exist");
}

Index3 to_index3(const std::vector<std::size_t>& v, const char* what) {
  if (v.size() != 3) throw UsageError(std::string(what) + " needs three values");
  return {v[0], v[1], v[2]};
}

std::string grid_name(const std::string& prefix, std::size_t n, GridFormat f) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_%04zu", n);
  return prefix + buf + std::string(extension(f));
}

std::string curve_file(StatKind kind, std::uint8_t code, Axis axis, const std::string& suffix) {
  return std::string(kind_name(kind)) + "_f" + std::to_string(code) + "_" + axis_name(axis) + suffix + ".csv";
}

std::string envelope_text(const std::vector<StatCurve>& curves) { return envelope_csv(ensemble_envelope(curves)); }

std::size_t clamp_half_length(std::size_t requested, double frequency, double dt, std::size_t nz) {
  return requested > 0 ? requested : std::min(default_half_length(frequency, dt), nz);
}

// Options shared by subcommands.
struct Common {
  std::string config;
  std::optional<unsigned> threads;

  void add(CLI::App& app) {
    app.add_option("--config", config, "JSON file with flat keys named after the long flags");
    app.add_option("--threads", threads, "worker threads (default FACINV_THREADS or all cores)");
  }
  void merge(CLI::App& app) const {
    if (!config.empty()) merge_config(app, config);
  }
};

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  Common common;
  std::string weights, out, format = "u8", prefix = "realization";
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::optional<double> threshold;
  bool raw = false;
};

LatentVector realization_latent(const GeneratorNetwork& net, std::uint64_t seed, std::size_t n) {
  Rng rng(stream_seed(seed, n));
  return sample_latent(net.input_shape(), rng);
}

int do_generate(CLI::App& app, const GenerateArgs& a, std::ostream& out) {
  a.common.merge(app);
  require(app, {"--weights", "--out"});
  require_file(a.weights, "weight file");
  const GridFormat format = parse_grid_format(a.format);
  const auto net = load_generator(a.weights);
  const double threshold = a.threshold.value_or(net.output_threshold());
  std::vector<RealGrid> raw(a.count);
  parallel_for(a.count, resolve_threads(a.common.threads),
               [&](std::size_t n) { raw[n] = generate(net, realization_latent(net, a.seed, n)); });
  OutputSet outputs;
  for (std::size_t n = 0; n < a.count; ++n) {
    outputs.add(fs::path(a.out) / grid_name(a.prefix, n, format), encode_grid(binarize(raw[n], threshold), format));
    if (a.raw) {
      outputs.add(fs::path(a.out) / grid_name(a.prefix + "_raw", n, GridFormat::raw_f32),
                  encode_grid(raw[n], GridFormat::raw_f32));
    }
  }
  outputs.commit();
  out << "generated " << a.count << " realizations of " << net.output_dims().to_string() << " into " << a.out
      << "\n";
  return kOk;
}

// ------------------------------------------------------------------ assess

struct AssessArgs {
  Common common;
  std::string ti, ti_dims, ti_format = "u8", weights, dims, format = "u8", out;
  std::vector<std::string> realizations;
  std::size_t count = 30;
  std::uint64_t seed = 0;
  std::optional<double> threshold;
  std::vector<std::size_t> patch_size{100, 100, 50}, max_lag{0, 0, 0};
  QaConfig qa;
  int neighborhood = 6;
  bool strict = false;
};

int do_assess(CLI::App& app, AssessArgs& a, std::ostream& out) {
  a.common.merge(app);
  require(app, {"--ti", "--ti-dims", "--out"});
  require_file(a.ti, "training image");
  const bool from_weights = !a.weights.empty();
  if (from_weights == !a.realizations.empty()) {
    throw UsageError("give exactly one of --weights or --realizations");
  }
  const auto ti = load_facies_grid(a.ti, parse_grid_format(a.ti_format), parse_dims(a.ti_dims));
  std::vector<FaciesGrid> grids;
  const unsigned threads = resolve_threads(a.common.threads);
  if (from_weights) {
    require_file(a.weights, "weight file");
    const auto net = load_generator(a.weights);
    const double threshold = a.threshold.value_or(net.output_threshold());
    grids.resize(a.count);
    parallel_for(a.count, threads, [&](std::size_t n) {
      grids[n] = binarize(generate(net, realization_latent(net, a.seed, n)), threshold);
    });
  } else {
    if (app.get_option("--dims")->count() == 0) throw UsageError("--realizations needs --dims");
    const auto dims = parse_dims(a.dims);
    const auto format = parse_grid_format(a.format);
    for (const auto& path : a.realizations) {
      require_file(path, "realization");
      grids.push_back(load_facies_grid(path, format, dims));
    }
  }
  a.qa.patch_size = to_index3(a.patch_size, "--patch-size");
  const Index3 lag = to_index3(a.max_lag, "--max-lag");
  a.qa.max_lag = {lag[0], lag[1], lag[2]};
  a.qa.neighborhood = parse_neighborhood(a.neighborhood);
  a.qa.threads = threads;
  const auto report = qa_report(grids, ti, a.qa);

  OutputSet outputs;
  const std::string text = format_qa_report(report);
  outputs.add(fs::path(a.out) / "qa_report.txt", text);
  for (const auto& e : report.entries) {
    outputs.add(fs::path(a.out) / curve_file(e.key.kind, e.key.facies, e.key.axis, "_ti"),
                envelope_csv(e.reference));
    outputs.add(fs::path(a.out) / curve_file(e.key.kind, e.key.facies, e.key.axis, "_realizations"),
                envelope_csv(e.realizations));
  }
  outputs.commit();
  out << text;
  return a.strict && !report.pass ? kDomainFailure : kOk;
}

// ----------------------------------------------------------------- forward

struct ForwardArgs {
  Common common;
  std::string input, dims, format = "u8", out, out_format = "f32", assignment = "midpoint", wavelet_csv_path,
                          reflectivity_path;
  double frequency = 40.0, dt = 0.001, noise_sd = 0.0;
  std::size_t half_length = 0;
  std::uint64_t property_seed = 0, seed = 0;
};

int do_forward(CLI::App& app, const ForwardArgs& a, std::ostream& out) {
  a.common.merge(app);
  require(app, {"--input", "--dims", "--out"});
  require_file(a.input, "facies grid");
  const auto grid = load_facies_grid(a.input, parse_grid_format(a.format), parse_dims(a.dims));
  auto table = FaciesPropertyTable::channel_mud();
  table.mode = parse_assignment_mode(a.assignment);
  const auto wavelet = ricker(a.frequency, a.dt, clamp_half_length(a.half_length, a.frequency, a.dt, grid.dims().nz));
  const auto elastic = facies_to_elastic(grid, table, a.property_seed);
  const auto refl = reflectivity(elastic);
  SeismicCube seismic = synthesize(refl, wavelet);
  if (a.noise_sd != 0.0) seismic = add_noise(seismic, a.noise_sd, a.seed);

  const auto out_format = parse_grid_format(a.out_format);
  OutputSet outputs;
  outputs.add(a.out, encode_grid(seismic, out_format));
  if (!a.wavelet_csv_path.empty()) outputs.add(a.wavelet_csv_path, wavelet_csv(wavelet));
  if (!a.reflectivity_path.empty()) outputs.add(a.reflectivity_path, encode_grid(refl, out_format));
  outputs.commit();
  out << "wrote seismic " << seismic.dims().to_string() << " to " << a.out << "\n";
  return kOk;
}

// ------------------------------------------------------------------ invert

struct InvertArgs {
  Common common;
  std::string weights, observed, observed_format = "f32", dims, wells, out, format = "f32", assignment = "midpoint";
  std::vector<std::size_t> crop_origin;
  double threshold = 0.0, frequency = 40.0, dt = 0.001;
  std::size_t half_length = 0;
  std::uint64_t property_seed = 0, seed = 0;
  LikelihoodSpec likelihood;
  SamplerSettings sampler;
  std::size_t chains = 12;
};

std::string chain_tag(std::size_t c) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "chain_%02zu", c);
  return buf;
}

int do_invert(CLI::App& app, InvertArgs& a, std::ostream& out) {
  a.common.merge(app);
  require(app, {"--weights", "--observed", "--dims", "--out"});
  require_file(a.weights, "weight file");
  require_file(a.observed, "observed cube");
  if (!a.wells.empty()) require_file(a.wells, "wells file");

  InversionProblem p;
  p.network = std::make_shared<const GeneratorNetwork>(load_generator(a.weights));
  p.threshold = a.threshold;
  if (!a.crop_origin.empty()) p.crop_origin = to_index3(a.crop_origin, "--crop-origin");
  p.table.mode = parse_assignment_mode(a.assignment);
  p.property_seed = a.property_seed;
  p.likelihood.sigma_d = a.likelihood.sigma_d;
  p.likelihood.well_weight = a.likelihood.well_weight;
  p.likelihood.observed = load_real_grid(a.observed, parse_grid_format(a.observed_format), parse_dims(a.dims));
  if (!a.wells.empty()) p.likelihood.wells = load_wells(a.wells);
  p.wavelet = ricker(a.frequency, a.dt,
                     clamp_half_length(a.half_length, a.frequency, a.dt, p.likelihood.observed.dims().nz));
  p.sampler = a.sampler;
  p.chains = a.chains;
  p.base_seed = a.seed;
  p.validate();

  const auto chains = run_chains(p, resolve_threads(a.common.threads));
  const auto stats = posterior_stats(chains);

  const auto format = parse_grid_format(a.format);
  const auto facies_format = format == GridFormat::gslib_ascii ? format : GridFormat::raw_u8;
  const fs::path dir = a.out;
  OutputSet outputs;
  outputs.add(dir / ("probability" + std::string(extension(format))), encode_grid(stats.probability, format));
  outputs.add(dir / ("variance" + std::string(extension(format))), encode_grid(stats.variance, format));
  outputs.add(dir / ("sd" + std::string(extension(format))), encode_grid(stats.sd, format));
  outputs.add(dir / ("map" + std::string(extension(facies_format))), encode_grid(stats.map, facies_format));

  std::string table = "chain,seed,retained,acceptance_rate,best_log_posterior,best_misfit,min_misfit,mean_misfit,"
                      "max_misfit,conditioning_accuracy\n";
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& run = chains[c];
    const auto& s = stats.chains[c];
    const std::string tag = chain_tag(c);
    outputs.add(dir / (tag + "_trace.csv"), trace_csv(run.trace));
    outputs.add(dir / (tag + "_map" + std::string(extension(facies_format))), encode_grid(run.best.value, facies_format));
    std::vector<ScoredGrid> own;
    for (const auto& r : run.samples) own.push_back({&r.value, r.log_posterior});
    if (!own.empty()) {
      outputs.add(dir / (tag + "_probability" + std::string(extension(format))),
                  encode_grid(posterior_stats(own).probability, format));
    }
    table += std::to_string(c) + "," + std::to_string(run.seed) + "," + std::to_string(s.retained) + "," +
             fmt(s.acceptance_rate) + "," + fmt(s.best_log_posterior) + "," + fmt(s.best_misfit) + "," +
             fmt(s.min_misfit) + "," + fmt(s.mean_misfit) + "," + fmt(s.max_misfit) + "," +
             fmt(conditioning_accuracy(run.best.value, p.likelihood.wells)) + "\n";
  }
  outputs.add(dir / "chains.csv", table);
  outputs.add(dir / "wavelet.csv", wavelet_csv(p.wavelet));

  const auto& best = chains[stats.map_chain].best;
  std::ostringstream summary;
  summary << "chains = " << chains.size() << "\n"
          << "iterations = " << p.sampler.iterations << "\n"
          << "samples = " << stats.sample_count << "\n"
          << "map_chain = " << stats.map_chain << "\n"
          << "map_log_posterior = " << fmt(stats.map_log_posterior) << "\n"
          << "map_misfit = " << fmt(best.misfit) << "\n"
          << "map_conditioning_accuracy = " << fmt(conditioning_accuracy(stats.map, p.likelihood.wells)) << "\n";
  outputs.add(dir / "summary.txt", summary.str());
  outputs.commit();
  out << summary.str();
  return kOk;
}

// ------------------------------------------------------------------- stats

struct StatsArgs {
  Common common;
  std::vector<std::string> inputs;
  std::string dims, format = "u8", out;
  std::vector<std::size_t> max_lag{0, 0, 0};
  std::vector<unsigned> facies{0, 1};
  int neighborhood = 6;
};

int do_stats(CLI::App& app, const StatsArgs& a, std::ostream& out) {
  a.common.merge(app);
  require(app, {"--inputs", "--dims", "--out"});
  const auto dims = parse_dims(a.dims);
  const auto format = parse_grid_format(a.format);
  std::vector<std::uint8_t> codes;
  for (unsigned c : a.facies) {
    if (c > 255) throw UsageError("facies codes must lie in 0..255");
    codes.push_back(static_cast<std::uint8_t>(c));
  }
  std::vector<std::uint8_t> allowed = codes;
  for (std::uint8_t c : {facies::mud, facies::channel})
    if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) allowed.push_back(c);
  std::vector<FaciesGrid> grids;
  for (const auto& path : a.inputs) {
    require_file(path, "grid");
    grids.push_back(load_facies_grid(path, format, dims, allowed));
  }
  const Index3 lag3 = to_index3(a.max_lag, "--max-lag");
  const auto lag = resolve_max_lag({lag3[0], lag3[1], lag3[2]}, {dims});
  const auto curves = compute_curves_parallel(grids, codes, lag, parse_neighborhood(a.neighborhood),
                                              resolve_threads(a.common.threads));

  OutputSet outputs;
  std::string props = "grid,facies,proportion\n";
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto p = facies_proportions(grids[g]);
    for (std::uint8_t c : codes) {
      const auto it = p.find(c);
      props += std::to_string(g) + "," + std::to_string(c) + "," + fmt(it == p.end() ? 0.0 : it->second) + "\n";
    }
  }
  outputs.add(fs::path(a.out) / "proportions.csv", props);
  for (const auto& [key, first] : curves.front()) {
    std::vector<StatCurve> list;
    for (const auto& set : curves) list.push_back(set.at(key));
    outputs.add(fs::path(a.out) / curve_file(key.kind, key.facies, key.axis, ""), envelope_text(list));
  }
  outputs.commit();
  out << "wrote statistics of " << grids.size() << " grids to " << a.out << "\n";
  return kOk;
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return *flag == 0 ? std::max(1u, std::thread::hardware_concurrency()) : *flag;
  if (const char* env = std::getenv("FACINV_THREADS"); env && *env) {
    unsigned v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto r = std::from_chars(env, end, v);
    if (r.ec != std::errc() || r.ptr != end) throw UsageError("FACINV_THREADS must be a non-negative integer");
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit_plot_data(const std::vector<StatCurve>& curves, const fs::path& path) {
  atomic_write(path, envelope_text(curves));
}

void emit_plot_data(const std::vector<TraceRow>& trace, const fs::path& path) {
  atomic_write(path, trace_csv(trace));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Seismic facies inversion with a generative geological prior", "facinv");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "sample realizations from a FACGEN generator");
  gen.common.add(*g);
  g->add_option("--weights", gen.weights, "FACGEN weight file");
  g->add_option("--count", gen.count, "number of realizations")->capture_default_str();
  g->add_option("--seed", gen.seed, "base seed; realization n uses stream n")->capture_default_str();
  g->add_option("--out", gen.out, "output directory");
  g->add_option("--format", gen.format, "gslib | raw_f32 | raw_u8")->capture_default_str();
  g->add_option("--prefix", gen.prefix, "file name prefix")->capture_default_str();
  g->add_option("--threshold", gen.threshold, "binarization threshold (default from the network)");
  g->add_flag("--raw", gen.raw, "also write the continuous generator output as raw_f32");

  AssessArgs as;
  auto* s = app.add_subcommand("assess", "compare realizations with training-image statistics");
  as.common.add(*s);
  s->add_option("--ti", as.ti, "training image grid");
  s->add_option("--ti-dims", as.ti_dims, "training image dims NXxNYxNZ");
  s->add_option("--ti-format", as.ti_format, "training image format")->capture_default_str();
  s->add_option("--weights", as.weights, "generate realizations from this FACGEN file");
  s->add_option("--count", as.count, "realizations to generate")->capture_default_str();
  s->add_option("--seed", as.seed, "generation seed")->capture_default_str();
  s->add_option("--threshold", as.threshold, "binarization threshold");
  s->add_option("--realizations", as.realizations, "existing realization grids");
  s->add_option("--dims", as.dims, "dims of --realizations");
  s->add_option("--format", as.format, "format of --realizations")->capture_default_str();
  s->add_option("--patch-size", as.patch_size, "training-image patch size x y z")->expected(3)->capture_default_str();
  s->add_option("--patch-count", as.qa.patch_count, "training-image patches")->capture_default_str();
  s->add_option("--patch-seed", as.qa.seed, "patch sampling seed")->capture_default_str();
  s->add_option("--max-lag", as.max_lag, "max lag x y z, 0 = half the smallest extent")->expected(3)->capture_default_str();
  s->add_option("--variogram-threshold", as.qa.variogram_threshold)->capture_default_str();
  s->add_option("--connectivity-threshold", as.qa.connectivity_threshold)->capture_default_str();
  s->add_option("--proportion-threshold", as.qa.proportion_threshold)->capture_default_str();
  s->add_option("--neighborhood", as.neighborhood, "6 or 26")->capture_default_str();
  s->add_option("--out", as.out, "output directory");
  s->add_flag("--strict", as.strict, "exit 1 when the QA verdict is fail");

  ForwardArgs fw;
  auto* f = app.add_subcommand("forward", "forward-model a facies grid to post-stack seismic");
  fw.common.add(*f);
  f->add_option("--input", fw.input, "facies grid");
  f->add_option("--dims", fw.dims, "grid dims NXxNYxNZ");
  f->add_option("--format", fw.format, "input format")->capture_default_str();
  f->add_option("--out", fw.out, "seismic output file");
  f->add_option("--out-format", fw.out_format, "output format")->capture_default_str();
  f->add_option("--frequency", fw.frequency, "Ricker peak frequency in Hz")->capture_default_str();
  f->add_option("--dt", fw.dt, "seconds per cell along z")->capture_default_str();
  f->add_option("--half-length", fw.half_length, "wavelet half length in samples, 0 = min(ceil(3/(f dt)), nz)")
      ->capture_default_str();
  f->add_option("--assignment", fw.assignment, "midpoint | uniform_sample")->capture_default_str();
  f->add_option("--property-seed", fw.property_seed, "seed for uniform_sample")->capture_default_str();
  f->add_option("--noise-sd", fw.noise_sd, "additive Gaussian noise SD")->capture_default_str();
  f->add_option("--seed", fw.seed, "noise seed")->capture_default_str();
  f->add_option("--wavelet-csv", fw.wavelet_csv_path, "also write the wavelet as t,w CSV");
  f->add_option("--reflectivity", fw.reflectivity_path, "also write the reflectivity cube");

  InvertArgs inv;
  auto* v = app.add_subcommand("invert", "Metropolis inversion of a seismic cube and wells");
  inv.common.add(*v);
  v->add_option("--weights", inv.weights, "FACGEN weight file");
  v->add_option("--observed", inv.observed, "observed seismic cube");
  v->add_option("--observed-format", inv.observed_format)->capture_default_str();
  v->add_option("--dims", inv.dims, "survey dims NXxNYxNZ");
  v->add_option("--wells", inv.wells, "wells file (name i j k facies per line)");
  v->add_option("--out", inv.out, "output directory");
  v->add_option("--format", inv.format, "format of the posterior grids")->capture_default_str();
  v->add_option("--threshold", inv.threshold)->capture_default_str();
  v->add_option("--crop-origin", inv.crop_origin, "survey window corner in generator output (default centred)")
      ->expected(3);
  v->add_option("--assignment", inv.assignment)->capture_default_str();
  v->add_option("--property-seed", inv.property_seed)->capture_default_str();
  v->add_option("--frequency", inv.frequency)->capture_default_str();
  v->add_option("--dt", inv.dt)->capture_default_str();
  v->add_option("--half-length", inv.half_length)->capture_default_str();
  v->add_option("--sigma-d", inv.likelihood.sigma_d, "seismic noise SD")->capture_default_str();
  v->add_option("--well-weight", inv.likelihood.well_weight, "penalty per mismatched well cell")->capture_default_str();
  v->add_option("--proposal-fraction", inv.sampler.proposal_fraction)->capture_default_str();
  v->add_option("--iterations", inv.sampler.iterations)->capture_default_str();
  v->add_option("--burn-in", inv.sampler.burn_in_fraction, "burn-in fraction")->capture_default_str();
  v->add_option("--thinning", inv.sampler.thinning)->capture_default_str();
  v->add_option("--chains", inv.chains)->capture_default_str();
  v->add_option("--seed", inv.seed, "base seed; chain c uses stream c")->capture_default_str();

  StatsArgs st;
  auto* t = app.add_subcommand("stats", "proportions and curve envelopes of facies grids");
  st.common.add(*t);
  t->add_option("--inputs", st.inputs, "facies grids");
  t->add_option("--dims", st.dims, "grid dims NXxNYxNZ");
  t->add_option("--format", st.format)->capture_default_str();
  t->add_option("--max-lag", st.max_lag)->expected(3)->capture_default_str();
  t->add_option("--facies", st.facies)->capture_default_str();
  t->add_option("--neighborhood", st.neighborhood)->capture_default_str();
  t->add_option("--out", st.out, "output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "facinv: usage error: " << one_line(e.what()) << "\n";
    return kUsageError;
  }

  try {
    if (*g) return do_generate(*g, gen, out);
    if (*s) return do_assess(*s, as, out);
    if (*f) return do_forward(*f, fw, out);
    if (*v) return do_invert(*v, inv, out);
    return do_stats(*t, st, out);
  } catch (const UsageError& e) {
    err << "facinv: usage error: " << one_line(e.what()) << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "facinv: error: " << one_line(e.what()) << "\n";
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "facinv: error: " << one_line(e.what()) << "\n";
    return kDomainFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace facinv::cli
