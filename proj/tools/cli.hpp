#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "facinv/geostats.hpp"
#include "facinv/inversion.hpp"

namespace facinv::cli {

// Exit codes: 0 success, 1 domain failure (including a failed --strict QA),
// 2 usage error (unknown flag, missing file, malformed config).
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;

// `args` excludes the program name. Diagnostics go to `err` as one line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// Ensemble envelope of `curves` as "lag,mean,min,max". Throws DomainError on
// an empty list.
void emit_plot_data(const std::vector<StatCurve>& curves, const std::filesystem::path& path);
// "iteration,log_posterior,acceptance_rate,misfit_sd".
void emit_plot_data(const std::vector<TraceRow>& trace, const std::filesystem::path& path);

// Flag value, else FACINV_THREADS, else hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> flag);

}  // namespace facinv::cli
