#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfd/degrade.hpp"
#include "gfd/pipeline.hpp"

namespace gfd {

enum class Method { forward, tvs, sv_gsm, l0_abs, ours };

inline constexpr Method kAllMethods[] = {Method::forward, Method::tvs,
                                         Method::sv_gsm, Method::l0_abs,
                                         Method::ours};

const char* method_name(Method m);

// Published ISNR (dB) for image_key in {"cameraman", "house"} and
// setting 1..5. Throws on unknown keys.
double reference_isnr(const std::string& image_key, Method m, int setting);

// Maps an image path to a reference-table key by filename: a stem
// containing "cameraman"/"camera" or "house" (case-insensitive) selects
// that row; anything else has no stored reference.
std::optional<std::string> image_key_for_path(const std::string& path);

struct BenchRun {
    std::string image_key;  // empty when no reference row applies
    std::string image_path;
    int setting = 0;
    std::uint64_t seed = 0;
    double isnr_db = 0.0;
    double seconds_per_iter = 0.0;
    bool any_infinite_lambda = false;
    double first_isnr_db = 0.0;
    double final_isnr_db = 0.0;
};

struct BenchSummary {
    std::string image_key;
    std::string image_path;
    int setting = 0;
    int n_seeds = 0;
    double mean_isnr = 0.0;
    double std_isnr = 0.0;  // sample std over seeds, 0 when n_seeds < 2
};

struct BenchReport {
    std::vector<BenchRun> runs;
    std::vector<BenchSummary> summaries;
    double mean_seconds_per_iter = 0.0;
};

// Degrades, restores, and scores every (image, setting, seed) triple.
// base.sigma is ignored; each setting supplies its own noise level.
BenchReport run_benchmark(const std::vector<std::string>& image_paths,
                          const std::vector<int>& settings,
                          const std::vector<std::uint64_t>& seeds,
                          const RestorationParams& base,
                          int psf_size_gaussian = 25);

// Deterministic CSV: "run" rows carry per-seed scores, "summary" rows
// carry mean/std plus the stored reference scores side by side. Timing
// is deliberately absent (wall clock is not byte-stable); callers print
// report.mean_seconds_per_iter separately.
std::string report_to_csv(const BenchReport& report);

// Degrades image_path per the setting with the given seed, restores it,
// and writes the per-iteration trace CSV (the clean image is passed as
// reference, so the isnr column is populated). Returns the trace.
RestorationTrace emit_lambda_trace(const std::string& image_path, int setting_id,
                                   std::uint64_t seed, RestorationParams params,
                                   int psf_size_gaussian,
                                   const std::string& csv_path);

// Plain-text key=value configuration ('#' comments, blank lines ok).
// Keys: w, epsilon, max_iter, rho, seed, psf_size_gaussian. Unknown
// keys are an error so typos do not silently fall back to defaults.
struct BenchConfig {
    std::optional<int> w;
    std::optional<double> epsilon;
    std::optional<int> max_iter;
    std::optional<double> rho;
    std::optional<std::uint64_t> seed;
    std::optional<int> psf_size_gaussian;
};

BenchConfig load_config(const std::string& path);

}  // namespace gfd
