#include "gfd/benchmark.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gfd/image_io.hpp"
#include "gfd/metrics.hpp"

namespace gfd {

namespace {

// Rows of the published comparison tables, settings 1..5 per method.
struct ScoreRow {
    double v[5];
};

const std::map<std::string, std::map<Method, ScoreRow>>& score_table() {
    static const std::map<std::string, std::map<Method, ScoreRow>> table = {
        {"cameraman",
         {{Method::forward, {{6.76, 5.08, 7.40, 2.40, 3.14}}},
          {Method::tvs, {{7.41, 5.24, 8.56, 2.57, 3.36}}},
          {Method::sv_gsm, {{7.45, 5.55, 7.33, 2.73, 3.25}}},
          {Method::l0_abs, {{7.70, 5.55, 9.10, 2.93, 3.49}}},
          {Method::ours, {{8.16, 6.09, 9.53, 3.36, 3.95}}}}},
        {"house",
         {{Method::forward, {{7.35, 6.03, 9.56, 3.19, 3.85}}},
          {Method::tvs, {{7.98, 6.57, 10.39, 4.49, 4.57}}},
          {Method::sv_gsm, {{8.64, 7.03, 9.04, 4.30, 4.11}}},
          {Method::l0_abs, {{8.40, 7.12, 10.74, 4.55, 4.80}}},
          {Method::ours, {{8.83, 7.46, 11.11, 4.84, 5.34}}}}},
    };
    return table;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string path_stem(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

std::string csv_num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::forward: return "ForWaRD";
        case Method::tvs: return "TVS";
        case Method::sv_gsm: return "SV-GSM";
        case Method::l0_abs: return "L0-AbS";
        case Method::ours: return "ours";
    }
    return "?";
}

double reference_isnr(const std::string& image_key, Method m, int setting) {
    if (setting < 1 || setting > 5)
        throw std::invalid_argument("reference_isnr: setting must be in 1..5");
    auto it = score_table().find(image_key);
    if (it == score_table().end())
        throw std::invalid_argument("reference_isnr: unknown image key " + image_key);
    return it->second.at(m).v[setting - 1];
}

std::optional<std::string> image_key_for_path(const std::string& path) {
    std::string stem = lower(path_stem(path));
    if (stem.find("cameraman") != std::string::npos ||
        stem.find("camera") != std::string::npos)
        return "cameraman";
    if (stem.find("house") != std::string::npos) return "house";
    return std::nullopt;
}

BenchReport run_benchmark(const std::vector<std::string>& image_paths,
                          const std::vector<int>& settings,
                          const std::vector<std::uint64_t>& seeds,
                          const RestorationParams& base,
                          int psf_size_gaussian) {
    if (image_paths.empty() || settings.empty() || seeds.empty())
        throw std::invalid_argument("run_benchmark: images, settings, seeds must be nonempty");

    BenchReport report;
    double total_seconds = 0.0;
    long total_iters = 0;

    for (const std::string& path : image_paths) {
        Image clean = load_image(path);
        std::string key = image_key_for_path(path).value_or("");

        for (int sid : settings) {
            TestSetting setting = table1_setting(sid, psf_size_gaussian);
            Kernel h = make_kernel(setting);

            std::vector<double> scores;
            for (std::uint64_t seed : seeds) {
                Image y = degrade(clean, setting, seed);

                RestorationParams params = base;
                params.sigma = setting.noise().sigma;

                auto t0 = std::chrono::steady_clock::now();
                RestorationResult res = deconvolve(y, h, params, &clean);
                auto t1 = std::chrono::steady_clock::now();
                double secs = std::chrono::duration<double>(t1 - t0).count();

                BenchRun run;
                run.image_key = key;
                run.image_path = path;
                run.setting = sid;
                run.seed = seed;
                run.isnr_db = isnr(clean, y, res.restored);
                run.seconds_per_iter = secs / static_cast<double>(res.trace.size());
                for (const TraceRecord& rec : res.trace)
                    if (!rec.lambda) run.any_infinite_lambda = true;
                run.first_isnr_db = res.trace.front().isnr_db.value_or(0.0);
                run.final_isnr_db = res.trace.back().isnr_db.value_or(0.0);

                scores.push_back(run.isnr_db);
                total_seconds += secs;
                total_iters += static_cast<long>(res.trace.size());
                report.runs.push_back(std::move(run));
            }

            BenchSummary s;
            s.image_key = key;
            s.image_path = path;
            s.setting = sid;
            s.n_seeds = static_cast<int>(scores.size());
            double sum = 0.0;
            for (double v : scores) sum += v;
            s.mean_isnr = sum / scores.size();
            if (scores.size() > 1) {
                double ss = 0.0;
                for (double v : scores) ss += (v - s.mean_isnr) * (v - s.mean_isnr);
                s.std_isnr = std::sqrt(ss / (scores.size() - 1));
            }
            report.summaries.push_back(std::move(s));
        }
    }

    report.mean_seconds_per_iter =
        total_iters ? total_seconds / static_cast<double>(total_iters) : 0.0;
    return report;
}

std::string report_to_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "record,image,path,setting,seed,isnr,mean_isnr,std_isnr"
          ",ref_ForWaRD,ref_TVS,ref_SV-GSM,ref_L0-AbS,ref_ours\n";
    for (const BenchRun& r : report.runs) {
        os << "run," << r.image_key << "," << r.image_path << "," << r.setting
           << "," << r.seed << "," << csv_num(r.isnr_db) << ",,,,,,,\n";
    }
    for (const BenchSummary& s : report.summaries) {
        os << "summary," << s.image_key << "," << s.image_path << "," << s.setting
           << ",,," << csv_num(s.mean_isnr) << "," << csv_num(s.std_isnr);
        if (!s.image_key.empty()) {
            for (Method m : kAllMethods)
                os << "," << csv_num(reference_isnr(s.image_key, m, s.setting));
        } else {
            os << ",,,,,";
        }
        os << "\n";
    }
    return os.str();
}

RestorationTrace emit_lambda_trace(const std::string& image_path, int setting_id,
                                   std::uint64_t seed, RestorationParams params,
                                   int psf_size_gaussian,
                                   const std::string& csv_path) {
    Image clean = load_image(image_path);
    TestSetting setting = table1_setting(setting_id, psf_size_gaussian);
    Image y = degrade(clean, setting, seed);
    params.sigma = setting.noise().sigma;

    RestorationResult res = deconvolve(y, make_kernel(setting), params, &clean);
    write_trace_csv(res.trace, csv_path);
    return std::move(res.trace);
}

BenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open for reading");

    BenchConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_space = [](unsigned char c) { return std::isspace(c); };
        line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), is_space));
        line.erase(std::find_if_not(line.rbegin(), line.rend(), is_space).base(), line.end());
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(std::find_if_not(key.rbegin(), key.rend(), is_space).base(), key.end());
        value.erase(value.begin(), std::find_if_not(value.begin(), value.end(), is_space));

        try {
            if (key == "w")
                cfg.w = std::stoi(value);
            else if (key == "epsilon")
                cfg.epsilon = std::stod(value);
            else if (key == "max_iter")
                cfg.max_iter = std::stoi(value);
            else if (key == "rho")
                cfg.rho = std::stod(value);
            else if (key == "seed")
                cfg.seed = std::stoull(value);
            else if (key == "psf_size_gaussian")
                cfg.psf_size_gaussian = std::stoi(value);
            else
                throw IoError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw IoError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
        } catch (const std::out_of_range&) {
            throw IoError(path + ":" + std::to_string(lineno) + ": value out of range for " + key);
        }
    }
    return cfg;
}

}  // namespace gfd
