#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gfd/benchmark.hpp"
#include "gfd/degrade.hpp"
#include "gfd/errors.hpp"
#include "gfd/image_io.hpp"
#include "gfd/metrics.hpp"
#include "gfd/pipeline.hpp"
#include "gfd/psf.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    gfd::RestorationParams params;
    int psf_size_gaussian = 25;
    std::uint64_t seed = 1;

    CLI::Option* opt_w = nullptr;
    CLI::Option* opt_epsilon = nullptr;
    CLI::Option* opt_max_iter = nullptr;
    CLI::Option* opt_rho = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_psf_size = nullptr;

    double rho_flag = 0.0;  // staging slot; params.rho_override set on resolve
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed, bool with_params = true) {
    cmd->add_option("--config", o.config_path,
                    "key=value file (w, epsilon, max_iter, rho, seed, psf_size_gaussian)");
    if (with_params) {
        o.opt_w = cmd->add_option("--w", o.params.w, "guided filter window radius");
        o.opt_epsilon =
            cmd->add_option("--epsilon", o.params.epsilon, "guided filter regularizer");
        o.opt_max_iter = cmd->add_option("--max-iter", o.params.max_iter, "iteration count");
        o.opt_rho = cmd->add_option("--rho", o.rho_flag, "override fidelity weight in (0,1]");
    }
    o.opt_psf_size =
        cmd->add_option("--psf-size-gaussian", o.psf_size_gaussian,
                        "support of the setting-5 Gaussian kernel (odd)");
    if (with_seed) o.opt_seed = cmd->add_option("--seed", o.seed, "noise seed");
}

// Config file first, explicit flags on top.
void resolve_common(CommonOpts& o) {
    if (!o.config_path.empty()) {
        gfd::BenchConfig cfg = gfd::load_config(o.config_path);
        if (cfg.w && o.opt_w && !o.opt_w->count()) o.params.w = *cfg.w;
        if (cfg.epsilon && o.opt_epsilon && !o.opt_epsilon->count())
            o.params.epsilon = *cfg.epsilon;
        if (cfg.max_iter && o.opt_max_iter && !o.opt_max_iter->count())
            o.params.max_iter = *cfg.max_iter;
        if (cfg.rho && o.opt_rho && !o.opt_rho->count()) o.params.rho_override = *cfg.rho;
        if (cfg.seed && (!o.opt_seed || !o.opt_seed->count())) o.seed = *cfg.seed;
        if (cfg.psf_size_gaussian && o.opt_psf_size && !o.opt_psf_size->count())
            o.psf_size_gaussian = *cfg.psf_size_gaussian;
    }
    if (o.opt_rho && o.opt_rho->count()) o.params.rho_override = o.rho_flag;
}

std::string format_db(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"guided-filter regularized deconvolution toolkit"};
    app.require_subcommand(1);

    // degrade
    auto* degrade_cmd = app.add_subcommand("degrade", "blur + seeded noise per a test setting");
    std::string dg_in, dg_out;
    int dg_test = 1;
    CommonOpts dg_opts;
    degrade_cmd->add_option("--in", dg_in, "clean input image (.pgm/.png)")->required();
    degrade_cmd->add_option("--out", dg_out, "degraded output image")->required();
    degrade_cmd->add_option("--test", dg_test, "test setting 1..5")
        ->required()
        ->check(CLI::Range(1, 5));
    add_common(degrade_cmd, dg_opts, true, false);

    // restore
    auto* restore_cmd = app.add_subcommand("restore", "deconvolve a degraded image");
    std::string rs_in, rs_out, rs_trace, rs_psf_file, rs_reference;
    int rs_psf_test = 0;
    double rs_sigma255 = -1.0;
    CommonOpts rs_opts;
    restore_cmd->add_option("--in", rs_in, "degraded input image")->required();
    restore_cmd->add_option("--out", rs_out, "restored output image")->required();
    auto* rs_test_opt = restore_cmd->add_option("--psf-test", rs_psf_test,
                                                "use the kernel of test setting 1..5")
                            ->check(CLI::Range(1, 5));
    auto* rs_file_opt =
        restore_cmd->add_option("--psf-file", rs_psf_file, "load kernel from text file");
    rs_test_opt->excludes(rs_file_opt);
    auto* rs_sigma_opt = restore_cmd->add_option(
        "--sigma255", rs_sigma255,
        "noise std for [0,255] pixels (defaults to the test setting's value)");
    restore_cmd->add_option("--trace", rs_trace, "write per-iteration CSV here");
    restore_cmd->add_option("--reference", rs_reference,
                            "clean image; fills the trace isnr column");
    bool rs_warm = false, rs_early = false;
    restore_cmd->add_flag("--warm-start", rs_warm, "start from y instead of 0");
    restore_cmd->add_flag("--early-stop", rs_early, "stop on relative change < 1e-8");
    add_common(restore_cmd, rs_opts, false);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "score a restoration");
    std::string ev_orig, ev_degraded, ev_restored;
    eval_cmd->add_option("--orig", ev_orig, "clean image")->required();
    eval_cmd->add_option("--degraded", ev_degraded, "degraded image")->required();
    eval_cmd->add_option("--restored", ev_restored, "restored image")->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run the reference benchmark grid");
    std::vector<std::string> bn_images;
    std::vector<int> bn_tests = {1, 2, 3, 4, 5};
    std::vector<std::uint64_t> bn_seeds = {1};
    std::string bn_report;
    CommonOpts bn_opts;
    bench_cmd->add_option("--images", bn_images, "clean image paths")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--tests", bn_tests, "test settings (default 1..5)")
        ->delimiter(',')
        ->check(CLI::Range(1, 5));
    auto* bn_seeds_opt =
        bench_cmd->add_option("--seeds", bn_seeds, "noise seeds (default 1)")->delimiter(',');
    bench_cmd->add_option("--report", bn_report, "CSV output path (stdout when omitted)");
    add_common(bench_cmd, bn_opts, false);

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "degrade + restore, write the lambda trace");
    std::string tr_in, tr_out;
    int tr_test = 3;
    CommonOpts tr_opts;
    trace_cmd->add_option("--in", tr_in, "clean input image")->required();
    trace_cmd->add_option("--test", tr_test, "test setting 1..5")
        ->required()
        ->check(CLI::Range(1, 5));
    trace_cmd->add_option("--out", tr_out, "trace CSV path")->required();
    add_common(trace_cmd, tr_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's per-error exit codes onto the documented 0/1 pair
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (degrade_cmd->parsed()) {
        resolve_common(dg_opts);
        gfd::Image clean = gfd::load_image(dg_in);
        gfd::TestSetting setting = gfd::table1_setting(dg_test, dg_opts.psf_size_gaussian);
        gfd::save_image(gfd::degrade(clean, setting, dg_opts.seed), dg_out);
        std::cout << "degraded test " << dg_test << " seed " << dg_opts.seed
                  << " -> " << dg_out << "\n";
        return 0;
    }

    if (restore_cmd->parsed()) {
        resolve_common(rs_opts);
        if (!rs_test_opt->count() && !rs_file_opt->count())
            throw CLI::ValidationError("restore: one of --psf-test/--psf-file is required");

        gfd::Kernel h = rs_file_opt->count()
                            ? gfd::load_kernel(rs_psf_file)
                            : gfd::make_kernel(gfd::table1_setting(
                                  rs_psf_test, rs_opts.psf_size_gaussian));

        double sigma255;
        if (rs_sigma_opt->count()) {
            sigma255 = rs_sigma255;
        } else if (rs_test_opt->count()) {
            sigma255 = gfd::table1_setting(rs_psf_test).noise().sigma255;
        } else {
            throw CLI::ValidationError("restore: --sigma255 is required with --psf-file");
        }
        if (!(sigma255 > 0.0))
            throw CLI::ValidationError("restore: --sigma255 must be positive");

        gfd::Image y = gfd::load_image(rs_in);
        rs_opts.params.sigma = sigma255 / 255.0;
        rs_opts.params.warm_start = rs_warm;
        rs_opts.params.early_stop = rs_early;

        std::optional<gfd::Image> reference;
        if (!rs_reference.empty()) reference = gfd::load_image(rs_reference);

        gfd::RestorationResult res =
            gfd::deconvolve(y, h, rs_opts.params, reference ? &*reference : nullptr);
        gfd::save_image(res.restored, rs_out);
        if (!rs_trace.empty()) gfd::write_trace_csv(res.trace, rs_trace);

        const gfd::TraceRecord& last = res.trace.back();
        std::cout << "restored in " << res.trace.size() << " iterations, final lambda ";
        if (last.lambda)
            std::cout << *last.lambda;
        else
            std::cout << "inf";
        if (last.isnr_db) std::cout << ", isnr " << format_db(*last.isnr_db) << " dB";
        std::cout << " -> " << rs_out << "\n";
        return 0;
    }

    if (eval_cmd->parsed()) {
        gfd::Image orig = gfd::load_image(ev_orig);
        gfd::Image degraded = gfd::load_image(ev_degraded);
        gfd::Image restored = gfd::load_image(ev_restored);
        std::cout << "psnr_degraded_db " << format_db(gfd::psnr(orig, degraded)) << "\n";
        std::cout << "psnr_restored_db " << format_db(gfd::psnr(orig, restored)) << "\n";
        std::cout << "isnr_db " << format_db(gfd::isnr(orig, degraded, restored)) << "\n";
        return 0;
    }

    if (bench_cmd->parsed()) {
        resolve_common(bn_opts);
        if (!bn_seeds_opt->count() && !bn_opts.config_path.empty()) {
            gfd::BenchConfig cfg = gfd::load_config(bn_opts.config_path);
            if (cfg.seed) bn_seeds = {*cfg.seed};
        }
        gfd::BenchReport report = gfd::run_benchmark(
            bn_images, bn_tests, bn_seeds, bn_opts.params, bn_opts.psf_size_gaussian);
        std::string csv = gfd::report_to_csv(report);
        if (bn_report.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(bn_report);
            if (!out) throw gfd::IoError(bn_report + ": cannot open for writing");
            out << csv;
        }
        std::cerr << "mean seconds/iteration: " << report.mean_seconds_per_iter << "\n";
        for (const gfd::BenchSummary& s : report.summaries) {
            std::cerr << (s.image_key.empty() ? s.image_path : s.image_key) << " test "
                      << s.setting << ": mean " << format_db(s.mean_isnr) << " dB (std "
                      << format_db(s.std_isnr) << ", " << s.n_seeds << " seeds)";
            if (!s.image_key.empty())
                std::cerr << " vs published "
                          << format_db(gfd::reference_isnr(s.image_key, gfd::Method::ours,
                                                           s.setting));
            std::cerr << "\n";
        }
        return 0;
    }

    if (trace_cmd->parsed()) {
        resolve_common(tr_opts);
        gfd::emit_lambda_trace(tr_in, tr_test, tr_opts.seed, tr_opts.params,
                               tr_opts.psf_size_gaussian, tr_out);
        std::cout << "trace -> " << tr_out << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const gfd::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
