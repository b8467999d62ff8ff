#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gfd/degrade.hpp"
#include "gfd/image_io.hpp"
#include "gfd/metrics.hpp"
#include "gfd/pipeline.hpp"
#include "gfd/spectral.hpp"
#include "oracle_helpers.hpp"

using gfd::Image;
using gfd::Kernel;
using gfd::RestorationParams;

namespace {

// Piecewise-smooth synthetic scene: flat background, two blocks, a ramp.
// Natural-image-like enough for the pipeline without bundling a file.
Image synthetic_scene(int n) {
    Image img(n, n, 0.35);
    for (int y = n / 8; y < n / 2; ++y)
        for (int x = n / 8; x < n / 2; ++x) img.at(x, y) = 0.85;
    for (int y = n / 2; y < 7 * n / 8; ++y)
        for (int x = n / 2; x < 7 * n / 8; ++x) img.at(x, y) = 0.15;
    for (int y = 0; y < n; ++y)
        for (int x = 5 * n / 8; x < n; ++x)
            img.at(x, y) = 0.2 + 0.6 * static_cast<double>(x) / n;
    return img;
}

RestorationParams quick_params(double sigma, int iters = 5) {
    RestorationParams p;
    p.sigma = sigma;
    p.max_iter = iters;
    return p;
}

}  // namespace

TEST_CASE("near-identity pipeline returns the input almost unchanged") {
    Image clean = synthetic_scene(64);
    Kernel ident(1, 1);
    ident.at(0, 0) = 1.0;

    RestorationParams p = quick_params(1e-6, 30);
    gfd::RestorationResult res = gfd::deconvolve(clean, ident, p, &clean);

    REQUIRE(res.trace.size() == 30);
    REQUIRE(res.trace.front().lambda.has_value());
    CHECK(*res.trace.front().lambda < 1e-3);  // no blur, almost no noise
    double rms = std::sqrt(gfd::mse(clean, res.restored));
    CHECK(rms < 2.0 / 255.0);
}

TEST_CASE("constant observations are restored to the constant") {
    Image flat(32, 32, 0.5);
    for (int id : {1, 3, 4}) {
        Kernel h = gfd::make_kernel(gfd::table1_setting(id));
        gfd::RestorationResult res = gfd::deconvolve(flat, h, quick_params(1e-7, 5));
        double worst = 0.0;
        for (double v : res.restored.pixels()) worst = std::max(worst, std::abs(v - 0.5));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("restoration is deterministic") {
    Image clean = synthetic_scene(48);
    gfd::TestSetting setting = gfd::table1_setting(3);
    Image y = gfd::degrade(clean, setting, 77);
    Kernel h = gfd::make_kernel(setting);
    RestorationParams p = quick_params(setting.noise().sigma, 6);

    gfd::RestorationResult a = gfd::deconvolve(y, h, p, &clean);
    gfd::RestorationResult b = gfd::deconvolve(y, h, p, &clean);
    CHECK(a.restored == b.restored);
    CHECK(gfd::trace_to_csv(a.trace) == gfd::trace_to_csv(b.trace));
}

TEST_CASE("trace bookkeeping follows the contract") {
    Image clean = synthetic_scene(48);
    gfd::TestSetting setting = gfd::table1_setting(1);
    Image y = gfd::degrade(clean, setting, 5);
    Kernel h = gfd::make_kernel(setting);
    RestorationParams p = quick_params(setting.noise().sigma, 7);

    SUBCASE("with a reference the isnr column is filled") {
        gfd::RestorationResult res = gfd::deconvolve(y, h, p, &clean);
        REQUIRE(res.trace.size() == 7);
        int k = 0;
        for (const gfd::TraceRecord& rec : res.trace) {
            CHECK(rec.k == k++);
            REQUIRE(rec.lambda.has_value());
            CHECK(*rec.lambda > 0.0);
            CHECK(std::isfinite(*rec.lambda));
            CHECK(rec.isnr_db.has_value());
            CHECK(rec.residual > 0.0);
        }
        // the restoration should not lose ground overall
        CHECK(res.trace.back().isnr_db.value() >= res.trace.front().isnr_db.value());
    }

    SUBCASE("without a reference the isnr column is empty") {
        gfd::RestorationResult res = gfd::deconvolve(y, h, p);
        for (const gfd::TraceRecord& rec : res.trace) CHECK(!rec.isnr_db.has_value());
    }
}

TEST_CASE("warm start from the observation takes the infinite branch") {
    Image flat(32, 32, 0.5);
    Kernel h = gfd::make_kernel(gfd::table1_setting(3));
    RestorationParams p = quick_params(0.01, 3);
    p.warm_start = true;
    // blurring a constant is the identity, so u_E = y fits the data
    gfd::RestorationResult res = gfd::deconvolve(flat, h, p);
    CHECK(!res.trace.front().lambda.has_value());
    CHECK(res.restored == flat);
}

TEST_CASE("early stop halts once iterates stabilize") {
    Image flat(32, 32, 0.5);
    Kernel h = gfd::make_kernel(gfd::table1_setting(3));
    RestorationParams p = quick_params(1e-4, 30);
    p.early_stop = true;
    gfd::RestorationResult res = gfd::deconvolve(flat, h, p);
    CHECK(res.trace.size() < 30);
}

TEST_CASE("the same lambda drives both deblur systems") {
    // reproduce iteration zero by hand and compare against the pipeline
    Image clean = synthetic_scene(32);
    gfd::TestSetting setting = gfd::table1_setting(3);
    Image y = gfd::degrade(clean, setting, 13);
    Kernel h = gfd::make_kernel(setting);
    double sigma = setting.noise().sigma;

    Image first_u(1, 1);
    gfd::IterationObserver grab = [&](int k, const Image&, const Image&, const Image& u) {
        if (k == 0) first_u = u;
    };
    RestorationParams p = quick_params(sigma, 1);
    gfd::RestorationResult res = gfd::deconvolve(y, h, p, nullptr, grab);

    double rho = gfd::compute_rho(y, h, gfd::NoiseModel{sigma, sigma * 255.0});
    gfd::Spectrum Fy = gfd::fft2(y);
    gfd::Spectrum otf = gfd::psf_to_otf(h, 32, 32);
    gfd::DiscrepancyContext ctx{Fy, gfd::fft2(Image(32, 32, 0.0)), otf, sigma, rho};
    gfd::RegSelection sel = gfd::select_lambda(ctx);
    REQUIRE(sel.lambda.has_value());
    CHECK(*res.trace.front().lambda == *sel.lambda);

    Image u_I = gfd::deblur_guidance(Fy, otf, gfd::gradient_spectrum(32, 32), ctx.FuE,
                                     *sel.lambda);
    Image u_p = gfd::deblur_input(Fy, otf, ctx.FuE, *sel.lambda);
    Image u = gfd::guided_filter(u_I, u_p, p.w, p.epsilon);
    CHECK(u == first_u);
    CHECK(u == res.restored);
}

TEST_CASE("parameter validation") {
    Image y(8, 8, 0.5);
    Kernel h = gfd::psf_boxcar(3);

    RestorationParams p = quick_params(0.01);
    p.w = -1;
    CHECK_THROWS_AS(gfd::deconvolve(y, h, p), std::invalid_argument);

    p = quick_params(0.01);
    p.epsilon = 0.0;
    CHECK_THROWS_AS(gfd::deconvolve(y, h, p), std::invalid_argument);

    p = quick_params(0.01);
    p.max_iter = 0;
    CHECK_THROWS_AS(gfd::deconvolve(y, h, p), std::invalid_argument);

    p = quick_params(0.0);
    CHECK_THROWS_AS(gfd::deconvolve(y, h, p), std::invalid_argument);

    p = quick_params(0.01);
    p.rho_override = 1.5;
    CHECK_THROWS_AS(gfd::deconvolve(y, h, p), std::invalid_argument);

    p = quick_params(0.01);
    Image ref(8, 7, 0.0);
    CHECK_THROWS_AS(gfd::deconvolve(y, h, p, &ref), std::invalid_argument);
}

TEST_CASE("trace csv format is exact") {
    gfd::RestorationTrace trace;
    trace.push_back({0, 0.5, 2.0, 1.25});
    trace.push_back({1, std::nullopt, 0.125, std::nullopt});

    std::string csv = gfd::trace_to_csv(trace);
    CHECK(csv ==
          "iter,lambda,residual,isnr\n"
          "0,0.5,2,1.25\n"
          "1,inf,0.125,\n");

    auto path = std::filesystem::temp_directory_path() / "gfd_trace.csv";
    gfd::write_trace_csv(trace, path.string());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == csv);
    std::filesystem::remove(path);
}

TEST_CASE("high-frequency energy of the input estimate dominates") {
    // the guidance solve leaks less noise into the high band than the
    // plain solve at the same lambda
    Image clean = synthetic_scene(64);
    gfd::TestSetting setting = gfd::table1_setting(3);
    Image y = gfd::degrade(clean, setting, 21);
    Kernel h = gfd::make_kernel(setting);

    auto hf_energy = [](const Image& img) {
        gfd::Spectrum F = gfd::fft2(img);
        int W = img.width(), H = img.height();
        double e = 0.0;
        for (int v = 0; v < H; ++v)
            for (int u = 0; u < W; ++u) {
                bool in_band = std::min(u, W - u) >= W / 4 || std::min(v, H - v) >= H / 4;
                if (in_band) e += std::norm(F.at(u, v));
            }
        return e;
    };

    bool ok = true;
    gfd::IterationObserver check = [&](int, const Image& u_I, const Image& u_p,
                                       const Image&) {
        if (hf_energy(u_p) < hf_energy(u_I)) ok = false;
    };
    gfd::deconvolve(y, h, quick_params(setting.noise().sigma, 8), nullptr, check);
    CHECK(ok);
}
