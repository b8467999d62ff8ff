#include <doctest.h>

#include <cmath>
#include <limits>

#include "gfd/metrics.hpp"
#include "oracle_helpers.hpp"

using gfd::Image;

TEST_CASE("mse and psnr sentinels") {
    Image a = oracle::random_image(8, 8, 1);
    CHECK(gfd::mse(a, a) == 0.0);
    CHECK(std::isinf(gfd::psnr(a, a)));
    CHECK(gfd::psnr(a, a) > 0.0);

    Image zeros(8, 8, 0.0);
    Image ones(8, 8, 1.0);
    CHECK(gfd::mse(zeros, ones) == 1.0);
    CHECK(gfd::psnr(zeros, ones) == 0.0);
}

TEST_CASE("mse matches the naive loop") {
    Image a = oracle::random_image(17, 13, 2);
    Image b = oracle::random_image(17, 13, 3);
    double naive = oracle::naive_sq_distance(a, b) / static_cast<double>(a.size());
    CHECK(gfd::mse(a, b) == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("isnr basics") {
    Image orig = oracle::random_image(8, 8, 4);
    Image degraded = oracle::random_image(8, 8, 5);

    // restored equal to the degraded input scores exactly zero
    CHECK(gfd::isnr(orig, degraded, degraded) == 0.0);

    // perfect restoration hits the +inf sentinel
    CHECK(std::isinf(gfd::isnr(orig, degraded, orig)));

    // an error ratio of exactly ten is ten decibels
    Image d(8, 8, 0.0);
    Image r(8, 8, 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = 1.0;
        r[i] = std::sqrt(0.1);
    }
    Image o(8, 8, 0.0);
    CHECK(gfd::isnr(o, d, r) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("isnr decomposes into a psnr difference") {
    for (std::uint64_t seed : {10u, 20u, 30u}) {
        Image o = oracle::random_image(9, 9, seed);
        Image d = oracle::random_image(9, 9, seed + 1);
        Image r = oracle::random_image(9, 9, seed + 2);
        double direct = gfd::isnr(o, d, r);
        double viapsnr = gfd::psnr(o, r) - gfd::psnr(o, d);
        CHECK(std::abs(direct - viapsnr) < 1e-9);
    }
}

TEST_CASE("metric dimension checks") {
    Image a(8, 8), b(8, 7);
    CHECK_THROWS_AS(gfd::mse(a, b), std::invalid_argument);
    CHECK_THROWS_AS(gfd::isnr(a, a, b), std::invalid_argument);
}
