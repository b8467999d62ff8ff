#include <doctest.h>

#include "gfd/guided_filter.hpp"
#include "oracle_helpers.hpp"

using gfd::Image;

TEST_CASE("box_mean matches the naive clipped-window oracle") {
    struct Case {
        int w, h, radius;
    };
    for (Case c : {Case{16, 16, 3}, {5, 7, 1}, {1, 1, 3}, {9, 4, 0},
                   {12, 12, 5}, {6, 6, 20}}) {
        Image img = oracle::random_image(c.w, c.h, 1000 + c.w * 31 + c.h + c.radius);
        Image fast = gfd::box_mean(img, c.radius);
        Image slow = oracle::naive_box_mean(img, c.radius);
        double worst = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i)
            worst = std::max(worst, std::abs(fast[i] - slow[i]));
        CHECK(worst < 1e-12);
    }
    CHECK_THROWS_AS(gfd::box_mean(Image(4, 4), -1), std::invalid_argument);
}

TEST_CASE("box_mean preserves dyadic constants exactly") {
    for (double c : {0.5, 0.25, 1.0}) {
        Image img(19, 11, c);
        for (int w : {0, 1, 3, 15}) {
            Image m = gfd::box_mean(img, w);
            for (std::size_t i = 0; i < m.size(); ++i) CHECK(m[i] == c);
        }
    }
}

TEST_CASE("box_mean handles radius larger than the image") {
    // every window covers the whole image; result is the global mean
    Image img = oracle::random_image(5, 4, 7);
    Image m = gfd::box_mean(img, 10);
    double mean = oracle::naive_mean(img);
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(m[i] == doctest::Approx(mean).epsilon(1e-13));
}

TEST_CASE("guided filter matches the per-window oracle") {
    int idx = 0;
    for (int w : {2, 3})
        for (double eps : {1e-4, 7.5e-4})
            for (int rep = 0; rep < 3; ++rep) {
                Image I = oracle::random_image(10, 10, 5000 + idx);
                Image p = oracle::random_image(10, 10, 6000 + idx);
                ++idx;
                Image fast = gfd::guided_filter(I, p, w, eps);
                Image slow = oracle::brute_guided_filter(I, p, w, eps);
                double worst = 0.0;
                for (std::size_t i = 0; i < I.size(); ++i)
                    worst = std::max(worst, std::abs(fast[i] - slow[i]));
                CHECK(worst < 1e-10);
            }
}

TEST_CASE("guided filter is exact on dyadic constants") {
    Image I(16, 16, 0.25);
    Image p(16, 16, 0.5);
    Image q = gfd::guided_filter(I, p, 3, 7.5e-4);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(q[i] == 0.5);
}

TEST_CASE("guided filter with p = I is near-identity for small eps") {
    Image I = oracle::random_image(24, 24, 77);
    Image q = gfd::guided_filter(I, I, 3, 1e-8);
    double worst = 0.0;
    for (std::size_t i = 0; i < I.size(); ++i)
        worst = std::max(worst, std::abs(q[i] - I[i]));
    CHECK(worst < 1e-4);
}

TEST_CASE("guided filter argument validation") {
    Image I(8, 8), p(8, 7);
    CHECK_THROWS_AS(gfd::guided_filter(I, p, 3, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(gfd::guided_filter(I, I, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gfd::guided_filter(I, I, -2, 1e-4), std::invalid_argument);
}

TEST_CASE("variance clamp keeps coefficients finite on flat guides") {
    // constant guide: var_I could round negative; a must come out 0
    Image I(12, 12, 0.3);
    Image p = oracle::random_image(12, 12, 11);
    Image q = gfd::guided_filter(I, p, 3, 7.5e-4);
    Image want = gfd::box_mean(gfd::box_mean(p, 3), 3);  // a == 0 path
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(q[i] == doctest::Approx(want[i]).epsilon(1e-9));
}
