#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gfd/image.hpp"
#include "gfd/image_io.hpp"
#include "oracle_helpers.hpp"

using gfd::Image;

namespace {

std::filesystem::path tmp_path(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("image container basics") {
    Image img(4, 3, 0.25);
    CHECK(img.width() == 4);
    CHECK(img.height() == 3);
    CHECK(img.size() == 12);
    img.at(3, 2) = 1.5;
    CHECK(img[11] == 1.5);
    CHECK(img.at(0, 0) == 0.25);

    CHECK_THROWS_AS(Image(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(Image(5, -1), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 2, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("noise model conversion happens once") {
    gfd::NoiseModel nm = gfd::NoiseModel::from_variance255(49.0);
    CHECK(nm.sigma255 == doctest::Approx(7.0));
    CHECK(nm.sigma == doctest::Approx(7.0 / 255.0));

    gfd::NoiseModel nm2 = gfd::NoiseModel::from_sigma255(2.0);
    CHECK(nm2.sigma == doctest::Approx(2.0 / 255.0));

    CHECK_THROWS_AS(gfd::NoiseModel::from_sigma255(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(gfd::NoiseModel::from_variance255(-0.5), std::invalid_argument);
}

TEST_CASE("statistics match direct summation") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        Image a = oracle::random_image(33, 17, seed);
        Image b = oracle::random_image(33, 17, seed + 100);
        CHECK(gfd::image_mean(a) == doctest::Approx(oracle::naive_mean(a)).epsilon(1e-12));
        CHECK(gfd::sq_norm(a) == doctest::Approx(oracle::naive_sq_norm(a)).epsilon(1e-12));
        CHECK(gfd::sq_distance(a, b) ==
              doctest::Approx(oracle::naive_sq_distance(a, b)).epsilon(1e-12));
    }
    Image a(4, 4), b(5, 4);
    CHECK_THROWS_AS(gfd::sq_distance(a, b), std::invalid_argument);
}

TEST_CASE("compensated sum survives catastrophic cancellation") {
    gfd::CompensatedSum acc;
    acc.add(1e16);
    acc.add(1.0);
    acc.add(-1e16);
    CHECK(acc.value() == 1.0);
}

TEST_CASE("pgm round trip is exact for quantized data") {
    Image img(7, 5);
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = static_cast<double>((i * 37) % 256) / 255.0;

    auto path = tmp_path("gfd_roundtrip.pgm");
    gfd::save_pgm(img, path.string());
    Image back = gfd::load_pgm(path.string());
    CHECK(back == img);
    std::filesystem::remove(path);
}

TEST_CASE("png round trip is exact for quantized data") {
    Image img(9, 4);
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = static_cast<double>((i * 41) % 256) / 255.0;

    auto path = tmp_path("gfd_roundtrip.png");
    gfd::save_png(img, path.string());
    Image back = gfd::load_png(path.string());
    CHECK(back == img);
    std::filesystem::remove(path);
}

TEST_CASE("save clamps and rounds only at the file boundary") {
    Image img(3, 1);
    img[0] = -0.5;
    img[1] = 0.5;
    img[2] = 1.7;

    auto path = tmp_path("gfd_clamp.pgm");
    gfd::save_image(img, path.string());
    Image back = gfd::load_image(path.string());
    CHECK(back[0] == 0.0);
    CHECK(back[1] == 128.0 / 255.0);  // 127.5 rounds away from zero
    CHECK(back[2] == 1.0);
    std::filesystem::remove(path);
}

TEST_CASE("loader rejects broken inputs") {
    CHECK_THROWS_AS(gfd::load_image("/nonexistent/nope.pgm"), gfd::IoError);
    CHECK_THROWS_AS(gfd::load_image("file.bmp"), gfd::IoError);

    auto ascii = tmp_path("gfd_bad_ascii.pgm");
    std::ofstream(ascii) << "P2\n2 2\n255\n0 0 0 0\n";
    CHECK_THROWS_AS(gfd::load_pgm(ascii.string()), gfd::IoError);

    auto deep = tmp_path("gfd_bad_depth.pgm");
    std::ofstream(deep) << "P5\n2 2\n65535\n\0\0\0\0\0\0\0\0";
    CHECK_THROWS_AS(gfd::load_pgm(deep.string()), gfd::IoError);

    auto trunc = tmp_path("gfd_bad_trunc.pgm");
    std::ofstream(trunc) << "P5\n4 4\n255\nab";
    CHECK_THROWS_AS(gfd::load_pgm(trunc.string()), gfd::IoError);

    auto notpng = tmp_path("gfd_bad.png");
    std::ofstream(notpng) << "this is not a png";
    CHECK_THROWS_AS(gfd::load_png(notpng.string()), gfd::IoError);

    std::filesystem::remove(ascii);
    std::filesystem::remove(deep);
    std::filesystem::remove(trunc);
    std::filesystem::remove(notpng);
}

TEST_CASE("pgm header comments are tolerated") {
    auto path = tmp_path("gfd_comment.pgm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n# a comment line\n3 # width then height\n2\n255\n";
        for (int i = 0; i < 6; ++i) out.put(static_cast<char>(i * 40));
    }
    Image img = gfd::load_pgm(path.string());
    CHECK(img.width() == 3);
    CHECK(img.height() == 2);
    CHECK(img.at(2, 1) == 200.0 / 255.0);
    std::filesystem::remove(path);
}
