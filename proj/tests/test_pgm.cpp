#include "cgkit/pgm.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace cgkit;

namespace {

ImageGray quantized_random(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    std::uniform_int_distribution<int> level(0, 255);
    std::vector<double> px(w * h);
    for (double& v : px) v = level(rng) / 255.0;
    return ImageGray(w, h, std::move(px));
}

} // namespace

TEST_CASE("exact byte layout") {
    const ImageGray img(3, 1, {0.0, 0.5, 1.0});
    CHECK(format_pgm(img, PgmFormat::ascii) == "P2\n3 1\n255\n0 128 255\n");
    CHECK(format_pgm(img, PgmFormat::binary) == std::string("P5\n3 1\n255\n\x00\x80\xff", 14));
}

TEST_CASE("round trips (random images)") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        const std::size_t w = 1 + rng() % 40, h = 1 + rng() % 40;
        const auto img = quantized_random(rng, w, h);
        CHECK(parse_pgm(format_pgm(img, PgmFormat::ascii)) == img);
        CHECK(parse_pgm(format_pgm(img, PgmFormat::binary)) == img);
    }
}

TEST_CASE("headers with comments and small maxval") {
    const auto img = parse_pgm("P2\n# made by hand\n2 2 # trailing\n# more\n4\n0 1\n2 4\n");
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<double>{0.0, 0.25, 0.5, 1.0});
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_pgm(""), FormatError);
    CHECK_THROWS_AS(parse_pgm("P3\n1 1\n255\n0\n"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2\n2 2\n255\n0 1 2\n"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2\n1 1\n255\n256\n"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2\n1 1\n0\n0\n"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2\n1 1\n65535\n0\n"), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2\n0 1\n255\n"), FormatError);
    CHECK_THROWS_AS(parse_pgm(std::string("P5\n2 1\n255\n\x01", 12)), FormatError);
    CHECK_THROWS_AS(parse_pgm("P2\nx 1\n255\n0\n"), FormatError);
}

TEST_CASE("quantization rounds half up") {
    const ImageGray img(2, 1, {0.5 / 255.0, 0.49 / 255.0});
    CHECK(format_pgm(img, PgmFormat::ascii) == "P2\n2 1\n255\n1 0\n");
}

TEST_CASE("file helpers") {
    const auto dir = std::filesystem::temp_directory_path() / "cgkit_test_pgm";
    std::filesystem::create_directories(dir);
    const auto path = dir / "img.pgm";
    const ImageGray img(2, 1, {0.0, 1.0});
    write_pgm(path, img, PgmFormat::binary);
    CHECK(read_pgm(path) == img);
    CHECK_THROWS_AS(read_pgm(dir / "missing.pgm"), IoError);
    CHECK_THROWS_AS(write_pgm(dir / "no" / "such" / "dir.pgm", img, PgmFormat::ascii), IoError);
    std::filesystem::remove_all(dir);
}
