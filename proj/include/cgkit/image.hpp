#pragma once

#include "cgkit/core.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace cgkit {

/// Row-major grayscale image with intensities in [0, 1].
struct ImageGray {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    ImageGray() = default;
    /// Throws InvalidArgument on a size mismatch or a non-finite sample.
    ImageGray(std::size_t width, std::size_t height, std::vector<double> pixels);

    double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    std::size_t size() const noexcept { return pixels.size(); }

    Vector as_vector() const { return Vector(pixels); }
    /// Copies v into an image of the same shape, clamping to [0, 1].
    ImageGray with_pixels(const Vector& v) const;

    friend bool operator==(const ImageGray&, const ImageGray&) = default;
};

/// Seeded standard-normal source: Marsaglia's polar method on top of
/// std::mt19937_64, with uniforms built from the top 53 bits of each draw so
/// the sequence depends only on the seed.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed);
    double next();

private:
    double uniform();  // [0, 1)

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// out_i = clamp(img_i + sigma_frac * z_i, 0, 1), z_i i.i.d. N(0, 1).
/// sigma_frac must lie in [0, 1); zero returns the input unchanged.
ImageGray add_gaussian_noise(const ImageGray& img, double sigma_frac, std::uint64_t seed);

/// ||truth - restored|| / ||truth||
double rmse(const ImageGray& truth, const ImageGray& restored);

/// Test card of flat regions: a 0.3 background with a bright rectangle, a
/// mid-gray disc and a dark bar.
ImageGray make_piecewise_constant(std::size_t width, std::size_t height);

} // namespace cgkit
