#include "cgkit/image.hpp"

#include <algorithm>
#include <cmath>

namespace cgkit {

ImageGray::ImageGray(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width(width), height(height), pixels(std::move(pixels)) {
    if (width == 0 || height == 0) throw InvalidArgument("image: width and height must be >= 1");
    if (this->pixels.size() != width * height) {
        throw InvalidArgument("image: pixel count does not match width * height");
    }
    for (double v : this->pixels) {
        if (!std::isfinite(v)) throw InvalidArgument("image: non-finite pixel");
    }
}

ImageGray ImageGray::with_pixels(const Vector& v) const {
    if (v.size() != size()) throw DimensionError("image: vector length does not match image");
    std::vector<double> out(v.begin(), v.end());
    for (double& p : out) p = std::clamp(p, 0.0, 1.0);
    return ImageGray(width, height, std::move(out));
}

NormalSource::NormalSource(std::uint64_t seed) : engine_(seed) {}

double NormalSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double NormalSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

ImageGray add_gaussian_noise(const ImageGray& img, double sigma_frac, std::uint64_t seed) {
    if (!(sigma_frac >= 0.0 && sigma_frac < 1.0)) {
        throw InvalidArgument("noise: sigma fraction must lie in [0, 1)");
    }
    NormalSource normal(seed);
    std::vector<double> out(img.pixels);
    for (double& p : out) p = std::clamp(p + sigma_frac * normal.next(), 0.0, 1.0);
    return ImageGray(img.width, img.height, std::move(out));
}

double rmse(const ImageGray& truth, const ImageGray& restored) {
    if (truth.width != restored.width || truth.height != restored.height) {
        throw DimensionError("rmse: image dimensions differ");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double diff = truth.pixels[i] - restored.pixels[i];
        num += diff * diff;
        den += truth.pixels[i] * truth.pixels[i];
    }
    if (!(den > 0.0)) throw InvalidArgument("rmse: reference image has zero norm");
    return std::sqrt(num) / std::sqrt(den);
}

ImageGray make_piecewise_constant(std::size_t width, std::size_t height) {
    std::vector<double> px(width * height, 0.3);
    const double w = static_cast<double>(width);
    const double h = static_cast<double>(height);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const double y = (static_cast<double>(r) + 0.5) / h;
            const double x = (static_cast<double>(c) + 0.5) / w;
            double& p = px[r * width + c];
            if (x > 0.1 && x < 0.45 && y > 0.15 && y < 0.6) p = 0.85;
            const double dx = x - 0.68;
            const double dy = y - 0.62;
            if (dx * dx + dy * dy < 0.2 * 0.2) p = 0.6;
            if (x > 0.15 && x < 0.9 && y > 0.82 && y < 0.9) p = 0.05;
        }
    }
    return ImageGray(width, height, std::move(px));
}

} // namespace cgkit
