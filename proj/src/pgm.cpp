#include "cgkit/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cgkit {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    unsigned long number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        unsigned long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
            if (value > 100'000'000UL) throw FormatError(std::string("pgm: ") + what + " too large");
            ++pos_;
        }
        if (pos_ == start) throw FormatError(std::string("pgm: expected ") + what);
        return value;
    }

    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }
    bool at_end() const { return pos_ >= bytes_.size(); }
    char peek() const { return bytes_[pos_]; }

private:
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

} // namespace

ImageGray parse_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw FormatError("pgm: missing P2/P5 magic");
    }
    const bool binary = bytes[1] == '5';
    HeaderReader in(bytes);
    in.advance();
    in.advance();
    const unsigned long width = in.number("width");
    const unsigned long height = in.number("height");
    const unsigned long maxval = in.number("maxval");
    if (width == 0 || height == 0) throw FormatError("pgm: width and height must be >= 1");
    if (maxval == 0 || maxval > 255) throw FormatError("pgm: maxval must lie in 1..255");

    const std::size_t count = width * height;
    std::vector<double> px(count);
    const double scale = static_cast<double>(maxval);
    if (binary) {
        if (in.at_end() || !std::isspace(static_cast<unsigned char>(in.peek()))) {
            throw FormatError("pgm: expected whitespace after maxval");
        }
        in.advance();
        if (bytes.size() - in.pos() < count) throw FormatError("pgm: truncated binary payload");
        for (std::size_t i = 0; i < count; ++i) {
            const auto sample = static_cast<unsigned char>(bytes[in.pos() + i]);
            if (sample > maxval) throw FormatError("pgm: sample exceeds maxval");
            px[i] = sample / scale;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned long sample = in.number("sample");
            if (sample > maxval) throw FormatError("pgm: sample exceeds maxval");
            px[i] = static_cast<double>(sample) / scale;
        }
    }
    return ImageGray(width, height, std::move(px));
}

ImageGray read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

std::string format_pgm(const ImageGray& img, PgmFormat format) {
    std::string out = format == PgmFormat::binary ? "P5\n" : "P2\n";
    out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    auto quantize = [](double v) {
        return static_cast<unsigned>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5));
    };
    if (format == PgmFormat::binary) {
        for (double v : img.pixels) out.push_back(static_cast<char>(quantize(v)));
        return out;
    }
    for (std::size_t r = 0; r < img.height; ++r) {
        for (std::size_t c = 0; c < img.width; ++c) {
            if (c > 0) out.push_back(' ');
            out += std::to_string(quantize(img.at(r, c)));
        }
        out.push_back('\n');
    }
    return out;
}

void write_pgm(const std::filesystem::path& path, const ImageGray& img, PgmFormat format) {
    write_file_atomic(path, format_pgm(img, format));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename onto " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace cgkit
