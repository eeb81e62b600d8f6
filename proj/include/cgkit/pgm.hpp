#pragma once

#include "cgkit/core.hpp"
#include "cgkit/image.hpp"

#include <filesystem>
#include <string>

namespace cgkit {

enum class PgmFormat { ascii /* P2 */, binary /* P5 */ };

class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Parses a P2 or P5 graymap. Comment lines starting with '#' may appear
/// anywhere in the header. maxval may be 1..255; samples are scaled to [0, 1].
ImageGray parse_pgm(const std::string& bytes);
ImageGray read_pgm(const std::filesystem::path& path);

/// Serializes with maxval 255; each sample is floor(255 v + 0.5).
std::string format_pgm(const ImageGray& img, PgmFormat format);
/// Writes to a sibling temporary file and renames it over `path`.
void write_pgm(const std::filesystem::path& path, const ImageGray& img, PgmFormat format);

/// Atomic text/binary file write used by every file-producing workflow.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

} // namespace cgkit
