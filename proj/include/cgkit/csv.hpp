#pragma once

#include "cgkit/bench.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cgkit {

inline constexpr std::string_view kRunCsvHeader =
    "problem,method,status,iters,fevals,gevals,wall_time,f_final,gnorm_final";

class CsvError : public Error {
public:
    CsvError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// Shortest decimal that parses back to the same double; integral values
/// keep a trailing ".0" ("1.0", not "1").
std::string format_double(double v);

std::string format_runs_csv(const std::vector<RunRecord>& records);
/// Throws CsvError carrying the 1-based line number of the first bad line.
std::vector<RunRecord> parse_runs_csv(const std::string& text);

/// Header `t,<solver>...`, one row per breakpoint.
std::string format_profile_csv(const ProfileTable& table);

void write_runs_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_runs_csv(const std::filesystem::path& path);
void write_profile_csv(const std::filesystem::path& path, const ProfileTable& table);

} // namespace cgkit
