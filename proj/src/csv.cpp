#include "cgkit/csv.hpp"
#include "cgkit/pgm.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cgkit {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string out(buf, res.ptr);
    if (out.find_first_of(".eEni") == std::string::npos) out += ".0";
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s, const char* field, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw CsvError(std::string("bad ") + field + " value '" + s + "'", line);
    }
    return v;
}

std::size_t parse_count(const std::string& s, const char* field, std::size_t line) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw CsvError(std::string("bad ") + field + " value '" + s + "'", line);
    }
    return v;
}

} // namespace

std::string format_runs_csv(const std::vector<RunRecord>& records) {
    std::string out(kRunCsvHeader);
    out.push_back('\n');
    for (const auto& r : records) {
        out += r.problem + ',' + r.method + ',' + std::string(status_name(r.status)) + ',' +
               std::to_string(r.iters) + ',' + std::to_string(r.fevals) + ',' +
               std::to_string(r.gevals) + ',' + format_double(r.wall_time) + ',' +
               format_double(r.f_final) + ',' + format_double(r.gnorm_final) + '\n';
    }
    return out;
}

std::vector<RunRecord> parse_runs_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw CsvError("missing header", 1);
    ++lineno;
    if (line != kRunCsvHeader) throw CsvError("unexpected header '" + line + "'", lineno);

    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 9) {
            throw CsvError("expected 9 fields, found " + std::to_string(f.size()), lineno);
        }
        RunRecord r;
        r.problem = f[0];
        r.method = f[1];
        if (r.problem.empty() || r.method.empty()) throw CsvError("empty problem or method", lineno);
        const auto status = parse_status(f[2]);
        if (!status) throw CsvError("unknown status '" + f[2] + "'", lineno);
        r.status = *status;
        r.iters = parse_count(f[3], "iters", lineno);
        r.fevals = parse_count(f[4], "fevals", lineno);
        r.gevals = parse_count(f[5], "gevals", lineno);
        r.wall_time = parse_double(f[6], "wall_time", lineno);
        r.f_final = parse_double(f[7], "f_final", lineno);
        r.gnorm_final = parse_double(f[8], "gnorm_final", lineno);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_profile_csv(const ProfileTable& table) {
    std::string out = "t";
    for (const auto& s : table.solvers) out += ',' + s;
    out.push_back('\n');
    for (double t : table.breakpoints()) {
        out += format_double(t);
        for (std::size_t s = 0; s < table.solvers.size(); ++s) {
            out += ',' + format_double(table.value(s, t));
        }
        out.push_back('\n');
    }
    return out;
}

void write_runs_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
    write_file_atomic(path, format_runs_csv(records));
}

std::vector<RunRecord> read_runs_csv(const std::filesystem::path& path) {
    return parse_runs_csv(read_file(path));
}

void write_profile_csv(const std::filesystem::path& path, const ProfileTable& table) {
    write_file_atomic(path, format_profile_csv(table));
}

} // namespace cgkit
