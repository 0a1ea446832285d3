#include "maglab/record.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "maglab/errors.hpp"
#include "maglab/rng.hpp"

namespace maglab {

WienerRealization generate_wiener(double dt, std::size_t steps, std::uint64_t seed,
                                  std::uint64_t stream) {
    if (!(dt > 0.0)) throw std::invalid_argument("generate_wiener: dt must be > 0");
    WienerRealization w;
    w.dt = dt;
    w.seed = seed;
    w.stream = stream;
    w.increments.resize(steps);
    NormalStream normals(seed, stream);
    const double sigma = std::sqrt(dt);
    for (std::size_t k = 0; k < steps; ++k) w.increments[k] = sigma * normals.next();
    return w;
}

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_records(std::ofstream& out, const std::vector<double>& increments) {
    for (double v : increments) out << format_double(v) << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

}  // namespace

void save_record(const std::filesystem::path& path, const WienerRealization& w) {
    auto out = open_out(path);
    out << "# dt=" << format_double(w.dt) << '\n';
    out << "# steps=" << w.increments.size() << '\n';
    out << "# seed=" << w.seed << '\n';
    out << "# b_true=none\n";
    out << "# kind=dW\n";
    write_records(out, w.increments);
}

void save_record(const std::filesystem::path& path, const MeasurementRecord& r) {
    auto out = open_out(path);
    out << "# dt=" << format_double(r.dt) << '\n';
    out << "# steps=" << r.increments.size() << '\n';
    out << "# seed=none\n";
    if (r.b_true)
        out << "# b_true=" << format_double(*r.b_true) << '\n';
    else
        out << "# b_true=none\n";
    out << "# kind=dY\n";
    write_records(out, r.increments);
}

namespace {

// "key=value" payload of a "# key=value" header line; throws if key differs.
std::string header_value(const std::string& line, const std::string& key, int line_no) {
    const std::string prefix = "# " + key + "=";
    if (line.rfind(prefix, 0) != 0)
        throw ParseError(line_no, "expected header '" + prefix + "...', got '" + line + "'");
    return line.substr(prefix.size());
}

double parse_double(const std::string& s, int line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError(line_no, "malformed number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, int line_no) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError(line_no, "malformed integer '" + s + "'");
    return v;
}

}  // namespace

RecordFile load_record(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open record file: " + path.string());

    RecordFile rec;
    std::string line;
    int line_no = 0;

    auto next_line = [&]() {
        if (!std::getline(in, line)) throw ParseError(line_no + 1, "unexpected end of file");
        ++line_no;
    };

    next_line();
    rec.dt = parse_double(header_value(line, "dt", line_no), line_no);
    if (!(rec.dt > 0.0)) throw ParseError(line_no, "dt must be > 0");

    next_line();
    rec.steps = parse_u64(header_value(line, "steps", line_no), line_no);

    next_line();
    if (const auto v = header_value(line, "seed", line_no); v != "none")
        rec.seed = parse_u64(v, line_no);

    next_line();
    if (const auto v = header_value(line, "b_true", line_no); v != "none")
        rec.b_true = parse_double(v, line_no);

    next_line();
    if (const auto v = header_value(line, "kind", line_no); v == "dW")
        rec.kind = RecordKind::wiener;
    else if (v == "dY")
        rec.kind = RecordKind::measurement;
    else
        throw ParseError(line_no, "kind must be dW or dY");

    rec.increments.reserve(rec.steps);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        rec.increments.push_back(parse_double(line, line_no));
    }
    if (rec.increments.size() != rec.steps)
        throw ParseError(line_no, "expected " + std::to_string(rec.steps) + " increments, found " +
                                      std::to_string(rec.increments.size()));
    return rec;
}

WienerRealization RecordFile::to_wiener() const {
    if (kind != RecordKind::wiener)
        throw std::runtime_error("record file holds dY increments, not a dW realization");
    WienerRealization w;
    w.dt = dt;
    w.increments = increments;
    w.seed = seed.value_or(0);
    return w;
}

MeasurementRecord RecordFile::to_measurement() const {
    if (kind != RecordKind::measurement)
        throw std::runtime_error("record file holds dW increments, not a dY record");
    MeasurementRecord r;
    r.dt = dt;
    r.increments = increments;
    r.b_true = b_true;
    return r;
}

}  // namespace maglab
