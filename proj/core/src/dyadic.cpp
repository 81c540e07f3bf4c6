#include "wn/dyadic.hpp"

#include "io_detail.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wn {

Resolution::Resolution(int bits) : bits_(bits) {
    if (bits < 1 || bits > kMaxResolution)
        throw std::invalid_argument("resolution must be in [1, " +
                                    std::to_string(kMaxResolution) + "], got " +
                                    std::to_string(bits));
}

namespace {

void require_same_resolution(Resolution a, Resolution b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": resolution mismatch (" +
                                    std::to_string(a.bits()) + " vs " +
                                    std::to_string(b.bits()) + ")");
}

}  // namespace

GroupElement group_element(Resolution M, std::uint32_t index) {
    if (index >= M.atoms())
        throw std::invalid_argument("group element index " + std::to_string(index) +
                                    " out of range at resolution " + std::to_string(M.bits()));
    return GroupElement{M, index};
}

GroupElement identity(Resolution M) { return GroupElement{M, 0}; }

GroupElement unit_vector(int t, Resolution M) {
    if (t < 0 || t >= M.bits())
        throw std::invalid_argument("coordinate index " + std::to_string(t) +
                                    " out of range at resolution " + std::to_string(M.bits()));
    return GroupElement{M, std::uint32_t{1} << t};
}

GroupElement group_add(const GroupElement& a, const GroupElement& b) {
    require_same_resolution(a.resolution, b.resolution, "group_add");
    return GroupElement{a.resolution, a.index ^ b.index};
}

DyadicInterval dyadic_interval(int depth, std::uint32_t residue) {
    if (depth < 0 || depth > kMaxResolution)
        throw std::invalid_argument("interval depth out of range: " + std::to_string(depth));
    if (depth < 32 && residue >= (std::uint32_t{1} << depth))
        throw std::invalid_argument("interval residue out of range");
    return DyadicInterval{depth, residue};
}

DyadicInterval interval_around(const GroupElement& x, int depth) {
    if (depth < 0 || depth > x.resolution.bits())
        throw std::invalid_argument("interval depth exceeds resolution");
    const std::uint32_t mask = (depth == 0) ? 0u : ((std::uint32_t{1} << depth) - 1u);
    return DyadicInterval{depth, x.index & mask};
}

bool interval_contains(const DyadicInterval& interval, const GroupElement& x) {
    if (interval.depth > x.resolution.bits())
        throw std::invalid_argument("interval depth exceeds element resolution");
    const std::uint32_t mask =
        (interval.depth == 0) ? 0u : ((std::uint32_t{1} << interval.depth) - 1u);
    return (x.index & mask) == interval.residue;
}

double interval_measure(const DyadicInterval& interval) {
    return std::ldexp(1.0, -interval.depth);
}

StepFunction::StepFunction(Resolution M, std::vector<double> v)
    : resolution(M), values(std::move(v)) {
    if (values.size() != M.atoms())
        throw std::invalid_argument("step function needs exactly " +
                                    std::to_string(M.atoms()) + " values, got " +
                                    std::to_string(values.size()));
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("step function value not finite");
}

StepFunction constant_function(Resolution M, double c) {
    StepFunction f(M);
    for (double& v : f.values) v = c;
    return f;
}

StepFunction indicator(const DyadicInterval& interval, Resolution M) {
    if (interval.depth > M.bits())
        throw std::invalid_argument("interval depth exceeds resolution");
    StepFunction f(M);
    const std::uint32_t mask =
        (interval.depth == 0) ? 0u : ((std::uint32_t{1} << interval.depth) - 1u);
    for (std::size_t j = 0; j < f.values.size(); ++j)
        if ((static_cast<std::uint32_t>(j) & mask) == interval.residue) f.values[j] = 1.0;
    return f;
}

StepFunction translate(const StepFunction& f, const GroupElement& t) {
    require_same_resolution(f.resolution, t.resolution, "translate");
    StepFunction out(f.resolution);
    for (std::size_t j = 0; j < f.values.size(); ++j)
        out.values[j] = f.values[j ^ t.index];
    return out;
}

double integrate(const StepFunction& f) {
    double sum = 0.0;
    for (double v : f.values) sum += v;
    return std::ldexp(sum, -f.resolution.bits());
}

double integrate_abs(const StepFunction& f) {
    double sum = 0.0;
    for (double v : f.values) sum += std::fabs(v);
    return std::ldexp(sum, -f.resolution.bits());
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f.resolution, g.resolution, "operator+");
    StepFunction out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += g.values[j];
    return out;
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f.resolution, g.resolution, "operator-");
    StepFunction out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] -= g.values[j];
    return out;
}

StepFunction operator*(double c, const StepFunction& f) {
    StepFunction out = f;
    for (double& v : out.values) v *= c;
    return out;
}

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f.resolution, g.resolution, "pointwise_product");
    StepFunction out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] *= g.values[j];
    return out;
}

double max_abs(const StepFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::fmax(m, std::fabs(v));
    return m;
}

double max_abs_diff(const StepFunction& f, const StepFunction& g) {
    require_same_resolution(f.resolution, g.resolution, "max_abs_diff");
    double m = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j)
        m = std::fmax(m, std::fabs(f.values[j] - g.values[j]));
    return m;
}

std::string format_value(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_csv(std::ostream& out, const StepFunction& f) {
    out << "# resolution=" << f.resolution.bits() << "\n";
    for (double v : f.values) out << format_value(v) << "\n";
}

void write_csv(const std::string& path, const StepFunction& f) {
    std::ostringstream os;
    write_csv(os, f);
    write_text_atomic(path, os.str());
}

namespace detail {

std::vector<double> read_value_lines(std::istream& in, int bits) {
    const std::size_t expected = std::size_t{1} << bits;
    std::vector<double> values;
    values.reserve(expected);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("bad value line: '" + line + "'");
        }
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos != line.size()) throw std::runtime_error("bad value line: '" + line + "'");
        if (!std::isfinite(v)) throw std::runtime_error("non-finite value in file");
        if (values.size() == expected)
            throw std::runtime_error("too many value lines, expected " +
                                     std::to_string(expected));
        values.push_back(v);
    }
    if (values.size() != expected)
        throw std::runtime_error("expected " + std::to_string(expected) + " value lines, got " +
                                 std::to_string(values.size()));
    return values;
}

int parse_resolution_header(const std::string& header, const std::string& required_suffix) {
    std::istringstream hs(header);
    std::string hash, token;
    hs >> hash >> token;
    const std::string key = "resolution=";
    if (hash != "#" || token.compare(0, key.size(), key) != 0)
        throw std::runtime_error("missing '# resolution=M' header");
    int bits;
    try {
        bits = std::stoi(token.substr(key.size()));
    } catch (const std::exception&) {
        throw std::runtime_error("bad resolution in header: '" + header + "'");
    }
    std::string rest;
    hs >> rest;
    if (rest != required_suffix)
        throw std::runtime_error("unexpected header: '" + header + "'");
    return bits;
}

}  // namespace detail

StepFunction read_step_function_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty step function file");
    const Resolution M(detail::parse_resolution_header(header, ""));
    return StepFunction(M, detail::read_value_lines(in, M.bits()));
}

StepFunction read_step_function_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_step_function_csv(in);
}

}  // namespace wn
