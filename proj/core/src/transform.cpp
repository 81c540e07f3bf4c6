#include "wn/transform.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "io_detail.hpp"

namespace wn {

namespace {

void require_power_of_two(std::size_t n) {
    if (n == 0 || !std::has_single_bit(n)) {
        throw std::invalid_argument("fwht_in_place: size must be a power of two, got " + std::to_string(n));
    }
}

}  // namespace

Spectrum::Spectrum(Resolution M, std::vector<double> c) : resolution(M), coefficients(std::move(c)) {
    if (coefficients.size() != static_cast<std::size_t>(resolution.atoms())) {
        throw std::invalid_argument("Spectrum: expected " + std::to_string(resolution.atoms()) +
                                    " coefficients, got " + std::to_string(coefficients.size()));
    }
    for (double c_k : coefficients) {
        if (!std::isfinite(c_k)) {
            throw std::invalid_argument("Spectrum: coefficients must be finite");
        }
    }
}

void fwht_in_place(std::vector<double>& v) {
    require_power_of_two(v.size());
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double x = v[j];
                const double y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

StepFunction walsh_function(std::size_t n, Resolution M) {
    const auto atoms = static_cast<std::size_t>(M.atoms());
    if (n >= atoms) {
        throw std::invalid_argument("walsh_function: index " + std::to_string(n) +
                                    " out of range at resolution " + std::to_string(M.bits()));
    }
    StepFunction f(M);
    for (std::size_t j = 0; j < atoms; ++j) {
        f.values[j] = (std::popcount(n & j) & 1u) ? -1.0 : 1.0;
    }
    return f;
}

Spectrum analyze(const StepFunction& f) {
    Spectrum s(f.resolution, f.values);
    fwht_in_place(s.coefficients);
    const int M = f.resolution.bits();
    for (double& c : s.coefficients) {
        c = std::ldexp(c, -M);
    }
    return s;
}

StepFunction synthesize(const Spectrum& s) {
    StepFunction f(s.resolution, s.coefficients);
    fwht_in_place(f.values);
    return f;
}

Spectrum truncate(const Spectrum& s, std::size_t n) {
    const auto atoms = static_cast<std::size_t>(s.resolution.atoms());
    if (n > atoms) {
        throw std::invalid_argument("truncate: cutoff " + std::to_string(n) + " exceeds " + std::to_string(atoms));
    }
    Spectrum out(s.resolution);
    for (std::size_t k = 0; k < n; ++k) {
        out.coefficients[k] = s.coefficients[k];
    }
    return out;
}

StepFunction partial_sum(const StepFunction& f, std::size_t n) {
    return synthesize(truncate(analyze(f), n));
}

void write_csv(std::ostream& out, const Spectrum& s) {
    out << "# resolution=" << s.resolution.bits() << " kind=spectrum\n";
    for (double c : s.coefficients) {
        out << format_value(c) << '\n';
    }
}

void write_csv(const std::string& path, const Spectrum& s) {
    std::ostringstream buffer;
    write_csv(buffer, s);
    write_text_atomic(path, buffer.str());
}

Spectrum read_spectrum_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("read_spectrum_csv: empty input");
    }
    const int bits = detail::parse_resolution_header(header, "kind=spectrum");
    return Spectrum(Resolution(bits), detail::read_value_lines(in, bits));
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_spectrum_csv: cannot open " + path);
    }
    return read_spectrum_csv(in);
}

}  // namespace wn
