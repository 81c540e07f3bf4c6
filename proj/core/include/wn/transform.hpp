#pragma once

#include "wn/dyadic.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

// Walsh-Paley analysis and synthesis. Coefficients are kept in Paley order;
// with the LSB coordinate convention w_n(x) = (-1)^{popcount(n & index(x))},
// so the naturally ordered fast Walsh-Hadamard butterfly computes the system
// directly (no bit reversal).

namespace wn {

struct Spectrum {
    explicit Spectrum(Resolution M) : resolution(M), coefficients(M.atoms(), 0.0) {}
    Spectrum(Resolution M, std::vector<double> c);

    Resolution resolution;
    std::vector<double> coefficients;   // entry k = f_hat(k)
};

// Unnormalized in-place butterfly, y = H x with H[j][k] = (-1)^{popcount(j&k)}.
// Size must be a power of two; summation order within a stage is fixed.
void fwht_in_place(std::vector<double>& v);

// w_n as a step function; takes only the values +-1.
StepFunction walsh_function(std::size_t n, Resolution M);

// f_hat(k) = 2^{-M} sum_j f(j) (-1)^{popcount(k & j)}.
Spectrum analyze(const StepFunction& f);

// values[j] = sum_k s(k) (-1)^{popcount(k & j)}; inverse of analyze.
StepFunction synthesize(const Spectrum& s);

// Spectrum truncated to frequencies < n.
Spectrum truncate(const Spectrum& s, std::size_t n);

// S_n f: synthesis of the first n coefficients; S_0 f = 0, S_{2^M} f = f.
StepFunction partial_sum(const StepFunction& f, std::size_t n);

// CSV with header "# resolution=M kind=spectrum".
void write_csv(std::ostream& out, const Spectrum& s);
void write_csv(const std::string& path, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& in);
Spectrum read_spectrum_csv(const std::string& path);

}  // namespace wn
