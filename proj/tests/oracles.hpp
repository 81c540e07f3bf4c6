// Brute-force reference implementations used to cross-check the library.
// Everything here is deliberately naive: direct double loops over atoms,
// no butterflies, no spectral shortcuts. Keep it slow and obvious.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wn/dyadic.hpp"
#include "wn/weights.hpp"

namespace oracles {

inline double walsh_sign(std::uint64_t n, std::uint64_t j) {
    return (__builtin_popcountll(n & j) & 1) ? -1.0 : 1.0;
}

// Coefficient-by-coefficient Walsh analysis, O(4^M).
inline std::vector<double> naive_analyze(const wn::StepFunction& f) {
    const std::size_t n = f.values.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += f.values[j] * walsh_sign(k, j);
        out[k] = acc / static_cast<double>(n);
    }
    return out;
}

inline wn::StepFunction naive_synthesize(wn::Resolution M,
                                         const std::vector<double>& coeff) {
    wn::StepFunction f(M);
    const std::size_t n = f.values.size();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < coeff.size(); ++k)
            acc += coeff[k] * walsh_sign(k, j);
        f.values[j] = acc;
    }
    return f;
}

// (f*g)(x) = 2^{-M} sum_t f(t) g(x xor t), O(4^M).
inline wn::StepFunction naive_convolve(const wn::StepFunction& f,
                                       const wn::StepFunction& g) {
    wn::StepFunction out(f.resolution);
    const std::size_t n = f.values.size();
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t)
            acc += f.values[t] * g.values[x ^ t];
        out.values[x] = acc / static_cast<double>(n);
    }
    return out;
}

// D_n = sum_{k<n} w_k, summed term by term on each atom.
inline wn::StepFunction naive_dirichlet(std::size_t n, wn::Resolution M) {
    wn::StepFunction out(M);
    const std::size_t atoms = out.values.size();
    for (std::size_t j = 0; j < atoms; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += walsh_sign(k, j);
        out.values[j] = acc;
    }
    return out;
}

// K_n = (1/n) sum_{k=1..n} D_k.
inline wn::StepFunction naive_fejer(std::size_t n, wn::Resolution M) {
    wn::StepFunction out(M);
    for (std::size_t k = 1; k <= n; ++k) {
        wn::StepFunction d = naive_dirichlet(k, M);
        for (std::size_t j = 0; j < out.values.size(); ++j)
            out.values[j] += d.values[j];
    }
    for (double& v : out.values) v /= static_cast<double>(n);
    return out;
}

// (1/Q_n) sum_{k=1..n} q_{n-k} D_k.
inline wn::StepFunction naive_norlund_kernel(const wn::WeightSequence& q,
                                             std::size_t n, wn::Resolution M) {
    wn::StepFunction out(M);
    for (std::size_t k = 1; k <= n; ++k) {
        wn::StepFunction d = naive_dirichlet(k, M);
        const double w = q.q(n - k);
        for (std::size_t j = 0; j < out.values.size(); ++j)
            out.values[j] += w * d.values[j];
    }
    const double Q = q.Q(n);
    for (double& v : out.values) v /= Q;
    return out;
}

// S_n f on each atom from the naive coefficients.
inline wn::StepFunction naive_partial_sum(const wn::StepFunction& f, std::size_t n) {
    std::vector<double> coeff = naive_analyze(f);
    if (n < coeff.size()) coeff.resize(n);
    return naive_synthesize(f.resolution, coeff);
}

// t_n f = (1/Q_n) sum_{k=1..n} q_{n-k} S_k f, building every partial sum.
inline wn::StepFunction naive_norlund_mean(const wn::StepFunction& f,
                                           std::size_t n,
                                           const wn::WeightSequence& q) {
    wn::StepFunction out(f.resolution);
    for (std::size_t k = 1; k <= n; ++k) {
        wn::StepFunction s = naive_partial_sum(f, k);
        const double w = q.q(n - k);
        for (std::size_t j = 0; j < out.values.size(); ++j)
            out.values[j] += w * s.values[j];
    }
    const double Q = q.Q(n);
    for (double& v : out.values) v /= Q;
    return out;
}

inline double naive_lp(const wn::StepFunction& f, double p) {
    const std::size_t n = f.values.size();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::fabs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : f.values) acc += std::pow(std::fabs(v), p);
    return std::pow(acc / static_cast<double>(n), 1.0 / p);
}

// Modulus via explicit translated copies, exercising translate() rather
// than the fused difference loop inside the library.
inline double naive_modulus(const wn::StepFunction& f, double p, int k) {
    const std::size_t atoms = f.values.size();
    const std::size_t step = std::size_t{1} << k;
    double best = 0.0;
    for (std::size_t t = 0; t < atoms; t += step) {
        wn::GroupElement shift = wn::group_element(f.resolution, static_cast<std::uint32_t>(t));
        wn::StepFunction g = wn::translate(f, shift);
        for (std::size_t j = 0; j < atoms; ++j) g.values[j] -= f.values[j];
        best = std::max(best, naive_lp(g, p));
    }
    return best;
}

inline wn::StepFunction random_function(wn::Resolution M, std::uint64_t seed,
                                        double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    wn::StepFunction f(M);
    for (double& v : f.values) v = dist(rng);
    return f;
}

inline double max_abs_diff_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size() && j < b.size(); ++j)
        m = std::max(m, std::fabs(a[j] - b[j]));
    return m;
}

}  // namespace oracles
