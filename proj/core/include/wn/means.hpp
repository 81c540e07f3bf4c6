#pragma once

#include "wn/dyadic.hpp"
#include "wn/weights.hpp"

#include <cstddef>
#include <string>

// Fejer means sigma_n f = (1/n) sum_{k=1}^n S_k f and weighted means
// t_n f = (1/Q_n) sum_{k=1}^n q_{n-k} S_k f, computable three ways:
// by that defining sum, by convolution with the kernel F_n, or through
// summation by parts over cached Fejer means. The routes agree to 1e-10.

namespace wn {

enum class MeanMethod { partial_sum, convolution, abel };

const char* mean_method_name(MeanMethod method);

struct MeanResult {
    std::size_t order;
    Resolution resolution;
    MeanMethod method;
    StepFunction values;
};

// result[j] = 2^{-M} sum_i f[i] g[j XOR i], evaluated through spectra.
StepFunction convolve(const StepFunction& f, const StepFunction& g);

// sigma_n f for 1 <= n <= 2^M.
StepFunction fejer_mean(const StepFunction& f, std::size_t n);
StepFunction fejer_mean(const struct Spectrum& spectrum, std::size_t n);

MeanResult norlund_mean(const StepFunction& f, std::size_t n, const WeightSequence& q,
                        MeanMethod method = MeanMethod::partial_sum);

// Multiplier route used by sweeps: coefficient m scales by Q_{n-m}/Q_n.
// Agrees with norlund_mean to rounding; one transform pair per call.
StepFunction norlund_mean_spectral(const StepFunction& f, std::size_t n, const WeightSequence& q);

// Same multiplier route applied to a precomputed spectrum.
StepFunction norlund_mean_spectral(const struct Spectrum& spectrum, std::size_t n, const WeightSequence& q);

}  // namespace wn
