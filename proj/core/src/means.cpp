#include "wn/means.hpp"

#include <bit>
#include <stdexcept>

#include "wn/kernels.hpp"
#include "wn/transform.hpp"

namespace wn {

namespace {

void require_order(std::size_t n, Resolution M, const char* what) {
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": order must be at least 1");
    }
    if (n > static_cast<std::size_t>(M.atoms())) {
        throw std::invalid_argument(std::string(what) + ": order " + std::to_string(n) +
                                    " exceeds atom count at resolution " + std::to_string(M.bits()));
    }
}

// Walks S_1 f, S_2 f, ... by adding one Walsh component per step and folds
// coefficient c_k * S_k(f) into an accumulator.
class PartialSumWalker {
public:
    explicit PartialSumWalker(const StepFunction& f)
        : spectrum_(analyze(f)),
          atoms_(static_cast<std::size_t>(f.resolution.atoms())),
          partial_(atoms_, 0.0),
          accumulated_(atoms_, 0.0) {}

    // Extends the running partial sum to S_k f (k must increase by 1 each call)
    // and adds c * S_k f to the accumulator.
    void fold(std::size_t k, double c) {
        const std::size_t freq = k - 1;
        const double coeff = spectrum_.coefficients[freq];
        if (coeff != 0.0) {
            for (std::size_t j = 0; j < atoms_; ++j) {
                partial_[j] += coeff * ((std::popcount(freq & j) & 1u) ? -1.0 : 1.0);
            }
        }
        if (c == 0.0) return;
        for (std::size_t j = 0; j < atoms_; ++j) {
            accumulated_[j] += c * partial_[j];
        }
    }

    const std::vector<double>& partial() const { return partial_; }
    std::vector<double> take() { return std::move(accumulated_); }

private:
    Spectrum spectrum_;
    std::size_t atoms_;
    std::vector<double> partial_;
    std::vector<double> accumulated_;
};

}  // namespace

const char* mean_method_name(MeanMethod method) {
    switch (method) {
        case MeanMethod::partial_sum: return "partial-sum";
        case MeanMethod::convolution: return "convolution";
        case MeanMethod::abel: return "abel";
    }
    throw std::invalid_argument("mean_method_name: unknown method");
}

StepFunction convolve(const StepFunction& f, const StepFunction& g) {
    if (f.resolution != g.resolution) {
        throw std::invalid_argument("convolve: resolution mismatch");
    }
    Spectrum fs = analyze(f);
    const Spectrum gs = analyze(g);
    for (std::size_t k = 0; k < fs.coefficients.size(); ++k) {
        fs.coefficients[k] *= gs.coefficients[k];
    }
    return synthesize(fs);
}

StepFunction fejer_mean(const Spectrum& spectrum, std::size_t n) {
    require_order(n, spectrum.resolution, "fejer_mean");
    Spectrum s(spectrum.resolution);
    for (std::size_t m = 0; m < n; ++m) {
        s.coefficients[m] = spectrum.coefficients[m] * (static_cast<double>(n - m) / static_cast<double>(n));
    }
    return synthesize(s);
}

StepFunction fejer_mean(const StepFunction& f, std::size_t n) {
    return fejer_mean(analyze(f), n);
}

MeanResult norlund_mean(const StepFunction& f, std::size_t n, const WeightSequence& q, MeanMethod method) {
    require_order(n, f.resolution, "norlund_mean");
    const std::vector<double> weights = q.q_prefix(n);
    double Q_n = 0.0;
    for (double w : weights) Q_n += w;
    if (Q_n <= 0.0) {
        throw std::invalid_argument("norlund_mean: Q_n must be positive");
    }

    StepFunction values(f.resolution);
    switch (method) {
        case MeanMethod::partial_sum: {
            PartialSumWalker walker(f);
            for (std::size_t k = 1; k <= n; ++k) {
                walker.fold(k, weights[n - k] / Q_n);
            }
            values = StepFunction(f.resolution, walker.take());
            break;
        }
        case MeanMethod::convolution: {
            values = convolve(f, norlund_kernel(q, n, f.resolution));
            break;
        }
        case MeanMethod::abel: {
            // sum_{j=1}^{n-1} (q_{n-j} - q_{n-j-1}) j sigma_j f + q_0 n sigma_n f,
            // all over Q_n; j sigma_j f is the running sum of S_1..S_j, so the
            // walker's accumulator can absorb each term at cost O(2^M) per j.
            const auto atoms = static_cast<std::size_t>(f.resolution.atoms());
            PartialSumWalker walker(f);
            std::vector<double> running(atoms, 0.0);       // S_1 f + ... + S_j f
            std::vector<double> total(atoms, 0.0);
            for (std::size_t j = 1; j <= n; ++j) {
                walker.fold(j, 0.0);
                for (std::size_t i = 0; i < atoms; ++i) {
                    running[i] += walker.partial()[i];
                }
                const double c = j < n ? weights[n - j] - weights[n - j - 1] : weights[0];
                if (c == 0.0) continue;
                const double scale = c / Q_n;
                for (std::size_t i = 0; i < atoms; ++i) {
                    total[i] += scale * running[i];
                }
            }
            values = StepFunction(f.resolution, std::move(total));
            break;
        }
    }
    return MeanResult{n, f.resolution, method, std::move(values)};
}

StepFunction norlund_mean_spectral(const Spectrum& spectrum, std::size_t n, const WeightSequence& q) {
    require_order(n, spectrum.resolution, "norlund_mean_spectral");
    const std::vector<double> weights = q.q_prefix(n);
    double Q_n = 0.0;
    for (double w : weights) Q_n += w;
    if (Q_n <= 0.0) {
        throw std::invalid_argument("norlund_mean_spectral: Q_n must be positive");
    }
    Spectrum s(spectrum.resolution);
    double partial = 0.0;   // Q_{n-m}, accumulated in the same order as Q_n,
                            // so the m = 0 multiplier is exactly 1 and
                            // constant functions are fixed points.
    for (std::size_t m = n; m-- > 0;) {
        partial += weights[n - m - 1];
        s.coefficients[m] = spectrum.coefficients[m] * (partial / Q_n);
    }
    return synthesize(s);
}

StepFunction norlund_mean_spectral(const StepFunction& f, std::size_t n, const WeightSequence& q) {
    return norlund_mean_spectral(analyze(f), n, q);
}

}  // namespace wn
