#pragma once

#include "wn/dyadic.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

// L^p norms on the group, the dyadic modulus of continuity
// omega_p(2^-k, f) = max over t in I_k of ||f(.+t) - f||_p (an exact finite
// maximum at resolution M), and helpers for Lipschitz-type test functions.

namespace wn {

// (2^-M sum |f[j]|^p)^{1/p}; p may be infinity (max-abs). Requires p >= 1.
double lp_norm(const StepFunction& f, double p);

// ||f - g||_p without building the difference.
double lp_distance(const StepFunction& f, const StepFunction& g, double p);

// omega_p(2^-k, f) for 0 <= k <= M.
double modulus(const StepFunction& f, double p, int k);

struct ModulusProfile {
    double p;
    Resolution resolution;
    std::vector<double> values;     // values[k] = omega_p(2^-k, f), k = 0..M

    double omega(int k) const;
};

ModulusProfile modulus_profile(const StepFunction& f, double p);

// CSV rows "k,omega_k" under the header "# p=<p> resolution=M".
void write_csv(std::ostream& out, const ModulusProfile& profile);
void write_csv(const std::string& path, const ModulusProfile& profile);

enum class LipVariant { lacunary, random };

// f = sum_{m<M} 2^{-alpha m} eps_m w_{2^m}; eps_m = 1 for lacunary,
// seeded +-1 signs for random. Modulus decays like 2^{-alpha k}.
StepFunction lip_generator(double alpha, Resolution M, LipVariant variant = LipVariant::lacunary,
                           std::uint64_t seed = 0);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least squares of log2(ys) against log2(xs); needs >= 3 positive points.
RateFit rate_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace wn
