#include "wn/metrics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wn/transform.hpp"

namespace wn {

namespace {

void require_exponent(double p) {
    if (std::isnan(p) || p < 1.0) {
        throw std::invalid_argument("norm exponent must satisfy p >= 1");
    }
}

// sum_j |f[j ^ t] - f[j]|^p, or the max for p = infinity.
double translated_diff_power(const std::vector<double>& v, std::uint32_t t, double p) {
    const std::size_t n = v.size();
    double acc = 0.0;
    if (std::isinf(p)) {
        for (std::size_t j = 0; j < n; ++j) {
            acc = std::max(acc, std::abs(v[j ^ t] - v[j]));
        }
    } else if (p == 1.0) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::abs(v[j ^ t] - v[j]);
        }
    } else if (p == 2.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = v[j ^ t] - v[j];
            acc += d * d;
        }
    } else if (p == 3.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = std::abs(v[j ^ t] - v[j]);
            acc += d * d * d;
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::pow(std::abs(v[j ^ t] - v[j]), p);
        }
    }
    return acc;
}

double finish_norm(double power_sum, double p, int bits) {
    if (std::isinf(p)) return power_sum;
    return std::pow(std::ldexp(power_sum, -bits), 1.0 / p);
}

}  // namespace

double lp_norm(const StepFunction& f, double p) {
    require_exponent(p);
    if (std::isinf(p)) return max_abs(f);
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : f.values) acc += std::abs(v);
    } else if (p == 2.0) {
        for (double v : f.values) acc += v * v;
    } else if (p == 3.0) {
        for (double v : f.values) {
            const double a = std::abs(v);
            acc += a * a * a;
        }
    } else {
        for (double v : f.values) acc += std::pow(std::abs(v), p);
    }
    return finish_norm(acc, p, f.resolution.bits());
}

double lp_distance(const StepFunction& f, const StepFunction& g, double p) {
    require_exponent(p);
    if (f.resolution != g.resolution) {
        throw std::invalid_argument("lp_distance: resolution mismatch");
    }
    const std::size_t n = f.values.size();
    const double* a = f.values.data();
    const double* b = g.values.data();
    double acc = 0.0;
    if (std::isinf(p)) {
        for (std::size_t j = 0; j < n; ++j) {
            acc = std::max(acc, std::abs(a[j] - b[j]));
        }
    } else if (p == 1.0) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::abs(a[j] - b[j]);
        }
    } else if (p == 2.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = a[j] - b[j];
            acc += d * d;
        }
    } else if (p == 3.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = std::abs(a[j] - b[j]);
            acc += d * d * d;
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::pow(std::abs(a[j] - b[j]), p);
        }
    }
    return finish_norm(acc, p, f.resolution.bits());
}

double modulus(const StepFunction& f, double p, int k) {
    require_exponent(p);
    const int M = f.resolution.bits();
    if (k < 0 || k > M) {
        throw std::invalid_argument("modulus: depth " + std::to_string(k) + " outside [0, " +
                                    std::to_string(M) + "]");
    }
    const auto step = static_cast<std::uint32_t>(1u) << k;
    const auto atoms = static_cast<std::uint32_t>(f.resolution.atoms());
    double best = 0.0;
    for (std::uint32_t t = 0; t < atoms; t += step) {
        best = std::max(best, translated_diff_power(f.values, t, p));
    }
    return finish_norm(best, p, M);
}

double ModulusProfile::omega(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= values.size()) {
        throw std::out_of_range("ModulusProfile: depth " + std::to_string(k) + " out of range");
    }
    return values[static_cast<std::size_t>(k)];
}

ModulusProfile modulus_profile(const StepFunction& f, double p) {
    ModulusProfile profile{p, f.resolution, {}};
    const int M = f.resolution.bits();
    profile.values.reserve(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) {
        profile.values.push_back(modulus(f, p, k));
    }
    return profile;
}

void write_csv(std::ostream& out, const ModulusProfile& profile) {
    out << "# p=" << format_value(profile.p) << " resolution=" << profile.resolution.bits() << '\n';
    for (std::size_t k = 0; k < profile.values.size(); ++k) {
        out << k << ',' << format_value(profile.values[k]) << '\n';
    }
}

void write_csv(const std::string& path, const ModulusProfile& profile) {
    std::ostringstream buffer;
    write_csv(buffer, profile);
    write_text_atomic(path, buffer.str());
}

StepFunction lip_generator(double alpha, Resolution M, LipVariant variant, std::uint64_t seed) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("lip_generator: alpha must be positive");
    }
    std::mt19937_64 rng(seed);
    Spectrum s(M);
    for (int m = 0; m < M.bits(); ++m) {
        double sign = 1.0;
        if (variant == LipVariant::random) {
            sign = (rng() & 1u) ? -1.0 : 1.0;
        }
        s.coefficients[static_cast<std::size_t>(1) << m] = sign * std::exp2(-alpha * m);
    }
    return synthesize(s);
}

RateFit rate_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("rate_fit: xs and ys differ in length");
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("rate_fit: need at least 3 points");
    }
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            throw std::invalid_argument("rate_fit: points must be positive");
        }
        lx[i] = std::log2(xs[i]);
        ly[i] = std::log2(ys[i]);
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += lx[i];
        mean_y += ly[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mean_x;
        const double dy = ly[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("rate_fit: xs are all equal");
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    if (syy > 0.0) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
            residual += e * e;
        }
        fit.r_squared = 1.0 - residual / syy;
    } else {
        fit.r_squared = 1.0;
    }
    return fit;
}

}  // namespace wn
