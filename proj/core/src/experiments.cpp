#include "wn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "wn/kernels.hpp"
#include "wn/means.hpp"
#include "wn/parallel.hpp"

namespace wn {

namespace {

BoundReport finish_report(std::string theorem, std::size_t n, double p, std::string weights,
                          double lhs, double rhs) {
    BoundReport r;
    r.theorem = std::move(theorem);
    r.n = n;
    r.N = highest_bit(n);
    r.p = p;
    r.weights = std::move(weights);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.holds = r.margin >= -kHoldsTolerance;
    r.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    return r;
}

int checked_depth(const FunctionProfile& fp, std::size_t n, const char* what) {
    const int N = highest_bit(n);
    if (N >= fp.f.resolution.bits()) {
        throw std::invalid_argument(std::string(what) + ": order " + std::to_string(n) +
                                    " needs modulus depth " + std::to_string(N) +
                                    " at resolution " + std::to_string(fp.f.resolution.bits()));
    }
    return N;
}

double sum_weights(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    return total;
}

std::size_t isqrt(std::size_t k) {
    auto j = static_cast<std::size_t>(std::sqrt(static_cast<double>(k)));
    while (j > 0 && j * j > k) --j;
    while ((j + 1) * (j + 1) <= k) ++j;
    return j;
}

void require_increasing_orders(const std::vector<std::size_t>& orders, const char* what) {
    if (orders.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty order list");
    }
    for (std::size_t i = 1; i < orders.size(); ++i) {
        if (orders[i] <= orders[i - 1]) {
            throw std::invalid_argument(std::string(what) + ": orders must be strictly increasing");
        }
    }
}

}  // namespace

FunctionProfile make_profile(std::string name, StepFunction f, double p) {
    Spectrum spectrum = analyze(f);
    ModulusProfile moduli = modulus_profile(f, p);
    const double norm = lp_norm(f, p);
    return FunctionProfile{std::move(name), std::move(f), std::move(spectrum), p, std::move(moduli), norm};
}

BoundReport verify_fejer_estimate(const FunctionProfile& fp, std::size_t n) {
    if (n < 2 || n > fp.f.resolution.atoms()) {
        throw std::invalid_argument("verify_fejer_estimate: order must lie in [2, 2^M]");
    }
    const int N = checked_depth(fp, n, "verify_fejer_estimate");
    const double lhs = lp_distance(fejer_mean(fp.spectrum, n), fp.f, fp.p);
    double sum = 0.0;
    for (int s = 0; s <= N; ++s) {
        sum += std::ldexp(1.0, s - N) * fp.moduli.omega(s);
    }
    return finish_report("fejer", n, fp.p, "", lhs, 3.0 * sum);
}

BoundReport verify_theorem1(const FunctionProfile& fp, std::size_t n, const WeightSequence& q) {
    if (n < 1 || n > fp.f.resolution.atoms()) {
        throw std::invalid_argument("verify_theorem1: order must lie in [1, 2^M]");
    }
    const int N = checked_depth(fp, n, "verify_theorem1");
    if (!q.non_decreasing(n)) {
        throw std::invalid_argument("verify_theorem1: weights '" + q.label() +
                                    "' are not non-decreasing over [0, " + std::to_string(n) + "]");
    }
    const std::vector<double> weights = q.q_prefix(n);
    const double Q_n = sum_weights(weights);
    const double lhs = lp_distance(norlund_mean_spectral(fp.spectrum, n, q), fp.f, fp.p);
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
        const std::size_t shift = std::size_t{1} << i;
        sum += std::ldexp(1.0, i) * weights[n - shift] * fp.moduli.omega(i);
    }
    const double rhs = 18.0 / Q_n * sum + 12.0 * fp.moduli.omega(N);
    return finish_report("t1", n, fp.p, q.label(), lhs, rhs);
}

BoundReport verify_theorem2(const FunctionProfile& fp, int exponent, const WeightSequence& q) {
    const int M = fp.f.resolution.bits();
    if (exponent < 0 || exponent >= M) {
        throw std::invalid_argument("verify_theorem2: exponent must lie in [0, M)");
    }
    const auto order = std::size_t{1} << exponent;
    if (!q.non_increasing(order)) {
        throw std::invalid_argument("verify_theorem2: weights '" + q.label() +
                                    "' are not non-increasing over [0, " + std::to_string(order) + "]");
    }
    const std::vector<double> weights = q.q_prefix(order + 1);
    if (weights[order] <= 0.0) {
        throw std::invalid_argument("verify_theorem2: q_{2^n} = 0 leaves the bound undefined");
    }
    const double lhs = lp_distance(norlund_mean_spectral(fp.spectrum, order, q), fp.f, fp.p);
    double rhs = 3.0 * fp.moduli.omega(exponent);
    for (int s = 0; s < exponent; ++s) {
        const double omega_s = fp.moduli.omega(s);
        rhs += std::ldexp(1.0, s - exponent) * omega_s;
        rhs += 3.0 * (static_cast<double>(exponent - s) / std::ldexp(1.0, exponent - s)) *
               (weights[std::size_t{1} << s] / weights[order]) * omega_s;
    }
    return finish_report("t2", order, fp.p, q.label(), lhs, rhs);
}

BoundReport verify_theorem3(const FunctionProfile& fp, std::size_t n, const WeightSequence& q, double C) {
    if (n < 1 || n > fp.f.resolution.atoms()) {
        throw std::invalid_argument("verify_theorem3: order must lie in [1, 2^M]");
    }
    const int N = checked_depth(fp, n, "verify_theorem3");
    if (!q.non_increasing(n)) {
        throw std::invalid_argument("verify_theorem3: weights '" + q.label() +
                                    "' are not non-increasing over [0, " + std::to_string(n) + "]");
    }
    const double lhs = lp_distance(norlund_mean_spectral(fp.spectrum, n, q), fp.f, fp.p);
    double sum = 0.0;
    for (int j = 0; j <= N; ++j) {
        sum += std::ldexp(1.0, j - N) * fp.moduli.omega(j);
    }
    if (sum == 0.0 && lhs > 1e-12) {
        throw std::runtime_error("verify_theorem3: zero modulus sum with nonzero error; "
                                 "a non-constant function cannot have vanishing modulus");
    }
    BoundReport r = finish_report("t3", n, fp.p, q.label(), lhs, C > 0.0 ? C * sum : sum);
    r.ratio = sum > 0.0 ? lhs / sum : 0.0;
    if (C <= 0.0) {
        r.holds = std::isfinite(r.ratio);
    }
    return r;
}

BoundReport verify_moricz_siddiqi(const FunctionProfile& fp, std::size_t n, const WeightSequence& q) {
    if (n < 2 || n > fp.f.resolution.atoms()) {
        throw std::invalid_argument("verify_moricz_siddiqi: order must lie in [2, 2^M]");
    }
    const int j = highest_bit(n - 1);   // n = 2^j + k with 1 <= k <= 2^j
    const std::vector<double> weights = q.q_prefix(n);
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        prefix[t + 1] = prefix[t] + weights[t];
    }
    const double Q_n = prefix[n];
    const double lhs = lp_distance(norlund_mean_spectral(fp.spectrum, n, q), fp.f, fp.p);
    double sum = 0.0;
    if (q.non_decreasing(n)) {
        for (int i = 0; i < j; ++i) {
            const std::size_t shift = std::size_t{1} << i;
            sum += std::ldexp(1.0, i) * weights[n - shift] * fp.moduli.omega(i);
        }
    } else {
        for (int i = 0; i < j; ++i) {
            const std::size_t lo = n - (std::size_t{2} << i) + 1;
            const std::size_t hi = n - (std::size_t{1} << i) + 1;
            sum += (prefix[hi] - prefix[lo]) * fp.moduli.omega(i);
        }
    }
    const double rhs = sum / Q_n + fp.moduli.omega(j);
    BoundReport r = finish_report("ms", n, fp.p, q.label(), lhs, rhs);
    r.holds = std::isfinite(r.ratio);
    return r;
}

BoundReport verify_fejer_estimate(const StepFunction& f, double p, std::size_t n) {
    return verify_fejer_estimate(make_profile("", f, p), n);
}

BoundReport verify_theorem1(const StepFunction& f, double p, std::size_t n, const WeightSequence& q) {
    return verify_theorem1(make_profile("", f, p), n, q);
}

BoundReport verify_theorem2(const StepFunction& f, double p, int exponent, const WeightSequence& q) {
    return verify_theorem2(make_profile("", f, p), exponent, q);
}

BoundReport verify_theorem3(const StepFunction& f, double p, std::size_t n, const WeightSequence& q,
                            double C) {
    return verify_theorem3(make_profile("", f, p), n, q, C);
}

BoundReport verify_moricz_siddiqi(const StepFunction& f, double p, std::size_t n,
                                  const WeightSequence& q) {
    return verify_moricz_siddiqi(make_profile("", f, p), n, q);
}

std::vector<BoundReport> sweep(const std::string& theorem, const FunctionProfile& fp,
                               const WeightSequence* q, const std::vector<std::size_t>& orders,
                               double C) {
    require_increasing_orders(orders, "sweep");
    const bool needs_weights = theorem != "fejer";
    if (needs_weights && q == nullptr) {
        throw std::invalid_argument("sweep: theorem '" + theorem + "' needs a weight sequence");
    }
    if (theorem != "fejer" && theorem != "t1" && theorem != "t2" && theorem != "t3" && theorem != "ms") {
        throw std::invalid_argument("sweep: unknown theorem '" + theorem + "'");
    }
    if (theorem == "t2") {
        for (std::size_t n : orders) {
            if (n == 0 || (n & (n - 1)) != 0) {
                throw std::invalid_argument("sweep: t2 orders must be powers of two, got " +
                                            std::to_string(n));
            }
        }
    }
    if (needs_weights) {
        q->q_prefix(orders.back() + 2);   // memoize once, outside the parallel region
    }
    std::vector<BoundReport> out(orders.size());
    parallel_for(0, orders.size(), [&](std::size_t i) {
        const std::size_t n = orders[i];
        if (theorem == "fejer") {
            out[i] = verify_fejer_estimate(fp, n);
        } else if (theorem == "t1") {
            out[i] = verify_theorem1(fp, n, *q);
        } else if (theorem == "t2") {
            out[i] = verify_theorem2(fp, highest_bit(n), *q);
        } else if (theorem == "t3") {
            out[i] = verify_theorem3(fp, n, *q, C);
        } else {
            out[i] = verify_moricz_siddiqi(fp, n, *q);
        }
    });
    return out;
}

ConditionEvidence condition_evidence(const WeightSequence& q, std::size_t horizon) {
    if (horizon < 2) {
        throw std::invalid_argument("condition_evidence: horizon must be at least 2");
    }
    ConditionEvidence evidence;
    evidence.weights = q.label();
    evidence.horizon = horizon;
    evidence.values.reserve(horizon);
    const std::vector<double> weights = q.q_prefix(horizon);
    double Q = 0.0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        Q += weights[n - 1];
        evidence.values.push_back(static_cast<double>(n) / Q);
    }
    evidence.sup = *std::max_element(evidence.values.begin(), evidence.values.end());
    evidence.looks_bounded = bounded_looking(evidence.values);
    return evidence;
}

RateReport rate_experiment(double alpha, double p, const WeightSequence& q,
                           const std::vector<std::size_t>& orders, const StepFunction& f) {
    require_increasing_orders(orders, "rate_experiment");
    const std::size_t max_order = f.resolution.atoms() / 2;
    if (orders.front() < 2 || orders.back() > max_order) {
        throw std::invalid_argument("rate_experiment: orders must lie in [2, 2^{M-1}]");
    }
    const Spectrum spectrum = analyze(f);

    RateReport report;
    report.alpha = alpha;
    report.p = p;
    report.weights = q.label();
    for (std::size_t n : orders) {
        const double err = lp_distance(norlund_mean_spectral(spectrum, n, q), f, p);
        if (err < 1e-13) {
            ++report.dropped;
            continue;
        }
        report.orders.push_back(n);
        report.errors.push_back(err);
    }
    if (report.orders.size() < 3) {
        throw degenerate_data_error("rate_experiment: only " + std::to_string(report.orders.size()) +
                                    " usable points after dropping " + std::to_string(report.dropped) +
                                    " below the underflow floor");
    }

    std::vector<double> xs(report.orders.begin(), report.orders.end());
    const RateFit fit = rate_fit(xs, report.errors);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.r_squared = fit.r_squared;

    if (alpha < 1.0) {
        report.regime = "n^-alpha";
        report.expected_slope = -alpha;
    } else if (alpha == 1.0) {
        report.regime = "log(n)/n";
        report.expected_slope = -1.0;
    } else {
        report.regime = "1/n";
        report.expected_slope = -1.0;
    }

    report.log_products.reserve(report.orders.size());
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
        const auto n = static_cast<double>(report.orders[i]);
        report.log_products.push_back(report.errors[i] * n / std::log2(n));
    }
    const std::size_t half = report.log_products.size() / 2;
    double lo = report.log_products[half], hi = report.log_products[half];
    for (std::size_t i = half; i < report.log_products.size(); ++i) {
        lo = std::min(lo, report.log_products[i]);
        hi = std::max(hi, report.log_products[i]);
    }
    report.product_spread = hi / lo;

    if (alpha == 1.0) {
        report.matches_regime = report.product_spread <= 3.0;
    } else {
        report.matches_regime = std::abs(report.slope - report.expected_slope) <= report.tolerance;
    }
    return report;
}

RateReport rate_experiment(double alpha, double p, const WeightSequence& q,
                           const std::vector<std::size_t>& orders, Resolution M,
                           LipVariant variant, std::uint64_t seed) {
    return rate_experiment(alpha, p, q, orders, lip_generator(alpha, M, variant, seed));
}

SaturationReport saturation_check(const StepFunction& f, double p, const std::vector<int>& depths) {
    if (depths.empty()) {
        throw std::invalid_argument("saturation_check: empty depth list");
    }
    const int M = f.resolution.bits();
    for (int d : depths) {
        if (d < 0 || d >= M) {
            throw std::invalid_argument("saturation_check: depth " + std::to_string(d) +
                                        " outside [0, M)");
        }
    }
    const Spectrum spectrum = analyze(f);
    const double scale = lp_norm(f, p);

    SaturationReport report;
    report.p = p;
    report.depths = depths;
    report.products.reserve(depths.size());
    for (int d : depths) {
        const double err = lp_distance(fejer_mean(spectrum, std::size_t{1} << d), f, p);
        report.products.push_back(std::ldexp(err, d));
    }
    const double floor = 1e-12 * (1.0 + scale);
    double lowest = report.products.front();
    double highest = report.products.front();
    for (double v : report.products) {
        lowest = std::min(lowest, v);
        highest = std::max(highest, v);
    }
    report.all_zero = highest <= floor;
    report.bounded_away_from_zero = !report.all_zero && lowest > 1e-9 * (1.0 + scale);
    return report;
}

ConvergenceReport convergence_check(const StepFunction& f, double p, const WeightSequence& q,
                                    const std::vector<std::size_t>& orders) {
    require_increasing_orders(orders, "convergence_check");
    const Spectrum spectrum = analyze(f);

    ConvergenceReport report;
    report.p = p;
    report.weights = q.label();
    report.orders = orders;
    report.errors.reserve(orders.size());
    for (std::size_t n : orders) {
        report.errors.push_back(lp_distance(norlund_mean_spectral(spectrum, n, q), f, p));
    }
    const std::size_t quartile = std::max<std::size_t>(1, orders.size() / 4);
    for (std::size_t i = 0; i < quartile; ++i) {
        report.first_quartile_max = std::max(report.first_quartile_max, report.errors[i]);
    }
    for (std::size_t i = orders.size() - quartile; i < orders.size(); ++i) {
        report.top_quartile_max = std::max(report.top_quartile_max, report.errors[i]);
    }
    report.envelope_shrinks = report.top_quartile_max <= 0.5 * report.first_quartile_max;
    return report;
}

std::vector<std::pair<std::string, StepFunction>> builtin_function_matrix(Resolution M,
                                                                          std::uint64_t seed) {
    std::vector<std::pair<std::string, StepFunction>> matrix;
    for (std::size_t k = 0; k < 8; ++k) {
        matrix.emplace_back("walsh:" + std::to_string(k), walsh_function(k, M));
    }
    const double alphas[] = {0.3, 0.5, 1.0, 2.0};
    for (std::size_t i = 0; i < 4; ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "lip:%g:lacunary", alphas[i]);
        matrix.emplace_back(name, lip_generator(alphas[i], M, LipVariant::lacunary));
        std::snprintf(name, sizeof(name), "lip:%g:random", alphas[i]);
        matrix.emplace_back(name, lip_generator(alphas[i], M, LipVariant::random, seed + i));
    }
    return matrix;
}

WeightSequence spike_weights() {
    return WeightSequence::from_generator("spike", [](std::size_t k) {
        return std::ldexp(1.0, static_cast<int>(2 * isqrt(k)));
    });
}

bool all_hold(const std::vector<BoundReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.holds; });
}

std::vector<TheoremSummary> summarize(const std::vector<BoundReport>& reports) {
    std::map<std::string, TheoremSummary> grouped;
    for (const BoundReport& r : reports) {
        auto [it, fresh] = grouped.try_emplace(r.theorem);
        TheoremSummary& s = it->second;
        if (fresh) {
            s.theorem = r.theorem;
            s.min_margin = r.margin;
        }
        ++s.count;
        if (r.holds) ++s.held;
        s.sup_ratio = std::max(s.sup_ratio, r.ratio);
        s.min_margin = std::min(s.min_margin, r.margin);
    }
    std::vector<TheoremSummary> out;
    out.reserve(grouped.size());
    for (auto& [_, summary] : grouped) {
        out.push_back(std::move(summary));
    }
    return out;
}

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << "theorem,n,N,p,weights,lhs,rhs,margin,holds\n";
    for (const BoundReport& r : reports) {
        out << r.theorem << ',' << r.n << ',' << r.N << ',' << format_value(r.p) << ',' << r.weights
            << ',' << format_value(r.lhs) << ',' << format_value(r.rhs) << ','
            << format_value(r.margin) << ',' << (r.holds ? "true" : "false") << '\n';
    }
}

void write_reports_csv(const std::string& path, const std::vector<BoundReport>& reports) {
    std::ostringstream buffer;
    write_reports_csv(buffer, reports);
    write_text_atomic(path, buffer.str());
}

}  // namespace wn
