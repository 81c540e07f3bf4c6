#pragma once

#include "wn/dyadic.hpp"
#include "wn/metrics.hpp"
#include "wn/transform.hpp"
#include "wn/weights.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Numerical verification of the approximation bounds: for each order n the
// error ||t_n f - f||_p is compared against the corresponding modulus sum.
// A bound "holds" when margin = rhs - lhs >= -1e-9; the slack absorbs
// rounding in the O(2^M)-term summations on both sides.

namespace wn {

inline constexpr double kHoldsTolerance = 1e-9;

// Thrown when an experiment has too little usable data to report anything
// (for example every error underflowed); the CLI maps it to exit code 3.
struct degenerate_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One function fixed at one exponent: spectrum and modulus profile are
// computed once, then shared by every order of a sweep.
struct FunctionProfile {
    std::string name;
    StepFunction f;
    Spectrum spectrum;
    double p;
    ModulusProfile moduli;
    double norm;            // ||f||_p
};

FunctionProfile make_profile(std::string name, StepFunction f, double p);

struct BoundReport {
    std::string theorem;    // fejer | t1 | t2 | t3 | ms
    std::size_t n = 0;      // mean order
    int N = 0;              // highest_bit(n)
    double p = 0.0;
    std::string weights;    // weight label, empty for the Fejer bound
    double lhs = 0.0;       // ||t_n f - f||_p
    double rhs = 0.0;       // bound (for t3 without C and for ms: the bare structural sum)
    double margin = 0.0;    // rhs - lhs
    bool holds = false;
    double ratio = 0.0;     // lhs / rhs when rhs > 0 (the empirical constant for t3/ms)
};

// ||sigma_n f - f||_p <= 3 sum_{s<=N} (2^s/2^N) omega_p(2^-s, f).
BoundReport verify_fejer_estimate(const FunctionProfile& fp, std::size_t n);
BoundReport verify_fejer_estimate(const StepFunction& f, double p, std::size_t n);

// Non-decreasing q:
// ||t_n f - f||_p <= (18/Q_n) sum_{i<N} 2^i q_{n-2^i} omega_p(2^-i, f) + 12 omega_p(2^-N, f).
BoundReport verify_theorem1(const FunctionProfile& fp, std::size_t n, const WeightSequence& q);
BoundReport verify_theorem1(const StepFunction& f, double p, std::size_t n, const WeightSequence& q);

// Non-increasing q at the dyadic order 2^e:
// ||t_{2^e} f - f||_p <= sum_{s<e} (2^s/2^e) omega_s
//                      + 3 sum_{s<e} ((e-s)/2^{e-s}) (q_{2^s}/q_{2^e}) omega_s
//                      + 3 omega_e.
BoundReport verify_theorem2(const FunctionProfile& fp, int exponent, const WeightSequence& q);
BoundReport verify_theorem2(const StepFunction& f, double p, int exponent, const WeightSequence& q);

// Non-increasing q with n/Q_n bounded: the bound's constant is unspecified,
// so the report carries rho_n = lhs / sum_{j<=N}(2^j/2^N) omega_j in `ratio`.
// With C > 0 supplied, rhs = C * sum and `holds` scores that bound instead.
BoundReport verify_theorem3(const FunctionProfile& fp, std::size_t n, const WeightSequence& q,
                            double C = 0.0);
BoundReport verify_theorem3(const StepFunction& f, double p, std::size_t n, const WeightSequence& q,
                            double C = 0.0);

// The older structural sum this library's bounds are compared against, for
// n = 2^j + k with 1 <= k <= 2^j; its constant is likewise left empirical.
BoundReport verify_moricz_siddiqi(const FunctionProfile& fp, std::size_t n, const WeightSequence& q);
BoundReport verify_moricz_siddiqi(const StepFunction& f, double p, std::size_t n,
                                  const WeightSequence& q);

// Runs one verifier over many orders, in parallel over disjoint orders.
// theorem selects the verifier; q may be null only for "fejer"; for "t2" the
// orders must be powers of two (exponent = highest_bit).
std::vector<BoundReport> sweep(const std::string& theorem, const FunctionProfile& fp,
                               const WeightSequence* q, const std::vector<std::size_t>& orders,
                               double C = 0.0);

// Finite-horizon evidence for n/Q_n staying bounded.
struct ConditionEvidence {
    std::string weights;
    std::size_t horizon = 0;
    std::vector<double> values;     // values[n-1] = n / Q_n
    double sup = 0.0;
    bool looks_bounded = false;
};

ConditionEvidence condition_evidence(const WeightSequence& q, std::size_t horizon);

struct RateReport {
    double alpha = 0.0;
    double p = 0.0;
    std::string weights;
    std::vector<std::size_t> orders;    // orders that survived the underflow filter
    std::vector<double> errors;
    std::size_t dropped = 0;            // points below the 1e-13 floor
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::string regime;                 // n^-alpha | log(n)/n | 1/n
    double expected_slope = 0.0;
    double tolerance = 0.15;
    std::vector<double> log_products;   // error * n / log2(n), the alpha = 1 diagnostic
    double product_spread = 0.0;        // max/min of log_products over the top half
    bool matches_regime = false;
};

// Errors of t_n(lip_generator(alpha)) over the given orders with a log-log
// slope fit; alpha = 1 is scored by boundedness of error * n / log2(n).
RateReport rate_experiment(double alpha, double p, const WeightSequence& q,
                           const std::vector<std::size_t>& orders, Resolution M,
                           LipVariant variant = LipVariant::lacunary, std::uint64_t seed = 0);

// Same fit against a caller-supplied function instead of the generator.
RateReport rate_experiment(double alpha, double p, const WeightSequence& q,
                           const std::vector<std::size_t>& orders, const StepFunction& f);

struct SaturationReport {
    double p = 0.0;
    std::vector<int> depths;
    std::vector<double> products;       // 2^n * ||sigma_{2^n} f - f||_p
    bool all_zero = false;              // the constant-function direction
    bool bounded_away_from_zero = false;
};

// Products 2^n ||sigma_{2^n} f - f||_p: identically zero iff nothing beats
// the 1/2^n saturation rate, which only constants achieve.
SaturationReport saturation_check(const StepFunction& f, double p, const std::vector<int>& depths);

struct ConvergenceReport {
    double p = 0.0;
    std::string weights;
    std::vector<std::size_t> orders;
    std::vector<double> errors;
    double first_quartile_max = 0.0;
    double top_quartile_max = 0.0;
    bool envelope_shrinks = false;      // top-quartile max <= half the first-quartile max
};

ConvergenceReport convergence_check(const StepFunction& f, double p, const WeightSequence& q,
                                    const std::vector<std::size_t>& orders);

// The stock verification matrix: w_0..w_7 plus lacunary and random lip
// generators at alpha in {0.3, 0.5, 1, 2}.
std::vector<std::pair<std::string, StepFunction>> builtin_function_matrix(Resolution M,
                                                                          std::uint64_t seed = 0);

// Staircase q_k = 4^floor(sqrt(k)): non-decreasing and regular, yet its
// gamma-moment sums c_n grow like sqrt(n) for every gamma in (1,2].
WeightSequence spike_weights();

bool all_hold(const std::vector<BoundReport>& reports);

struct TheoremSummary {
    std::string theorem;
    std::size_t count = 0;
    std::size_t held = 0;
    double sup_ratio = 0.0;
    double min_margin = 0.0;
};

std::vector<TheoremSummary> summarize(const std::vector<BoundReport>& reports);

// Columns: theorem,n,N,p,weights,lhs,rhs,margin,holds.
void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);
void write_reports_csv(const std::string& path, const std::vector<BoundReport>& reports);

}  // namespace wn
