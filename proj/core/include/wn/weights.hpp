#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

// Nonnegative weight sequences {q_k} with q_0 > 0 and memoized prefix sums
// Q_n = q_0 + ... + q_{n-1}. Values are generated lazily; custom sequences
// are finite and reject queries past their length.

namespace wn {

enum class Monotonicity { non_decreasing, non_increasing, neither };

class WeightSequence {
public:
    struct State;

    static WeightSequence constant();
    static WeightSequence poly(double beta);
    static WeightSequence logarithmic();
    static WeightSequence geometric(double r);
    static WeightSequence custom(std::string label, std::vector<double> values);
    static WeightSequence from_generator(std::string label, std::function<double(std::size_t)> gen);

    const std::string& label() const;

    double q(std::size_t k) const;
    double Q(std::size_t n) const;
    // Copy of q_0 .. q_{count-1}; one lock instead of one per lookup.
    std::vector<double> q_prefix(std::size_t count) const;

    // Direction of q_0 .. q_{upto}. A constant sequence satisfies both.
    bool non_decreasing(std::size_t upto) const;
    bool non_increasing(std::size_t upto) const;
    Monotonicity monotonicity(std::size_t upto) const;

private:
    explicit WeightSequence(std::shared_ptr<State> state) : state_(std::move(state)) {}
    std::shared_ptr<State> state_;
};

// Grammar: const | poly:<beta> | log | geom:<r> | custom:<path>.
WeightSequence parse_weight_spec(const std::string& spec);

// One value per line after a "# weights" header.
std::vector<double> read_weight_file(const std::string& path);

// True when the second half of the sequence rises no more than 5% above the
// first; a finite-horizon stand-in for sup-boundedness.
bool bounded_looking(const std::vector<double>& values);

struct RegularityReport {
    std::size_t horizon = 0;
    double threshold = 0.0;
    std::vector<double> ratios;     // ratios[n-1] = q_{n-1}/Q_n
    bool tail_below_threshold = false;
    bool eventually_decreasing = false;
    bool regular_looking = false;
};

// Finite-horizon evidence for q_{n-1}/Q_n -> 0, not a proof.
RegularityReport is_regular(const WeightSequence& q, std::size_t horizon, double threshold = 0.01);

struct ConditionReport {
    double gamma = 0.0;
    std::size_t horizon = 0;
    std::vector<double> values;     // values[n-1] = c_n
    double sup = 0.0;
    bool looks_bounded = false;
};

// c_n = n^{gamma-1} / Q_n^gamma * sum_{k<n} q_k^gamma.
ConditionReport moricz_siddiqi_condition(const WeightSequence& q, double gamma, std::size_t horizon);

}  // namespace wn
