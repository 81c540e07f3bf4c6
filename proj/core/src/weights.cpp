#include "wn/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace wn {

struct WeightSequence::State {
    std::string label;
    std::function<double(std::size_t)> generator;   // empty for finite custom data
    std::optional<std::size_t> length;              // set for custom sequences

    mutable std::mutex lock;
    mutable std::vector<double> q;                  // memoized values
    mutable std::vector<double> prefix;             // prefix[n] = Q_n, prefix[0] = 0
    mutable std::optional<std::size_t> first_drop;  // least k with q_k < q_{k-1}
    mutable std::optional<std::size_t> first_rise;  // least k with q_k > q_{k-1}

    // Caller holds the lock.
    void ensure(std::size_t count) const {
        if (length && count > *length) {
            throw std::out_of_range("weights '" + label + "': index " + std::to_string(count - 1) +
                                    " past end of finite sequence of length " + std::to_string(*length));
        }
        if (prefix.empty()) {
            prefix.push_back(0.0);
        }
        while (q.size() < count) {
            const std::size_t k = q.size();
            const double value = generator(k);
            if (!std::isfinite(value)) {
                throw std::invalid_argument("weights '" + label + "': q_" + std::to_string(k) + " is not finite");
            }
            if (value < 0.0) {
                throw std::invalid_argument("weights '" + label + "': q_" + std::to_string(k) + " is negative");
            }
            if (k == 0 && value <= 0.0) {
                throw std::invalid_argument("weights '" + label + "': q_0 must be positive");
            }
            if (k > 0) {
                if (!first_drop && value < q.back()) first_drop = k;
                if (!first_rise && value > q.back()) first_rise = k;
            }
            q.push_back(value);
            prefix.push_back(prefix.back() + value);
        }
    }
};

namespace {

std::shared_ptr<WeightSequence::State> make_state(std::string label,
                                                  std::function<double(std::size_t)> gen,
                                                  std::optional<std::size_t> length = std::nullopt) {
    auto state = std::make_shared<WeightSequence::State>();
    state->label = std::move(label);
    state->generator = std::move(gen);
    state->length = length;
    return state;
}

std::string format_parameter(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%g", x);
    return buffer;
}

}  // namespace

WeightSequence WeightSequence::constant() {
    return WeightSequence(make_state("const", [](std::size_t) { return 1.0; }));
}

WeightSequence WeightSequence::poly(double beta) {
    if (!std::isfinite(beta)) {
        throw std::invalid_argument("weights poly: exponent must be finite");
    }
    return WeightSequence(make_state("poly:" + format_parameter(beta), [beta](std::size_t k) {
        return std::pow(static_cast<double>(k + 1), beta);
    }));
}

WeightSequence WeightSequence::logarithmic() {
    return WeightSequence(make_state("log", [](std::size_t k) {
        return std::log(static_cast<double>(k + 2));
    }));
}

WeightSequence WeightSequence::geometric(double r) {
    if (!std::isfinite(r) || r <= 0.0) {
        throw std::invalid_argument("weights geom: ratio must be positive");
    }
    return WeightSequence(make_state("geom:" + format_parameter(r), [r](std::size_t k) {
        return std::pow(r, static_cast<double>(k));
    }));
}

WeightSequence WeightSequence::custom(std::string label, std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("weights '" + label + "': empty sequence");
    }
    const std::size_t length = values.size();
    auto shared = std::make_shared<std::vector<double>>(std::move(values));
    return WeightSequence(make_state(
        std::move(label), [shared](std::size_t k) { return (*shared)[k]; }, length));
}

WeightSequence WeightSequence::from_generator(std::string label, std::function<double(std::size_t)> gen) {
    if (!gen) {
        throw std::invalid_argument("weights '" + label + "': null generator");
    }
    return WeightSequence(make_state(std::move(label), std::move(gen)));
}

const std::string& WeightSequence::label() const { return state_->label; }

double WeightSequence::q(std::size_t k) const {
    std::lock_guard<std::mutex> guard(state_->lock);
    state_->ensure(k + 1);
    return state_->q[k];
}

double WeightSequence::Q(std::size_t n) const {
    std::lock_guard<std::mutex> guard(state_->lock);
    state_->ensure(n);
    return state_->prefix[n];
}

std::vector<double> WeightSequence::q_prefix(std::size_t count) const {
    std::lock_guard<std::mutex> guard(state_->lock);
    state_->ensure(count);
    return std::vector<double>(state_->q.begin(), state_->q.begin() + static_cast<std::ptrdiff_t>(count));
}

bool WeightSequence::non_decreasing(std::size_t upto) const {
    std::lock_guard<std::mutex> guard(state_->lock);
    state_->ensure(upto + 1);
    return !(state_->first_drop && *state_->first_drop <= upto);
}

bool WeightSequence::non_increasing(std::size_t upto) const {
    std::lock_guard<std::mutex> guard(state_->lock);
    state_->ensure(upto + 1);
    return !(state_->first_rise && *state_->first_rise <= upto);
}

Monotonicity WeightSequence::monotonicity(std::size_t upto) const {
    const bool up = non_decreasing(upto);
    const bool down = non_increasing(upto);
    if (up) return Monotonicity::non_decreasing;
    if (down) return Monotonicity::non_increasing;
    return Monotonicity::neither;
}

WeightSequence parse_weight_spec(const std::string& spec) {
    if (spec == "const") return WeightSequence::constant();
    if (spec == "log") return WeightSequence::logarithmic();

    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_number = [&](const std::string& text) {
        std::size_t used = 0;
        double value;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("weight spec '" + spec + "': bad parameter '" + text + "'");
        }
        if (used != text.size()) {
            throw std::invalid_argument("weight spec '" + spec + "': bad parameter '" + text + "'");
        }
        return value;
    };

    if (head == "poly" && !rest.empty()) return WeightSequence::poly(parse_number(rest));
    if (head == "geom" && !rest.empty()) return WeightSequence::geometric(parse_number(rest));
    if (head == "custom" && !rest.empty()) {
        return WeightSequence::custom("custom:" + rest, read_weight_file(rest));
    }
    throw std::invalid_argument("weight spec '" + spec +
                                "': expected const | poly:<beta> | log | geom:<r> | custom:<path>");
}

std::vector<double> read_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_weight_file: cannot open " + path);
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("read_weight_file: " + path + " is empty");
    }
    while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) {
        header.pop_back();
    }
    if (header != "# weights") {
        throw std::runtime_error("read_weight_file: " + path + " must start with '# weights'");
    }
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (line.empty()) continue;
        std::size_t used = 0;
        double value;
        try {
            value = std::stod(line, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("read_weight_file: " + path + ":" + std::to_string(line_no) +
                                     ": bad value '" + line + "'");
        }
        if (used != line.size() || !std::isfinite(value)) {
            throw std::runtime_error("read_weight_file: " + path + ":" + std::to_string(line_no) +
                                     ": bad value '" + line + "'");
        }
        if (value < 0.0) {
            throw std::runtime_error("read_weight_file: " + path + ":" + std::to_string(line_no) +
                                     ": negative weight");
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw std::runtime_error("read_weight_file: " + path + " has no values");
    }
    if (values[0] <= 0.0) {
        throw std::runtime_error("read_weight_file: " + path + ": q_0 must be positive");
    }
    return values;
}

bool bounded_looking(const std::vector<double>& values) {
    if (values.size() < 2) return true;
    const std::size_t half = values.size() / 2;
    const double head = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half));
    const double tail = *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(half), values.end());
    return tail <= 1.05 * head;
}

RegularityReport is_regular(const WeightSequence& q, std::size_t horizon, double threshold) {
    if (horizon < 2) {
        throw std::invalid_argument("is_regular: horizon must be at least 2");
    }
    RegularityReport report;
    report.horizon = horizon;
    report.threshold = threshold;
    report.ratios.reserve(horizon);
    const std::vector<double> values = q.q_prefix(horizon);
    double Q = 0.0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        Q += values[n - 1];
        report.ratios.push_back(values[n - 1] / Q);
    }
    report.tail_below_threshold = report.ratios.back() < threshold;

    // Start of the maximal non-increasing tail; "eventually" means it covers
    // at least the second half of the horizon.
    std::size_t tail_start = report.ratios.size() - 1;
    while (tail_start > 0 && report.ratios[tail_start - 1] >= report.ratios[tail_start]) {
        --tail_start;
    }
    report.eventually_decreasing = tail_start <= horizon / 2;
    report.regular_looking = report.tail_below_threshold && report.eventually_decreasing;
    return report;
}

ConditionReport moricz_siddiqi_condition(const WeightSequence& q, double gamma, std::size_t horizon) {
    if (!(gamma > 1.0 && gamma <= 2.0)) {
        throw std::invalid_argument("moricz_siddiqi_condition: gamma must lie in (1, 2]");
    }
    if (horizon < 2) {
        throw std::invalid_argument("moricz_siddiqi_condition: horizon must be at least 2");
    }
    ConditionReport report;
    report.gamma = gamma;
    report.horizon = horizon;
    report.values.reserve(horizon);
    const std::vector<double> values = q.q_prefix(horizon);
    double Q = 0.0;
    double moment = 0.0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        Q += values[n - 1];
        moment += std::pow(values[n - 1], gamma);
        const double c_n = std::pow(static_cast<double>(n), gamma - 1.0) / std::pow(Q, gamma) * moment;
        report.values.push_back(c_n);
    }
    report.sup = *std::max_element(report.values.begin(), report.values.end());
    report.looks_bounded = bounded_looking(report.values);
    return report;
}

}  // namespace wn
