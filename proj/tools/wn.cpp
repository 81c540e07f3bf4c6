#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "svg.hpp"
#include "wn/experiments.hpp"
#include "wn/kernels.hpp"
#include "wn/means.hpp"
#include "wn/metrics.hpp"
#include "wn/transform.hpp"
#include "wn/weights.hpp"

using nlohmann::json;

namespace {

// Bad flag values and unreadable inputs; mapped to exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::size_t parse_count(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw usage_error(what + ": bad integer '" + text + "'");
    }
    if (used != text.size()) {
        throw usage_error(what + ": bad integer '" + text + "'");
    }
    return static_cast<std::size_t>(value);
}

double parse_real(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw usage_error(what + ": bad number '" + text + "'");
    }
    if (used != text.size()) {
        throw usage_error(what + ": bad number '" + text + "'");
    }
    return value;
}

// A | A:B | A:B:step, inclusive on both ends.
std::vector<std::size_t> parse_range(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() > 3) {
        throw usage_error("order range '" + text + "': expected A, A:B, or A:B:step");
    }
    const std::size_t lo = parse_count(parts[0], "order range");
    const std::size_t hi = parts.size() > 1 ? parse_count(parts[1], "order range") : lo;
    const std::size_t step = parts.size() > 2 ? parse_count(parts[2], "order range") : 1;
    if (lo < 1 || hi < lo || step < 1) {
        throw usage_error("order range '" + text + "': need 1 <= A <= B and step >= 1");
    }
    std::vector<std::size_t> orders;
    for (std::size_t n = lo; n <= hi; n += step) {
        orders.push_back(n);
        if (n > hi - step) break;   // overflow guard
    }
    return orders;
}

std::vector<std::size_t> dyadic_only(const std::vector<std::size_t>& orders) {
    std::vector<std::size_t> out;
    for (std::size_t n : orders) {
        if (n != 0 && (n & (n - 1)) == 0) {
            out.push_back(n);
        }
    }
    return out;
}

// walsh:k | lip:alpha[:variant[:seed]] | const:c | file:path
wn::StepFunction resolve_fn(const std::string& spec, wn::Resolution M, std::uint64_t seed) {
    const std::size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "walsh") {
        return wn::walsh_function(parse_count(rest, "walsh index"), M);
    }
    if (head == "const") {
        return wn::constant_function(M, parse_real(rest, "constant value"));
    }
    if (head == "file") {
        if (rest.empty()) {
            throw usage_error("function spec 'file:' needs a path");
        }
        wn::StepFunction f = [&rest] {
            try {
                return wn::read_step_function_csv(rest);
            } catch (const std::exception& e) {
                throw usage_error(e.what());
            }
        }();
        if (f.resolution != M) {
            throw usage_error("file '" + rest + "' holds resolution " +
                              std::to_string(f.resolution.bits()) + " data, expected " +
                              std::to_string(M.bits()));
        }
        return f;
    }
    if (head == "lip") {
        const std::vector<std::string> parts = split(rest, ':');
        if (rest.empty() || parts.size() > 3) {
            throw usage_error("function spec '" + spec + "': expected lip:alpha[:variant[:seed]]");
        }
        const double alpha = parse_real(parts[0], "lip alpha");
        wn::LipVariant variant = wn::LipVariant::lacunary;
        if (parts.size() >= 2) {
            if (parts[1] == "random") {
                variant = wn::LipVariant::random;
            } else if (parts[1] != "lacunary") {
                throw usage_error("lip variant '" + parts[1] + "': expected lacunary or random");
            }
        }
        if (parts.size() == 3) {
            seed = parse_count(parts[2], "lip seed");
        }
        return wn::lip_generator(alpha, M, variant, seed);
    }
    throw usage_error("function spec '" + spec +
                      "': expected walsh:k | lip:alpha[:variant[:seed]] | const:c | file:path");
}

wn::WeightSequence resolve_weights(const std::string& spec) {
    if (spec == "spike") {
        return wn::spike_weights();
    }
    try {
        return wn::parse_weight_spec(spec);
    } catch (const std::exception& e) {
        throw usage_error(e.what());
    }
}

std::string fmt(double v) { return wn::format_value(v); }

json evidence_json(const wn::WeightSequence& q, std::size_t horizon, bool with_cond) {
    json out;
    const wn::RegularityReport reg = wn::is_regular(q, horizon);
    out["regularity"] = {
        {"horizon", reg.horizon},
        {"tail_ratio", reg.ratios.back()},
        {"threshold", reg.threshold},
        {"eventually_decreasing", reg.eventually_decreasing},
        {"regular_looking", reg.regular_looking},
    };
    std::vector<double> fn00(reg.ratios.size());
    for (std::size_t i = 0; i < reg.ratios.size(); ++i) {
        fn00[i] = reg.ratios[i] * static_cast<double>(i + 1);
    }
    out["fn00"] = {
        {"sup", *std::max_element(fn00.begin(), fn00.end())},
        {"looks_bounded", wn::bounded_looking(fn00)},
    };
    if (with_cond) {
        const wn::ConditionEvidence cond = wn::condition_evidence(q, horizon);
        out["cond"] = {
            {"sup", cond.sup},
            {"looks_bounded", cond.looks_bounded},
        };
    }
    return out;
}

int cmd_kernel(const std::string& kind, std::size_t n, int M_bits, const std::string& weights,
               const std::string& out) {
    const wn::Resolution M(M_bits);
    wn::StepFunction k(M);
    if (kind == "dirichlet") {
        k = wn::dirichlet_kernel(n, M);
    } else if (kind == "fejer") {
        k = wn::fejer_kernel(n, M);
    } else {
        if (weights.empty()) {
            throw usage_error("kernel --kind norlund needs --weights");
        }
        k = wn::norlund_kernel(resolve_weights(weights), n, M);
    }
    wn::write_csv(out, k);
    std::cout << "integral " << fmt(wn::integrate(k)) << "\n";
    std::cout << "integral_abs " << fmt(wn::integrate_abs(k)) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_mean(bool fejer, const std::string& weights, const std::string& fn, std::size_t n,
             int M_bits, double p, const std::string& method, std::uint64_t seed,
             const std::string& out) {
    if (fejer == !weights.empty()) {
        throw usage_error("mean needs exactly one of --fejer or --weights");
    }
    const wn::Resolution M(M_bits);
    const wn::StepFunction f = resolve_fn(fn, M, seed);
    wn::StepFunction result(M);
    if (fejer) {
        result = wn::fejer_mean(f, n);
    } else {
        wn::MeanMethod tag = wn::MeanMethod::partial_sum;
        if (method == "convolution") tag = wn::MeanMethod::convolution;
        else if (method == "abel") tag = wn::MeanMethod::abel;
        result = wn::norlund_mean(f, n, resolve_weights(weights), tag).values;
    }
    wn::write_csv(out, result);
    std::cout << "error " << fmt(wn::lp_distance(result, f, p)) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_verify(const std::string& theorem, const std::string& fn, double p,
               const std::string& range, int M_bits, const std::string& weights, double C,
               std::uint64_t seed, const std::string& out, const std::string& json_out) {
    const wn::Resolution M(M_bits);
    const bool needs_weights = theorem != "fejer";
    if (needs_weights && weights.empty()) {
        throw usage_error("verify --theorem " + theorem + " needs --weights");
    }
    std::optional<wn::WeightSequence> q;
    if (needs_weights) {
        q = resolve_weights(weights);
    }
    std::vector<std::size_t> orders = parse_range(range);
    if (theorem == "t2") {
        orders = dyadic_only(orders);
        if (orders.empty()) {
            throw usage_error("verify --theorem t2: no powers of two in the order range");
        }
    }

    const wn::FunctionProfile profile = wn::make_profile(fn, resolve_fn(fn, M, seed), p);
    const std::vector<wn::BoundReport> reports =
        wn::sweep(theorem, profile, q ? &*q : nullptr, orders, C);
    wn::write_reports_csv(out, reports);

    json summary;
    summary["theorem"] = theorem;
    summary["fn"] = fn;
    summary["p"] = p;
    summary["M"] = M_bits;
    summary["weights"] = needs_weights ? weights : "";
    summary["orders"] = {{"count", orders.size()}, {"min", orders.front()}, {"max", orders.back()}};
    summary["reports_csv"] = out;
    if (theorem == "t3" && C > 0.0) {
        summary["C"] = C;
    }
    const bool ok = wn::all_hold(reports);
    summary["all_hold"] = ok;
    json per_theorem = json::array();
    for (const wn::TheoremSummary& s : wn::summarize(reports)) {
        per_theorem.push_back({{"theorem", s.theorem},
                               {"count", s.count},
                               {"held", s.held},
                               {"sup_ratio", s.sup_ratio},
                               {"min_margin", s.min_margin}});
        std::cout << s.theorem << " cells " << s.count << " held " << s.held << " sup_ratio "
                  << fmt(s.sup_ratio) << " min_margin " << fmt(s.min_margin) << "\n";
    }
    summary["summaries"] = per_theorem;
    if (q) {
        summary["evidence"] = evidence_json(*q, std::max<std::size_t>(2, orders.back()),
                                            theorem == "t3");
    }
    wn::write_text_atomic(json_out, summary.dump(2) + "\n");
    std::cout << "all_hold " << (ok ? "true" : "false") << "\n";
    std::cout << "wrote " << out << " " << json_out << "\n";
    return ok ? 0 : 1;
}

int cmd_rates(double alpha, double p, const std::string& weights, const std::string& fn,
              const std::string& range, int M_bits, const std::string& variant, std::uint64_t seed,
              const std::string& out, const std::string& json_out, const std::string& svg_out) {
    const wn::Resolution M(M_bits);
    const std::vector<std::size_t> orders = dyadic_only(parse_range(range));
    if (orders.size() < 4) {
        throw usage_error("rates: order range must contain at least 4 powers of two");
    }
    const wn::LipVariant var =
        variant == "random" ? wn::LipVariant::random : wn::LipVariant::lacunary;
    const wn::WeightSequence q = resolve_weights(weights);
    const wn::RateReport report =
        fn.empty() ? wn::rate_experiment(alpha, p, q, orders, M, var, seed)
                   : wn::rate_experiment(alpha, p, q, orders, resolve_fn(fn, M, seed));

    std::string csv;
    csv += "# alpha=" + fmt(report.alpha) + " p=" + fmt(report.p) + " weights=" + report.weights +
           " slope=" + fmt(report.slope) + " intercept=" + fmt(report.intercept) +
           " r_squared=" + fmt(report.r_squared) + " regime=" + report.regime +
           " expected_slope=" + fmt(report.expected_slope) +
           " matches=" + (report.matches_regime ? "true" : "false") +
           " dropped=" + std::to_string(report.dropped) + "\n";
    csv += "n,error,log_product\n";
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
        csv += std::to_string(report.orders[i]) + "," + fmt(report.errors[i]) + "," +
               fmt(report.log_products[i]) + "\n";
    }
    wn::write_text_atomic(out, csv);

    std::cout << "slope " << fmt(report.slope) << "\n";
    std::cout << "intercept " << fmt(report.intercept) << "\n";
    std::cout << "r_squared " << fmt(report.r_squared) << "\n";
    std::cout << "regime " << report.regime << "\n";
    std::cout << "product_spread " << fmt(report.product_spread) << "\n";
    std::cout << "matches " << (report.matches_regime ? "true" : "false") << "\n";
    std::cout << "wrote " << out << "\n";

    if (!json_out.empty()) {
        json j;
        j["alpha"] = report.alpha;
        j["p"] = report.p;
        j["weights"] = report.weights;
        j["slope"] = report.slope;
        j["intercept"] = report.intercept;
        j["r_squared"] = report.r_squared;
        j["regime"] = report.regime;
        j["expected_slope"] = report.expected_slope;
        j["matches_regime"] = report.matches_regime;
        j["product_spread"] = report.product_spread;
        j["dropped"] = report.dropped;
        j["orders"] = report.orders;
        j["errors"] = report.errors;
        wn::write_text_atomic(json_out, j.dump(2) + "\n");
    }
    if (!svg_out.empty()) {
        std::vector<double> xs(report.orders.begin(), report.orders.end());
        const std::string title = "|t_n f - f| vs n, alpha=" + fmt(report.alpha);
        wn::write_text_atomic(svg_out,
                              wn::svg::loglog_plot(xs, report.errors, report.slope,
                                                   report.intercept, title));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walsh-system approximation toolkit"};
    app.require_subcommand(1);

    std::string kind, weights, fn, method = "partial-sum", theorem, range, variant = "lacunary";
    std::string out, json_out, svg_out;
    std::size_t n = 0;
    int M_bits = 12;
    double p = 2.0, alpha = 0.0, C = 0.0;
    std::uint64_t seed = 0;
    bool fejer_flag = false;

    CLI::App* kernel = app.add_subcommand("kernel", "Dump a kernel as CSV");
    kernel->add_option("--kind", kind, "dirichlet | fejer | norlund")
        ->required()
        ->check(CLI::IsMember({"dirichlet", "fejer", "norlund"}));
    kernel->add_option("--n", n, "kernel order")->required();
    kernel->add_option("--M", M_bits, "resolution (atoms = 2^M)")->capture_default_str();
    kernel->add_option("--weights", weights, "weight spec for norlund");
    kernel->add_option("--out", out, "output CSV path");

    CLI::App* mean = app.add_subcommand("mean", "Apply a summation mean to a function");
    mean->add_option("--fn", fn, "walsh:k | lip:a[:variant[:seed]] | const:c | file:path")->required();
    mean->add_option("--n", n, "mean order")->required();
    mean->add_flag("--fejer", fejer_flag, "use the plain Fejer mean");
    mean->add_option("--weights", weights, "weight spec for the weighted mean");
    mean->add_option("--method", method, "partial-sum | convolution | abel")
        ->capture_default_str()
        ->check(CLI::IsMember({"partial-sum", "convolution", "abel"}));
    mean->add_option("--M", M_bits, "resolution")->capture_default_str();
    mean->add_option("--p", p, "error norm exponent")->capture_default_str();
    mean->add_option("--seed", seed, "seed for random lip functions")->capture_default_str();
    mean->add_option("--out", out, "output CSV path");

    CLI::App* verify = app.add_subcommand("verify", "Check an approximation bound over a range of orders");
    verify->add_option("--theorem", theorem, "fejer | t1 | t2 | t3 | ms")
        ->required()
        ->check(CLI::IsMember({"fejer", "t1", "t2", "t3", "ms"}));
    verify->add_option("--fn", fn, "function spec")->required();
    verify->add_option("--n", range, "order range A[:B[:step]]")->required();
    verify->add_option("--weights", weights, "weight spec (needed for t1/t2/t3/ms)");
    verify->add_option("--p", p, "norm exponent")->capture_default_str();
    verify->add_option("--M", M_bits, "resolution")->capture_default_str();
    verify->add_option("--C", C, "constant for the t3 bound (0 = report ratio only)");
    verify->add_option("--seed", seed, "seed for random lip functions")->capture_default_str();
    verify->add_option("--out", out, "reports CSV path");
    verify->add_option("--json", json_out, "summary JSON path");

    CLI::App* rates = app.add_subcommand("rates", "Fit the error decay rate on a Lipschitz generator");
    rates->add_option("--alpha", alpha, "Lipschitz exponent")->required();
    rates->add_option("--n", range, "order range; powers of two within it are used")->required();
    rates->add_option("--fn", fn, "override the lip generator with this function spec");
    rates->add_option("--weights", weights, "weight spec");
    rates->add_option("--p", p, "norm exponent")->capture_default_str();
    rates->add_option("--M", M_bits, "resolution")->capture_default_str();
    rates->add_option("--variant", variant, "lacunary | random")
        ->capture_default_str()
        ->check(CLI::IsMember({"lacunary", "random"}));
    rates->add_option("--seed", seed, "seed for the random variant")->capture_default_str();
    rates->add_option("--out", out, "rates CSV path");
    rates->add_option("--json", json_out, "rates JSON path");
    rates->add_option("--svg", svg_out, "log-log plot path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*kernel) {
            return cmd_kernel(kind, n, M_bits, weights, out.empty() ? "kernel.csv" : out);
        }
        if (*mean) {
            return cmd_mean(fejer_flag, weights, fn, n, M_bits, p, method, seed,
                            out.empty() ? "mean.csv" : out);
        }
        if (*verify) {
            return cmd_verify(theorem, fn, p, range, M_bits, weights, C, seed,
                              out.empty() ? "reports.csv" : out,
                              json_out.empty() ? "summary.json" : json_out);
        }
        if (*rates) {
            if (weights.empty()) weights = "const";
            return cmd_rates(alpha, p, weights, fn, range, M_bits, variant, seed,
                             out.empty() ? "rates.csv" : out, json_out, svg_out);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wn::degenerate_data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
