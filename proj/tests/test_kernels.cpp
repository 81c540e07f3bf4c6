#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wn/kernels.hpp"
#include "wn/transform.hpp"
#include "oracles.hpp"

using namespace wn;

TEST_CASE("highest_bit finds the top set bit") {
    CHECK(highest_bit(1) == 0);
    CHECK(highest_bit(5) == 2);
    CHECK(highest_bit(std::size_t{1} << 10) == 10);
    CHECK(highest_bit((std::size_t{1} << 10) - 1) == 9);
    CHECK_THROWS_AS(highest_bit(0), std::invalid_argument);
}

TEST_CASE("kernel orders are validated") {
    Resolution M(4);
    CHECK_THROWS_AS(dirichlet_kernel(0, M), std::invalid_argument);
    CHECK_THROWS_AS(dirichlet_kernel(17, M), std::invalid_argument);
    CHECK_THROWS_AS(fejer_kernel(0, M), std::invalid_argument);
    CHECK_THROWS_AS(fejer_kernel(17, M), std::invalid_argument);
    CHECK_THROWS_AS(norlund_kernel(WeightSequence::constant(), 17, M), std::invalid_argument);
    CHECK_NOTHROW(dirichlet_kernel(16, M));
}

TEST_CASE("dirichlet kernel basics") {
    Resolution M(3);
    StepFunction d1 = dirichlet_kernel(1, M);
    for (double v : d1.values) CHECK(v == 1.0);

    StepFunction d4 = dirichlet_kernel(4, M);
    std::vector<double> expected{4, 0, 0, 0, 4, 0, 0, 0};
    for (std::size_t j = 0; j < 8; ++j) CHECK(d4.values[j] == doctest::Approx(expected[j]));

    StepFunction d3 = dirichlet_kernel(3, M);
    StepFunction direct = walsh_function(0, M) + walsh_function(1, M) + walsh_function(2, M);
    CHECK(max_abs_diff(d3, direct) < 1e-12);
}

TEST_CASE("dyadic dirichlet kernels are scaled interval indicators") {
    Resolution M(8);
    for (int m = 0; m <= 8; ++m) {
        StepFunction d = dirichlet_kernel(std::size_t{1} << m, M);
        double scale = std::ldexp(1.0, m);
        for (std::size_t j = 0; j < d.values.size(); ++j) {
            double want = (j % (std::size_t{1} << m)) == 0 ? scale : 0.0;
            CHECK(std::fabs(d.values[j] - want) < 1e-12);
        }
        CHECK(integrate(d) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("dirichlet difference identity with the top walsh function") {
    Resolution M(8);
    for (int n = 1; n <= 8; ++n) {
        const std::size_t top = std::size_t{1} << n;
        StepFunction d_top = dirichlet_kernel(top, M);
        StepFunction w_top = walsh_function(top - 1, M);
        for (std::size_t m = 0; m < top; m += (n >= 6 ? 7 : 1)) {
            StepFunction lhs = dirichlet_kernel(top - m, M);
            StepFunction rhs = m == 0 ? d_top : d_top - pointwise_product(w_top, dirichlet_kernel(m, M));
            CHECK(max_abs_diff(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("dirichlet kernel matches the naive sum") {
    Resolution M(5);
    for (std::size_t n = 1; n <= 32; ++n) {
        CHECK(max_abs_diff(dirichlet_kernel(n, M), oracles::naive_dirichlet(n, M)) < 1e-11);
    }
}

TEST_CASE("spectral and cumulative kernel paths agree") {
    Resolution M(7);
    WeightSequence q = WeightSequence::poly(1.0);
    for (std::size_t n : {std::size_t{1}, std::size_t{13}, std::size_t{64}, std::size_t{100}, std::size_t{128}}) {
        CHECK(max_abs_diff(dirichlet_kernel(n, M, KernelPath::spectral),
                           dirichlet_kernel(n, M, KernelPath::cumulative)) < 1e-10);
        CHECK(max_abs_diff(fejer_kernel(n, M, KernelPath::spectral),
                           fejer_kernel(n, M, KernelPath::cumulative)) < 1e-10);
        CHECK(max_abs_diff(norlund_kernel(q, n, M, KernelPath::spectral),
                           norlund_kernel(q, n, M, KernelPath::cumulative)) < 1e-10);
    }
}

TEST_CASE("kernel spectra carry the expected multipliers") {
    Resolution M(6);
    const std::size_t n = 23;
    Spectrum d = analyze(dirichlet_kernel(n, M));
    Spectrum k = analyze(fejer_kernel(n, M));
    WeightSequence q = WeightSequence::logarithmic();
    Spectrum f = analyze(norlund_kernel(q, n, M));
    const double Qn = q.Q(n);
    for (std::size_t m = 0; m < M.atoms(); ++m) {
        double dm = m < n ? 1.0 : 0.0;
        double km = m < n ? (static_cast<double>(n - m)) / static_cast<double>(n) : 0.0;
        double fm = m < n ? q.Q(n - m) / Qn : 0.0;
        CHECK(std::fabs(d.coefficients[m] - dm) < 1e-12);
        CHECK(std::fabs(k.coefficients[m] - km) < 1e-12);
        CHECK(std::fabs(f.coefficients[m] - fm) < 1e-12);
    }
}

TEST_CASE("fejer kernel basics") {
    Resolution M(3);
    StepFunction k1 = fejer_kernel(1, M);
    for (double v : k1.values) CHECK(v == 1.0);

    StepFunction k4 = fejer_kernel(4, M);
    std::vector<double> expected{2.5, 0.5, 1, 0, 2.5, 0.5, 1, 0};
    for (std::size_t j = 0; j < 8; ++j) CHECK(k4.values[j] == doctest::Approx(expected[j]).epsilon(1e-14));
    CHECK(k4.values[0] == doctest::Approx(2.5));

    CHECK(max_abs_diff(fejer_kernel(5, M), oracles::naive_fejer(5, M)) < 1e-12);
}

TEST_CASE("dyadic fejer kernels match the three-case closed form") {
    Resolution M(8);
    for (int m = 0; m <= 8; ++m) {
        StepFunction k = fejer_kernel(std::size_t{1} << m, M);
        const std::size_t block = std::size_t{1} << m;
        for (std::size_t j = 0; j < k.values.size(); ++j) {
            const std::size_t r = j % block;
            double want = 0.0;
            if (r == 0) {
                want = (std::ldexp(1.0, m) + 1.0) / 2.0;
            } else if ((r & (r - 1)) == 0) {
                int t = highest_bit(r);
                want = std::ldexp(1.0, t - 1);
            }
            CHECK(std::fabs(k.values[j] - want) < 1e-12);
        }
    }
}

TEST_CASE("fejer kernels integrate to one with absolute mass at most two") {
    Resolution M(10);
    for (std::size_t n = 1; n <= 1024; ++n) {
        StepFunction k = fejer_kernel(n, M);
        CHECK(std::fabs(integrate(k) - 1.0) < 1e-12);
        CHECK(integrate_abs(k) <= 2.0 + 1e-12);
    }
}

TEST_CASE("scaled fejer kernels are dominated by the dyadic envelope") {
    Resolution M(8);
    // envelopes[t][j] = sum_{l<=t} 2^l |K_{2^l}(j)|
    std::vector<StepFunction> envelopes;
    StepFunction running(M);
    for (int l = 0; l <= 8; ++l) {
        StepFunction k = fejer_kernel(std::size_t{1} << l, M);
        for (std::size_t j = 0; j < running.values.size(); ++j)
            running.values[j] += std::ldexp(1.0, l) * std::fabs(k.values[j]);
        envelopes.push_back(running);
    }
    for (std::size_t n = 1; n <= 256; ++n) {
        StepFunction k = fejer_kernel(n, M);
        const StepFunction& cap = envelopes[static_cast<std::size_t>(highest_bit(n))];
        for (std::size_t j = 0; j < k.values.size(); ++j)
            CHECK(static_cast<double>(n) * std::fabs(k.values[j]) <= 3.0 * cap.values[j] + 1e-9);
    }
}

TEST_CASE("norlund kernel with constant weights is the fejer kernel") {
    Resolution M(10);
    WeightSequence q = WeightSequence::constant();
    for (std::size_t n = 1; n <= 1024; ++n)
        CHECK(max_abs_diff(norlund_kernel(q, n, M), fejer_kernel(n, M)) < 1e-12);
}

TEST_CASE("norlund kernel basics") {
    Resolution M(3);
    WeightSequence q = WeightSequence::poly(1.0);

    StepFunction f1 = norlund_kernel(q, 1, M);
    for (double v : f1.values) CHECK(v == 1.0);

    StepFunction f3 = norlund_kernel(q, 3, M);
    StepFunction direct(M);
    StepFunction d1 = dirichlet_kernel(1, M);
    StepFunction d2 = dirichlet_kernel(2, M);
    StepFunction d3 = dirichlet_kernel(3, M);
    for (std::size_t j = 0; j < 8; ++j)
        direct.values[j] = (3.0 * d1.values[j] + 2.0 * d2.values[j] + 1.0 * d3.values[j]) / 6.0;
    CHECK(max_abs_diff(f3, direct) < 1e-12);
    CHECK(max_abs_diff(f3, oracles::naive_norlund_kernel(q, 3, M)) < 1e-12);

    for (std::size_t n = 1; n <= 8; ++n)
        CHECK(std::fabs(integrate(norlund_kernel(q, n, M)) - 1.0) < 1e-12);
}

TEST_CASE("kernel cache returns identical values and reuses entries") {
    KernelCache cache;
    Resolution M(6);
    CHECK(cache.size() == 0);

    const StepFunction& a = cache.dirichlet(9, M);
    CHECK(cache.size() == 1);
    const StepFunction& b = cache.dirichlet(9, M);
    CHECK(cache.size() == 1);
    CHECK(&a == &b);
    CHECK(max_abs_diff(a, dirichlet_kernel(9, M)) == 0.0);

    cache.fejer(9, M);
    CHECK(cache.size() == 2);
    CHECK(max_abs_diff(cache.fejer(9, M), fejer_kernel(9, M)) == 0.0);

    WeightSequence qa = WeightSequence::poly(1.0);
    WeightSequence qb = WeightSequence::poly(2.0);
    cache.norlund(qa, 9, M);
    CHECK(cache.size() == 3);
    cache.norlund(qb, 9, M);
    CHECK(cache.size() == 4);
    CHECK(max_abs_diff(cache.norlund(qa, 9, M), norlund_kernel(qa, 9, M)) == 0.0);
    CHECK(max_abs_diff(cache.norlund(qb, 9, M), norlund_kernel(qb, 9, M)) == 0.0);
}
