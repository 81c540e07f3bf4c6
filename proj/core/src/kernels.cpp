#include "wn/kernels.hpp"

#include <bit>
#include <stdexcept>

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

StepFunction from_multipliers(Resolution M, const std::vector<double>& head) {
    Spectrum s(M);
    for (std::size_t k = 0; k < head.size(); ++k) {
        s.coefficients[k] = head[k];
    }
    return synthesize(s);
}

// Accumulates c_1 D_1 + ... + c_n D_n by keeping a running Dirichlet kernel.
StepFunction accumulate_dirichlet(Resolution M, const std::vector<double>& c) {
    const auto atoms = static_cast<std::size_t>(M.atoms());
    std::vector<double> dirichlet(atoms, 0.0);
    std::vector<double> total(atoms, 0.0);
    for (std::size_t k = 1; k <= c.size(); ++k) {
        for (std::size_t j = 0; j < atoms; ++j) {
            dirichlet[j] += (std::popcount((k - 1) & j) & 1u) ? -1.0 : 1.0;
        }
        if (c[k - 1] == 0.0) continue;
        for (std::size_t j = 0; j < atoms; ++j) {
            total[j] += c[k - 1] * dirichlet[j];
        }
    }
    return StepFunction(M, std::move(total));
}

}  // namespace

int highest_bit(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("highest_bit: argument must be positive");
    }
    return std::bit_width(n) - 1;
}

StepFunction dirichlet_kernel(std::size_t n, Resolution M, KernelPath path) {
    require_order(n, M, "dirichlet_kernel");
    if (path == KernelPath::cumulative) {
        std::vector<double> c(n, 0.0);
        c[n - 1] = 1.0;
        return accumulate_dirichlet(M, c);
    }
    return from_multipliers(M, std::vector<double>(n, 1.0));
}

StepFunction fejer_kernel(std::size_t n, Resolution M, KernelPath path) {
    require_order(n, M, "fejer_kernel");
    if (path == KernelPath::cumulative) {
        std::vector<double> c(n, 1.0 / static_cast<double>(n));
        return accumulate_dirichlet(M, c);
    }
    std::vector<double> head(n);
    for (std::size_t m = 0; m < n; ++m) {
        head[m] = static_cast<double>(n - m) / static_cast<double>(n);
    }
    return from_multipliers(M, head);
}

StepFunction norlund_kernel(const WeightSequence& q, std::size_t n, Resolution M, KernelPath path) {
    require_order(n, M, "norlund_kernel");
    const std::vector<double> weights = q.q_prefix(n);
    double Q_n = 0.0;
    for (double w : weights) Q_n += w;
    if (Q_n <= 0.0) {
        throw std::invalid_argument("norlund_kernel: Q_n must be positive");
    }
    if (path == KernelPath::cumulative) {
        std::vector<double> c(n);
        for (std::size_t k = 1; k <= n; ++k) {
            c[k - 1] = weights[n - k] / Q_n;
        }
        return accumulate_dirichlet(M, c);
    }
    std::vector<double> head(n);
    double partial = 0.0;     // Q_{n-m}, accumulated in the same order as Q_n
    for (std::size_t m = n; m-- > 0;) {
        partial += weights[n - m - 1];
        head[m] = partial / Q_n;
    }
    // head[0] is exactly 1: partial repeated Q_n's additions bit for bit.
    return from_multipliers(M, head);
}

const StepFunction& KernelCache::lookup(const Key& key, const std::function<StepFunction()>& make) {
    std::lock_guard<std::mutex> guard(lock_);
    auto it = table_.find(key);
    if (it == table_.end()) {
        it = table_.emplace(key, make()).first;
    }
    return it->second;
}

const StepFunction& KernelCache::dirichlet(std::size_t n, Resolution M) {
    return lookup({static_cast<int>(KernelKind::dirichlet), n, M.bits(), ""},
                  [&] { return dirichlet_kernel(n, M); });
}

const StepFunction& KernelCache::fejer(std::size_t n, Resolution M) {
    return lookup({static_cast<int>(KernelKind::fejer), n, M.bits(), ""},
                  [&] { return fejer_kernel(n, M); });
}

const StepFunction& KernelCache::norlund(const WeightSequence& q, std::size_t n, Resolution M) {
    return lookup({static_cast<int>(KernelKind::norlund), n, M.bits(), q.label()},
                  [&] { return norlund_kernel(q, n, M); });
}

std::size_t KernelCache::size() const {
    std::lock_guard<std::mutex> guard(lock_);
    return table_.size();
}

}  // namespace wn
