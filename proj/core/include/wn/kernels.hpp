#pragma once

#include "wn/dyadic.hpp"
#include "wn/weights.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

// Dirichlet kernel D_n = sum_{k<n} w_k, Fejer kernel K_n = (1/n) sum_{k=1}^n D_k,
// and the weighted kernel F_n = (1/Q_n) sum_{k=1}^n q_{n-k} D_k.
//
// Two evaluation paths: "cumulative" accumulates Dirichlet kernels term by term
// in O(n 2^M); "spectral" fills the multiplier sequence and runs one inverse
// transform in O(M 2^M). The spectral multipliers are hat(D_n)(m) = [m < n],
// hat(K_n)(m) = (n-m)/n, hat(F_n)(m) = Q_{n-m}/Q_n.

namespace wn {

enum class KernelKind { dirichlet, fejer, norlund };
enum class KernelPath { spectral, cumulative };

// Position of the most significant set bit; 1 -> 0, 5 -> 2.
int highest_bit(std::size_t n);

StepFunction dirichlet_kernel(std::size_t n, Resolution M, KernelPath path = KernelPath::spectral);
StepFunction fejer_kernel(std::size_t n, Resolution M, KernelPath path = KernelPath::spectral);
StepFunction norlund_kernel(const WeightSequence& q, std::size_t n, Resolution M,
                            KernelPath path = KernelPath::spectral);

// Memoized kernel tables keyed by (kind, order, resolution, weight label).
// Distinct weight sequences must carry distinct labels to share a cache.
class KernelCache {
public:
    const StepFunction& dirichlet(std::size_t n, Resolution M);
    const StepFunction& fejer(std::size_t n, Resolution M);
    const StepFunction& norlund(const WeightSequence& q, std::size_t n, Resolution M);

    std::size_t size() const;

private:
    using Key = std::tuple<int, std::size_t, int, std::string>;
    const StepFunction& lookup(const Key& key, const std::function<StepFunction()>& make);

    mutable std::mutex lock_;
    std::map<Key, StepFunction> table_;
};

}  // namespace wn
