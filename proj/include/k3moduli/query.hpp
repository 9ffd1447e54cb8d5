#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>

namespace k3moduli {

/// One polarization problem: dimension parameter n (the manifold has
/// dimension 2n), degree 2d, divisibility t.
struct ModuliQuery {
    long long n = 2;
    long long d = 1;
    long long t = 1;

    auto operator<=>(const ModuliQuery&) const = default;

    long long degree() const { return 2 * d; }           // Q(h)
    long long codegree() const { return 2 * n - 2; }     // Q(delta)
    bool is_valid() const {
        return n >= 2 && d >= 1 && t >= 1 &&
               std::gcd(degree(), codegree()) % t == 0;
    }
    void require_valid() const {
        if (!is_valid())
            throw std::invalid_argument(
                "ModuliQuery: requires n >= 2, d >= 1 and t | gcd(2d, 2n-2)");
    }
};

}  // namespace k3moduli
