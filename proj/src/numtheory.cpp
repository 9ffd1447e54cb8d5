#include "k3moduli/numtheory.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace k3moduli {

Factorization factorize(long long m) {
    if (m < 1)
        throw std::invalid_argument("factorize: argument must be >= 1");
    Factorization f;
    f.value = m;
    for (long long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0)
            continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (m > 1)
        f.factors.push_back({m, 1});
    return f;
}

long long euler_phi(long long m) {
    long long phi = 1;
    for (const auto& [p, e] : factorize(m).factors) {
        long long pe = 1;
        for (int i = 1; i < e; ++i)
            pe *= p;
        phi *= (p - 1) * pe;
    }
    return phi;
}

int num_prime_divisors(long long m) {
    return static_cast<int>(factorize(m).factors.size());
}

bool is_quadratic_residue(long long a, long long m) {
    if (m < 1)
        throw std::invalid_argument("is_quadratic_residue: modulus must be >= 1");
    a = ((a % m) + m) % m;
    // Moduli here stay small (a few thousand at most); memoize the square
    // tables per thread so bulk grid scans don't rescan the same modulus.
    thread_local std::unordered_map<long long, std::vector<bool>> tables;
    auto it = tables.find(m);
    if (it == tables.end()) {
        std::vector<bool> is_square(static_cast<size_t>(m), false);
        for (long long x = 0; x < m; ++x)
            is_square[static_cast<size_t>((x * x) % m)] = true;
        it = tables.emplace(m, std::move(is_square)).first;
    }
    return it->second[static_cast<size_t>(a)];
}

long long mod_inverse(long long a, long long m) {
    if (m < 1)
        throw std::invalid_argument("mod_inverse: modulus must be >= 1");
    if (m == 1)
        return 0;
    a = ((a % m) + m) % m;
    // extended Euclid on (a, m)
    long long r0 = a, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1)
        throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return ((s0 % m) + m) % m;
}

std::pair<long long, long long> split_w(long long w, long long l1) {
    if (w < 1 || l1 < 1)
        throw std::invalid_argument("split_w: arguments must be >= 1");
    long long w_plus = 1;
    long long rest = w;
    for (const auto& [p, e] : factorize(std::gcd(w, l1)).factors) {
        (void)e;  // exponent in the gcd is irrelevant; take the full power in w
        while (rest % p == 0) {
            rest /= p;
            w_plus *= p;
        }
    }
    return {w_plus, rest};
}

}  // namespace k3moduli
