#pragma once

#include <utility>
#include <vector>

namespace k3moduli {

struct PrimePower {
    long long prime = 0;
    int exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

/// Canonical prime factorization: primes strictly increasing, every exponent >= 1.
/// The value 1 carries an empty factor list.
struct Factorization {
    long long value = 1;
    std::vector<PrimePower> factors;
};

/// Trial-division factorization. Rejects m < 1.
Factorization factorize(long long m);

/// Euler phi: number of k in [1, m] coprime to m.
long long euler_phi(long long m);

/// rho(m): number of distinct prime divisors, rho(1) = 0.
int num_prime_divisors(long long m);

/// True iff x^2 = a (mod m) has a solution. Exhaustive scan, valid for any
/// modulus (composite included). a may be negative.
bool is_quadratic_residue(long long a, long long m);

/// Inverse of a modulo m, in [0, m). Requires gcd(a, m) = 1; returns 0 for m = 1.
long long mod_inverse(long long a, long long m);

/// Split w = w_plus * w_minus, where w_plus collects the full power in w of
/// every prime dividing gcd(w, l1). Guarantees gcd(w_minus, l1) = 1.
std::pair<long long, long long> split_w(long long w, long long l1);

}  // namespace k3moduli
