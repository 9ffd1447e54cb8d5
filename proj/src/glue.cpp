#include "k3moduli/glue.hpp"

#include <numeric>

namespace k3moduli {

QuadValue QuadValue::make(long long num, long long den) {
    if (den < 1)
        throw std::invalid_argument("QuadValue: denominator must be positive");
    num %= 2 * den;
    if (num < 0)
        num += 2 * den;
    const long long g = std::gcd(num, den);
    return QuadValue{num / g, den / g};
}

QuadValue QuadValue::operator+(const QuadValue& o) const {
    return make(num * o.den + o.num * den, den * o.den);
}

QuadValue q_value(long long x, long long m) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("q_value: modulus must be even and >= 2");
    if (x < 0)
        throw std::invalid_argument("q_value: representative must be >= 0");
    const long long r = x % (2 * m);
    return QuadValue::make((r * r) % (2 * m), m);
}

long long subgroup_generator(long long m, long long l) {
    if (m < 1 || l < 1 || m % l != 0)
        throw std::invalid_argument("subgroup_generator: l must divide m");
    return (m / l) % m;
}

std::set<std::pair<long long, long long>> graph_elements(const ModuliQuery& q,
                                                         const GlueDatum& glue) {
    const long long mx = q.degree(), my = q.codegree();
    std::set<std::pair<long long, long long>> out;
    for (long long k = 0; k < glue.order; ++k)
        out.insert({(k * glue.x) % mx, (k * glue.y) % my});
    return out;
}

std::vector<GlueDatum> enumerate_isotropic_graphs(const ModuliQuery& q) {
    q.require_valid();
    const long long l = q.t;
    const long long mx = q.degree(), my = q.codegree();
    const long long x = (mx / l) % mx;

    std::vector<long long> eps_list;
    if (l == 1) {
        eps_list.push_back(0);  // trivial glue
    } else {
        for (long long e = 1; e < l; ++e)
            if (std::gcd(e, l) == 1)
                eps_list.push_back(e);
    }

    std::vector<GlueDatum> out;
    std::vector<std::set<std::pair<long long, long long>>> seen;
    for (long long eps : eps_list) {
        const long long y = (my / l) * eps;  // already in [0, my)
        if (!(q_value(x, mx) + q_value(y, my)).is_zero())
            continue;
        GlueDatum g{x, y, l, eps};
        // distinct units give distinct subgroups, but identify graphs by their
        // element sets rather than relying on that
        auto elems = graph_elements(q, g);
        bool dup = false;
        for (const auto& s : seen)
            if (s == elems) {
                dup = true;
                break;
            }
        if (dup)
            continue;
        seen.push_back(std::move(elems));
        out.push_back(g);
    }
    return out;
}

std::vector<std::vector<GlueDatum>> graph_equivalence_classes(
    const ModuliQuery& q, const std::vector<GlueDatum>& graphs) {
    const long long mx = q.degree(), my = q.codegree();
    std::vector<std::set<std::pair<long long, long long>>> sets;
    sets.reserve(graphs.size());
    for (const auto& g : graphs)
        sets.push_back(graph_elements(q, g));

    auto flipped = [&](const std::set<std::pair<long long, long long>>& s, int sx, int sy) {
        std::set<std::pair<long long, long long>> out;
        for (const auto& [a, b] : s)
            out.insert({((sx * a) % mx + mx) % mx, ((sy * b) % my + my) % my});
        return out;
    };

    std::vector<std::vector<GlueDatum>> classes;
    std::vector<bool> used(graphs.size(), false);
    for (size_t i = 0; i < graphs.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        std::vector<GlueDatum> cls{graphs[i]};
        for (size_t j = i + 1; j < graphs.size(); ++j) {
            if (used[j])
                continue;
            bool equiv = false;
            for (int sx : {1, -1}) {
                for (int sy : {1, -1}) {
                    if (flipped(sets[i], sx, sy) == sets[j]) {
                        equiv = true;
                        break;
                    }
                }
                if (equiv)
                    break;
            }
            if (equiv) {
                used[j] = true;
                cls.push_back(graphs[j]);
            }
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

Overlattice overlattice_from_glue(const ModuliQuery& q, const GlueDatum& glue) {
    q.require_valid();
    const long long l = glue.order;
    const long long eps = glue.epsilon;
    const long long deg = q.degree(), codeg = q.codegree();

    const long long num00 = deg + eps * eps * codeg;
    if (num00 % (l * l) != 0)
        throw NonIntegralGramError("overlattice_from_glue: glue is not isotropic");
    const long long a00 = num00 / (l * l);
    if (a00 % 2 != 0)
        throw OddDiagonalError("overlattice_from_glue: glue is not isotropic");
    const long long a01 = eps * (codeg / l);

    Overlattice T;
    T.gram = GramForm{a00, a01, codeg};
    T.h = LatticeVector{l, -eps};
    T.delta = LatticeVector{0, 1};

    // postcondition battery
    T.gram.require_valid();
    const long long expected_det = (4 * q.d * (q.n - 1)) / (l * l);
    if (T.gram.det() != expected_det || T.gram.norm(T.h) != deg ||
        T.gram.norm(T.delta) != codeg || T.gram.inner(T.h, T.delta) != 0 ||
        std::gcd(std::abs(T.h.x), std::abs(T.h.y)) != 1 || pair_index(T.gram, T.h) != l)
        throw std::logic_error("overlattice_from_glue: postcondition violated");
    return T;
}

}  // namespace k3moduli
