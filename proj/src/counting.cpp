#include "k3moduli/counting.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "k3moduli/numtheory.hpp"

namespace k3moduli {

DerivedInvariants derive_invariants(const ModuliQuery& q) {
    q.require_valid();
    const long long G = std::gcd(q.degree(), q.codegree());
    DerivedInvariants iv;
    iv.D = 4 * q.d * (q.n - 1) / (q.t * q.t);
    iv.g = G / q.t;
    iv.n_tilde = q.codegree() / G;
    iv.d_tilde = q.degree() / G;
    iv.w = std::gcd(iv.g, q.t);
    iv.g1 = iv.g / iv.w;
    iv.l1 = q.t / iv.w;
    std::tie(iv.w_plus, iv.w_minus) = split_w(iv.w, iv.l1);
    return iv;
}

namespace {

// The four condition sets shared by the closed-form branches. The residue
// -d~/n~ (resp. -d~/(4n~)) is evaluated with a modular inverse; the gcd
// clauses guarding each set guarantee the inverse exists.
struct ConditionSets {
    bool set1 = false, set2 = false, set3 = false, set4 = false;
};

ConditionSets eval_condition_sets(const DerivedInvariants& iv) {
    const long long dt = iv.d_tilde, nt = iv.n_tilde, l1 = iv.l1, g1 = iv.g1, w = iv.w;
    ConditionSets s;
    if (g1 % 2 == 0 && std::gcd(dt, l1) == 1 && std::gcd(nt, l1) == 1)
        s.set1 = is_quadratic_residue(-dt * mod_inverse(nt, l1), l1);
    if (g1 % 2 == 1 && l1 % 2 == 1 && dt % 2 == 1 && std::gcd(dt, l1) == 1 &&
        std::gcd(nt, 2 * l1) == 1)
        s.set2 = is_quadratic_residue(-dt * mod_inverse(nt, 2 * l1), 2 * l1);
    if (g1 % 2 == 1 && l1 % 2 == 1 && w % 2 == 1 && dt % 2 == 0 &&
        std::gcd(dt, l1) == 1 && std::gcd(nt, 2 * l1) == 1)
        s.set3 = is_quadratic_residue(-dt * mod_inverse(4 * nt, l1), l1);
    if (g1 % 2 == 1 && l1 % 2 == 0 && std::gcd(dt, l1) == 1 && std::gcd(nt, 2 * l1) == 1)
        s.set4 = is_quadratic_residue(-dt * mod_inverse(nt, 2 * l1), 2 * l1);
    return s;
}

// w_plus * phi(w_minus) * 2^(rho-1) as an exact rational with denominator 1 or 2.
std::pair<long long, long long> formula_value(const DerivedInvariants& iv, int rho) {
    long long num = iv.w_plus * euler_phi(iv.w_minus);
    for (int i = 0; i < rho; ++i)
        num *= 2;
    if (num % 2 == 0)
        return {num / 2, 1};
    return {num, 2};
}

}  // namespace

ClosedFormEval evaluate_closed_form(const ModuliQuery& q) {
    const DerivedInvariants iv = derive_invariants(q);
    const ConditionSets s = eval_condition_sets(iv);
    ClosedFormEval ev;
    ev.branch = "none";
    if (s.set1) ev.condition_sets.push_back("set1");
    if (s.set2) ev.condition_sets.push_back("set2");
    if (s.set3) ev.condition_sets.push_back("set3");
    if (s.set4) ev.condition_sets.push_back("set4");

    if (q.t > 2) {
        if (s.set1 || s.set2 || s.set3) {
            ev.branch = "bullet1";
            std::tie(ev.value_num, ev.value_den) =
                formula_value(iv, num_prime_divisors(iv.l1));
        } else if (s.set4) {
            ev.branch = "bullet2";
            std::tie(ev.value_num, ev.value_den) =
                formula_value(iv, num_prime_divisors(iv.l1 / 2));
        }
        if (ev.branch != "none") {
            if (ev.value_den != 1)
                throw NonIntegralCountError("closed_form_count: formula value " +
                                            std::to_string(ev.value_num) + "/" +
                                            std::to_string(ev.value_den) +
                                            " is not an integer");
            ev.count = ev.value_num;
        }
    } else if (s.set1 || s.set2 || s.set3 || s.set4) {
        ev.branch = "bullet3";
        ev.value_num = 1;
        ev.value_den = 1;
        ev.count = 1;
    }
    return ev;
}

long long closed_form_count(const ModuliQuery& q) {
    return evaluate_closed_form(q).count;
}

GlueCount glue_count(const ModuliQuery& q) {
    const auto graphs = enumerate_isotropic_graphs(q);
    const auto classes = graph_equivalence_classes(q, graphs);
    GlueCount out;
    out.count = static_cast<long long>(classes.size());
    for (const auto& cls : classes)
        out.reps.push_back(cls.front());
    return out;
}

ClassCount lattice_count_via_glue(const ModuliQuery& q) {
    std::set<MarkedPairClass> classes;
    for (const auto& glue : enumerate_isotropic_graphs(q)) {
        const Overlattice T = overlattice_from_glue(q, glue);
        classes.insert(canonical_pair(T.gram, T.h));
    }
    ClassCount out;
    out.count = static_cast<long long>(classes.size());
    out.classes.assign(classes.begin(), classes.end());
    return out;
}

std::vector<GramForm> reduced_forms_of_det(long long D) {
    std::vector<GramForm> out;
    for (long long a = 2; 3 * a * a <= 4 * D; a += 2) {
        for (long long b = 0; 2 * b <= a; ++b) {
            if ((D + b * b) % a != 0)
                continue;
            const long long c = (D + b * b) / a;
            if (c % 2 == 0 && c >= a)
                out.push_back(GramForm{a, b, c});
        }
    }
    return out;
}

ClassCount lattice_count_direct(const ModuliQuery& q) {
    q.require_valid();
    const DerivedInvariants iv = derive_invariants(q);
    std::set<MarkedPairClass> classes;
    for (const auto& form : reduced_forms_of_det(iv.D)) {
        for (const auto& h : enumerate_vectors(form, q.degree())) {
            if (std::gcd(std::abs(h.x), std::abs(h.y)) != 1)
                continue;
            const LatticeVector delta = orthogonal_complement(form, h);
            if (form.norm(delta) != q.codegree())
                continue;
            // for a fixed discriminant the index filter pins the divisibility
            if (pair_index(form, h) != q.t)
                continue;
            classes.insert(canonical_pair(form, h));
        }
    }
    ClassCount out;
    out.count = static_cast<long long>(classes.size());
    out.classes.assign(classes.begin(), classes.end());
    return out;
}

SimplifiedCongruence simplified_congruence_count(const ModuliQuery& q) {
    const DerivedInvariants iv = derive_invariants(q);
    SimplifiedCongruence sc;
    if (q.t == 1) {
        sc.solutions = (iv.d_tilde + iv.n_tilde) % (2 * iv.l1) == 0 ? 1 : 0;
        // the sole representative of the trivial unit group is handled as eps = 1
    } else {
        for (long long e = 1; e < q.t; ++e)
            if (std::gcd(e, q.t) == 1 &&
                (iv.d_tilde + iv.n_tilde * e * e) % (2 * iv.l1) == 0)
                ++sc.solutions;
    }
    if (q.t > 2 && sc.solutions % 2 != 0) {
        sc.classes_num = sc.solutions;
        sc.classes_den = 2;
    } else {
        sc.classes_num = q.t > 2 ? sc.solutions / 2 : sc.solutions;
        sc.classes_den = 1;
    }
    return sc;
}

long long CountReport::count() const {
    if (count_A) return *count_A;
    if (count_B) return *count_B;
    if (count_C) return *count_C;
    if (count_D) return *count_D;
    return 0;
}

LevelMismatchError::LevelMismatchError(CountReport r)
    : std::runtime_error("cross_check: level disagreement at (n=" +
                         std::to_string(r.query.n) + ", d=" + std::to_string(r.query.d) +
                         ", t=" + std::to_string(r.query.t) + ")"),
      report(std::move(r)) {}

bool determines_polarization_type(const ModuliQuery& q) {
    q.require_valid();
    return std::gcd(std::gcd(q.codegree() / q.t, q.degree() / q.t), q.t) == 1;
}

CountReport cross_check(const ModuliQuery& q, const LevelSet& levels,
                        bool throw_on_mismatch) {
    CountReport r;
    r.query = q;
    r.inv = derive_invariants(q);
    r.diag.simplified = simplified_congruence_count(q);
    r.diag.determines_type = determines_polarization_type(q);

    if (levels.A) {
        const ClosedFormEval ev = evaluate_closed_form(q);
        r.count_A = ev.count;
        r.diag.branch = ev.branch;
        r.diag.condition_sets = ev.condition_sets;
        r.diag.formula_value =
            ev.branch == "none"
                ? "0"
                : (ev.value_den == 1 ? std::to_string(ev.value_num)
                                     : std::to_string(ev.value_num) + "/" +
                                           std::to_string(ev.value_den));
    }
    if (levels.B)
        r.count_B = glue_count(q).count;

    std::optional<ClassCount> via_glue, direct;
    if (levels.C) {
        via_glue = lattice_count_via_glue(q);
        r.count_C = via_glue->count;
    }
    if (levels.D) {
        direct = lattice_count_direct(q);
        r.count_D = direct->count;
    }
    r.classes = via_glue ? via_glue->classes : (direct ? direct->classes : r.classes);

    std::vector<long long> counts;
    for (const auto& c : {r.count_A, r.count_B, r.count_C, r.count_D})
        if (c)
            counts.push_back(*c);
    r.agree = std::adjacent_find(counts.begin(), counts.end(),
                                 std::not_equal_to<>()) == counts.end();
    if (via_glue && direct && via_glue->classes != direct->classes) {
        r.agree = false;
        r.diag.note = "glue-route and definition-level class lists differ";
    }
    if (!r.agree && throw_on_mismatch)
        throw LevelMismatchError(r);
    return r;
}

std::vector<long long> valid_divisibilities(long long n, long long d) {
    const long long G = std::gcd(2 * d, 2 * n - 2);
    std::vector<long long> out;
    for (long long t = 1; t * t <= G; ++t) {
        if (G % t != 0)
            continue;
        out.push_back(t);
        if (t != G / t)
            out.push_back(G / t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ModuliQuery> grid_queries(const GridBounds& b) {
    std::vector<ModuliQuery> out;
    for (long long n = 2; n <= b.max_n; ++n)
        for (long long d = 1; d <= b.max_d; ++d)
            for (long long t : valid_divisibilities(n, d))
                out.push_back({n, d, t});
    return out;
}

namespace {

bool is_odd_prime_power_case(const ModuliQuery& q) {
    const auto f = factorize(q.t).factors;
    if (f.size() != 1 || f[0].prime <= 2)
        return false;
    long long p2a = 1;
    for (int i = 0; i < 2 * f[0].exponent; ++i)
        p2a *= f[0].prime;
    return std::gcd(q.degree(), q.codegree()) % p2a == 0;
}

}  // namespace

std::vector<std::pair<ModuliQuery, ConnectedCase>> connected_case_queries(
    const GridBounds& b) {
    std::vector<std::pair<ModuliQuery, ConnectedCase>> out;
    for (long long n = 2; n <= b.max_n; ++n) {
        for (long long d = 1; d <= b.max_d; ++d) {
            if (std::gcd(n - 1, d) == 1) {
                out.push_back({{n, d, 1}, ConnectedCase::SplitT1});
                if ((d + n - 1) % 4 == 0)
                    out.push_back({{n, d, 2}, ConnectedCase::NonSplitT2});
            }
            for (long long t : valid_divisibilities(n, d)) {
                ModuliQuery q{n, d, t};
                if (is_odd_prime_power_case(q))
                    out.push_back({q, ConnectedCase::OddPrimePower});
            }
        }
    }
    return out;
}

ConnectedCasesReport verify_connected_cases(const GridBounds& b, const LevelSet& levels) {
    ConnectedCasesReport rep;
    for (const auto& [q, which] : connected_case_queries(b)) {
        const CountReport r = cross_check(q, levels);
        ++rep.checked;
        const long long worst = std::max({r.count_A.value_or(0), r.count_B.value_or(0),
                                          r.count_C.value_or(0), r.count_D.value_or(0)});
        if (worst >= 2)
            rep.counterexamples.push_back({q, which, worst});
    }
    return rep;
}

std::vector<SearchHit> search_disconnected(const GridBounds& b, long long min_count) {
    std::vector<SearchHit> hits;
    for (long long n = 2; n <= b.max_n; ++n) {
        for (long long d = 1; d <= b.max_d; ++d) {
            for (long long t : valid_divisibilities(n, d)) {
                const ModuliQuery q{n, d, t};
                if (closed_form_count(q) < min_count)
                    continue;
                const long long confirmed = glue_count(q).count;
                if (confirmed >= min_count)
                    hits.push_back({q, confirmed});
            }
        }
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b2) {
        if (a.count != b2.count)
            return a.count > b2.count;
        return a.query < b2.query;
    });
    return hits;
}

}  // namespace k3moduli
