#pragma once

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k3moduli/quadform.hpp"
#include "k3moduli/query.hpp"

namespace k3moduli {

struct NonIntegralGramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OddDiagonalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A rational residue modulo 2Z, in lowest terms with 0 <= num/den < 2.
/// These are the values of the discriminant quadratic form.
struct QuadValue {
    long long num = 0;
    long long den = 1;

    auto operator<=>(const QuadValue&) const = default;

    static QuadValue make(long long num, long long den);
    QuadValue operator+(const QuadValue& o) const;
    bool is_zero() const { return num == 0; }
};

/// x^2/m mod 2Z, exact. Defined for any x >= 0 (the value only depends on
/// x mod m, which is what makes the discriminant form well defined; m even).
QuadValue q_value(long long x, long long m);

/// Discriminant group Z/m of a rank-1 even lattice <m>, with q(x) = x^2/m.
struct CyclicQuadForm {
    long long order = 2;

    CyclicQuadForm() = default;
    explicit CyclicQuadForm(long long m) : order(m) {
        if (m < 2 || m % 2 != 0)
            throw std::invalid_argument("CyclicQuadForm: order must be even and >= 2");
    }
    QuadValue value_at(long long x) const { return q_value(x, order); }
};

/// Generator of a graph subgroup of Z/2d + Z/(2n-2): the cyclic group
/// generated by (x, y), of order l. epsilon is the unit parameter of the
/// second coordinate; it is 0 exactly for the trivial glue (l = 1).
struct GlueDatum {
    long long x = 0;
    long long y = 0;
    long long order = 1;
    long long epsilon = 0;

    auto operator<=>(const GlueDatum&) const = default;
};

/// Canonical generator m/l of the unique subgroup of order l in Z/m,
/// returned as a residue in [0, m). Rejects l not dividing m.
long long subgroup_generator(long long m, long long l);

/// The full element set of the graph subgroup, as residue pairs.
std::set<std::pair<long long, long long>> graph_elements(const ModuliQuery& q,
                                                         const GlueDatum& glue);

/// All isotropic graph subgroups for the query, one GlueDatum per subgroup.
/// Isotropy is evaluated on integer representatives of the generator with
/// exact rational arithmetic; isotropy of the generator implies isotropy of
/// the whole cyclic graph since q(k*v) = k^2 * q(v).
std::vector<GlueDatum> enumerate_isotropic_graphs(const ModuliQuery& q);

/// Partition of graphs under the four sign-flip maps (x, y) -> (+-x, +-y)
/// acting on graph subgroups. Each class lists its graphs with the least
/// epsilon first (the class representative).
std::vector<std::vector<GlueDatum>> graph_equivalence_classes(
    const ModuliQuery& q, const std::vector<GlueDatum>& graphs);

struct Overlattice {
    GramForm gram;
    LatticeVector h;
    LatticeVector delta;
};

/// The even overlattice T of <2d> + <2n-2> determined by an isotropic glue,
/// in the basis (u, e2) with u = (e1 + epsilon*e2)/l:
///
///   gram = [[(2d + eps^2 (2n-2)) / l^2,  eps (2n-2) / l],
///           [ eps (2n-2) / l,            2n-2         ]]
///
/// h = e1 = (l, -epsilon), delta = e2 = (0, 1). For the trivial glue this is
/// the orthogonal direct sum with h = (1, 0). Checks the full postcondition
/// battery: integral even Gram, det = 4d(n-1)/l^2, Q(h) = 2d, Q(delta) = 2n-2,
/// (h, delta) = 0, h primitive, pair index = l.
Overlattice overlattice_from_glue(const ModuliQuery& q, const GlueDatum& glue);

}  // namespace k3moduli
