#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3moduli/glue.hpp"
#include "k3moduli/quadform.hpp"
#include "k3moduli/query.hpp"

namespace k3moduli {

struct NonIntegralCountError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The derived quantities behind the closed-form count. All positive.
struct DerivedInvariants {
    long long D = 0;        ///< 4d(n-1)/t^2, the lattice discriminant
    long long g = 0;        ///< gcd(2d, 2n-2)/t
    long long n_tilde = 0;  ///< (2n-2)/gcd(2d, 2n-2)
    long long d_tilde = 0;  ///< 2d/gcd(2d, 2n-2)
    long long w = 0;        ///< gcd(g, t)
    long long g1 = 0;       ///< g/w
    long long l1 = 0;       ///< t/w
    long long w_plus = 0;   ///< part of w supported on primes dividing gcd(w, l1)
    long long w_minus = 0;  ///< w / w_plus, coprime to l1

    bool operator==(const DerivedInvariants&) const = default;
};

DerivedInvariants derive_invariants(const ModuliQuery& q);

/// Level A: the closed-form count, with full branch introspection kept for
/// diagnostics. The formula value w_plus * phi(w_minus) * 2^(rho - 1) is
/// evaluated as an exact rational (1/2 when rho = 0) and asserted integral.
struct ClosedFormEval {
    long long count = 0;
    std::string branch;                       ///< "bullet1".."bullet3" or "none"
    std::vector<std::string> condition_sets;  ///< all matching sets, e.g. {"set1"}
    long long value_num = 0;                  ///< pre-assert rational value
    long long value_den = 1;
};

ClosedFormEval evaluate_closed_form(const ModuliQuery& q);
long long closed_form_count(const ModuliQuery& q);

/// Level B: isotropic graphs modulo sign flips.
struct GlueCount {
    long long count = 0;
    std::vector<GlueDatum> reps;  ///< canonical class representatives (least epsilon)
};

GlueCount glue_count(const ModuliQuery& q);

/// Levels C and D both produce canonical marked-pair classes.
struct ClassCount {
    long long count = 0;
    std::vector<MarkedPairClass> classes;  ///< sorted
};

/// Level C: every isotropic graph is glued to an overlattice, canonicalized
/// and deduplicated.
ClassCount lattice_count_via_glue(const ModuliQuery& q);

/// All reduced even positive definite forms [a, b, c] with det = D
/// (a even, 3a^2 <= 4D, 0 <= 2b <= a, c = (D + b^2)/a even, c >= a).
std::vector<GramForm> reduced_forms_of_det(long long D);

/// Level D: definition-level enumeration, independent of the glue machinery.
/// Scans all reduced forms of determinant D for primitive h of norm 2d whose
/// orthogonal complement has norm exactly 2n-2 and whose pair index equals t.
ClassCount lattice_count_direct(const ModuliQuery& q);

struct LevelSet {
    bool A = false, B = false, C = false, D = false;
    static LevelSet all() { return {true, true, true, true}; }
    bool any() const { return A || B || C || D; }
};

/// Count of units eps mod t solving the simplified congruence
/// d_tilde + n_tilde*eps^2 = 0 (mod 2*l1) on canonical representatives,
/// reported for comparison only: the congruence is sensitive to the chosen
/// representative parity, unlike the representative-level isotropy that the
/// other levels use.
struct SimplifiedCongruence {
    long long solutions = 0;
    long long classes_num = 0;  ///< solutions, halved when t > 2 (exact rational)
    long long classes_den = 1;
};

SimplifiedCongruence simplified_congruence_count(const ModuliQuery& q);

struct Diagnostics {
    std::string branch;
    std::vector<std::string> condition_sets;
    std::string formula_value;
    SimplifiedCongruence simplified;
    bool determines_type = false;
    std::string note;
};

struct CountReport {
    ModuliQuery query;
    DerivedInvariants inv;
    std::optional<long long> count_A, count_B, count_C, count_D;
    bool agree = true;
    std::vector<MarkedPairClass> classes;
    Diagnostics diag;

    /// The agreed count: first of A, B, C, D that was computed.
    long long count() const;
};

struct LevelMismatchError : std::runtime_error {
    CountReport report;
    explicit LevelMismatchError(CountReport r);
};

/// Runs the requested levels and cross-checks them. Counts must agree and,
/// when both C and D ran, so must their class lists. Disagreement is flagged
/// in the report; throw_on_mismatch escalates it to LevelMismatchError.
CountReport cross_check(const ModuliQuery& q, const LevelSet& levels,
                        bool throw_on_mismatch = false);

/// True iff degree and divisibility pin down the polarization type:
/// gcd((2n-2)/t, 2d/t) coprime to t.
bool determines_polarization_type(const ModuliQuery& q);

struct GridBounds {
    long long max_n = 2;
    long long max_d = 1;
};

/// Divisors of gcd(2d, 2n-2), ascending: the valid divisibilities for (n, d).
std::vector<long long> valid_divisibilities(long long n, long long d);

/// All valid queries in the grid, lexicographic in (n, d, t).
std::vector<ModuliQuery> grid_queries(const GridBounds& b);

/// The three connectedness cases checked by the verification suite.
enum class ConnectedCase { SplitT1, NonSplitT2, OddPrimePower };

struct ConnectedCaseResult {
    ModuliQuery query;
    ConnectedCase which;
    long long count = 0;
};

struct ConnectedCasesReport {
    long long checked = 0;
    std::vector<ConnectedCaseResult> counterexamples;  ///< queries with count >= 2
};

/// All grid queries matching one of the connectedness cases
/// (t=1 with gcd(n-1,d)=1; t=2 with gcd(n-1,d)=1 and d+n-1 = 0 mod 4;
/// t=p^a, p odd, with p^(2a) | gcd(2d, 2n-2)), in grid order.
std::vector<std::pair<ModuliQuery, ConnectedCase>> connected_case_queries(
    const GridBounds& b);

/// Reports every connectedness-case query whose count exceeds 1 at any
/// enabled level.
ConnectedCasesReport verify_connected_cases(const GridBounds& b, const LevelSet& levels);

struct SearchHit {
    ModuliQuery query;
    long long count = 0;

    auto operator<=>(const SearchHit&) const = default;
};

/// Grid scan with the closed form, each candidate confirmed by the glue-class
/// oracle. Hits with confirmed count >= min_count, sorted by count descending
/// then lexicographically by (n, d, t).
std::vector<SearchHit> search_disconnected(const GridBounds& b, long long min_count);

}  // namespace k3moduli
