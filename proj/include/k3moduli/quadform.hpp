#pragma once

#include <compare>
#include <stdexcept>
#include <vector>

namespace k3moduli {

/// Thrown by pair_index when Q(h)*Q(delta)/det is not a perfect square,
/// which cannot happen for a well-formed even lattice and is treated as
/// input corruption.
struct NotAnIntegerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LatticeVector {
    long long x = 0;
    long long y = 0;
    auto operator<=>(const LatticeVector&) const = default;
};

/// 2x2 integer matrix acting on column vectors.
struct Mat2 {
    long long m00 = 1, m01 = 0;
    long long m10 = 0, m11 = 1;

    auto operator<=>(const Mat2&) const = default;

    long long det() const { return m00 * m11 - m01 * m10; }
    LatticeVector apply(const LatticeVector& v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    /// Inverse, assuming det = +-1.
    Mat2 inverse_unimodular() const;
    static Mat2 identity() { return {}; }
};

/// Even positive definite rank-2 lattice, stored as the Gram matrix
/// [[a, b], [b, c]] of an integral basis.
struct GramForm {
    long long a = 2;
    long long b = 0;
    long long c = 2;

    auto operator<=>(const GramForm&) const = default;

    long long det() const { return a * c - b * b; }
    long long norm(const LatticeVector& v) const {
        return a * v.x * v.x + 2 * b * v.x * v.y + c * v.y * v.y;
    }
    long long inner(const LatticeVector& u, const LatticeVector& v) const {
        return a * u.x * v.x + b * (u.x * v.y + u.y * v.x) + c * u.y * v.y;
    }
    bool is_valid() const {
        return a > 0 && c > 0 && det() > 0 && a % 2 == 0 && c % 2 == 0;
    }
    void require_valid() const;
    /// Reduced means 0 <= 2b <= a <= c. Forces b >= 0 everywhere (not only on
    /// the boundary 2b = a / a = c) so that each isometry class has exactly
    /// one reduced representative, comparable by equality.
    bool is_reduced() const { return b >= 0 && 2 * b <= a && a <= c; }
};

struct Reduction {
    GramForm form;  ///< the reduced Gram matrix
    Mat2 basis;     ///< columns = reduced basis in original coordinates; form = basis^T * g * basis
};

/// Gauss reduction. Idempotent and determinant-preserving; basis has det +-1.
Reduction reduce(const GramForm& g);

/// Coordinates of v with respect to the reduced basis of r.
LatticeVector to_reduced_coords(const Reduction& r, const LatticeVector& v);

/// All v with Q(v) = norm, scanned over the exact positive-definiteness box
/// |x| <= sqrt(norm*c/det), |y| <= sqrt(norm*a/det). Lexicographic order.
std::vector<LatticeVector> enumerate_vectors(const GramForm& g, long long norm);

/// The full (finite) automorphism group {M : M^T g M = g}, found by matching
/// images of the two basis vectors among vectors of norm a and c.
std::vector<Mat2> automorphisms(const GramForm& g);

/// Primitive generator of the rank-1 lattice orthogonal to h, sign-normalized
/// so the first nonzero coordinate is positive.
LatticeVector orthogonal_complement(const GramForm& g, const LatticeVector& h);

/// Index of <h> + <delta> in the full lattice: the positive square root of
/// Q(h)*Q(delta)/det(g).
long long pair_index(const GramForm& g, const LatticeVector& h);

/// True iff some isometry carries (gp, hp) to (gq, hq).
bool pairs_isometric(const GramForm& gp, const LatticeVector& hp,
                     const GramForm& gq, const LatticeVector& hq);

/// Canonical representative of the isometry class of a marked pair. Two pairs
/// are isometric iff their canonical forms compare equal.
struct MarkedPairClass {
    GramForm gram;        ///< reduced
    LatticeVector h;      ///< lexicographically least image over the automorphism group
    LatticeVector delta;  ///< primitive generator of h-perp in gram
    long long beta = 1;   ///< pair index

    auto operator<=>(const MarkedPairClass&) const = default;
};

MarkedPairClass canonical_pair(const GramForm& g, const LatticeVector& h);

}  // namespace k3moduli
