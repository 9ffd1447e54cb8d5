#include "k3moduli/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace k3moduli {

namespace {

long long isqrt_ll(long long n) {
    if (n < 0)
        return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

long long floordiv(long long p, long long q) {
    // q > 0
    return p >= 0 ? p / q : -((-p + q - 1) / q);
}

}  // namespace

Mat2 Mat2::inverse_unimodular() const {
    long long d = det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("Mat2::inverse_unimodular: determinant is not +-1");
    return {m11 / d, -m01 / d, -m10 / d, m00 / d};
}

void GramForm::require_valid() const {
    if (!is_valid())
        throw std::invalid_argument("GramForm: requires a, c > 0 even and a*c - b^2 > 0");
}

Reduction reduce(const GramForm& g) {
    g.require_valid();
    long long a = g.a, b = g.b, c = g.c;
    Mat2 basis = Mat2::identity();
    for (;;) {
        if (a > c) {
            std::swap(a, c);
            basis = basis * Mat2{0, 1, 1, 0};
            continue;
        }
        if (2 * std::abs(b) > a) {
            long long k = floordiv(2 * b + a, 2 * a);  // |b - k*a| <= a/2
            long long bn = b - k * a;
            long long cn = c - 2 * k * b + k * k * a;
            b = bn;
            c = cn;
            basis = basis * Mat2{1, -k, 0, 1};
            continue;
        }
        break;
    }
    if (b < 0) {
        b = -b;
        basis = basis * Mat2{1, 0, 0, -1};
    }
    return {GramForm{a, b, c}, basis};
}

LatticeVector to_reduced_coords(const Reduction& r, const LatticeVector& v) {
    return r.basis.inverse_unimodular().apply(v);
}

std::vector<LatticeVector> enumerate_vectors(const GramForm& g, long long norm) {
    g.require_valid();
    if (norm < 1)
        throw std::invalid_argument("enumerate_vectors: norm must be positive");
    const long long det = g.det();
    const long long xmax = isqrt_ll(norm * g.c / det);
    const long long ymax = isqrt_ll(norm * g.a / det);
    std::vector<LatticeVector> out;
    for (long long x = -xmax; x <= xmax; ++x)
        for (long long y = -ymax; y <= ymax; ++y)
            if (g.norm({x, y}) == norm)
                out.push_back({x, y});
    return out;
}

std::vector<Mat2> automorphisms(const GramForm& g) {
    const auto firsts = enumerate_vectors(g, g.a);
    const auto seconds = enumerate_vectors(g, g.c);
    std::vector<Mat2> out;
    for (const auto& v : firsts) {
        for (const auto& w : seconds) {
            if (g.inner(v, w) != g.b)
                continue;
            Mat2 m{v.x, w.x, v.y, w.y};
            // matching all three Gram entries forces det = +-1
            out.push_back(m);
        }
    }
    return out;
}

LatticeVector orthogonal_complement(const GramForm& g, const LatticeVector& h) {
    if (h.x == 0 && h.y == 0)
        throw std::invalid_argument("orthogonal_complement: h must be nonzero");
    // B(h, (x,y)) = p*x + q*y
    const long long p = g.a * h.x + g.b * h.y;
    const long long q = g.b * h.x + g.c * h.y;
    const long long d = std::gcd(std::abs(p), std::abs(q));
    LatticeVector delta{q / d, -p / d};
    if (delta.x < 0 || (delta.x == 0 && delta.y < 0))
        delta = {-delta.x, -delta.y};
    return delta;
}

long long pair_index(const GramForm& g, const LatticeVector& h) {
    const LatticeVector delta = orthogonal_complement(g, h);
    const long long num = g.norm(h) * g.norm(delta);
    const long long det = g.det();
    if (num % det != 0)
        throw NotAnIntegerError("pair_index: Q(h)*Q(delta) not divisible by det");
    const long long q = num / det;
    const long long s = isqrt_ll(q);
    if (s * s != q)
        throw NotAnIntegerError("pair_index: Q(h)*Q(delta)/det is not a perfect square");
    return s;
}

bool pairs_isometric(const GramForm& gp, const LatticeVector& hp,
                     const GramForm& gq, const LatticeVector& hq) {
    const Reduction rp = reduce(gp);
    const Reduction rq = reduce(gq);
    if (rp.form != rq.form)
        return false;
    const LatticeVector a = to_reduced_coords(rp, hp);
    const LatticeVector b = to_reduced_coords(rq, hq);
    for (const auto& m : automorphisms(rp.form))
        if (m.apply(a) == b)
            return true;
    return false;
}

MarkedPairClass canonical_pair(const GramForm& g, const LatticeVector& h) {
    const Reduction r = reduce(g);
    const LatticeVector hr = to_reduced_coords(r, h);
    LatticeVector best = hr;
    bool first = true;
    for (const auto& m : automorphisms(r.form)) {
        const LatticeVector img = m.apply(hr);
        if (first || img < best) {
            best = img;
            first = false;
        }
    }
    MarkedPairClass cls;
    cls.gram = r.form;
    cls.h = best;
    cls.delta = orthogonal_complement(r.form, best);
    cls.beta = pair_index(r.form, best);
    return cls;
}

}  // namespace k3moduli
