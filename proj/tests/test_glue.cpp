#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "k3moduli/counting.hpp"
#include "k3moduli/glue.hpp"

using namespace k3moduli;

TEST_CASE("q_value examples") {
    CHECK(q_value(0, 18) == QuadValue{0, 1});
    CHECK(q_value(6, 18) == QuadValue{0, 1});  // 36/18 = 2 = 0 mod 2Z
    CHECK(q_value(1, 18) == QuadValue{1, 18});
    CHECK(q_value(3, 4) == QuadValue{1, 4});   // 9/4 = 1/4 mod 2Z
    CHECK_THROWS_AS(q_value(1, 9), std::invalid_argument);   // odd modulus
    CHECK_THROWS_AS(q_value(-1, 4), std::invalid_argument);
}

TEST_CASE("q_value is independent of the representative") {
    for (long long m = 2; m <= 500; m += 2)
        for (long long x = 0; x < m; ++x)
            CHECK(q_value(x, m) == q_value(x + m, m));
}

TEST_CASE("QuadValue arithmetic stays reduced in [0, 2)") {
    const QuadValue a = QuadValue::make(7, 6);    // 7/6
    const QuadValue b = QuadValue::make(5, 6);    // 5/6
    CHECK(a + b == QuadValue{0, 1});              // 2 = 0 mod 2Z
    CHECK(QuadValue::make(-1, 4) == QuadValue{7, 4});
    CHECK((QuadValue::make(3, 2) + QuadValue::make(1, 2)) == QuadValue{0, 1});
}

TEST_CASE("CyclicQuadForm") {
    const CyclicQuadForm D18(18);
    CHECK(D18.value_at(6) == QuadValue{0, 1});
    CHECK_THROWS_AS(CyclicQuadForm(9), std::invalid_argument);
}

TEST_CASE("subgroup_generator") {
    CHECK(subgroup_generator(18, 3) == 6);
    CHECK(subgroup_generator(18, 1) == 0);  // trivial subgroup
    CHECK(subgroup_generator(210, 105) == 2);
    CHECK_THROWS_AS(subgroup_generator(10, 3), std::invalid_argument);
}

TEST_CASE("enumerate_isotropic_graphs fixtures") {
    const ModuliQuery q{10, 9, 3};
    const auto graphs = enumerate_isotropic_graphs(q);
    REQUIRE(graphs.size() == 2);
    CHECK(graphs[0] == GlueDatum{6, 6, 3, 1});
    CHECK(graphs[1] == GlueDatum{6, 12, 3, 2});

    const auto trivial = enumerate_isotropic_graphs({5, 3, 1});
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0] == GlueDatum{0, 0, 1, 0});

    // -1 is not a square mod 9
    CHECK(enumerate_isotropic_graphs({10, 9, 9}).empty());
}

TEST_CASE("every returned graph is isotropic element by element") {
    for (long long n = 2; n <= 25; ++n) {
        for (long long d = 1; d <= 25; ++d) {
            for (long long t : valid_divisibilities(n, d)) {
                const ModuliQuery q{n, d, t};
                for (const auto& g : enumerate_isotropic_graphs(q)) {
                    const auto elems = graph_elements(q, g);
                    CHECK(elems.size() == static_cast<size_t>(g.order));
                    for (const auto& [x, y] : elems)
                        CHECK((q_value(x, q.degree()) + q_value(y, q.codegree())).is_zero());
                }
            }
        }
    }
}

TEST_CASE("sign flips preserve isotropy") {
    for (long long n = 2; n <= 12; ++n) {
        for (long long d = 1; d <= 12; ++d) {
            for (long long t : valid_divisibilities(n, d)) {
                const ModuliQuery q{n, d, t};
                const long long mx = q.degree(), my = q.codegree();
                for (const auto& g : enumerate_isotropic_graphs(q)) {
                    for (int sx : {1, -1}) {
                        for (int sy : {1, -1}) {
                            for (const auto& [x, y] : graph_elements(q, g)) {
                                const long long fx = ((sx * x) % mx + mx) % mx;
                                const long long fy = ((sy * y) % my + my) % my;
                                CHECK((q_value(fx, mx) + q_value(fy, my)).is_zero());
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("graph_equivalence_classes") {
    const ModuliQuery q{10, 9, 3};
    const auto graphs = enumerate_isotropic_graphs(q);
    const auto classes = graph_equivalence_classes(q, graphs);
    REQUIRE(classes.size() == 1);  // eps = 2 is the second-coordinate flip of eps = 1
    CHECK(classes[0].size() == 2);
    CHECK(classes[0][0].epsilon == 1);

    const ModuliQuery qt1{5, 3, 1};
    const auto c1 = graph_equivalence_classes(qt1, enumerate_isotropic_graphs(qt1));
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].size() == 1);
}

TEST_CASE("order <= 2 graphs are fixed by the sign action") {
    for (long long n = 2; n <= 20; ++n) {
        for (long long d = 1; d <= 20; ++d) {
            for (long long t : {1LL, 2LL}) {
                const ModuliQuery q{n, d, t};
                if (!q.is_valid())
                    continue;
                const auto graphs = enumerate_isotropic_graphs(q);
                for (const auto& cls : graph_equivalence_classes(q, graphs))
                    CHECK(cls.size() == 1);
            }
        }
    }
}

TEST_CASE("overlattice_from_glue fixtures") {
    const ModuliQuery q{10, 9, 3};

    const Overlattice t1 = overlattice_from_glue(q, {6, 6, 3, 1});
    CHECK(t1.gram == GramForm{4, 6, 18});
    CHECK(t1.h == LatticeVector{3, -1});
    CHECK(t1.delta == LatticeVector{0, 1});
    CHECK(t1.gram.det() == 36);
    CHECK(t1.gram.norm(t1.h) == 18);

    const Overlattice t2 = overlattice_from_glue(q, {6, 12, 3, 2});
    CHECK(t2.gram == GramForm{10, 12, 18});
    CHECK(t2.gram.det() == 36);

    const Overlattice direct = overlattice_from_glue({5, 3, 1}, {0, 0, 1, 0});
    CHECK(direct.gram == GramForm{6, 0, 8});
    CHECK(direct.h == LatticeVector{1, 0});
    CHECK(direct.delta == LatticeVector{0, 1});

    // a non-isotropic glue is rejected: for (10, 9, 9) no unit works
    CHECK_THROWS_AS(overlattice_from_glue({10, 9, 9}, {2, 2, 9, 1}),
                    NonIntegralGramError);
}

TEST_CASE("overlattice postcondition battery across the grid") {
    for (long long n = 2; n <= 20; ++n) {
        for (long long d = 1; d <= 20; ++d) {
            for (long long t : valid_divisibilities(n, d)) {
                const ModuliQuery q{n, d, t};
                for (const auto& g : enumerate_isotropic_graphs(q)) {
                    const Overlattice T = overlattice_from_glue(q, g);
                    CHECK(T.gram.is_valid());
                    CHECK(T.gram.det() == 4 * d * (n - 1) / (t * t));
                    CHECK(T.gram.norm(T.h) == q.degree());
                    CHECK(T.gram.norm(T.delta) == q.codegree());
                    CHECK(T.gram.inner(T.h, T.delta) == 0);
                    CHECK(std::gcd(std::abs(T.h.x), std::abs(T.h.y)) == 1);
                    // the pair index realizes the divisibility
                    CHECK(pair_index(T.gram, T.h) == t);
                }
            }
        }
    }
}
