#include <catch2/catch_amalgamated.hpp>

#include "eplab/pseudoinverse.hpp"
#include "eplab/random_gen.hpp"

using namespace eplab;

TEST_CASE("pinv of the rank-1 counterexample block") {
    const ComplexMatrix t{{1, 1}, {2, 2}};
    const ComplexMatrix expected{{0.1, 0.2}, {0.1, 0.2}};
    CHECK(distance(pinv(t), expected) <= 1e-12);
    // same matrix through the closed form: alpha = trace(T^H T) = 10
    CHECK(distance(pinv_rank1(t), expected) <= 1e-12);
    // and pinv(T) is adjoint(T) / 10 for this block
    CHECK(distance(pinv(t), (1.0 / 10.0) * adjoint(t)) <= 1e-12);
}

TEST_CASE("pinv trivial cases") {
    CHECK(distance(pinv(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) <= 1e-14);

    const ComplexMatrix zero = ComplexMatrix::zero(2, 3);
    const ComplexMatrix g = pinv(zero);
    CHECK(g.rows() == 3);
    CHECK(g.cols() == 2);
    CHECK(frobenius_norm(g) == 0.0);

    const ComplexMatrix d{{2, 0}, {0, 0}};
    CHECK(distance(pinv(d), ComplexMatrix{{0.5, 0}, {0, 0}}) <= 1e-14);
}

TEST_CASE("penrose_check distinguishes true and false inverses") {
    SECTION("pinv output always passes") {
        Rng rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix a = random_matrix(rng, 1 + rng.index(8), 1 + rng.index(8));
            CHECK(penrose_check(a, pinv(a)).all_hold());
        }
    }
    SECTION("hand-checked candidate") {
        const PenroseReport r =
            penrose_check(ComplexMatrix{{1, 1}, {2, 2}}, ComplexMatrix{{0.1, 0.2}, {0.1, 0.2}});
        CHECK(r.all_hold());
    }
    SECTION("identity is not the pseudoinverse of a projector") {
        // T I T = T holds, I T I = T != I fails
        const PenroseReport r =
            penrose_check(ComplexMatrix{{1, 0}, {0, 0}}, ComplexMatrix::identity(2));
        CHECK(r.eq1_holds);
        CHECK_FALSE(r.eq2_holds);
        CHECK(r.eq3_holds);
        CHECK(r.eq4_holds);
    }
    SECTION("shape mismatch") {
        CHECK_THROWS_AS(penrose_check(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), dimension_error);
    }
}

TEST_CASE("pinv_rank1 closed form") {
    const ComplexMatrix p{{1, 0}, {0, 0}};
    CHECK(distance(pinv_rank1(p), p) <= 1e-15);

    // outer product u v^H with u = (1, i), v = (2, 0): alpha = |u|^2 |v|^2 = 8
    ComplexMatrix outer(2, 2);
    const Complex u[2] = {Complex{1, 0}, Complex{0, 1}};
    const Complex v[2] = {Complex{2, 0}, Complex{0, 0}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) outer(i, j) = u[i] * std::conj(v[j]);
    ComplexMatrix expected(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) expected(i, j) = v[i] * std::conj(u[j]) / 8.0;
    CHECK(distance(pinv_rank1(outer), expected) <= 1e-14);
    CHECK(distance(pinv_rank1(outer), pinv(outer)) <= 1e-12);

    CHECK_THROWS_AS(pinv_rank1(ComplexMatrix::identity(2)), rank_error);
    CHECK_THROWS_AS(pinv_rank1(ComplexMatrix::zero(2, 2)), rank_error);
}

TEST_CASE("projectors onto range and corange") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(distance(range_projector(id), id) <= 1e-14);
    CHECK(distance(corange_projector(id), id) <= 1e-14);

    const ComplexMatrix shift{{0, 1}, {0, 0}};
    CHECK(distance(range_projector(shift), ComplexMatrix{{1, 0}, {0, 0}}) <= 1e-14);
    CHECK(distance(corange_projector(shift), ComplexMatrix{{0, 0}, {0, 1}}) <= 1e-14);

    // on an EP block the two projectors coincide
    const ComplexMatrix ep{{1, 1, 0}, {2, 1, 1}, {-1, 0, -1}};
    CHECK(approx_eq(range_projector(ep), corange_projector(ep)));
}

TEST_CASE("pinv structural properties on random matrices") {
    Rng rng(417);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 1 + rng.index(9);
        const std::size_t n = 1 + rng.index(9);
        ComplexMatrix a = random_matrix(rng, m, n);
        if (trial % 2 == 0) {
            const std::size_t r = 1 + rng.index(std::min(m, n));
            a = random_matrix(rng, m, r) * random_matrix(rng, r, n);
        }
        const ComplexMatrix g = pinv(a);
        CHECK(approx_eq(pinv(g), a));
        CHECK(approx_eq(pinv(adjoint(a)), adjoint(g)));

        const ComplexMatrix p = range_projector(a);
        const ComplexMatrix q = corange_projector(a);
        CHECK(approx_eq(p, adjoint(p)));
        CHECK(approx_eq(p * p, p));
        CHECK(approx_eq(q, adjoint(q)));
        CHECK(approx_eq(q * q, q));

        const ComplexMatrix r1 = random_matrix(rng, m, 1) * random_matrix(rng, 1, n);
        CHECK(approx_eq(pinv_rank1(r1), pinv(r1)));
    }
}
