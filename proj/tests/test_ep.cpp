#include <catch2/catch_amalgamated.hpp>

#include "eplab/ep.hpp"
#include "eplab/random_gen.hpp"

using namespace eplab;

namespace {

const ComplexMatrix kExample22{{1, 1, 0}, {2, 1, 1}, {-1, 0, -1}};

Subspace span_of(std::initializer_list<Complex> v, std::size_t n) {
    ComplexMatrix gen(n, 1);
    std::size_t i = 0;
    for (const Complex& z : v) gen(i++, 0) = z;
    return from_columns(gen);
}

}  // namespace

TEST_CASE("the non-normal EP block satisfies all five characterizations") {
    const EPReport report = is_ep(kExample22);
    CHECK(report.verdict);
    CHECK(report.unanimous);
    CHECK(report.char_ranges_equal);
    CHECK(report.char_mp_commute);
    CHECK(report.char_nullperp_is_range);
    CHECK(report.char_null_equal);
    CHECK(report.char_witness_bijective);
    CHECK_FALSE(is_normal(kExample22));

    // both kernels are the line through (1, -1, -1)
    const Subspace line = span_of({1, -1, -1}, 3);
    CHECK(subspace_distance(nullspace(kExample22), line) <= 1e-9);
    CHECK(subspace_distance(nullspace(adjoint(kExample22)), line) <= 1e-9);
}

TEST_CASE("is_ep rejects the nilpotent shift and accepts invertible matrices") {
    const EPReport shift = is_ep(ComplexMatrix{{0, 1}, {0, 0}});
    CHECK_FALSE(shift.verdict);
    CHECK(shift.unanimous);

    Rng rng(3);
    CHECK(is_ep(random_unitary(rng, 4)).verdict);
    CHECK(is_ep(random_invertible(rng, 5)).verdict);
    CHECK(is_ep(ComplexMatrix::zero(3, 3)).verdict);
    CHECK_THROWS_AS(is_ep(ComplexMatrix(2, 3)), dimension_error);
}

TEST_CASE("ep_witness") {
    SECTION("identity gives the identity witness") {
        const WitnessReport w = ep_witness(ComplexMatrix::identity(3));
        CHECK(distance(w.p, ComplexMatrix::identity(3)) <= 1e-12);
        CHECK(w.succeeds());
    }
    SECTION("Hermitian invertible gives the identity witness") {
        const ComplexMatrix h{{2, Complex{0, 1}}, {Complex{0, -1}, 3}};
        const WitnessReport w = ep_witness(h);
        CHECK(distance(w.p, ComplexMatrix::identity(2)) <= 1e-12);
        CHECK(w.succeeds());
    }
    SECTION("EP block gives a bijective witness with P T = T^H") {
        const WitnessReport w = ep_witness(kExample22);
        CHECK(w.succeeds());
        CHECK(distance(w.p * kExample22, adjoint(kExample22)) <= 1e-12);
        CHECK(rank(w.p) == 3);
    }
    SECTION("non-EP input fails at least one witness check") {
        const WitnessReport w = ep_witness(ComplexMatrix{{1, 1}, {2, 2}});
        CHECK_FALSE(w.succeeds());
    }
}

TEST_CASE("ep_construct reproduces the published 3x3 example exactly") {
    ConstraintSpec spec;
    spec.ambient_dim = 3;
    spec.free_indices = {0, 2};
    spec.constrained_indices = {1};
    spec.coefficients = {{Complex{1, 0}, Complex{1, 0}}};
    const ComplexMatrix x{{Complex{1, 0}, Complex{0, 1}}, {Complex{1, 0}, Complex{-1, 0}}};

    const ComplexMatrix t = ep_construct(spec, x);
    const ComplexMatrix expected{{Complex{1, 0}, Complex{2, 0}, Complex{1, 0}},
                                 {Complex{1, 1}, Complex{1, 1}, Complex{0, 0}},
                                 {Complex{0, 1}, Complex{-1, 1}, Complex{-1, 0}}};
    double max_abs = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            max_abs = std::max(max_abs, std::abs(t(i, j) - expected(i, j)));
    CHECK(max_abs <= 1e-12);
    CHECK(is_ep(t).verdict);
    CHECK_FALSE(is_normal(t));
    CHECK(subspaces_equal(from_columns(t), from_constraint_form(spec)));
}

TEST_CASE("ep_construct trivial and error cases") {
    SECTION("full space with identity coordinates gives the identity") {
        ConstraintSpec spec;
        spec.ambient_dim = 3;
        spec.free_indices = {0, 1, 2};
        const ComplexMatrix t = ep_construct(spec, ComplexMatrix::identity(3));
        CHECK(distance(t, ComplexMatrix::identity(3)) <= 1e-14);
    }
    SECTION("codimension 2 in C^4") {
        ConstraintSpec spec;
        spec.ambient_dim = 4;
        spec.free_indices = {0, 1};
        spec.constrained_indices = {2, 3};
        spec.coefficients = {{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{1, 0}}};
        const ComplexMatrix t = ep_construct(spec, ComplexMatrix::identity(2));
        CHECK(is_ep(t).verdict);
        CHECK(subspaces_equal(from_columns(t), from_constraint_form(spec)));
    }
    SECTION("singular coordinate matrix is rejected") {
        ConstraintSpec spec;
        spec.ambient_dim = 2;
        spec.free_indices = {0, 1};
        CHECK_THROWS_AS(ep_construct(spec, ComplexMatrix{{1, 1}, {1, 1}}), rank_error);
        CHECK_THROWS_AS(ep_construct(spec, ComplexMatrix::identity(3)), dimension_error);
    }
}

TEST_CASE("is_normal on pinned inputs") {
    Rng rng(11);
    CHECK(is_normal(random_unitary(rng, 4)));
    CHECK_FALSE(is_normal(kExample22));
    CHECK_FALSE(is_normal(ComplexMatrix{{0, 1}, {0, 0}}));
    CHECK_THROWS_AS(is_normal(ComplexMatrix(2, 3)), dimension_error);
}

TEST_CASE("rank-1 remark flags") {
    const Rank1Report sym = check_rank1_remarks(ComplexMatrix{{1, 1}, {1, 1}});
    CHECK(sym.is_rank1);
    CHECK(sym.is_ep);
    CHECK(sym.is_real);
    CHECK(sym.is_symmetric);

    const Rank1Report nonep = check_rank1_remarks(ComplexMatrix{{1, 1}, {2, 2}});
    CHECK(nonep.is_rank1);
    CHECK_FALSE(nonep.is_ep);

    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix u = random_matrix(rng, 4, 1);
        const Rank1Report r = check_rank1_remarks(u * adjoint(u));
        CHECK(r.is_rank1);
        CHECK(r.is_ep);
        CHECK(r.is_normal);
    }
}

TEST_CASE("random_ep generator guarantees") {
    CHECK(frobenius_norm(random_ep(4, 0, 7)) == 0.0);

    const ComplexMatrix full = random_ep(5, 5, 8, /*make_normal=*/true);
    CHECK(is_ep(full).verdict);
    CHECK(is_normal(full));
    CHECK(rank(full) == 5);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ComplexMatrix t = random_ep(6, 2 + seed % 3, seed);
        const EPReport r = is_ep(t);
        CHECK(r.verdict);
        CHECK(r.unanimous);
    }
    CHECK(distance(random_ep(6, 3, 5), random_ep(6, 3, 5)) == 0.0);
    CHECK_THROWS_AS(random_ep(3, 4, 1), std::invalid_argument);
}

TEST_CASE("random_commuting_pair commutes with an EP first element") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const CommutingPair pair = random_commuting_pair(5, 1 + seed % 5, seed);
        CHECK(is_ep(pair.t).verdict);
        CHECK(approx_eq(pair.a * pair.t, pair.t * pair.a));
    }
}

TEST_CASE("EP-ness is invariant under unitary similarity") {
    Rng rng(61);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 2 + rng.index(6);
        const ComplexMatrix t =
            trial % 2 == 0 ? random_matrix(rng, n, n) : random_ep(n, rng.index(n + 1), rng.next());
        const ComplexMatrix q = random_unitary(rng, n);
        CHECK(is_ep(q * t * adjoint(q)).verdict == is_ep(t).verdict);
    }
}

TEST_CASE("characterizations agree on a mixed population") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.index(7);
        ComplexMatrix t;
        switch (trial % 3) {
            case 0: t = random_matrix(rng, n, n); break;
            case 1: t = random_ep(n, rng.index(n + 1), rng.next()); break;
            default: {
                Rng inner(rng.next());
                t = random_normal_matrix(inner, n, 1 + inner.index(n));
                break;
            }
        }
        CHECK(is_ep(t).unanimous);
    }
}
