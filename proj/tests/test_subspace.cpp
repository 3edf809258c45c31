#include <catch2/catch_amalgamated.hpp>

#include "eplab/random_gen.hpp"
#include "eplab/subspace.hpp"

using namespace eplab;

namespace {

Subspace span_of_columns(std::initializer_list<std::initializer_list<Complex>> cols_as_rows) {
    // rows given as generators; transpose into columns
    const ComplexMatrix gen = transpose(ComplexMatrix(cols_as_rows));
    return from_columns(gen);
}

}  // namespace

TEST_CASE("from_columns on pinned inputs") {
    CHECK(from_columns(ComplexMatrix::identity(3)).dim() == 3);
    CHECK(from_columns(ComplexMatrix::zero(3, 3)).dim() == 0);
    CHECK(from_columns(ComplexMatrix(3, 0)).dim() == 0);

    // EP block: column space equals the column space of the adjoint
    const ComplexMatrix t{{1, -1, 0}, {1, 0, 1}, {2, -1, 1}};
    const Subspace r = from_columns(t);
    CHECK(r.dim() == 2);
    CHECK(subspaces_equal(r, from_columns(adjoint(t))));
}

TEST_CASE("complement on pinned inputs") {
    const Subspace e1 = span_of_columns({{1, 0}});
    const Subspace e2 = span_of_columns({{0, 1}});
    CHECK(subspaces_equal(complement(e1), e2));
    CHECK(complement(Subspace::full(4)).dim() == 0);
    CHECK(complement(Subspace::zero(4)).dim() == 4);
}

TEST_CASE("complement of the column space is the kernel of the adjoint") {
    Rng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 2 + rng.index(7);
        const std::size_t n = 1 + rng.index(7);
        const ComplexMatrix t = random_matrix(rng, m, n);
        CHECK(subspaces_equal(complement(from_columns(t)), nullspace(adjoint(t))));
    }
}

TEST_CASE("intersection and sum on pinned inputs") {
    const Subspace a = span_of_columns({{1, 0, 0}, {0, 1, 0}});
    const Subspace b = span_of_columns({{0, 1, 0}, {0, 0, 1}});
    CHECK(subspaces_equal(intersect(a, b), span_of_columns({{0, 1, 0}})));
    CHECK(subspaces_equal(sum(span_of_columns({{1, 0}}), span_of_columns({{0, 1}})),
                          Subspace::full(2)));
    CHECK_THROWS_AS(sum(Subspace::full(2), Subspace::full(3)), dimension_error);
    CHECK_THROWS_AS(intersect(Subspace::full(2), Subspace::full(3)), dimension_error);
}

TEST_CASE("product range deviates from the intersection on the non-EP product pair") {
    const ComplexMatrix s{{1, 1}, {1, 1}};
    const ComplexMatrix t{{0, 0}, {0, 1}};
    const Subspace range_st = from_columns(s * t);
    const Subspace cap = intersect(from_columns(s), from_columns(t));
    CHECK_FALSE(subspaces_equal(range_st, cap));
    CHECK(cap.dim() == 0);
    CHECK(range_st.dim() == 1);
}

TEST_CASE("constraint form of pinned subspaces") {
    SECTION("full space has no constrained coordinates") {
        const ConstraintSpec spec = to_constraint_form(Subspace::full(4));
        CHECK(spec.free_indices == std::vector<std::size_t>{0, 1, 2, 3});
        CHECK(spec.constrained_indices.empty());
    }
    SECTION("a coordinate axis pins the other coordinate to zero") {
        const ConstraintSpec spec = to_constraint_form(span_of_columns({{1, 0}}));
        CHECK(spec.free_indices == std::vector<std::size_t>{0});
        CHECK(spec.constrained_indices == std::vector<std::size_t>{1});
        REQUIRE(spec.coefficients.size() == 1);
        CHECK(std::abs(spec.coefficients[0][0]) <= 1e-12);
    }
    SECTION("the plane x2 = x1 + x3") {
        // partial pivoting lands on free = {1, 2}: x3 = x2 - x1 on this plane
        const Subspace w = span_of_columns({{1, 1, 0}, {0, 1, 1}});
        const ConstraintSpec spec = to_constraint_form(w);
        CHECK(spec.free_indices == std::vector<std::size_t>{0, 1});
        CHECK(spec.constrained_indices == std::vector<std::size_t>{2});
        REQUIRE(spec.coefficients.size() == 1);
        CHECK(std::abs(spec.coefficients[0][0] - Complex{-1, 0}) <= 1e-12);
        CHECK(std::abs(spec.coefficients[0][1] - Complex{1, 0}) <= 1e-12);
        CHECK(subspaces_equal(from_constraint_form(spec), w));

        // the same plane in its published presentation: free = {1, 3},
        // constrained x2 = x1 + x3
        ConstraintSpec published;
        published.ambient_dim = 3;
        published.free_indices = {0, 2};
        published.constrained_indices = {1};
        published.coefficients = {{Complex{1, 0}, Complex{1, 0}}};
        CHECK(subspaces_equal(from_constraint_form(published), w));
    }
    SECTION("zero subspace cannot be presented") {
        CHECK_THROWS_AS(to_constraint_form(Subspace::zero(3)), rank_error);
    }
}

TEST_CASE("constraint spec validation") {
    ConstraintSpec spec;
    spec.ambient_dim = 3;
    spec.free_indices = {0, 1};
    spec.constrained_indices = {1};  // overlaps
    spec.coefficients = {{Complex{0, 0}, Complex{0, 0}}};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    spec.constrained_indices = {2};
    spec.coefficients = {{Complex{0, 0}}};  // wrong arity
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    spec.coefficients = {{Complex{0, 0}, Complex{0, 0}}};
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("subspace arithmetic properties on random inputs") {
    Rng rng(88);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.index(8);
        const Subspace s1 = from_columns(random_matrix(rng, n, rng.index(n + 1)));
        const Subspace s2 = from_columns(random_matrix(rng, n, rng.index(n + 1)));

        CHECK(complement(s1).dim() == n - s1.dim());
        CHECK(subspaces_equal(complement(complement(s1)), s1));

        const Subspace u = sum(s1, s2);
        const Subspace c = intersect(s1, s2);
        CHECK(s1.dim() + s2.dim() == u.dim() + c.dim());

        // projectors of complementary spaces resolve the identity
        const ComplexMatrix resolved = s1.projector() + complement(s1).projector();
        CHECK(approx_eq(resolved, ComplexMatrix::identity(n)));

        if (s1.dim() >= 1) {
            const ConstraintSpec spec = to_constraint_form(s1);
            CHECK(subspaces_equal(from_constraint_form(spec), s1));
        }
    }
}
