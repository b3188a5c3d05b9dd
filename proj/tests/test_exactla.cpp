#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "acyclica/linalg.hpp"

using namespace acyclica;

namespace {

SparseMatrix dense(FieldSpec f, std::vector<std::vector<long>> rows) {
    std::vector<SparseEntry> es;
    size_t nc = rows.empty() ? 0 : rows[0].size();
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] != 0) es.push_back({r, c, FieldScalar::integer(f, rows[r][c])});
    return SparseMatrix::from_triplets(f, rows.size(), nc, std::move(es));
}

SparseMatrix random_matrix(FieldSpec f, size_t rows, size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> v(-4, 4);
    std::uniform_int_distribution<int> density(0, 2);
    std::vector<SparseEntry> es;
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            if (density(rng) == 0 && v(rng) != 0) es.push_back({r, c, FieldScalar::integer(f, v(rng))});
    return SparseMatrix::from_triplets(f, rows, cols, std::move(es));
}

} // namespace

TEST_CASE("field spec parsing and validation") {
    CHECK(FieldSpec::parse("Q").is_rational());
    CHECK(FieldSpec::parse("Fp:101").p == 101);
    CHECK(FieldSpec::parse("Fp:101").str() == "Fp:101");
    CHECK_THROWS_AS(FieldSpec::parse("Fp:100"), parse_error);
    CHECK_THROWS_AS(FieldSpec::parse("R"), parse_error);
    CHECK(is_prime(2));
    CHECK(is_prime(101));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
}

TEST_CASE("scalar arithmetic stays canonical") {
    FieldScalar a = FieldScalar::rational(2, 4);
    CHECK(a.str() == "1/2");
    CHECK((a + a).is_one());
    CHECK((-a).str() == "-1/2");
    CHECK((a * a.inverse()).is_one());

    FieldScalar b = FieldScalar::mod(7, -3);
    CHECK(b.residue() == 4);
    CHECK((b * b.inverse()).is_one());
    CHECK_THROWS_AS((void)(a + b), field_mismatch_error);

    CHECK(FieldScalar::parse(FieldSpec::Q(), "6/4").str() == "3/2");
    CHECK(FieldScalar::parse(FieldSpec::Q(), "5").str() == "5/1");
    CHECK(FieldScalar::parse(FieldSpec::Fp(101), "205").residue() == 3);
}

TEST_CASE("sparse matrix construction enforces invariants") {
    FieldSpec f = FieldSpec::Fp(101);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(
                        f, 2, 2, {{0, 0, FieldScalar::mod(101, 1)}, {0, 0, FieldScalar::mod(101, 2)}}),
                    shape_mismatch_error);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(f, 2, 2, {{2, 0, FieldScalar::mod(101, 1)}}),
                    shape_mismatch_error);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(f, 2, 2, {{0, 0, FieldScalar::rational(1, 1)}}),
                    field_mismatch_error);
    // explicit zeros are dropped
    auto m = SparseMatrix::from_triplets(f, 2, 2, {{0, 0, FieldScalar::mod(101, 0)}});
    CHECK(m.is_zero());
    // accumulate merges
    auto acc = SparseMatrix::from_triplets_accumulate(
        f, 2, 2, {{0, 0, FieldScalar::mod(101, 1)}, {0, 0, FieldScalar::mod(101, 100)}});
    CHECK(acc.is_zero());
}

TEST_CASE("matrix JSON round trip is bit-exact") {
    auto m = dense(FieldSpec::Q(), {{1, 0, -3}, {0, 2, 0}});
    auto j = m.to_json();
    auto m2 = SparseMatrix::from_json(j);
    CHECK(m == m2);
    CHECK(j.dump() == m2.to_json().dump());

    auto mp = dense(FieldSpec::Fp(7), {{1, 6}, {3, 0}});
    CHECK(SparseMatrix::from_json(mp.to_json()) == mp);
    CHECK(mp.to_json().dump() == SparseMatrix::from_json(mp.to_json()).to_json().dump());
}

TEST_CASE("rank: stated examples") {
    CHECK(rank(SparseMatrix::identity(FieldSpec::Fp(101), 2)) == 2);
    CHECK(rank(SparseMatrix(FieldSpec::Q(), 3, 5)) == 0);
    CHECK(rank(dense(FieldSpec::Q(), {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel basis: stated examples") {
    CHECK(kernel_basis(SparseMatrix::identity(FieldSpec::Q(), 2)).cols() == 0);
    CHECK(kernel_basis(SparseMatrix(FieldSpec::Q(), 2, 3)).cols() == 3);

    auto m = dense(FieldSpec::Q(), {{1, 1, 0}});
    auto k = kernel_basis(m);
    REQUIRE(k.cols() == 2);
    CHECK((m * k).is_zero());
}

TEST_CASE("solve_feasible: stated examples") {
    FieldSpec f = FieldSpec::Q();
    auto id = SparseMatrix::identity(f, 3);
    std::vector<FieldScalar> b{FieldScalar::rational(1, 2), FieldScalar::rational(-3, 1),
                               FieldScalar::rational(0, 1)};
    auto x = solve_feasible(id, b);
    REQUIRE(x);
    CHECK(id.apply(*x) == b);

    auto zero = SparseMatrix(f, 2, 2);
    std::vector<FieldScalar> nz{FieldScalar::rational(1, 1), FieldScalar::rational(0, 1)};
    CHECK(!solve_feasible(zero, nz));

    auto a = dense(f, {{1, 1}});
    std::vector<FieldScalar> rhs{FieldScalar::rational(3, 1)};
    auto sol = solve_feasible(a, rhs);
    REQUIRE(sol);
    CHECK((*sol)[0] + (*sol)[1] == FieldScalar::rational(3, 1));

    CHECK_THROWS_AS((void)solve_feasible(a, nz), shape_mismatch_error);
}

TEST_CASE("rank/kernel/solve invariants on random matrices") {
    std::mt19937_64 rng(20250810);
    for (FieldSpec f : {FieldSpec::Fp(101), FieldSpec::Fp(2), FieldSpec::Q()}) {
        for (int trial = 0; trial < 40; ++trial) {
            size_t rows = 1 + (size_t)(rng() % 7), cols = 1 + (size_t)(rng() % 7);
            SparseMatrix m = random_matrix(f, rows, cols, rng);

            size_t rk = rank(m);
            CHECK(rk == ref::rank(m));
            CHECK(rk == rank(m.transpose()));
            SparseMatrix k = kernel_basis(m);
            CHECK(rk == m.cols() - k.cols());
            CHECK((m * k).is_zero());
            if (k.cols() > 0) CHECK(rank(k) == k.cols());

            std::vector<FieldScalar> b;
            for (size_t i = 0; i < rows; ++i)
                b.push_back(FieldScalar::integer(f, (long)(rng() % 5) - 2));
            auto sol = solve_feasible(m, b);
            SparseMatrix aug = m.augment_cols(column_vector(b, f));
            bool consistent = rank(aug) == rk;
            CHECK((bool)sol == consistent);
            if (sol) CHECK(m.apply(*sol) == b);
        }
    }
}

TEST_CASE("fp kernel parallel path agrees with serial") {
    std::mt19937_64 rng(7);
    SparseMatrix m = random_matrix(FieldSpec::Fp(101), 60, 45, rng);
    FpDense d1 = fp_dense_from(m), d2 = fp_dense_from(m);
    std::vector<size_t> p1, p2;
    CHECK(fp_rref(d1, p1, false) == fp_rref(d2, p2, true));
    CHECK(p1 == p2);
    CHECK(d1.a == d2.a);
}
