#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "acyclica/monomialalg.hpp"

using namespace acyclica;
using namespace acyclica::mono;

namespace {
const FieldSpec F2 = FieldSpec::Fp(2);

uint64_t brute_force_count(int N, int len) {
    uint64_t count = 0;
    std::vector<uint32_t> w(len, 0);
    while (true) {
        if (normal_form(w)) ++count;
        int i = len - 1;
        while (i >= 0 && w[i] == (uint32_t)N) w[i--] = 0;
        if (i < 0) break;
        ++w[i];
    }
    return len == 0 ? 1 : count;
}

} // namespace

TEST_CASE("normal form detects forbidden factors") {
    CHECK(!normal_form({0, 1}).has_value());
    CHECK(normal_form({1, 0}).has_value());
    CHECK(!normal_form({2, 2, 3}).has_value());
    CHECK(normal_form({}).has_value());
    CHECK(normal_form({3, 3}).has_value());
}

TEST_CASE("basis counts match brute force") {
    CHECK(count_basis_words(2, 0) == 1);
    CHECK(count_basis_words(2, 2) == 7);
    CHECK(count_basis_words(1, 2) == 3);
    for (int N = 0; N <= 4; ++N)
        for (int len = 0; len <= 6; ++len) {
            CHECK(count_basis_words(N, len) == brute_force_count(N, len));
            CHECK(basis_words(N, len).size() == count_basis_words(N, len));
        }
}

TEST_CASE("right multiplication operators") {
    // empty word · y0 = the word (0)
    auto op = right_mult_operator(F2, 0, 0, 2);
    CHECK(op.rows() == 3);
    CHECK(op.cols() == 1);
    CHECK(op.at(0, 0).is_one());

    // (0) · y1 dies
    auto op1 = right_mult_operator(F2, 1, 1, 2);
    size_t col0 = 0; // word (0) is first in lex order
    for (size_t r = 0; r < op1.rows(); ++r) CHECK(op1.at(r, col0).is_zero());

    // consecutive operators compose to zero at every length in range
    for (int n = 0; n + 1 <= 3; ++n)
        for (int len = 0; len <= 3; ++len) {
            auto second = right_mult_operator(F2, n + 1, len + 1, 3);
            auto first = right_mult_operator(F2, n, len, 3);
            CHECK((second * first).is_zero());
        }
}

TEST_CASE("exactness report N=3, L=5") {
    auto rep = verify_exactness(F2, 3, 5);
    CHECK(rep.pass);
    for (const auto& c : rep.checks) {
        CHECK(c.pass);
        if (c.n == 0) CHECK(c.kernel_dim == 0);
        if (c.n > 0) CHECK(c.kernel_dim == c.oracle_count);
    }
    auto j = rep.to_json();
    CHECK(j.at("pass").get<bool>());
}

TEST_CASE("exactness holds over other fields too") {
    CHECK(verify_exactness(FieldSpec::Fp(101), 2, 4).pass);
    CHECK(verify_exactness(FieldSpec::Q(), 2, 4).pass);
}

TEST_CASE("augmentation certificate") {
    auto cert = augmentation_certificate(F2, 3);
    CHECK(cert.pass);
    CHECK(cert.differentials_vanish);
    CHECK(cert.functorial);
    REQUIRE(cert.cohomology_dims.size() == 5);
    for (size_t d : cert.cohomology_dims) CHECK(d == 1);
}

TEST_CASE("specialize: zero images and dual numbers") {
    auto D = FinAlgebra::dual_numbers(F2);
    std::vector<FieldScalar> zero{FieldScalar::zero(F2), FieldScalar::zero(F2)};
    std::vector<FieldScalar> eps{FieldScalar::zero(F2), FieldScalar::one(F2)};

    auto all_zero = specialize(D, {zero, zero, zero});
    for (const auto& [bd, m] : all_zero.induced.diffs()) CHECK(m.is_zero());

    // ε images satisfy ε² = 0; the induced complex is the dual-numbers chain
    auto by_eps = specialize(D, {eps, eps, eps});
    CHECK(by_eps.induced.dim(0, 0) == 2);
    auto h = by_eps.induced.cohomology();
    // truncation boundary classes exist at the ends; inner positions exact
    CHECK(h.at(1, 0) == 0);
    CHECK(h.at(2, 0) == 0);

    // a target violating the relation is rejected with the offending index
    auto M2 = FinAlgebra::matrix_algebra(F2, 2);
    std::vector<FieldScalar> e01(4, FieldScalar::zero(F2));
    e01[1] = FieldScalar::one(F2); // E01
    std::vector<FieldScalar> e10(4, FieldScalar::zero(F2));
    e10[2] = FieldScalar::one(F2); // E10, E01·E10 ≠ 0
    try {
        specialize(M2, {e01, e10});
        CHECK(false);
    } catch (const relation_violation_error& e) {
        CHECK(e.offending == 0);
    }
}

TEST_CASE("algebra fixtures verify their laws") {
    CHECK_NOTHROW(FinAlgebra::dual_numbers(FieldSpec::Q()).verify());
    CHECK_NOTHROW(FinAlgebra::matrix_algebra(F2, 3).verify());
    auto D = FinAlgebra::dual_numbers(F2);
    auto op = D.opposite();
    CHECK(op.opposite().mult == D.mult);
}
