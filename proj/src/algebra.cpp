#include "acyclica/algebra.hpp"

#include "acyclica/linalg.hpp"

namespace acyclica {

namespace {

std::vector<FieldScalar> zero_vec(const FieldSpec& f, size_t n) {
    return std::vector<FieldScalar>(n, FieldScalar::zero(f));
}

} // namespace

std::vector<FieldScalar> FinAlgebra::mul(const std::vector<FieldScalar>& u,
                                         const std::vector<FieldScalar>& v) const {
    if (u.size() != dim || v.size() != dim) throw shape_mismatch_error("algebra element size");
    auto out = zero_vec(field, dim);
    for (size_t i = 0; i < dim; ++i) {
        if (u[i].is_zero()) continue;
        for (size_t j = 0; j < dim; ++j) {
            if (v[j].is_zero()) continue;
            FieldScalar c = u[i] * v[j];
            const auto& bb = mult[i * dim + j];
            for (size_t k = 0; k < dim; ++k)
                if (!bb[k].is_zero()) out[k] = out[k] + c * bb[k];
        }
    }
    return out;
}

void FinAlgebra::verify() const {
    if (mult.size() != dim * dim) throw algebra_law_error("structure constant table size");
    auto basis_vec = [&](size_t i) {
        auto v = zero_vec(field, dim);
        v[i] = FieldScalar::one(field);
        return v;
    };
    for (size_t i = 0; i < dim; ++i) {
        if (!(mul(unit, basis_vec(i)) == basis_vec(i)) ||
            !(mul(basis_vec(i), unit) == basis_vec(i)))
            throw algebra_law_error("unit law fails on basis element " + std::to_string(i));
    }
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            for (size_t k = 0; k < dim; ++k) {
                auto left = mul(mult[i * dim + j], basis_vec(k));
                auto right = mul(basis_vec(i), mult[j * dim + k]);
                if (!(left == right))
                    throw algebra_law_error("associativity fails on basis triple (" +
                                            std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(k) + ")");
            }
    // module actions: whenever a product of two generators lies in the span
    // of {unit, generators}, the action matrices must satisfy the same
    // relation (verification on generator products)
    for (const auto& [name, actions] : modules) {
        if (actions.size() != generators.size())
            throw algebra_law_error("module " + name + " needs one action per generator");
        if (generators.empty()) continue;
        size_t mdim = actions[0].rows();
        std::vector<SparseEntry> span_entries;
        for (size_t k = 0; k < dim; ++k)
            if (!unit[k].is_zero()) span_entries.push_back({k, 0, unit[k]});
        for (size_t g = 0; g < generators.size(); ++g)
            for (size_t k = 0; k < dim; ++k)
                if (!generators[g].second[k].is_zero())
                    span_entries.push_back({k, g + 1, generators[g].second[k]});
        SparseMatrix span =
            SparseMatrix::from_triplets(field, dim, generators.size() + 1, span_entries);
        for (size_t g = 0; g < generators.size(); ++g)
            for (size_t h = 0; h < generators.size(); ++h) {
                auto prod = mul(generators[g].second, generators[h].second);
                auto coeffs = solve_feasible(span, prod);
                if (!coeffs) continue; // product leaves the generator span
                SparseMatrix want(field, mdim, mdim);
                want = want + SparseMatrix::identity(field, mdim).scaled((*coeffs)[0]);
                for (size_t w = 0; w < generators.size(); ++w)
                    want = want + actions[w].scaled((*coeffs)[w + 1]);
                if (!(actions[g] * actions[h] == want))
                    throw algebra_law_error("module " + name +
                                            " violates the relation on generators " +
                                            generators[g].first + "·" + generators[h].first);
            }
    }
}

SparseMatrix FinAlgebra::right_mult_matrix(const std::vector<FieldScalar>& z) const {
    std::vector<SparseEntry> es;
    for (size_t i = 0; i < dim; ++i) {
        auto v = zero_vec(field, dim);
        v[i] = FieldScalar::one(field);
        auto out = mul(v, z);
        for (size_t k = 0; k < dim; ++k)
            if (!out[k].is_zero()) es.push_back({k, i, out[k]});
    }
    return SparseMatrix::from_triplets(field, dim, dim, std::move(es));
}

SparseMatrix FinAlgebra::left_mult_matrix(const std::vector<FieldScalar>& z) const {
    std::vector<SparseEntry> es;
    for (size_t i = 0; i < dim; ++i) {
        auto v = zero_vec(field, dim);
        v[i] = FieldScalar::one(field);
        auto out = mul(z, v);
        for (size_t k = 0; k < dim; ++k)
            if (!out[k].is_zero()) es.push_back({k, i, out[k]});
    }
    return SparseMatrix::from_triplets(field, dim, dim, std::move(es));
}

FinAlgebra FinAlgebra::opposite() const {
    FinAlgebra op = *this;
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < i; ++j) std::swap(op.mult[i * dim + j], op.mult[j * dim + i]);
    return op;
}

FinAlgebra FinAlgebra::dual_numbers(FieldSpec f) {
    FinAlgebra d;
    d.field = f;
    d.dim = 2;
    d.basis_names = {"1", "eps"};
    d.mult.assign(4, zero_vec(f, 2));
    auto one = zero_vec(f, 2), eps = zero_vec(f, 2);
    one[0] = FieldScalar::one(f);
    eps[1] = FieldScalar::one(f);
    d.mult[0 * 2 + 0] = one;
    d.mult[0 * 2 + 1] = eps;
    d.mult[1 * 2 + 0] = eps;
    d.mult[1 * 2 + 1] = zero_vec(f, 2); // ε² = 0
    d.unit = one;
    d.generators = {{"eps", eps}};
    d.verify();
    return d;
}

FinAlgebra FinAlgebra::matrix_algebra(FieldSpec f, size_t n) {
    FinAlgebra a;
    a.field = f;
    a.dim = n * n;
    a.mult.assign(a.dim * a.dim, zero_vec(f, a.dim));
    auto unit_idx = [n](size_t r, size_t c) { return r * n + c; };
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            a.basis_names.push_back("E" + std::to_string(r) + std::to_string(c));
            for (size_t r2 = 0; r2 < n; ++r2)
                for (size_t c2 = 0; c2 < n; ++c2) {
                    if (c != r2) continue;
                    auto& v = a.mult[unit_idx(r, c) * a.dim + unit_idx(r2, c2)];
                    v[unit_idx(r, c2)] = FieldScalar::one(f);
                }
        }
    a.unit = zero_vec(f, a.dim);
    for (size_t r = 0; r < n; ++r) a.unit[unit_idx(r, r)] = FieldScalar::one(f);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            auto v = zero_vec(f, a.dim);
            v[unit_idx(r, c)] = FieldScalar::one(f);
            a.generators.push_back({a.basis_names[unit_idx(r, c)], v});
        }
    a.verify();
    return a;
}

} // namespace acyclica
