#ifndef ACYCLICA_ALGEBRA_HPP
#define ACYCLICA_ALGEBRA_HPP

#include "acyclica/sparse_matrix.hpp"

namespace acyclica {

struct algebra_law_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional associative algebra by structure constants, with a
/// unit and a list of named generators (coordinate vectors in the basis).
/// Optional named modules carry one action matrix per generator.
struct FinAlgebra {
    FieldSpec field;
    size_t dim = 0;
    std::vector<std::string> basis_names;
    // mult[i*dim + j] = coordinates of b_i · b_j
    std::vector<std::vector<FieldScalar>> mult;
    std::vector<FieldScalar> unit;
    std::vector<std::pair<std::string, std::vector<FieldScalar>>> generators;
    std::map<std::string, std::vector<SparseMatrix>> modules; // action per generator

    /// Associativity on all basis triples, unit laws on all basis elements,
    /// and each module action a homomorphism on generator products.
    void verify() const;

    std::vector<FieldScalar> mul(const std::vector<FieldScalar>& u,
                                 const std::vector<FieldScalar>& v) const;
    /// Matrix of v ↦ v·z in the basis.
    SparseMatrix right_mult_matrix(const std::vector<FieldScalar>& z) const;
    SparseMatrix left_mult_matrix(const std::vector<FieldScalar>& z) const;

    FinAlgebra opposite() const;

    static FinAlgebra dual_numbers(FieldSpec f);
    static FinAlgebra matrix_algebra(FieldSpec f, size_t n);
};

} // namespace acyclica

#endif
