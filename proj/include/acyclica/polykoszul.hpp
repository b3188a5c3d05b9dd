#ifndef ACYCLICA_POLYKOSZUL_HPP
#define ACYCLICA_POLYKOSZUL_HPP

#include "acyclica/combinat.hpp"
#include "acyclica/complex_ops.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acyclica::poly {

struct inhomogeneous_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered finite variable set; the order fixes all basis orderings.
struct VariableSet {
    std::vector<std::string> names;

    size_t m() const { return names.size(); }
    static VariableSet canonical(size_t m); // x1..xm
};

struct PolyTerm {
    combi::Expo mono;
    FieldScalar coeff;
};
using Poly = std::vector<PolyTerm>;

struct Generator {
    std::string label;
    int shift = 0; // internal degree of the generator
};

/// Complex of graded free modules over k[x1..xm] given by generators with
/// shifts and polynomial differential matrices.  Differentials are degree 0:
/// an entry from a generator of shift s to one of shift s' is homogeneous of
/// degree s − s'.
struct FreeComplex {
    FieldSpec field;
    VariableSet vars;
    std::map<int, std::vector<Generator>> gens;                  // position → generators
    std::map<int, std::map<std::pair<size_t, size_t>, Poly>> diff; // pos → (row,col) → entry

    void validate_homogeneous() const;
};

size_t poly_component_dim(size_t m, int t);
const std::vector<combi::Expo>& poly_component_basis(size_t m, int t); // graded-lex

/// K_n at cohomological position −n, spanned by n-subsets with shift n;
/// d(e_{i1<…<in}) = Σ_k (−1)^{k+1} x_{ik} e_{…îk…}.
FreeComplex koszul_free(FieldSpec field, const VariableSet& B);
/// Transposed differentials with the same signs; n-subsets at position n
/// with shift −n.
FreeComplex dual_koszul_free(FieldSpec field, const VariableSet& B);
/// Koszul generators restricted to the first m_small variables' subsets,
/// over the full variable set.
FreeComplex koszul_free_on_subset(FieldSpec field, const VariableSet& B, size_t m_small);

/// Tensor product over the ring: generators multiply, signs follow
/// d(u⊗v) = du⊗v + (−1)^{|u|} u⊗dv.
FreeComplex tensor_free(const FreeComplex& f, const FreeComplex& g);

/// Slicewise realization over the window; slices are independent complexes
/// of finite-dimensional spaces.
BigradedComplex realize(const FreeComplex& fc, Window w);

BigradedComplex koszul_complex(FieldSpec field, const VariableSet& B, Window w,
                               bool augmented = false);
BigradedComplex dual_koszul_complex(FieldSpec field, const VariableSet& B, Window w);

/// Cohomology of Hom_R(K_B, R); the table of the graded Ext's of the
/// one-dimensional module against the free module.
CohomologyTable graded_ext_k_R(FieldSpec field, const VariableSet& B, Window w);

struct SubsetInclusion {
    BigradedComplex sub;
    BigradedComplex full;
    ChainMap inclusion;
};
/// The direct-system map induced by a subset of the variables.
SubsetInclusion koszul_subset_inclusion(FieldSpec field, const VariableSet& B, size_t m_small,
                                        Window w);

/// Finitely presented graded module: cokernel of a homogeneous presentation
/// matrix between graded free modules.
struct FPGradedModule {
    std::vector<Generator> gens;
    std::vector<Generator> rels;
    std::map<std::pair<size_t, size_t>, Poly> presentation; // (gen row, rel col)

    static FPGradedModule free_module(size_t n_gens);
    /// R/(x_{v+1}) for variable index v (0-based).
    static FPGradedModule quotient_by_variable(FieldSpec field, size_t nvars, size_t v);
    /// k = R/(x_1,…,x_m).
    static FPGradedModule residue_field(FieldSpec field, size_t nvars);

    nlohmann::json to_json(const FieldSpec& field) const;
    static FPGradedModule from_json(const nlohmann::json& j, const FieldSpec& field);
};

/// Slicewise realization of M ⊗_R X for a complex X of graded free modules:
/// each component is computed as a cokernel slice of the presentation.
BigradedComplex tensor_fp_module(const FPGradedModule& M, const FreeComplex& X, Window w);

} // namespace acyclica::poly

#endif
