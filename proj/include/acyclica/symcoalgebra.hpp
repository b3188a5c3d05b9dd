#ifndef ACYCLICA_SYMCOALGEBRA_HPP
#define ACYCLICA_SYMCOALGEBRA_HPP

#include "acyclica/combinat.hpp"
#include "acyclica/complex_ops.hpp"

namespace acyclica::symc {

size_t sym_dim(int a, int n);  // C(n+a−1, n)
size_t ext_dim(int a, int n);  // C(a, n), zero for n > a

/// Component of the comultiplication Sym_j → Sym_{j−1} ⊗ W: a monomial u
/// splits off each variable with its multiplicity.  Target basis (v, i) is
/// indexed v·a + i.
SparseMatrix comult_component(FieldSpec f, int a, int j);

/// Multiplication W ⊗ Λⁿ → Λⁿ⁺¹: x_i ⊗ e_T ↦ (−1)^{#{t∈T : t<i}} e_{T∪i},
/// zero when i ∈ T.  Source basis (i, T) is indexed i·C(a,n) + T.
SparseMatrix wedge_component(FieldSpec f, int a, int n);

/// Contraction W ⊗ Λⁿ⁺¹(W)* → Λⁿ(W)*, the transpose pairing of the wedge.
SparseMatrix contraction_component(FieldSpec f, int a, int n);

enum class Carrier { cofree, free_contra };
enum class Direction { Psi, Phi }; // Ψ: cofree ↦ free, Φ: free ↦ cofree

/// Complex of (co)free objects recorded by its multiplicity spaces and the
/// structure maps σ_d : Sym_d(W) ⊗ V → V′ that determine each differential.
/// Both the comodule realization (terms C⊗V) and the contramodule
/// realization (terms Hom(C,V)) are expansions of the same data, which is
/// what the correspondence functors transport.
struct LabelledComplex {
    FieldSpec field;
    int a = 1; // dim W
    Carrier carrier = Carrier::cofree;
    // position → multiplicity space: internal degree → (dim, labels)
    std::map<int, std::map<int, TermSlice>> mult;
    // position → σ_d blocks: (d, V-degree i) → matrix
    //   rows: dim V′_{i+d},  cols: sym_dim(a,d) · dim V_i, basis (w, v) = w·dimV + v
    std::map<int, std::map<std::pair<int, int>, SparseMatrix>> sigma;
};

/// 0 → k → C → C⊗Λ¹ → … → C⊗Λᵃ → 0 as a labelled complex (augmentation is
/// added by the realization when requested); V_n = Λⁿ(W) in degree n, σ₁ the
/// wedge map.
LabelledComplex coresolution_labelled(FieldSpec f, int a);

/// Vector-space dual of the coresolution with the carrier switched to free:
/// V_{−n} = Λⁿ(W)* in degree −n, σ₁ the contraction.
LabelledComplex contramodule_resolution_labelled(FieldSpec f, int a);

/// The correspondence on (co)free complexes: flips the carrier, keeps the
/// multiplicity spaces and structure maps.
LabelledComplex co_contra(const LabelledComplex& x, Direction dir);

/// Realize over the window; m_active < 0 means the full coalgebra, otherwise
/// Sym over the first m_active basis vectors (the subcoalgebra C_B).
BigradedComplex realize(const LabelledComplex& x, Window w, int m_active = -1);

BigradedComplex comodule_coresolution(FieldSpec f, int a, Window w, bool augmented = true);
BigradedComplex contramodule_resolution(FieldSpec f, int a, Window w, bool augmented = true);

/// Theorem-level complexes: Φ of the truncated contramodule resolution and
/// Ψ of the truncated coresolution.
BigradedComplex acyclic_comodule_complex(FieldSpec f, int a, Window w);
BigradedComplex acyclic_contramodule_complex(FieldSpec f, int a, Window w);

struct SubQuotient {
    BigradedComplex part;
    BigradedComplex full;
    ChainMap map; // inclusion (cotensor) or projection (cohom)
};

/// Subcomplex of the acyclic comodule complex with C replaced by C_B,
/// together with its inclusion.
SubQuotient cotensor_subcomplex(FieldSpec f, int a, int m, Window w);
/// Quotient complex of the acyclic contramodule complex with Hom(C,−)
/// replaced by Hom(C_B,−), together with its projection.
SubQuotient cohom_quotient(FieldSpec f, int a, int m, Window w);

/// Zero-differential complex of exterior powers of a v-dimensional space:
/// Λ^q at (q, q), or the graded dual at (−q, −q).
BigradedComplex zero_exterior_complex(FieldSpec f, int v, bool dualized);

/// Action matrices of the variables on the degree-≤ D part of C ⊗ k^r
/// (the dual-algebra module structure of the truncated cofree comodule).
/// Component (j, u, copy) basis ordered by degree, then monomial, then copy.
std::vector<SparseMatrix> truncated_cofree_actions(FieldSpec f, int a, int D, size_t copies);
size_t truncated_cofree_dim(int a, int D, size_t copies);

/// Slice dims of the realized term at a position, ascending internal degree.
std::vector<std::pair<int, size_t>> term_slice_layout(const LabelledComplex& x, int pos, Window w,
                                                      int m_active = -1);

/// Flat matrix of the dual-algebra action of variable `var` (0-based) on the
/// realized term at a position, in the concatenated slice basis of
/// term_slice_layout.  The action lowers the internal degree by one on both
/// carriers.
SparseMatrix term_variable_action(const LabelledComplex& x, int pos, Window w, int var,
                                  int m_active = -1);

} // namespace acyclica::symc

#endif
