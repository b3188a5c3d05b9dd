#ifndef ACYCLICA_ENDOTRANSFER_HPP
#define ACYCLICA_ENDOTRANSFER_HPP

#include <memory>
#include <optional>

#include "acyclica/algebra.hpp"
#include "acyclica/complex_ops.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acyclica::endo {

struct not_in_add_m_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct functor_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional object with structure constraints: morphisms into
/// another such object are the linear maps commuting with all operators.
/// (A plain vector space is the case of no operators.)
struct ConstrainedSpace {
    FieldSpec field;
    size_t dim = 0;
    std::vector<SparseMatrix> ops;
};

/// Basis of the morphism space x → y (vectorized matrices).
SparseMatrix morphism_space_basis(const ConstrainedSpace& x, const ConstrainedSpace& y);

/// Endomorphism algebra of M with a chosen basis, prepared coordinates, and
/// the composition table of the basis.  `opposite` only affects the reported
/// structure constants (the block calculus below always composes maps).
struct EndAlgebra {
    FieldSpec field;
    size_t obj_dim = 0;
    bool opposite = false;
    std::vector<SparseMatrix> basis;
    FinAlgebra algebra;
    // compose_table[i·dim + j] = coordinates of basis_i ∘ basis_j
    std::vector<std::vector<FieldScalar>> compose_table;

    size_t dim() const { return basis.size(); }
    /// Coordinates of endomorphisms in the basis; throws not_in_add_m_error
    /// when a block does not commute with the structure.
    SparseMatrix coords_of_columns(const SparseMatrix& vectorized) const;
};

std::shared_ptr<EndAlgebra> endomorphism_algebra(const ConstrainedSpace& M, bool opposite);

/// Term of a complex certified in add(M) by an explicit split injection
/// into M^power.
struct AddMTerm {
    size_t dim = 0;
    size_t power = 0;
    SparseMatrix incl; // (M.dim·power) × dim
    SparseMatrix retr; // dim × (M.dim·power)
};

/// Bounded complex in add(M); differentials act on the abstract term spaces.
struct ModuleComplex {
    std::map<int, AddMTerm> terms;
    std::map<int, SparseMatrix> diffs; // pos → pos+1
};

/// Checks retr∘incl = id, that the idempotent incl∘retr and all differentials
/// are morphisms, and that d² = 0.
void validate_in_add_m(const ConstrainedSpace& M, const ModuleComplex& X);

/// Induced structure operators on a term (restriction of the diagonal ones).
std::vector<SparseMatrix> induced_ops(const ConstrainedSpace& M, const AddMTerm& t);

/// Matrix over the endomorphism algebra: entries are coordinate vectors.
struct SMat {
    size_t rows = 0, cols = 0;
    std::vector<std::vector<FieldScalar>> e; // rows·cols coordinate vectors

    std::vector<FieldScalar>& at(size_t r, size_t c) { return e[r * cols + c]; }
    const std::vector<FieldScalar>& at(size_t r, size_t c) const { return e[r * cols + c]; }
    bool operator==(const SMat& o) const = default;
};

enum class Variance { covariant, contravariant };

/// Complex of finitely generated projective modules over the endomorphism
/// ring, presented by idempotent witnesses inside free modules and
/// differential matrices over the algebra.
struct SComplex {
    FieldSpec field;
    Variance variance = Variance::covariant;
    std::shared_ptr<EndAlgebra> S;
    std::map<int, size_t> power;   // pos → rank of the ambient free module
    std::map<int, SMat> witness;   // pos → idempotent matrix over S
    std::map<int, SMat> diffs;     // pos → pos+1

    bool is_zero_mat(const SMat& m) const;
};

/// Block product in the image category (entry products compose maps; the
/// contravariant case uses the opposite order).
SMat smat_mul(const SComplex& c, const SMat& a, const SMat& b);

/// Image of the complex under Hom(M,−) (covariant, positions kept) or
/// Hom(−,M) (contravariant, positions negated); terms become witnessed
/// summands of free modules, functoriality is verified on the differentials.
SComplex hom_functor(const ConstrainedSpace& M, const ModuleComplex& X, Variance v);

/// Contracting homotopy over the endomorphism ring, blocks keyed by source
/// position; solved as linear feasibility in the algebra coordinates.
std::optional<std::map<int, SMat>> s_null_homotopy(const SComplex& X);

/// Hom-space dimensions match and the induced maps are bijective for every
/// ordered pair of sample objects.
bool fully_faithful_check(const ConstrainedSpace& M, const std::vector<AddMTerm>& samples,
                          Variance v);

struct TransferReport {
    bool module_side = false;      // equivariant homotopy exists in add(M)
    bool s_side = false;           // homotopy exists over the endomorphism ring
    bool agree = false;
    bool image_is_homotopy = true; // functor image of the found homotopy works
};

/// Runs the equivariant homotopy solver on X and the S-side solver on its
/// functor image and compares the verdicts; when the module side finds a
/// homotopy, its image is checked to be an S-side homotopy.
TransferReport contractibility_transfer_check(const ConstrainedSpace& M, const ModuleComplex& X);

struct Certificate {
    Bidegree witness;          // bidegree of nonvanishing preimage cohomology
    size_t cohomology_dim = 0;
    bool fully_faithful = false;
    Variance variance = Variance::covariant;
    uint64_t master_seed = 0;

    nlohmann::json to_json() const;
};

/// Certificate that the image complex is noncontractible: a nonvanishing
/// cohomology class of the preimage plus the fully-faithful verdict.
/// Returns nullopt when the preimage is acyclic on all complete slices.
std::optional<Certificate> noncontractibility_certificate(const ConstrainedSpace& M,
                                                          const ModuleComplex& preimage,
                                                          const BigradedComplex& preimage_graded,
                                                          const SComplex& image, Variance v,
                                                          uint64_t master_seed);

/// The module complex as a one-slice bigraded complex plus the equivariance
/// data of its induced operators.
std::pair<BigradedComplex, Equivariance> as_bigraded(const ConstrainedSpace& M,
                                                     const ModuleComplex& X);

} // namespace acyclica::endo

#endif
