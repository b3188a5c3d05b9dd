#ifndef ACYCLICA_MONOMIALALG_HPP
#define ACYCLICA_MONOMIALALG_HPP

#include <optional>

#include "acyclica/algebra.hpp"
#include "acyclica/bigraded.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acyclica::mono {

/// Monomial in the generators y0, y1, … of the universal algebra, as the
/// sequence of generator indices.  Normal form: no adjacent factor
/// (i, i+1); the empty word is the unit.
using Word = std::vector<uint32_t>;

/// The word itself when normal, nullopt when the relations kill it.
std::optional<Word> normal_form(const Word& w);

/// Number of normal-form words of exact length len over y0..yN.
uint64_t count_basis_words(int N, int len);

/// Normal-form words of exact length len, ordered lexicographically.
std::vector<Word> basis_words(int N, int len);

/// 0/1 matrix of right multiplication by y_n from the length-len basis to
/// the length-(len+1) basis.
SparseMatrix right_mult_operator(FieldSpec f, int n, int len, int N);

struct relation_violation_error : std::runtime_error {
    int offending = -1;
    relation_violation_error(const std::string& msg, int n)
        : std::runtime_error(msg), offending(n) {}
};

struct ExactnessCheck {
    int n = 0;   // differential index (multiplication by y_n)
    int len = 0; // word length in the source term
    size_t kernel_dim = 0;
    size_t image_dim = 0;     // of the incoming operator (0 for n = 0 checks)
    size_t oracle_count = 0;  // combinatorial kernel description
    bool flagged = false;     // boundary length, excluded from the verdict
    bool pass = false;
};

struct ExactnessReport {
    int N = 0, L = 0;
    FieldSpec field;
    std::vector<ExactnessCheck> checks;
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Per length and per operator: ker(·y0) = 0, ker(·y_{n+1}) = im(·y_n) by
/// exact rank equality with the composition vanishing, cross-checked
/// against the combinatorial kernel oracle (words ending in y_n).  The top
/// length is flagged, never asserted.
ExactnessReport verify_exactness(FieldSpec f, int N, int L);

/// Normal words of length len whose last letter is n (the combinatorial
/// kernel of right multiplication by y_{n+1}).
std::vector<Word> kernel_words_oracle(int N, int len, int n);

struct AugmentationCertificate {
    int N = 0;
    FieldSpec field;
    bool differentials_vanish = false;
    std::vector<size_t> cohomology_dims; // per position, all expected 1
    bool functorial = false;             // augmentation ∘ right multiplication = 0
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Applying the rank-one module with all generators acting by zero to the
/// one-generator complex yields zero differentials and one-dimensional
/// cohomology in every position.
AugmentationCertificate augmentation_certificate(FieldSpec f, int N);

struct Specialization {
    std::vector<std::vector<FieldScalar>> images; // generator images in the target
    BigradedComplex induced;                      // extension of scalars of the complex
};

/// Verifies z_n·z_{n+1} = 0 in the target and builds the induced complex of
/// free rank-one modules (terms the target algebra, differentials right
/// multiplication by the images).
Specialization specialize(const FinAlgebra& target,
                          const std::vector<std::vector<FieldScalar>>& z);

} // namespace acyclica::mono

#endif
