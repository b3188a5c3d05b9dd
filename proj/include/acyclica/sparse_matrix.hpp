#ifndef ACYCLICA_SPARSE_MATRIX_HPP
#define ACYCLICA_SPARSE_MATRIX_HPP

#include <string>
#include <vector>

#include "acyclica/field.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acyclica {

struct shape_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SparseEntry {
    size_t row = 0;
    size_t col = 0;
    FieldScalar value;
};

/// Coordinate-list matrix over a fixed field.  Entries are sorted row-major,
/// contain no duplicates and no explicit zeros.  Row/column basis labels are
/// optional opaque tokens carried through serialization.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(FieldSpec field, size_t rows, size_t cols)
        : field_(field), rows_(rows), cols_(cols) {}

    /// Sorts the triplets, drops zeros, rejects duplicates and out-of-range
    /// indices and mixed-field values.
    static SparseMatrix from_triplets(FieldSpec field, size_t rows, size_t cols,
                                      std::vector<SparseEntry> entries);
    /// Same, but duplicate coordinates are summed instead of rejected.
    static SparseMatrix from_triplets_accumulate(FieldSpec field, size_t rows, size_t cols,
                                                 std::vector<SparseEntry> entries);
    static SparseMatrix identity(FieldSpec field, size_t n);

    const FieldSpec& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    FieldScalar at(size_t r, size_t c) const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-() const;
    SparseMatrix scaled(const FieldScalar& c) const;
    bool operator==(const SparseMatrix& o) const;

    std::vector<FieldScalar> apply(const std::vector<FieldScalar>& v) const;

    /// Block-diagonal sum: this ⊕ o.
    SparseMatrix direct_sum(const SparseMatrix& o) const;
    /// [this | o] side by side.
    SparseMatrix augment_cols(const SparseMatrix& o) const;
    /// Stack on top of o.
    SparseMatrix stack_rows(const SparseMatrix& o) const;

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    nlohmann::json to_json() const;
    static SparseMatrix from_json(const nlohmann::json& j);

private:
    FieldSpec field_ = FieldSpec::Q();
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<SparseEntry> entries_;
};

SparseMatrix column_vector(const std::vector<FieldScalar>& v, FieldSpec field);

} // namespace acyclica

#endif
