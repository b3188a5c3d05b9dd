#ifndef ACYCLICA_LINALG_HPP
#define ACYCLICA_LINALG_HPP

#include <optional>
#include <vector>

#include "acyclica/sparse_matrix.hpp"

namespace acyclica {

/// Rank over the matrix's field, computed exactly.
size_t rank(const SparseMatrix& m);

/// Columns form a basis of the null space; column count = cols − rank.
/// Basis is the canonical one read off the reduced echelon form (one column
/// per free variable, in increasing column order).
SparseMatrix kernel_basis(const SparseMatrix& m);

/// Some exact x with a·x = b, or nullopt when the system is inconsistent.
/// The solution is the canonical one with all free variables set to zero.
std::optional<std::vector<FieldScalar>> solve_feasible(const SparseMatrix& a,
                                                       const std::vector<FieldScalar>& b);

/// Solves a·X = b column by column in one elimination; nullopt when any
/// column is inconsistent.  Solutions are the canonical ones.
std::optional<SparseMatrix> solve_columns(const SparseMatrix& a, const SparseMatrix& b);

/// Dense prime-field working matrix, row-major.
struct FpDense {
    uint32_t p = 2;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> a;

    uint32_t& at(size_t r, size_t c) { return a[r * cols + c]; }
    uint32_t at(size_t r, size_t c) const { return a[r * cols + c]; }
};

FpDense fp_dense_from(const SparseMatrix& m);

/// In-place reduced row echelon form over Fp.  Pivots are chosen
/// deterministically: columns left to right, first usable row.  Returns the
/// rank; pivot columns appended to `pivots`.  `parallel` switches the row
/// update loops to the OpenMP kernel.
size_t fp_rref(FpDense& m, std::vector<size_t>& pivots, bool parallel);

namespace ref {
/// Textbook serial Gaussian elimination (plain mpq arithmetic over Q),
/// kept as an independent oracle for tests and as the benchmark baseline.
size_t rank(const SparseMatrix& m);
} // namespace ref

} // namespace acyclica

#endif
