#include "acyclica/linalg.hpp"

#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "acyclica/parallel.hpp"

namespace acyclica {

FpDense fp_dense_from(const SparseMatrix& m) {
    FpDense d;
    d.p = m.field().p;
    d.rows = m.rows();
    d.cols = m.cols();
    d.a.assign(d.rows * d.cols, 0);
    for (const auto& e : m.entries()) d.at(e.row, e.col) = e.value.residue();
    return d;
}

size_t fp_rref(FpDense& m, std::vector<size_t>& pivots, bool parallel) {
    const uint32_t p = m.p;
    const size_t rows = m.rows, cols = m.cols;
    size_t rank = 0;
    const bool use_omp = parallel && par::effective_threads() > 1;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pr = rank;
        while (pr < rows && m.at(pr, c) == 0) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            for (size_t j = c; j < cols; ++j) std::swap(m.at(rank, j), m.at(pr, j));
        uint32_t inv = fp_inv(m.at(rank, c), p);
        if (inv != 1)
            for (size_t j = c; j < cols; ++j)
                m.at(rank, j) = fp_mul(m.at(rank, j), inv, p);
        const uint32_t* pivrow = &m.a[rank * cols];
        auto update = [&](size_t r) {
            if (r == rank) return;
            uint32_t f = m.at(r, c);
            if (f == 0) return;
            uint64_t nf = p - f;
            uint32_t* row = &m.a[r * cols];
            for (size_t j = c; j < cols; ++j)
                row[j] = (uint32_t)((row[j] + nf * pivrow[j]) % p);
        };
#ifdef _OPENMP
        if (use_omp && rows * (cols - c) > (size_t)1 << 15) {
#pragma omp parallel for schedule(static) num_threads(par::effective_threads())
            for (long long r = 0; r < (long long)rows; ++r) update((size_t)r);
        } else
#endif
        {
            for (size_t r = 0; r < rows; ++r) update(r);
        }
        pivots.push_back(c);
        ++rank;
    }
    return rank;
}

namespace {

// Dense rational working matrix.  Forward elimination is fraction-free
// (Bareiss one-step division) on integer rows; the reduced form is produced
// by a final rational back-substitution.
struct QDense {
    size_t rows = 0, cols = 0;
    std::vector<mpz_class> a;
    mpz_class& at(size_t r, size_t c) { return a[r * cols + c]; }
};

QDense q_dense_from(const SparseMatrix& m) {
    QDense d;
    d.rows = m.rows();
    d.cols = m.cols();
    d.a.assign(d.rows * d.cols, mpz_class(0));
    // clear denominators per row; row scaling keeps rank, kernel and solvability
    std::vector<mpz_class> denom(d.rows, mpz_class(1));
    for (const auto& e : m.entries()) mpz_lcm(denom[e.row].get_mpz_t(), denom[e.row].get_mpz_t(),
                                              e.value.rat().get_den().get_mpz_t());
    for (const auto& e : m.entries()) {
        const mpq_class& q = e.value.rat();
        d.at(e.row, e.col) = q.get_num() * (denom[e.row] / q.get_den());
    }
    return d;
}

size_t q_forward_bareiss(QDense& m, std::vector<size_t>& pivots) {
    size_t rank = 0;
    mpz_class prev(1);
    for (size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        size_t pr = rank;
        while (pr < m.rows && m.at(pr, c) == 0) ++pr;
        if (pr == m.rows) continue;
        if (pr != rank)
            for (size_t j = 0; j < m.cols; ++j) mpz_swap(m.at(rank, j).get_mpz_t(), m.at(pr, j).get_mpz_t());
        const mpz_class piv = m.at(rank, c);
        for (size_t r = rank + 1; r < m.rows; ++r) {
            // one-step fraction-free update; applies to zero rows too so the
            // minor structure (and with it exact divisibility) is preserved
            const mpz_class f = m.at(r, c);
            for (size_t j = c; j < m.cols; ++j) {
                mpz_class t = m.at(r, j) * piv - f * m.at(rank, j);
                mpz_divexact(m.at(r, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++rank;
    }
    return rank;
}

// Reduced echelon form over Q: entries of the reduced rows, pivot entries 1.
struct QRref {
    size_t rank = 0;
    size_t cols = 0;
    std::vector<size_t> pivots;
    std::vector<mpq_class> r; // rank x cols, row-major
    mpq_class& at(size_t i, size_t j) { return r[i * cols + j]; }
    const mpq_class& at(size_t i, size_t j) const { return r[i * cols + j]; }
};

QRref q_rref(const SparseMatrix& m) {
    QDense d = q_dense_from(m);
    QRref out;
    out.cols = d.cols;
    out.rank = q_forward_bareiss(d, out.pivots);
    out.r.assign(out.rank * out.cols, mpq_class(0));
    for (size_t i = 0; i < out.rank; ++i)
        for (size_t j = 0; j < out.cols; ++j)
            out.at(i, j) = mpq_class(d.at(i, j)) / mpq_class(d.at(i, out.pivots[i]));
    // eliminate above pivots
    for (size_t i = out.rank; i-- > 0;) {
        for (size_t k = 0; k < i; ++k) {
            mpq_class f = out.at(k, out.pivots[i]);
            if (f == 0) continue;
            for (size_t j = out.pivots[i]; j < out.cols; ++j)
                out.at(k, j) -= f * out.at(i, j);
        }
    }
    for (auto& q : out.r) q.canonicalize();
    return out;
}

struct FpRref {
    size_t rank = 0;
    std::vector<size_t> pivots;
    FpDense m;
};

FpRref fp_rref_of(const SparseMatrix& s) {
    FpRref out;
    out.m = fp_dense_from(s);
    out.rank = fp_rref(out.m, out.pivots, true);
    return out;
}

} // namespace

size_t rank(const SparseMatrix& m) {
    if (m.field().is_rational()) {
        QDense d = q_dense_from(m);
        std::vector<size_t> piv;
        return q_forward_bareiss(d, piv);
    }
    FpDense d = fp_dense_from(m);
    std::vector<size_t> piv;
    return fp_rref(d, piv, true);
}

SparseMatrix kernel_basis(const SparseMatrix& m) {
    const FieldSpec f = m.field();
    std::vector<size_t> pivots;
    std::vector<bool> is_pivot(m.cols(), false);
    std::vector<SparseEntry> out;
    size_t rank = 0;

    auto emit = [&](auto&& entry_of) {
        std::vector<size_t> free_cols;
        for (size_t c = 0; c < m.cols(); ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        for (size_t k = 0; k < free_cols.size(); ++k) {
            size_t fc = free_cols[k];
            out.push_back({fc, k, FieldScalar::one(f)});
            for (size_t i = 0; i < rank; ++i) {
                FieldScalar v = entry_of(i, fc);
                if (!v.is_zero()) out.push_back({pivots[i], k, -v});
            }
        }
        return SparseMatrix::from_triplets(f, m.cols(), free_cols.size(), std::move(out));
    };

    if (f.is_rational()) {
        QRref r = q_rref(m);
        pivots = r.pivots;
        rank = r.rank;
        for (size_t c : pivots) is_pivot[c] = true;
        return emit([&](size_t i, size_t c) { return FieldScalar::rational(r.at(i, c)); });
    }
    FpRref r = fp_rref_of(m);
    pivots = r.pivots;
    rank = r.rank;
    for (size_t c : pivots) is_pivot[c] = true;
    return emit([&](size_t i, size_t c) { return FieldScalar::mod(f.p, r.m.at(i, c)); });
}

std::optional<std::vector<FieldScalar>> solve_feasible(const SparseMatrix& a,
                                                       const std::vector<FieldScalar>& b) {
    if (b.size() != a.rows()) throw shape_mismatch_error("solve: rhs length mismatch");
    SparseMatrix aug = a.augment_cols(column_vector(b, a.field()));
    const size_t bc = a.cols();
    const FieldSpec f = a.field();
    std::vector<FieldScalar> x(a.cols(), FieldScalar::zero(f));
    if (f.is_rational()) {
        QRref r = q_rref(aug);
        for (size_t i = 0; i < r.rank; ++i) {
            if (r.pivots[i] == bc) return std::nullopt;
            x[r.pivots[i]] = FieldScalar::rational(r.at(i, bc));
        }
        return x;
    }
    FpRref r = fp_rref_of(aug);
    for (size_t i = 0; i < r.rank; ++i) {
        if (r.pivots[i] == bc) return std::nullopt;
        x[r.pivots[i]] = FieldScalar::mod(f.p, r.m.at(i, bc));
    }
    return x;
}

std::optional<SparseMatrix> solve_columns(const SparseMatrix& a, const SparseMatrix& b) {
    if (b.rows() != a.rows()) throw shape_mismatch_error("solve: rhs row count mismatch");
    SparseMatrix aug = a.augment_cols(b);
    const size_t ac = a.cols();
    const FieldSpec f = a.field();
    std::vector<SparseEntry> out;
    if (f.is_rational()) {
        QRref r = q_rref(aug);
        for (size_t i = 0; i < r.rank; ++i) {
            if (r.pivots[i] >= ac) return std::nullopt;
            for (size_t k = 0; k < b.cols(); ++k)
                if (r.at(i, ac + k) != 0)
                    out.push_back({r.pivots[i], k, FieldScalar::rational(r.at(i, ac + k))});
        }
    } else {
        FpRref r = fp_rref_of(aug);
        for (size_t i = 0; i < r.rank; ++i) {
            if (r.pivots[i] >= ac) return std::nullopt;
            for (size_t k = 0; k < b.cols(); ++k)
                if (r.m.at(i, ac + k) != 0)
                    out.push_back({r.pivots[i], k, FieldScalar::mod(f.p, r.m.at(i, ac + k))});
        }
    }
    return SparseMatrix::from_triplets(f, a.cols(), b.cols(), std::move(out));
}

namespace ref {

size_t rank(const SparseMatrix& m) {
    const FieldSpec f = m.field();
    size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<FieldScalar>> a(rows, std::vector<FieldScalar>(cols, FieldScalar::zero(f)));
    for (const auto& e : m.entries()) a[e.row][e.col] = e.value;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pr = rank;
        while (pr < rows && a[pr][c].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(a[pr], a[rank]);
        FieldScalar inv = a[rank][c].inverse();
        for (size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv;
        for (size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c].is_zero()) continue;
            FieldScalar fct = a[r][c];
            for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] - fct * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace ref

} // namespace acyclica
