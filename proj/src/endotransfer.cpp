#include "acyclica/endotransfer.hpp"

#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "acyclica/linalg.hpp"

namespace acyclica::endo {

namespace {

SparseMatrix vectorize_columns(const std::vector<SparseMatrix>& mats) {
    if (mats.empty()) return SparseMatrix();
    const size_t d2 = mats[0].rows() * mats[0].cols();
    std::vector<SparseEntry> es;
    for (size_t k = 0; k < mats.size(); ++k)
        for (const auto& e : mats[k].entries())
            es.push_back({e.col * mats[k].rows() + e.row, k, e.value});
    return SparseMatrix::from_triplets(mats[0].field(), d2, mats.size(), std::move(es));
}

SparseMatrix diag_power(const SparseMatrix& op, size_t r) {
    std::vector<SparseEntry> es;
    for (size_t b = 0; b < r; ++b)
        for (const auto& e : op.entries())
            es.push_back({b * op.rows() + e.row, b * op.cols() + e.col, e.value});
    return SparseMatrix::from_triplets(op.field(), op.rows() * r, op.cols() * r, std::move(es));
}

SparseMatrix unvectorize(const FieldSpec& f, const std::vector<FieldScalar>& v, size_t rows,
                         size_t cols) {
    std::vector<SparseEntry> es;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) es.push_back({i % rows, i / rows, v[i]});
    return SparseMatrix::from_triplets(f, rows, cols, std::move(es));
}

} // namespace

SparseMatrix morphism_space_basis(const ConstrainedSpace& x, const ConstrainedSpace& y) {
    if (!(x.field == y.field)) throw field_mismatch_error("morphism space over different fields");
    std::vector<std::pair<SparseMatrix, SparseMatrix>> gens;
    if (x.ops.size() != y.ops.size())
        throw shape_mismatch_error("objects carry different numbers of structure operators");
    for (size_t g = 0; g < x.ops.size(); ++g) gens.push_back({y.ops[g], x.ops[g]});
    return commutant_basis(x.field, y.dim, x.dim, gens);
}

SparseMatrix EndAlgebra::coords_of_columns(const SparseMatrix& vectorized) const {
    SparseMatrix b = vectorize_columns(basis);
    auto sol = solve_columns(b, vectorized);
    if (!sol)
        throw not_in_add_m_error("map is not a morphism of the constrained structure");
    return *sol;
}

std::shared_ptr<EndAlgebra> endomorphism_algebra(const ConstrainedSpace& M, bool opposite) {
    // the same object recurs across property-suite trials
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<EndAlgebra>> cache;
    std::ostringstream key;
    key << M.field.str() << ':' << M.dim << ':' << opposite;
    for (const auto& op : M.ops) {
        key << '|';
        for (const auto& e : op.entries()) key << e.row << ',' << e.col << ',' << e.value.str() << ';';
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key.str());
        if (it != cache.end()) return it->second;
    }

    auto S = std::make_shared<EndAlgebra>();
    S->field = M.field;
    S->obj_dim = M.dim;
    S->opposite = opposite;

    SparseMatrix basis_vec = morphism_space_basis(M, M);
    for (size_t k = 0; k < basis_vec.cols(); ++k) {
        std::vector<FieldScalar> col(M.dim * M.dim, FieldScalar::zero(M.field));
        for (const auto& e : basis_vec.entries())
            if (e.col == k) col[e.row] = e.value;
        S->basis.push_back(unvectorize(M.field, col, M.dim, M.dim));
    }
    const size_t s = S->basis.size();

    // composition table in one batched solve
    std::vector<SparseMatrix> products;
    products.reserve(s * s);
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) products.push_back(S->basis[i] * S->basis[j]);
    SparseMatrix coords = S->coords_of_columns(vectorize_columns(products));
    S->compose_table.assign(s * s, std::vector<FieldScalar>(s, FieldScalar::zero(M.field)));
    for (const auto& e : coords.entries()) S->compose_table[e.col][e.row] = e.value;

    // structure constants (opposite multiplication when flagged)
    FinAlgebra alg;
    alg.field = M.field;
    alg.dim = s;
    for (size_t k = 0; k < s; ++k) alg.basis_names.push_back("f" + std::to_string(k));
    alg.mult.resize(s * s);
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j)
            alg.mult[i * s + j] = opposite ? S->compose_table[j * s + i] : S->compose_table[i * s + j];
    auto id_coords = S->coords_of_columns(vectorize_columns({SparseMatrix::identity(M.field, M.dim)}));
    alg.unit.assign(s, FieldScalar::zero(M.field));
    for (const auto& e : id_coords.entries()) alg.unit[e.row] = e.value;
    alg.verify();
    S->algebra = std::move(alg);

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key.str(), S);
    return S;
}

void validate_in_add_m(const ConstrainedSpace& M, const ModuleComplex& X) {
    for (const auto& [pos, t] : X.terms) {
        if (t.incl.rows() != M.dim * t.power || t.incl.cols() != t.dim ||
            t.retr.rows() != t.dim || t.retr.cols() != M.dim * t.power)
            throw shape_mismatch_error("splitting shapes inconsistent at position " +
                                       std::to_string(pos));
        if (!(t.retr * t.incl == SparseMatrix::identity(M.field, t.dim)))
            throw not_in_add_m_error("retraction does not split the inclusion at position " +
                                     std::to_string(pos));
        SparseMatrix idem = t.incl * t.retr;
        for (const auto& op : M.ops) {
            SparseMatrix big = diag_power(op, t.power);
            if (!(idem * big == big * idem))
                throw not_in_add_m_error("splitting idempotent is not a morphism at position " +
                                         std::to_string(pos));
        }
    }
    for (const auto& [pos, d] : X.diffs) {
        auto src = X.terms.find(pos);
        auto tgt = X.terms.find(pos + 1);
        if (src == X.terms.end() || tgt == X.terms.end())
            throw shape_mismatch_error("differential between missing terms");
        if (d.rows() != tgt->second.dim || d.cols() != src->second.dim)
            throw shape_mismatch_error("differential shape mismatch at position " +
                                       std::to_string(pos));
        auto sops = induced_ops(M, src->second);
        auto tops = induced_ops(M, tgt->second);
        for (size_t g = 0; g < sops.size(); ++g)
            if (!(d * sops[g] == tops[g] * d))
                throw not_in_add_m_error("differential is not a morphism at position " +
                                         std::to_string(pos));
        auto next = X.diffs.find(pos + 1);
        if (next != X.diffs.end() && !(next->second * d).is_zero())
            throw composition_nonzero_error("d∘d ≠ 0 at position " + std::to_string(pos));
    }
}

std::vector<SparseMatrix> induced_ops(const ConstrainedSpace& M, const AddMTerm& t) {
    std::vector<SparseMatrix> ops;
    for (const auto& op : M.ops) ops.push_back(t.retr * diag_power(op, t.power) * t.incl);
    return ops;
}

bool SComplex::is_zero_mat(const SMat& m) const {
    for (const auto& v : m.e)
        for (const auto& c : v)
            if (!c.is_zero()) return false;
    return true;
}

namespace {

std::vector<FieldScalar> entry_mul(const SComplex& c, const std::vector<FieldScalar>& x,
                                   const std::vector<FieldScalar>& y) {
    const size_t s = c.S->dim();
    std::vector<FieldScalar> out(s, FieldScalar::zero(c.field));
    for (size_t u = 0; u < s; ++u) {
        if (x[u].is_zero()) continue;
        for (size_t v = 0; v < s; ++v) {
            if (y[v].is_zero()) continue;
            FieldScalar cf = x[u] * y[v];
            const auto& prod = c.variance == Variance::covariant
                                   ? c.S->compose_table[u * s + v]
                                   : c.S->compose_table[v * s + u];
            for (size_t k = 0; k < s; ++k)
                if (!prod[k].is_zero()) out[k] = out[k] + cf * prod[k];
        }
    }
    return out;
}

SMat zero_smat(const SComplex& c, size_t rows, size_t cols) {
    SMat m;
    m.rows = rows;
    m.cols = cols;
    m.e.assign(rows * cols, std::vector<FieldScalar>(c.S->dim(), FieldScalar::zero(c.field)));
    return m;
}

// Left/right multiplication operators L(x): b_c ↦ x⊛b_c and R(x): b_c ↦ b_c⊛x
// in algebra coordinates.
SparseMatrix mult_operator(const SComplex& c, const std::vector<FieldScalar>& x, bool left) {
    const size_t s = c.S->dim();
    std::vector<SparseEntry> es;
    for (size_t u = 0; u < s; ++u) {
        if (x[u].is_zero()) continue;
        for (size_t cc = 0; cc < s; ++cc) {
            size_t i = left ? u : cc, j = left ? cc : u;
            const auto& prod = c.variance == Variance::covariant
                                   ? c.S->compose_table[i * s + j]
                                   : c.S->compose_table[j * s + i];
            for (size_t k = 0; k < s; ++k)
                if (!prod[k].is_zero()) es.push_back({k, cc, x[u] * prod[k]});
        }
    }
    return SparseMatrix::from_triplets_accumulate(c.field, s, s, std::move(es));
}

// The linear operator G ↦ A⊛G⊛B on vectorized block matrices; the vector
// layout of an r×c block matrix is (i·c + j)·s + coordinate.
SparseMatrix sandwich_operator(const SComplex& ctx, const SMat& a, const SMat& b) {
    const size_t s = ctx.S->dim();
    const size_t grows = a.cols, gcols = b.rows;
    const size_t hrows = a.rows, hcols = b.cols;
    std::vector<SparseEntry> es;
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            SparseMatrix left = mult_operator(ctx, a.at(i, k), true);
            if (left.is_zero()) continue;
            for (size_t l = 0; l < b.rows; ++l)
                for (size_t j = 0; j < b.cols; ++j) {
                    SparseMatrix right = mult_operator(ctx, b.at(l, j), false);
                    if (right.is_zero()) continue;
                    SparseMatrix op = left * right;
                    for (const auto& e : op.entries())
                        es.push_back({(i * hcols + j) * s + e.row, (k * gcols + l) * s + e.col,
                                      e.value});
                }
        }
    return SparseMatrix::from_triplets_accumulate(ctx.field, hrows * hcols * s,
                                                  grows * gcols * s, std::move(es));
}

std::vector<FieldScalar> smat_vectorize(const SMat& m, const FieldSpec& f, size_t s) {
    std::vector<FieldScalar> v(m.rows * m.cols * s, FieldScalar::zero(f));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            for (size_t c = 0; c < s; ++c) v[(i * m.cols + j) * s + c] = m.at(i, j)[c];
    return v;
}

SMat smat_from_vector(const SComplex& ctx, const std::vector<FieldScalar>& v, size_t rows,
                      size_t cols) {
    const size_t s = ctx.S->dim();
    SMat m = zero_smat(ctx, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            for (size_t c = 0; c < s; ++c) m.at(i, j)[c] = v[(i * cols + j) * s + c];
    return m;
}

} // namespace

SMat smat_mul(const SComplex& c, const SMat& a, const SMat& b) {
    if (a.cols != b.rows) throw shape_mismatch_error("block product shape mismatch");
    SMat out = zero_smat(c, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) {
            auto& acc = out.at(i, j);
            for (size_t k = 0; k < a.cols; ++k) {
                auto prod = entry_mul(c, a.at(i, k), b.at(k, j));
                for (size_t q = 0; q < prod.size(); ++q)
                    if (!prod[q].is_zero()) acc[q] = acc[q] + prod[q];
            }
        }
    return out;
}

namespace {

// S-coordinates of the r_tgt × r_src block decomposition of an ambient map
// M^{r_src} → M^{r_tgt}, optionally transposed (contravariant image layout).
SMat blocks_to_smat(const EndAlgebra& S, const SparseMatrix& ambient, size_t r_tgt, size_t r_src,
                    bool transpose) {
    const size_t d = S.obj_dim;
    std::vector<SparseMatrix> blocks;
    std::vector<std::vector<SparseEntry>> per_block(r_tgt * r_src);
    for (const auto& e : ambient.entries())
        per_block[(e.row / d) * r_src + (e.col / d)].push_back({e.row % d, e.col % d, e.value});
    for (auto& es : per_block)
        blocks.push_back(SparseMatrix::from_triplets(S.field, d, d, std::move(es)));
    SparseMatrix coords = S.coords_of_columns(vectorize_columns(blocks));
    SMat out;
    out.rows = transpose ? r_src : r_tgt;
    out.cols = transpose ? r_tgt : r_src;
    out.e.assign(out.rows * out.cols,
                 std::vector<FieldScalar>(S.dim(), FieldScalar::zero(S.field)));
    for (const auto& e : coords.entries()) {
        size_t i = e.col / r_src, j = e.col % r_src;
        auto& cell = transpose ? out.at(j, i) : out.at(i, j);
        cell[e.row] = e.value;
    }
    return out;
}

} // namespace

SComplex hom_functor(const ConstrainedSpace& M, const ModuleComplex& X, Variance v) {
    validate_in_add_m(M, X);
    SComplex out;
    out.field = M.field;
    out.variance = v;
    out.S = endomorphism_algebra(M, v == Variance::covariant);

    for (const auto& [pos, t] : X.terms) {
        int q = v == Variance::covariant ? pos : -pos;
        out.power[q] = t.power;
        out.witness[q] = blocks_to_smat(*out.S, t.incl * t.retr, t.power, t.power,
                                        v == Variance::contravariant);
    }
    for (const auto& [pos, d] : X.diffs) {
        const AddMTerm& src = X.terms.at(pos);
        const AddMTerm& tgt = X.terms.at(pos + 1);
        SparseMatrix ambient = tgt.incl * d * src.retr;
        SMat blocks = blocks_to_smat(*out.S, ambient, tgt.power, src.power,
                                     v == Variance::contravariant);
        int q = v == Variance::covariant ? pos : -pos - 1;
        out.diffs[q] = std::move(blocks);
    }

    // functoriality: the image squares to zero, witnesses are idempotent and
    // absorb their adjacent differentials
    for (const auto& [q, d] : out.diffs) {
        auto next = out.diffs.find(q + 1);
        if (next != out.diffs.end() && !out.is_zero_mat(smat_mul(out, next->second, d)))
            throw functor_mismatch_error("image complex does not square to zero");
        const SMat& ew = out.witness.at(q);
        const SMat& ew1 = out.witness.at(q + 1);
        if (!(smat_mul(out, d, ew) == d) || !(smat_mul(out, ew1, d) == d))
            throw functor_mismatch_error("image differential not supported on the witnesses");
    }
    for (const auto& [q, ew] : out.witness)
        if (!(smat_mul(out, ew, ew) == ew))
            throw functor_mismatch_error("witness is not idempotent");
    return out;
}

std::optional<std::map<int, SMat>> s_null_homotopy(const SComplex& X) {
    const FieldSpec f = X.field;
    const size_t s = X.S->dim();
    std::vector<int> positions;
    for (const auto& [q, r] : X.power) positions.push_back(q);
    if (positions.empty()) return std::map<int, SMat>{};

    struct Block {
        int q;
        size_t rows, cols; // r_{q−1} × r_q
        size_t var_off;
    };
    std::vector<Block> blocks;
    size_t nvars = 0;
    for (int q : positions) {
        auto prev = X.power.find(q - 1);
        if (prev == X.power.end()) continue;
        Block b{q, prev->second, X.power.at(q), 0};
        b.var_off = nvars;
        nvars += b.rows * b.cols * s;
        blocks.push_back(b);
    }
    auto block_for = [&](int q) -> const Block* {
        for (const auto& b : blocks)
            if (b.q == q) return &b;
        return nullptr;
    };

    // equations: D_{q−1}⊛G_q⊛E_q + E_q⊛G_{q+1}⊛D_q = E_q, using that the
    // differentials absorb the witnesses; H_q = E_{q−1}⊛G_q⊛E_q afterwards
    size_t nrows = 0;
    std::map<int, size_t> row_off;
    for (int q : positions) {
        row_off[q] = nrows;
        nrows += X.power.at(q) * X.power.at(q) * s;
    }
    std::vector<SparseEntry> es;
    std::vector<FieldScalar> rhs(nrows, FieldScalar::zero(f));
    for (int q : positions) {
        const SMat& ew = X.witness.at(q);
        auto ew_vec = smat_vectorize(ew, f, s);
        for (size_t i = 0; i < ew_vec.size(); ++i) rhs[row_off[q] + i] = ew_vec[i];

        if (const Block* b = block_for(q)) {
            auto dit = X.diffs.find(q - 1);
            if (dit != X.diffs.end()) {
                SparseMatrix op = sandwich_operator(X, dit->second, ew);
                for (const auto& e : op.entries())
                    es.push_back({row_off[q] + e.row, b->var_off + e.col, e.value});
            }
        }
        if (const Block* b = block_for(q + 1)) {
            auto dit = X.diffs.find(q);
            if (dit != X.diffs.end()) {
                SparseMatrix op = sandwich_operator(X, ew, dit->second);
                for (const auto& e : op.entries())
                    es.push_back({row_off[q] + e.row, b->var_off + e.col, e.value});
            }
        }
    }

    SparseMatrix sys = SparseMatrix::from_triplets_accumulate(f, nrows, nvars, std::move(es));
    auto sol = solve_feasible(sys, rhs);
    if (!sol) return std::nullopt;

    std::map<int, SMat> h;
    for (const auto& b : blocks) {
        std::vector<FieldScalar> g(b.rows * b.cols * s, FieldScalar::zero(f));
        for (size_t i = 0; i < g.size(); ++i) g[i] = (*sol)[b.var_off + i];
        SparseMatrix proj =
            sandwich_operator(X, X.witness.at(b.q - 1), X.witness.at(b.q));
        h[b.q] = smat_from_vector(X, proj.apply(g), b.rows, b.cols);
    }

    // exact verification of D h + h D = E at every position
    for (int q : positions) {
        size_t r = X.power.at(q);
        SMat sum = zero_smat(X, r, r);
        auto add = [&](const SMat& m) {
            for (size_t i = 0; i < m.e.size(); ++i)
                for (size_t c = 0; c < s; ++c) sum.e[i][c] = sum.e[i][c] + m.e[i][c];
        };
        auto dprev = X.diffs.find(q - 1);
        if (dprev != X.diffs.end() && h.count(q)) add(smat_mul(X, dprev->second, h.at(q)));
        auto dq = X.diffs.find(q);
        if (dq != X.diffs.end() && h.count(q + 1)) add(smat_mul(X, h.at(q + 1), dq->second));
        if (!(sum == X.witness.at(q))) throw std::logic_error("s-side homotopy verification failed");
    }
    return h;
}

bool fully_faithful_check(const ConstrainedSpace& M, const std::vector<AddMTerm>& samples,
                          Variance v) {
    auto S = endomorphism_algebra(M, v == Variance::covariant);
    const size_t s = S->dim();
    SComplex scratch;
    scratch.field = M.field;
    scratch.variance = v;
    scratch.S = S;

    for (const auto& X : samples)
        for (const auto& Y : samples) {
            ConstrainedSpace cx{M.field, X.dim, induced_ops(M, X)};
            ConstrainedSpace cy{M.field, Y.dim, induced_ops(M, Y)};
            SparseMatrix before = morphism_space_basis(cx, cy);

            SMat ey = blocks_to_smat(*S, Y.incl * Y.retr, Y.power, Y.power,
                                     v == Variance::contravariant);
            SMat ex = blocks_to_smat(*S, X.incl * X.retr, X.power, X.power,
                                     v == Variance::contravariant);
            const SMat& left = v == Variance::covariant ? ey : ex;
            const SMat& right = v == Variance::covariant ? ex : ey;
            SparseMatrix proj = sandwich_operator(scratch, left, right);
            size_t after_dim = rank(proj);
            if (after_dim != before.cols()) return false;

            std::vector<SparseEntry> tes;
            size_t img_rows = 0;
            for (size_t b = 0; b < before.cols(); ++b) {
                std::vector<FieldScalar> vec(X.dim * Y.dim, FieldScalar::zero(M.field));
                for (const auto& e : before.entries())
                    if (e.col == b) vec[e.row] = e.value;
                SparseMatrix hmap = unvectorize(M.field, vec, Y.dim, X.dim);
                SparseMatrix ambient = Y.incl * hmap * X.retr;
                SMat img = blocks_to_smat(*S, ambient, Y.power, X.power,
                                          v == Variance::contravariant);
                img_rows = img.rows * img.cols * s;
                auto iv = smat_vectorize(img, M.field, s);
                for (size_t i = 0; i < iv.size(); ++i)
                    if (!iv[i].is_zero()) tes.push_back({i, b, iv[i]});
            }
            SparseMatrix induced =
                SparseMatrix::from_triplets(M.field, img_rows, before.cols(), std::move(tes));
            if (rank(induced) != before.cols()) return false;
        }
    return true;
}

std::pair<BigradedComplex, Equivariance> as_bigraded(const ConstrainedSpace& M,
                                                     const ModuleComplex& X) {
    BigradedComplex::TermMap terms;
    BigradedComplex::DiffMap diffs;
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [pos, t] : X.terms) {
        terms[pos][0].dim = t.dim;
        if (first) lo = hi = pos, first = false;
        lo = std::min(lo, pos);
        hi = std::max(hi, pos);
    }
    for (const auto& [pos, d] : X.diffs)
        if (!d.is_zero()) diffs[{pos, 0}] = d;
    Equivariance eq;
    eq.generators.resize(M.ops.size());
    for (const auto& [pos, t] : X.terms) {
        auto ops = induced_ops(M, t);
        for (size_t g = 0; g < ops.size(); ++g) eq.generators[g][{pos, 0}] = ops[g];
    }
    auto c = BigradedComplex::build(M.field, Window{lo, hi, 0, 0}, std::move(terms),
                                    std::move(diffs));
    return {std::move(c), std::move(eq)};
}

TransferReport contractibility_transfer_check(const ConstrainedSpace& M, const ModuleComplex& X) {
    TransferReport rep;
    auto [c, eq] = as_bigraded(M, X);
    auto h_module = null_homotopy(c, &eq);
    rep.module_side = h_module.has_value();

    SComplex image = hom_functor(M, X, Variance::covariant);
    auto h_s = s_null_homotopy(image);
    rep.s_side = h_s.has_value();
    rep.agree = rep.module_side == rep.s_side;

    if (h_module) {
        // the functor image of the found homotopy is itself a homotopy
        std::map<int, SMat> himg;
        for (const auto& [bd, hblk] : *h_module) {
            const AddMTerm& src = X.terms.at(bd.pos);
            const AddMTerm& tgt = X.terms.at(bd.pos - 1);
            SparseMatrix ambient = tgt.incl * hblk * src.retr;
            himg[bd.pos] = blocks_to_smat(*image.S, ambient, tgt.power, src.power, false);
        }
        rep.image_is_homotopy = true;
        for (const auto& [q, r] : image.power) {
            SMat sum = zero_smat(image, r, r);
            auto add = [&](const SMat& m) {
                for (size_t i = 0; i < m.e.size(); ++i)
                    for (size_t ci = 0; ci < m.e[i].size(); ++ci)
                        sum.e[i][ci] = sum.e[i][ci] + m.e[i][ci];
            };
            auto dprev = image.diffs.find(q - 1);
            if (dprev != image.diffs.end() && himg.count(q)) add(smat_mul(image, dprev->second, himg.at(q)));
            auto dq = image.diffs.find(q);
            if (dq != image.diffs.end() && himg.count(q + 1))
                add(smat_mul(image, himg.at(q + 1), dq->second));
            if (!(sum == image.witness.at(q))) rep.image_is_homotopy = false;
        }
    }
    return rep;
}

nlohmann::json Certificate::to_json() const {
    nlohmann::json j;
    j["preimage_bidegree"] = {witness.pos, witness.deg};
    j["cohomology_dim"] = cohomology_dim;
    j["fully_faithful"] = fully_faithful;
    j["functor_variance"] = variance == Variance::covariant ? "covariant" : "contravariant";
    j["master_seed"] = master_seed;
    j["conclusion"] = "noncontractible";
    return j;
}

std::optional<Certificate> noncontractibility_certificate(const ConstrainedSpace& M,
                                                          const ModuleComplex& preimage,
                                                          const BigradedComplex& preimage_graded,
                                                          const SComplex& image, Variance v,
                                                          uint64_t master_seed) {
    SComplex expected = hom_functor(M, preimage, v);
    if (!(expected.power == image.power) || !(expected.witness == image.witness) ||
        !(expected.diffs == image.diffs))
        throw functor_mismatch_error("image complex does not match the functor of the preimage");

    for (const auto& [pos, t] : preimage.terms) {
        size_t total = 0;
        auto it = preimage_graded.terms().find(pos);
        if (it != preimage_graded.terms().end())
            for (const auto& [deg, slice] : it->second) total += slice.dim;
        if (total != t.dim)
            throw shape_mismatch_error("graded preimage does not refine the complex terms");
    }

    auto h = preimage_graded.cohomology();
    std::optional<Bidegree> witness;
    for (const auto& [bd, d] : h.dims)
        if (d > 0 && !h.flagged.count(bd)) {
            witness = bd;
            break;
        }
    if (!witness) return std::nullopt;

    std::vector<AddMTerm> samples;
    for (const auto& [pos, t] : preimage.terms) samples.push_back(t);

    Certificate cert;
    cert.witness = *witness;
    cert.cohomology_dim = h.at(witness->pos, witness->deg);
    cert.fully_faithful = fully_faithful_check(M, samples, v);
    cert.variance = v;
    cert.master_seed = master_seed;
    return cert;
}

} // namespace acyclica::endo
