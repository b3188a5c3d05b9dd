#include "acyclica/polykoszul.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace acyclica::poly {

using combi::Expo;

VariableSet VariableSet::canonical(size_t m) {
    VariableSet v;
    for (size_t i = 1; i <= m; ++i) v.names.push_back("x" + std::to_string(i));
    return v;
}

size_t poly_component_dim(size_t m, int t) { return combi::monomial_count((int)m, t); }

const std::vector<Expo>& poly_component_basis(size_t m, int t) {
    return combi::monomials((int)m, t);
}

namespace {

int poly_degree(const Poly& p) {
    if (p.empty()) return 0;
    int d = 0;
    for (int e : p[0].mono) d += e;
    return d;
}

Expo mono_mul(const Expo& a, const Expo& b) {
    Expo c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

} // namespace

void FreeComplex::validate_homogeneous() const {
    for (const auto& [pos, entries] : diff) {
        auto src = gens.find(pos);
        auto tgt = gens.find(pos + 1);
        for (const auto& [rc, p] : entries) {
            if (tgt == gens.end() || rc.first >= tgt->second.size() || src == gens.end() ||
                rc.second >= src->second.size())
                throw shape_mismatch_error("differential entry outside generator range");
            int want = src->second[rc.second].shift - tgt->second[rc.first].shift;
            for (const auto& term : p) {
                int d = 0;
                for (int e : term.mono) d += e;
                if (d != want)
                    throw inhomogeneous_error("entry at position " + std::to_string(pos) +
                                              " is not homogeneous of degree " + std::to_string(want));
            }
        }
    }
}

FreeComplex koszul_free(FieldSpec field, const VariableSet& B) {
    FreeComplex fc;
    fc.field = field;
    fc.vars = B;
    const int m = (int)B.m();
    for (int n = 0; n <= m; ++n) {
        std::vector<Generator> gs;
        for (const auto& t : combi::subsets_colex(m, n)) gs.push_back({combi::subset_label(t), n});
        fc.gens[-n] = std::move(gs);
    }
    for (int n = 1; n <= m; ++n) {
        const auto& src = combi::subsets_colex(m, n);
        auto& entries = fc.diff[-n];
        for (size_t c = 0; c < src.size(); ++c) {
            const auto& T = src[c];
            for (size_t k = 0; k < T.size(); ++k) {
                std::vector<int> rest;
                for (size_t j = 0; j < T.size(); ++j)
                    if (j != k) rest.push_back(T[j]);
                size_t r = combi::subset_index(m, rest);
                Expo x(m, 0);
                x[T[k]] = 1;
                FieldScalar sign = FieldScalar::integer(field, k % 2 == 0 ? 1 : -1);
                entries[{r, c}].push_back({x, sign});
            }
        }
    }
    return fc;
}

FreeComplex dual_koszul_free(FieldSpec field, const VariableSet& B) {
    FreeComplex fc;
    fc.field = field;
    fc.vars = B;
    const int m = (int)B.m();
    for (int n = 0; n <= m; ++n) {
        std::vector<Generator> gs;
        for (const auto& t : combi::subsets_colex(m, n)) gs.push_back({combi::subset_label(t) + "*", -n});
        fc.gens[n] = std::move(gs);
    }
    // transpose of the Koszul differential, same signs
    for (int n = 0; n < m; ++n) {
        const auto& src = combi::subsets_colex(m, n);
        auto& entries = fc.diff[n];
        for (size_t c = 0; c < src.size(); ++c) {
            const auto& T = src[c];
            for (int j = 0; j < m; ++j) {
                if (std::find(T.begin(), T.end(), j) != T.end()) continue;
                std::vector<int> big = T;
                big.insert(std::lower_bound(big.begin(), big.end(), j), j);
                size_t r = combi::subset_index(m, big);
                size_t below = (size_t)(std::lower_bound(T.begin(), T.end(), j) - T.begin());
                Expo x(m, 0);
                x[j] = 1;
                FieldScalar sign = FieldScalar::integer(field, below % 2 == 0 ? 1 : -1);
                entries[{r, c}].push_back({x, sign});
            }
        }
    }
    return fc;
}

FreeComplex koszul_free_on_subset(FieldSpec field, const VariableSet& B, size_t m_small) {
    if (m_small > B.m()) throw shape_mismatch_error("subset larger than variable set");
    FreeComplex small = koszul_free(field, VariableSet::canonical(m_small));
    FreeComplex fc;
    fc.field = field;
    fc.vars = B;
    for (const auto& [pos, gs] : small.gens) fc.gens[pos] = gs;
    for (const auto& [pos, entries] : small.diff) {
        auto& out = fc.diff[pos];
        for (const auto& [rc, p] : entries) {
            Poly q;
            for (const auto& term : p) {
                Expo e = term.mono;
                e.resize(B.m(), 0);
                q.push_back({e, term.coeff});
            }
            out[rc] = std::move(q);
        }
    }
    return fc;
}

FreeComplex tensor_free(const FreeComplex& f, const FreeComplex& g) {
    if (!(f.field == g.field)) throw field_mismatch_error("tensor over different fields");
    if (f.vars.names != g.vars.names) throw shape_mismatch_error("tensor over different rings");
    FreeComplex out;
    out.field = f.field;
    out.vars = f.vars;

    // generator (p, i) ⊗ (q, j) at position p+q, ordered by (p, i, j)
    struct Slot {
        int p, q;
        size_t i, j;
    };
    std::map<int, std::vector<Slot>> slots;
    for (const auto& [p, fg] : f.gens)
        for (const auto& [q, gg] : g.gens)
            for (size_t i = 0; i < fg.size(); ++i)
                for (size_t j = 0; j < gg.size(); ++j) slots[p + q].push_back({p, q, i, j});
    for (auto& [pos, list] : slots) {
        std::sort(list.begin(), list.end(), [](const Slot& a, const Slot& b) {
            return std::tie(a.p, a.i, a.j) < std::tie(b.p, b.i, b.j);
        });
        std::vector<Generator> gs;
        for (const auto& s : list) {
            const Generator& a = f.gens.at(s.p)[s.i];
            const Generator& b = g.gens.at(s.q)[s.j];
            gs.push_back({a.label + "⊗" + b.label, a.shift + b.shift});
        }
        out.gens[pos] = std::move(gs);
    }
    auto slot_index = [&](int pos, int p, size_t i, size_t j) -> size_t {
        const auto& list = slots.at(pos);
        for (size_t k = 0; k < list.size(); ++k)
            if (list[k].p == p && list[k].i == i && list[k].j == j) return k;
        throw std::logic_error("tensor slot not found");
    };
    for (const auto& [pos, list] : slots) {
        auto& entries = out.diff[pos];
        for (size_t c = 0; c < list.size(); ++c) {
            const Slot& s = list[c];
            // d_f ⊗ id
            auto fd = f.diff.find(s.p);
            if (fd != f.diff.end())
                for (const auto& [rc, p] : fd->second)
                    if (rc.second == s.i) {
                        size_t r = slot_index(pos + 1, s.p + 1, rc.first, s.j);
                        for (const auto& term : p) entries[{r, c}].push_back(term);
                    }
            // (−1)^p id ⊗ d_g
            auto gd = g.diff.find(s.q);
            if (gd != g.diff.end()) {
                FieldScalar sign = FieldScalar::integer(out.field, s.p % 2 == 0 ? 1 : -1);
                for (const auto& [rc, p] : gd->second)
                    if (rc.second == s.j) {
                        size_t r = slot_index(pos + 1, s.p, s.i, rc.first);
                        for (const auto& term : p)
                            entries[{r, c}].push_back({term.mono, term.coeff * sign});
                    }
            }
        }
        if (entries.empty()) out.diff.erase(pos);
    }
    return out;
}

BigradedComplex realize(const FreeComplex& fc, Window w) {
    fc.validate_homogeneous();
    const size_t m = fc.vars.m();
    const FieldSpec field = fc.field;

    int min_shift = 0;
    bool have_gen = false;
    BigradedComplex::TermMap terms;
    for (const auto& [pos, gs] : fc.gens) {
        if (pos < w.pos_lo || pos > w.pos_hi)
            throw shape_mismatch_error("window does not cover complex positions");
        for (const auto& g : gs) {
            if (!have_gen || g.shift < min_shift) min_shift = g.shift;
            have_gen = true;
        }
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            size_t dim = 0;
            std::vector<std::string> labels;
            for (const auto& g : gs) {
                const auto& basis = poly_component_basis(m, t - g.shift);
                dim += basis.size();
                for (const auto& u : basis)
                    labels.push_back(combi::monomial_label(u) + "." + g.label);
            }
            if (dim > 0) {
                terms[pos][t].dim = dim;
                terms[pos][t].labels = std::move(labels);
            }
        }
    }

    BigradedComplex::DiffMap diffs;
    for (const auto& [pos, entries] : fc.diff) {
        const auto& src_gens = fc.gens.at(pos);
        const auto& tgt_gens = fc.gens.at(pos + 1);
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            std::vector<size_t> src_off(src_gens.size() + 1, 0), tgt_off(tgt_gens.size() + 1, 0);
            for (size_t i = 0; i < src_gens.size(); ++i)
                src_off[i + 1] = src_off[i] + poly_component_dim(m, t - src_gens[i].shift);
            for (size_t i = 0; i < tgt_gens.size(); ++i)
                tgt_off[i + 1] = tgt_off[i] + poly_component_dim(m, t - tgt_gens[i].shift);
            if (src_off.back() == 0 || tgt_off.back() == 0) continue;
            std::vector<SparseEntry> es;
            for (const auto& [rc, p] : entries) {
                const auto& src_basis = poly_component_basis(m, t - src_gens[rc.second].shift);
                for (size_t ui = 0; ui < src_basis.size(); ++ui)
                    for (const auto& term : p) {
                        Expo target = mono_mul(src_basis[ui], term.mono);
                        size_t vi = combi::monomial_index(target);
                        es.push_back({tgt_off[rc.first] + vi, src_off[rc.second] + ui, term.coeff});
                    }
            }
            if (!es.empty())
                diffs[{pos, t}] = SparseMatrix::from_triplets_accumulate(
                    field, tgt_off.back(), src_off.back(), std::move(es));
        }
    }

    SupportBounds bounds;
    bounds.deg_zero_below = have_gen ? (w.deg_lo <= min_shift) : true;
    bounds.deg_zero_above = !have_gen;
    return BigradedComplex::build(field, w, std::move(terms), std::move(diffs), bounds);
}

namespace {

// Adds a one-dimensional field term at (pos, 0) with the given block between
// it and the adjacent position.
BigradedComplex with_augmentation(const BigradedComplex& c, int pos, bool incoming) {
    BigradedComplex::TermMap terms = c.terms();
    BigradedComplex::DiffMap diffs = c.diffs();
    Window w = c.window();
    terms[pos][0].dim = 1;
    terms[pos][0].labels = {"1"};
    if (incoming) {
        // block from (pos−1, 0): row vector onto the generator coordinate
        std::vector<SparseEntry> es{{0, 0, FieldScalar::one(c.field())}};
        diffs[{pos - 1, 0}] =
            SparseMatrix::from_triplets(c.field(), 1, c.dim(pos - 1, 0), std::move(es));
    } else {
        std::vector<SparseEntry> es{{0, 0, FieldScalar::one(c.field())}};
        diffs[{pos, 0}] =
            SparseMatrix::from_triplets(c.field(), c.dim(pos + 1, 0), 1, std::move(es));
    }
    w.pos_lo = std::min(w.pos_lo, pos);
    w.pos_hi = std::max(w.pos_hi, pos);
    return BigradedComplex::build(c.field(), w, std::move(terms), std::move(diffs), c.bounds(),
                                  c.flags());
}

} // namespace

BigradedComplex koszul_complex(FieldSpec field, const VariableSet& B, Window w, bool augmented) {
    BigradedComplex k = realize(koszul_free(field, B), augmented ? Window{w.pos_lo, w.pos_hi - 1,
                                                                          w.deg_lo, w.deg_hi}
                                                                 : w);
    if (!augmented) return k;
    // resolution augmented by the one-dimensional module on the right
    return with_augmentation(k, 1, true);
}

BigradedComplex dual_koszul_complex(FieldSpec field, const VariableSet& B, Window w) {
    return realize(dual_koszul_free(field, B), w);
}

CohomologyTable graded_ext_k_R(FieldSpec field, const VariableSet& B, Window w) {
    return dual_koszul_complex(field, B, w).cohomology();
}

SubsetInclusion koszul_subset_inclusion(FieldSpec field, const VariableSet& B, size_t m_small,
                                        Window w) {
    SubsetInclusion out{realize(koszul_free_on_subset(field, B, m_small), w),
                        realize(koszul_free(field, B), w), {}};
    const size_t m = B.m();
    std::map<Bidegree, SparseMatrix> blocks;
    for (const auto& [pos, slices] : out.sub.terms()) {
        int n = -pos;
        const auto& small_subsets = combi::subsets_colex((int)m_small, n);
        for (const auto& [t, slice] : slices) {
            const auto& basis = poly_component_basis(m, t - n);
            std::vector<SparseEntry> es;
            for (size_t si = 0; si < small_subsets.size(); ++si) {
                size_t big_index = combi::subset_index((int)m, small_subsets[si]);
                for (size_t ui = 0; ui < basis.size(); ++ui)
                    es.push_back({big_index * basis.size() + ui, si * basis.size() + ui,
                                  FieldScalar::one(field)});
            }
            blocks[{pos, t}] = SparseMatrix::from_triplets(
                field, out.full.dim(pos, t), slice.dim, std::move(es));
        }
    }
    out.inclusion = make_chain_map(out.sub, out.full, std::move(blocks));
    return out;
}

FPGradedModule FPGradedModule::free_module(size_t n_gens) {
    FPGradedModule m;
    for (size_t i = 0; i < n_gens; ++i) m.gens.push_back({"g" + std::to_string(i), 0});
    return m;
}

FPGradedModule FPGradedModule::quotient_by_variable(FieldSpec field, size_t nvars, size_t v) {
    FPGradedModule m;
    m.gens.push_back({"g", 0});
    m.rels.push_back({"r", 1});
    Expo x(nvars, 0);
    x[v] = 1;
    m.presentation[{0, 0}] = {{x, FieldScalar::one(field)}};
    return m;
}

FPGradedModule FPGradedModule::residue_field(FieldSpec field, size_t nvars) {
    FPGradedModule m;
    m.gens.push_back({"g", 0});
    for (size_t v = 0; v < nvars; ++v) {
        m.rels.push_back({"r" + std::to_string(v), 1});
        Expo x(nvars, 0);
        x[v] = 1;
        m.presentation[{0, v}] = {{x, FieldScalar::one(field)}};
    }
    return m;
}

nlohmann::json FPGradedModule::to_json(const FieldSpec& field) const {
    nlohmann::json j;
    j["field"] = field.str();
    auto& gs = j["generators"] = nlohmann::json::array();
    for (const auto& g : gens) gs.push_back({{"label", g.label}, {"shift", g.shift}});
    auto& rs = j["relations"] = nlohmann::json::array();
    for (const auto& r : rels) rs.push_back({{"label", r.label}, {"shift", r.shift}});
    auto& es = j["entries"] = nlohmann::json::array();
    for (const auto& [rc, p] : presentation) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : p)
            terms.push_back({{"exponents", t.mono}, {"coeff", t.coeff.str()}});
        es.push_back({{"row", rc.first}, {"col", rc.second}, {"poly", terms}});
    }
    return j;
}

FPGradedModule FPGradedModule::from_json(const nlohmann::json& j, const FieldSpec& field) {
    FPGradedModule m;
    for (const auto& g : j.at("generators"))
        m.gens.push_back({g.value("label", std::string("g")), g.at("shift").get<int>()});
    for (const auto& r : j.at("relations"))
        m.rels.push_back({r.value("label", std::string("r")), r.at("shift").get<int>()});
    for (const auto& e : j.at("entries")) {
        Poly p;
        for (const auto& t : e.at("poly"))
            p.push_back({t.at("exponents").get<Expo>(),
                         FieldScalar::parse(field, t.at("coeff").get<std::string>())});
        m.presentation[{e.at("row").get<size_t>(), e.at("col").get<size_t>()}] = std::move(p);
    }
    return m;
}

namespace {

// Canonical basis of a cokernel slice: reduction to the complement of the
// pivot coordinates of the relation image.
struct QuotientSlice {
    size_t ambient = 0;
    std::vector<size_t> free_coords;
    SparseMatrix reduce;  // |free| × ambient
    SparseMatrix section; // ambient × |free|
};

QuotientSlice quotient_slice(const FPGradedModule& M, const FieldSpec& field, size_t nvars, int d) {
    QuotientSlice q;
    std::vector<size_t> gen_off(M.gens.size() + 1, 0);
    for (size_t i = 0; i < M.gens.size(); ++i)
        gen_off[i + 1] = gen_off[i] + poly_component_dim(nvars, d - M.gens[i].shift);
    q.ambient = gen_off.back();
    if (q.ambient == 0) return q;

    // rows of rel_rows span the relation image inside the ambient slice
    std::vector<SparseEntry> es;
    size_t row = 0;
    for (size_t jcol = 0; jcol < M.rels.size(); ++jcol) {
        const auto& rel_basis = poly_component_basis(nvars, d - M.rels[jcol].shift);
        for (size_t wi = 0; wi < rel_basis.size(); ++wi) {
            for (const auto& [rc, p] : M.presentation) {
                if (rc.second != jcol) continue;
                for (const auto& term : p) {
                    Expo target = mono_mul(rel_basis[wi], term.mono);
                    size_t vi = combi::monomial_index(target);
                    es.push_back({row, gen_off[rc.first] + vi, term.coeff});
                }
            }
            ++row;
        }
    }
    SparseMatrix rel_rows = SparseMatrix::from_triplets_accumulate(field, row, q.ambient, std::move(es));

    // reduced row echelon data via kernel-style elimination
    std::vector<size_t> pivots;
    std::vector<std::vector<FieldScalar>> rref_rows;
    if (field.is_rational()) {
        // reuse the generic path through kernel_basis of the transpose is
        // wasteful; run a small dense elimination here instead
        size_t rows = rel_rows.rows(), cols = q.ambient;
        std::vector<std::vector<FieldScalar>> a(rows,
                                                std::vector<FieldScalar>(cols, FieldScalar::zero(field)));
        for (const auto& e : rel_rows.entries()) a[e.row][e.col] = e.value;
        size_t rank = 0;
        for (size_t c = 0; c < cols && rank < rows; ++c) {
            size_t pr = rank;
            while (pr < rows && a[pr][c].is_zero()) ++pr;
            if (pr == rows) continue;
            std::swap(a[pr], a[rank]);
            FieldScalar inv = a[rank][c].inverse();
            for (size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv;
            for (size_t r2 = 0; r2 < rows; ++r2) {
                if (r2 == rank || a[r2][c].is_zero()) continue;
                FieldScalar f = a[r2][c];
                for (size_t j = c; j < cols; ++j) a[r2][j] = a[r2][j] - f * a[rank][j];
            }
            pivots.push_back(c);
            ++rank;
        }
        a.resize(rank);
        rref_rows = std::move(a);
    } else {
        FpDense dm = fp_dense_from(rel_rows);
        fp_rref(dm, pivots, true);
        for (size_t r2 = 0; r2 < pivots.size(); ++r2) {
            std::vector<FieldScalar> rowv;
            for (size_t c = 0; c < dm.cols; ++c) rowv.push_back(FieldScalar::mod(field.p, dm.at(r2, c)));
            rref_rows.push_back(std::move(rowv));
        }
    }

    std::vector<bool> is_pivot(q.ambient, false);
    for (size_t c : pivots) is_pivot[c] = true;
    for (size_t c = 0; c < q.ambient; ++c)
        if (!is_pivot[c]) q.free_coords.push_back(c);

    std::map<size_t, size_t> free_index;
    for (size_t i = 0; i < q.free_coords.size(); ++i) free_index[q.free_coords[i]] = i;

    std::vector<SparseEntry> red, sec;
    for (size_t i = 0; i < q.free_coords.size(); ++i) {
        red.push_back({i, q.free_coords[i], FieldScalar::one(field)});
        sec.push_back({q.free_coords[i], i, FieldScalar::one(field)});
    }
    for (size_t r2 = 0; r2 < pivots.size(); ++r2)
        for (size_t c = 0; c < q.ambient; ++c) {
            if (is_pivot[c] || rref_rows[r2][c].is_zero()) continue;
            red.push_back({free_index[c], pivots[r2], -rref_rows[r2][c]});
        }
    q.reduce = SparseMatrix::from_triplets(field, q.free_coords.size(), q.ambient, std::move(red));
    q.section = SparseMatrix::from_triplets(field, q.ambient, q.free_coords.size(), std::move(sec));
    return q;
}

// Ambient slice of M ⊗ X at a position: for each complex generator g, a copy
// of the module's ambient slice at degree t − shift(g), with inner basis
// ordered (module generator, monomial).  The differential acts through the
// complex generators and is the identity on the module index.
struct ModuleAmbient {
    std::vector<size_t> gen_off;             // per complex generator
    std::vector<std::vector<size_t>> i_off;  // per complex generator, per module generator
    size_t total = 0;
};

ModuleAmbient module_ambient_layout(const FPGradedModule& M, size_t nvars,
                                    const std::vector<Generator>& gens, int t) {
    ModuleAmbient L;
    for (const auto& g : gens) {
        L.gen_off.push_back(L.total);
        std::vector<size_t> offs;
        size_t local = 0;
        for (const auto& mg : M.gens) {
            offs.push_back(local);
            local += poly_component_dim(nvars, t - g.shift - mg.shift);
        }
        L.i_off.push_back(std::move(offs));
        L.total += local;
    }
    return L;
}

SparseMatrix module_ambient_map(const FPGradedModule& M, const FreeComplex& X, int pos, int t) {
    const size_t m = X.vars.m();
    const auto& src_gens = X.gens.at(pos);
    ModuleAmbient src = module_ambient_layout(M, m, src_gens, t);
    ModuleAmbient tgt;
    auto tgt_it = X.gens.find(pos + 1);
    if (tgt_it != X.gens.end()) tgt = module_ambient_layout(M, m, tgt_it->second, t);

    std::vector<SparseEntry> es;
    auto d_it = X.diff.find(pos);
    if (d_it != X.diff.end())
        for (const auto& [rc, p] : d_it->second)
            for (size_t i = 0; i < M.gens.size(); ++i) {
                const auto& basis =
                    poly_component_basis(m, t - src_gens[rc.second].shift - M.gens[i].shift);
                for (size_t ui = 0; ui < basis.size(); ++ui)
                    for (const auto& term : p) {
                        size_t vi = combi::monomial_index(mono_mul(basis[ui], term.mono));
                        es.push_back({tgt.gen_off[rc.first] + tgt.i_off[rc.first][i] + vi,
                                      src.gen_off[rc.second] + src.i_off[rc.second][i] + ui,
                                      term.coeff});
                    }
            }
    return SparseMatrix::from_triplets_accumulate(X.field, tgt.total, src.total, std::move(es));
}

} // namespace

BigradedComplex tensor_fp_module(const FPGradedModule& M, const FreeComplex& X, Window w) {
    X.validate_homogeneous();
    const FieldSpec field = X.field;
    const size_t m = X.vars.m();
    for (const auto& [rc, p] : M.presentation) {
        int want = M.rels[rc.second].shift - M.gens[rc.first].shift;
        for (const auto& term : p) {
            int d = 0;
            for (int e : term.mono) d += e;
            if (d != want) throw inhomogeneous_error("presentation entry not homogeneous");
        }
    }

    // quotient data per internal degree of the module factor
    std::map<int, QuotientSlice> quot;
    auto quotient = [&](int d) -> const QuotientSlice& {
        auto it = quot.find(d);
        if (it == quot.end()) it = quot.emplace(d, quotient_slice(M, field, m, d)).first;
        return it->second;
    };

    // term at (pos, t): ⊕_g Quotient_{t − shift(g)}; the X differential acts
    // through generator-shifted copies of the module
    BigradedComplex::TermMap terms;
    struct GenBlock {
        size_t off_quot, off_amb;
        int d;
    };
    std::map<Bidegree, std::vector<GenBlock>> layout;
    for (const auto& [pos, gs] : X.gens) {
        if (pos < w.pos_lo || pos > w.pos_hi)
            throw shape_mismatch_error("window does not cover complex positions");
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            std::vector<GenBlock> blocks;
            size_t total = 0, amb = 0;
            for (const auto& g : gs) {
                const QuotientSlice& q = quotient(t - g.shift);
                blocks.push_back({total, amb, t - g.shift});
                total += q.free_coords.size();
                amb += q.ambient;
            }
            if (total > 0) terms[pos][t].dim = total;
            layout[{pos, t}] = std::move(blocks);
        }
    }

    BigradedComplex::DiffMap diffs;
    for (const auto& [pos, gs] : X.gens) {
        if (X.diff.find(pos) == X.diff.end()) continue;
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            // section → ambient map (tensored over generators) → reduce
            const auto& src_blocks = layout.at({pos, t});
            auto tgt_layout = layout.find({pos + 1, t});
            if (tgt_layout == layout.end()) continue;
            SparseMatrix amb = module_ambient_map(M, X, pos, t);
            if (amb.rows() == 0 || amb.cols() == 0) continue;

            // assemble block-diagonal section and reduction
            std::vector<SparseEntry> sec_es, red_es;
            size_t src_total = 0;
            for (const auto& b : src_blocks) {
                const QuotientSlice& q = quotient(b.d);
                for (const auto& e : q.section.entries())
                    sec_es.push_back({b.off_amb + e.row, b.off_quot + e.col, e.value});
                src_total += q.free_coords.size();
            }
            size_t tgt_total = 0, tgt_amb = 0;
            for (const auto& b : tgt_layout->second) {
                const QuotientSlice& q = quotient(b.d);
                for (const auto& e : q.reduce.entries())
                    red_es.push_back({b.off_quot + e.row, b.off_amb + e.col, e.value});
                tgt_total += q.free_coords.size();
                tgt_amb += q.ambient;
            }
            if (src_total == 0 || tgt_total == 0) continue;
            SparseMatrix section =
                SparseMatrix::from_triplets(field, amb.cols(), src_total, std::move(sec_es));
            SparseMatrix reduce =
                SparseMatrix::from_triplets(field, tgt_total, tgt_amb, std::move(red_es));
            SparseMatrix block = reduce * (amb * section);
            if (!block.is_zero()) diffs[{pos, t}] = std::move(block);
        }
    }

    SupportBounds bounds;
    int min_deg = 0;
    bool have = false;
    for (const auto& [pos, gs] : X.gens)
        for (const auto& g : gs)
            for (const auto& mg : M.gens) {
                int d = g.shift + mg.shift;
                if (!have || d < min_deg) min_deg = d;
                have = true;
            }
    bounds.deg_zero_below = have ? (w.deg_lo <= min_deg) : true;
    bounds.deg_zero_above = !have;
    return BigradedComplex::build(field, w, std::move(terms), std::move(diffs), bounds);
}

} // namespace acyclica::poly
