#include "acyclica/symcoalgebra.hpp"

#include <algorithm>
#include <sstream>

namespace acyclica::symc {

using combi::Expo;

size_t sym_dim(int a, int n) { return combi::monomial_count(a, n); }
size_t ext_dim(int a, int n) { return (n < 0 || n > a) ? 0 : (size_t)combi::binomial(a, n); }

SparseMatrix comult_component(FieldSpec f, int a, int j) {
    const auto& src = combi::monomials(a, j);
    const auto& tgt = combi::monomials(a, j - 1);
    std::vector<SparseEntry> es;
    for (size_t ui = 0; ui < src.size(); ++ui) {
        const Expo& u = src[ui];
        for (int i = 0; i < a; ++i) {
            if (u[i] == 0) continue;
            Expo v = u;
            v[i] -= 1;
            size_t vi = combi::monomial_index(v);
            es.push_back({vi * (size_t)a + (size_t)i, ui, FieldScalar::integer(f, u[i])});
        }
    }
    return SparseMatrix::from_triplets(f, tgt.size() * (size_t)a, src.size(), std::move(es));
}

SparseMatrix wedge_component(FieldSpec f, int a, int n) {
    const auto& src = combi::subsets_colex(a, n);
    const auto& tgt = combi::subsets_colex(a, n + 1);
    std::vector<SparseEntry> es;
    for (int i = 0; i < a; ++i)
        for (size_t ti = 0; ti < src.size(); ++ti) {
            const auto& T = src[ti];
            if (std::find(T.begin(), T.end(), i) != T.end()) continue;
            std::vector<int> big = T;
            auto it = std::lower_bound(big.begin(), big.end(), i);
            size_t below = (size_t)(it - big.begin());
            big.insert(it, i);
            es.push_back({combi::subset_index(a, big), (size_t)i * src.size() + ti,
                          FieldScalar::integer(f, below % 2 == 0 ? 1 : -1)});
        }
    return SparseMatrix::from_triplets(f, tgt.size(), (size_t)a * src.size(), std::move(es));
}

SparseMatrix contraction_component(FieldSpec f, int a, int n) {
    const auto& src = combi::subsets_colex(a, n + 1);
    const auto& tgt = combi::subsets_colex(a, n);
    std::vector<SparseEntry> es;
    for (int i = 0; i < a; ++i)
        for (size_t ti = 0; ti < src.size(); ++ti) {
            const auto& T = src[ti];
            auto it = std::find(T.begin(), T.end(), i);
            if (it == T.end()) continue;
            std::vector<int> rest;
            size_t below = 0;
            for (int t : T) {
                if (t == i) continue;
                if (t < i) ++below;
                rest.push_back(t);
            }
            es.push_back({combi::subset_index(a, rest), (size_t)i * src.size() + ti,
                          FieldScalar::integer(f, below % 2 == 0 ? 1 : -1)});
        }
    return SparseMatrix::from_triplets(f, tgt.size(), (size_t)a * src.size(), std::move(es));
}

namespace {

std::map<int, TermSlice> exterior_multiplicity(FieldSpec, int a, int n, bool dual) {
    std::map<int, TermSlice> v;
    TermSlice s;
    s.dim = ext_dim(a, n);
    for (const auto& t : combi::subsets_colex(a, n))
        s.labels.push_back(combi::subset_label(t) + (dual ? "*" : ""));
    if (s.dim > 0) v[dual ? -n : n] = std::move(s);
    return v;
}

} // namespace

LabelledComplex coresolution_labelled(FieldSpec f, int a) {
    LabelledComplex x;
    x.field = f;
    x.a = a;
    x.carrier = Carrier::cofree;
    for (int n = 0; n <= a; ++n) x.mult[n] = exterior_multiplicity(f, a, n, false);
    for (int n = 0; n < a; ++n) x.sigma[n][{1, n}] = wedge_component(f, a, n);
    return x;
}

LabelledComplex contramodule_resolution_labelled(FieldSpec f, int a) {
    LabelledComplex x;
    x.field = f;
    x.a = a;
    x.carrier = Carrier::free_contra;
    for (int n = 0; n <= a; ++n) x.mult[-n] = exterior_multiplicity(f, a, n, true);
    for (int n = 0; n < a; ++n) x.sigma[-n - 1][{1, -n - 1}] = contraction_component(f, a, n);
    return x;
}

LabelledComplex co_contra(const LabelledComplex& x, Direction dir) {
    Carrier need = dir == Direction::Psi ? Carrier::cofree : Carrier::free_contra;
    if (x.carrier != need)
        throw std::invalid_argument(dir == Direction::Psi
                                        ? "Psi requires a complex of cofree comodule terms"
                                        : "Phi requires a complex of free contramodule terms");
    LabelledComplex out = x;
    out.carrier = dir == Direction::Psi ? Carrier::free_contra : Carrier::cofree;
    return out;
}

namespace {

struct Comp {
    int i;           // multiplicity degree
    int j;           // Sym degree
    size_t sdim;     // dim Sym_j(W_μ)
    size_t vdim;     // dim V_i
    size_t offset;
};

std::vector<Comp> layout(const LabelledComplex& x, int pos, int t, int mu) {
    std::vector<Comp> comps;
    auto it = x.mult.find(pos);
    if (it == x.mult.end()) return comps;
    size_t off = 0;
    for (const auto& [i, slice] : it->second) {
        int j = x.carrier == Carrier::cofree ? t - i : i - t;
        if (j < 0) continue;
        size_t sd = sym_dim(mu, j);
        if (sd == 0 || slice.dim == 0) continue;
        comps.push_back({i, j, sd, slice.dim, off});
        off += sd * slice.dim;
    }
    return comps;
}

const Comp* find_comp(const std::vector<Comp>& comps, int i) {
    for (const auto& c : comps)
        if (c.i == i) return &c;
    return nullptr;
}

std::string carrier_string(const LabelledComplex& x, int pos) {
    std::ostringstream os;
    os << (x.carrier == Carrier::cofree ? "cofree" : "free") << "{";
    bool first = true;
    for (const auto& [i, slice] : x.mult.at(pos)) {
        if (!first) os << ",";
        os << i << ":" << slice.dim;
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace

BigradedComplex realize(const LabelledComplex& x, Window w, int m_active) {
    const int mu = m_active < 0 ? x.a : m_active;
    if (mu > x.a) throw shape_mismatch_error("subcoalgebra dimension exceeds dim W");
    const FieldSpec f = x.field;

    BigradedComplex::TermMap terms;
    for (const auto& [pos, vmap] : x.mult) {
        if (pos < w.pos_lo || pos > w.pos_hi)
            throw shape_mismatch_error("window does not cover complex positions");
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            auto comps = layout(x, pos, t, mu);
            size_t total = 0;
            std::vector<std::string> labels;
            for (const auto& c : comps) {
                total += c.sdim * c.vdim;
                const auto& monos = combi::monomials(mu, c.j);
                const auto& vlabels = x.mult.at(pos).at(c.i).labels;
                for (size_t ui = 0; ui < monos.size(); ++ui)
                    for (size_t v = 0; v < c.vdim; ++v) {
                        std::string ml = combi::monomial_label(monos[ui]);
                        std::string vl = v < vlabels.size() ? vlabels[v] : "v" + std::to_string(v);
                        labels.push_back(x.carrier == Carrier::cofree ? ml + "|" + vl
                                                                      : ml + "*|" + vl);
                    }
            }
            if (total == 0) continue;
            terms[pos][t].dim = total;
            terms[pos][t].labels = std::move(labels);
            terms[pos][t].carrier = carrier_string(x, pos);
        }
    }

    BigradedComplex::DiffMap diffs;
    for (const auto& [pos, sigmas] : x.sigma) {
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            auto src_comps = layout(x, pos, t, mu);
            auto tgt_comps = layout(x, pos + 1, t, mu);
            if (src_comps.empty() || tgt_comps.empty()) continue;
            size_t src_total = 0, tgt_total = 0;
            for (const auto& c : src_comps) src_total += c.sdim * c.vdim;
            for (const auto& c : tgt_comps) tgt_total += c.sdim * c.vdim;
            std::vector<SparseEntry> es;

            for (const auto& [key, block] : sigmas) {
                auto [d, i] = key;
                const Comp* src = find_comp(src_comps, i);
                const Comp* tgt = find_comp(tgt_comps, i + d);
                if (!src || !tgt) continue;
                const auto& wbasis = combi::monomials(x.a, d); // σ columns use all a variables
                const auto& src_monos = combi::monomials(mu, src->j);
                // organize σ entries by column (w, v)
                std::vector<std::vector<std::pair<size_t, FieldScalar>>> cols(block.cols());
                for (const auto& e : block.entries()) cols[e.col].push_back({e.row, e.value});

                if (x.carrier == Carrier::cofree) {
                    // u⊗v ↦ Σ_{w|u} split(u,w) (u/w) ⊗ σ(w⊗v)
                    for (size_t ui = 0; ui < src_monos.size(); ++ui) {
                        const Expo& u = src_monos[ui];
                        for (size_t wi = 0; wi < wbasis.size(); ++wi) {
                            Expo wmu(wbasis[wi].begin(), wbasis[wi].begin() + mu);
                            int wrest = 0;
                            for (int q = mu; q < x.a; ++q) wrest += wbasis[wi][q];
                            if (wrest > 0) continue; // w must lie in the subcoalgebra
                            bool divides = true;
                            Expo rest = u;
                            for (int q = 0; q < mu; ++q) {
                                rest[q] -= wmu[q];
                                if (rest[q] < 0) divides = false;
                            }
                            if (!divides) continue;
                            int64_t coeff = combi::split_coefficient(u, wmu);
                            FieldScalar cf = FieldScalar::integer(f, (long)coeff);
                            size_t rest_idx = combi::monomial_index(rest);
                            for (size_t v = 0; v < src->vdim; ++v)
                                for (const auto& [vp, sval] : cols[wi * src->vdim + v])
                                    es.push_back({tgt->offset + rest_idx * tgt->vdim + vp,
                                                  src->offset + ui * src->vdim + v, sval * cf});
                        }
                    }
                } else {
                    // u*⊗v ↦ Σ_w split(uw, w) (uw)* ⊗ σ(w⊗v)
                    for (size_t ui = 0; ui < src_monos.size(); ++ui) {
                        const Expo& u = src_monos[ui];
                        for (size_t wi = 0; wi < wbasis.size(); ++wi) {
                            Expo wmu(wbasis[wi].begin(), wbasis[wi].begin() + mu);
                            int wrest = 0;
                            for (int q = mu; q < x.a; ++q) wrest += wbasis[wi][q];
                            if (wrest > 0) continue;
                            Expo c = u;
                            for (int q = 0; q < mu; ++q) c[q] += wmu[q];
                            int64_t coeff = combi::split_coefficient(c, wmu);
                            FieldScalar cf = FieldScalar::integer(f, (long)coeff);
                            size_t c_idx = combi::monomial_index(c);
                            for (size_t v = 0; v < src->vdim; ++v)
                                for (const auto& [vp, sval] : cols[wi * src->vdim + v])
                                    es.push_back({tgt->offset + c_idx * tgt->vdim + vp,
                                                  src->offset + ui * src->vdim + v, sval * cf});
                        }
                    }
                }
            }
            if (!es.empty())
                diffs[{pos, t}] =
                    SparseMatrix::from_triplets_accumulate(f, tgt_total, src_total, std::move(es));
        }
    }

    SupportBounds bounds;
    int lo = 0, hi = 0;
    bool have = false;
    for (const auto& [pos, vmap] : x.mult)
        for (const auto& [i, slice] : vmap) {
            if (!have) lo = hi = i, have = true;
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    if (x.carrier == Carrier::cofree) {
        bounds.deg_zero_below = !have || w.deg_lo <= lo;
        bounds.deg_zero_above = !have;
    } else {
        bounds.deg_zero_above = !have || w.deg_hi >= hi;
        bounds.deg_zero_below = !have;
    }
    return BigradedComplex::build(f, w, std::move(terms), std::move(diffs), bounds);
}

namespace {

BigradedComplex add_field_term(const BigradedComplex& c, int pos, bool incoming) {
    BigradedComplex::TermMap terms = c.terms();
    BigradedComplex::DiffMap diffs = c.diffs();
    Window w = c.window();
    terms[pos][0].dim = 1;
    terms[pos][0].labels = {"1"};
    std::vector<SparseEntry> es{{0, 0, FieldScalar::one(c.field())}};
    if (incoming)
        diffs[{pos - 1, 0}] =
            SparseMatrix::from_triplets(c.field(), 1, c.dim(pos - 1, 0), std::move(es));
    else
        diffs[{pos, 0}] =
            SparseMatrix::from_triplets(c.field(), c.dim(pos + 1, 0), 1, std::move(es));
    w.pos_lo = std::min(w.pos_lo, pos);
    w.pos_hi = std::max(w.pos_hi, pos);
    return BigradedComplex::build(c.field(), w, std::move(terms), std::move(diffs), c.bounds(),
                                  c.flags());
}

} // namespace

BigradedComplex comodule_coresolution(FieldSpec f, int a, Window w, bool augmented) {
    Window inner = augmented ? Window{0, w.pos_hi, w.deg_lo, w.deg_hi} : w;
    BigradedComplex c = realize(coresolution_labelled(f, a), inner);
    if (!augmented) return c;
    return add_field_term(c, -1, false); // augmentation k → C in position −1
}

BigradedComplex contramodule_resolution(FieldSpec f, int a, Window w, bool augmented) {
    Window inner = augmented ? Window{w.pos_lo, 0, w.deg_lo, w.deg_hi} : w;
    BigradedComplex c = realize(contramodule_resolution_labelled(f, a), inner);
    if (!augmented) return c;
    return add_field_term(c, 1, true); // augmentation Hom(C,k) → k in position +1
}

BigradedComplex acyclic_comodule_complex(FieldSpec f, int a, Window w) {
    return realize(co_contra(contramodule_resolution_labelled(f, a), Direction::Phi), w);
}

BigradedComplex acyclic_contramodule_complex(FieldSpec f, int a, Window w) {
    return realize(co_contra(coresolution_labelled(f, a), Direction::Psi), w);
}

namespace {

// blocks of the inclusion Sym(W_m) ⊂ Sym(W_a) (cotensor) or of the
// restriction Hom(Sym(W_a),−) → Hom(Sym(W_m),−) (cohom)
std::map<Bidegree, SparseMatrix> sub_quotient_blocks(const LabelledComplex& x, int a, int m,
                                                     Window w, bool inclusion) {
    std::map<Bidegree, SparseMatrix> blocks;
    for (const auto& [pos, vmap] : x.mult) {
        for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
            auto small = layout(x, pos, t, m);
            auto big = layout(x, pos, t, a);
            if (small.empty() && big.empty()) continue;
            size_t small_total = 0, big_total = 0;
            for (const auto& c : small) small_total += c.sdim * c.vdim;
            for (const auto& c : big) big_total += c.sdim * c.vdim;
            std::vector<SparseEntry> es;
            for (const auto& sc : small) {
                const Comp* bc = find_comp(big, sc.i);
                if (!bc) continue;
                const auto& monos = combi::monomials(m, sc.j);
                for (size_t ui = 0; ui < monos.size(); ++ui) {
                    Expo padded = monos[ui];
                    padded.resize(a, 0);
                    size_t big_idx = combi::monomial_index(padded);
                    for (size_t v = 0; v < sc.vdim; ++v) {
                        size_t srow = sc.offset + ui * sc.vdim + v;
                        size_t brow = bc->offset + big_idx * bc->vdim + v;
                        if (inclusion)
                            es.push_back({brow, srow, FieldScalar::one(x.field)});
                        else
                            es.push_back({srow, brow, FieldScalar::one(x.field)});
                    }
                }
            }
            if (inclusion)
                blocks[{pos, t}] =
                    SparseMatrix::from_triplets(x.field, big_total, small_total, std::move(es));
            else
                blocks[{pos, t}] =
                    SparseMatrix::from_triplets(x.field, small_total, big_total, std::move(es));
        }
    }
    return blocks;
}

} // namespace

SubQuotient cotensor_subcomplex(FieldSpec f, int a, int m, Window w) {
    if (m > a) throw shape_mismatch_error("subcoalgebra dimension exceeds dim W");
    LabelledComplex x = co_contra(contramodule_resolution_labelled(f, a), Direction::Phi);
    SubQuotient out{realize(x, w, m), realize(x, w, a), {}};
    out.map = make_chain_map(out.part, out.full, sub_quotient_blocks(x, a, m, w, true));
    return out;
}

SubQuotient cohom_quotient(FieldSpec f, int a, int m, Window w) {
    if (m > a) throw shape_mismatch_error("subcoalgebra dimension exceeds dim W");
    LabelledComplex x = co_contra(coresolution_labelled(f, a), Direction::Psi);
    SubQuotient out{realize(x, w, m), realize(x, w, a), {}};
    out.map = make_chain_map(out.full, out.part, sub_quotient_blocks(x, a, m, w, false));
    return out;
}

BigradedComplex zero_exterior_complex(FieldSpec f, int v, bool dualized) {
    BigradedComplex::TermMap terms;
    for (int q = 0; q <= v; ++q) {
        int pos = dualized ? -q : q;
        TermSlice s;
        s.dim = ext_dim(v, q);
        for (const auto& t : combi::subsets_colex(v, q))
            s.labels.push_back(combi::subset_label(t) + (dualized ? "*" : ""));
        terms[pos][pos] = std::move(s);
    }
    Window w = dualized ? Window{-v, 0, -v, 0} : Window{0, v, 0, v};
    return BigradedComplex::build(f, w, std::move(terms), {});
}

size_t truncated_cofree_dim(int a, int D, size_t copies) {
    size_t d = 0;
    for (int j = 0; j <= D; ++j) d += sym_dim(a, j);
    return d * copies;
}

std::vector<std::pair<int, size_t>> term_slice_layout(const LabelledComplex& x, int pos, Window w,
                                                      int m_active) {
    const int mu = m_active < 0 ? x.a : m_active;
    std::vector<std::pair<int, size_t>> out;
    for (int t = w.deg_lo; t <= w.deg_hi; ++t) {
        size_t total = 0;
        for (const auto& c : layout(x, pos, t, mu)) total += c.sdim * c.vdim;
        if (total > 0) out.push_back({t, total});
    }
    return out;
}

SparseMatrix term_variable_action(const LabelledComplex& x, int pos, Window w, int var,
                                  int m_active) {
    const int mu = m_active < 0 ? x.a : m_active;
    const FieldSpec f = x.field;
    auto slices = term_slice_layout(x, pos, w, m_active);
    std::map<int, size_t> offset;
    size_t total = 0;
    for (const auto& [t, d] : slices) {
        offset[t] = total;
        total += d;
    }
    std::vector<SparseEntry> es;
    for (const auto& [t, d] : slices) {
        if (!offset.count(t - 1)) continue; // truncated below: acts by zero
        auto src_comps = layout(x, pos, t, mu);
        auto tgt_comps = layout(x, pos, t - 1, mu);
        for (const auto& sc : src_comps) {
            const Comp* tc = find_comp(tgt_comps, sc.i);
            if (!tc) continue;
            const auto& monos = combi::monomials(mu, sc.j);
            if (x.carrier == Carrier::cofree) {
                // u ⊗ v ↦ mult(u) (u/x) ⊗ v
                for (size_t ui = 0; ui < monos.size(); ++ui) {
                    const Expo& u = monos[ui];
                    if (var >= mu || u[var] == 0) continue;
                    Expo rest = u;
                    rest[var] -= 1;
                    size_t ri = combi::monomial_index(rest);
                    for (size_t v = 0; v < sc.vdim; ++v)
                        es.push_back({offset[t - 1] + tc->offset + ri * tc->vdim + v,
                                      offset[t] + sc.offset + ui * sc.vdim + v,
                                      FieldScalar::integer(f, u[var])});
                }
            } else {
                // u* ⊗ v ↦ (u_var + 1) (u·x)* ⊗ v
                if (var >= mu) continue;
                for (size_t ui = 0; ui < monos.size(); ++ui) {
                    Expo bigger = monos[ui];
                    bigger[var] += 1;
                    size_t bi = combi::monomial_index(bigger);
                    for (size_t v = 0; v < sc.vdim; ++v)
                        es.push_back({offset[t - 1] + tc->offset + bi * tc->vdim + v,
                                      offset[t] + sc.offset + ui * sc.vdim + v,
                                      FieldScalar::integer(f, monos[ui][var] + 1)});
                }
            }
        }
    }
    return SparseMatrix::from_triplets(f, total, total, std::move(es));
}

std::vector<SparseMatrix> truncated_cofree_actions(FieldSpec f, int a, int D, size_t copies) {
    std::vector<size_t> deg_off(D + 2, 0);
    for (int j = 0; j <= D; ++j) deg_off[j + 1] = deg_off[j] + sym_dim(a, j);
    size_t dim = deg_off[D + 1] * copies;
    std::vector<SparseMatrix> actions;
    for (int i = 0; i < a; ++i) {
        std::vector<SparseEntry> es;
        for (int j = 1; j <= D; ++j) {
            const auto& monos = combi::monomials(a, j);
            for (size_t ui = 0; ui < monos.size(); ++ui) {
                const Expo& u = monos[ui];
                if (u[i] == 0) continue;
                Expo v = u;
                v[i] -= 1;
                size_t vi = combi::monomial_index(v);
                for (size_t c = 0; c < copies; ++c)
                    es.push_back({(deg_off[j - 1] + vi) * copies + c,
                                  (deg_off[j] + ui) * copies + c,
                                  FieldScalar::integer(f, u[i])});
            }
        }
        actions.push_back(SparseMatrix::from_triplets(f, dim, dim, std::move(es)));
    }
    return actions;
}

} // namespace acyclica::symc
