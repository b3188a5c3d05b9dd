#include "acyclica/complex_ops.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>

#include "acyclica/parallel.hpp"

namespace acyclica {

namespace {

struct DegProfile {
    // per position: nonzero stored degrees (min/max), plus unknown rays
    bool has_nz = false;
    int nz_min = 0, nz_max = 0;
};

DegProfile profile_at(const BigradedComplex& c, int pos) {
    DegProfile pr;
    auto it = c.terms().find(pos);
    if (it == c.terms().end()) return pr;
    for (const auto& [deg, slice] : it->second) {
        if (!pr.has_nz) pr.nz_min = pr.nz_max = deg, pr.has_nz = true;
        pr.nz_min = std::min(pr.nz_min, deg);
        pr.nz_max = std::max(pr.nz_max, deg);
    }
    return pr;
}

// Does some decomposition s + u = t hit an unknown slice of one factor while
// the other factor is possibly nonzero there?  Degree windows of x and y are
// [xl,xh] and [yl,yh]; unknown rays exist where the support is not certified
// zero beyond the window.
bool tensor_pair_flagged(const BigradedComplex& x, const BigradedComplex& y, int p, int q, int t) {
    const auto& bx = x.bounds();
    const auto& by = y.bounds();
    const int xl = x.window().deg_lo, xh = x.window().deg_hi;
    const int yl = y.window().deg_lo, yh = y.window().deg_hi;
    const bool xu_above = !bx.deg_zero_above, xu_below = !bx.deg_zero_below;
    const bool yu_above = !by.deg_zero_above, yu_below = !by.deg_zero_below;
    DegProfile px = profile_at(x, p);
    DegProfile py = profile_at(y, q);
    const bool x_lives = px.has_nz || xu_above || xu_below;
    const bool y_lives = py.has_nz || yu_above || yu_below;
    if (!x_lives || !y_lives) return false;

    if (xu_above) {
        if (py.has_nz && py.nz_min <= t - xh - 1) return true;
        if (yu_below) return true;
        if (yu_above && xh + 1 <= t - yh - 1) return true;
    }
    if (xu_below) {
        if (py.has_nz && py.nz_max >= t - xl + 1) return true;
        if (yu_above) return true;
        if (yu_below && t - yl + 1 <= xl - 1) return true;
    }
    if (yu_above && px.has_nz && px.nz_min <= t - yh - 1) return true;
    if (yu_below && px.has_nz && px.nz_max >= t - yl + 1) return true;
    return false;
}

bool hom_pair_flagged(const BigradedComplex& x, const BigradedComplex& y, int p, int q, int t) {
    // decompositions u − s = t with X(p,s), Y(q,u)
    const auto& bx = x.bounds();
    const auto& by = y.bounds();
    const int xl = x.window().deg_lo, xh = x.window().deg_hi;
    const int yl = y.window().deg_lo, yh = y.window().deg_hi;
    const bool xu_above = !bx.deg_zero_above, xu_below = !bx.deg_zero_below;
    const bool yu_above = !by.deg_zero_above, yu_below = !by.deg_zero_below;
    DegProfile px = profile_at(x, p);
    DegProfile py = profile_at(y, q);
    const bool x_lives = px.has_nz || xu_above || xu_below;
    const bool y_lives = py.has_nz || yu_above || yu_below;
    if (!x_lives || !y_lives) return false;

    if (xu_above) {
        if (py.has_nz && py.nz_max >= t + xh + 1) return true;
        if (yu_above) return true;
        if (yu_below && xh + 1 <= yl - 1 - t) return true;
    }
    if (xu_below) {
        if (py.has_nz && py.nz_min <= t + xl - 1) return true;
        if (yu_below) return true;
        if (yu_above && yh + 1 - t <= xl - 1) return true;
    }
    if (yu_above && px.has_nz && px.nz_max >= yh + 1 - t) return true;
    if (yu_below && px.has_nz && px.nz_min <= yl - 1 - t) return true;
    return false;
}

struct Component {
    int p, s;        // x bidegree; partner bidegree implied
    size_t dx, dy;   // factor dims
    size_t offset;   // start of this component in the term basis
};

using ComponentMap = std::map<Bidegree, std::vector<Component>>;

} // namespace

BigradedComplex tensor(const BigradedComplex& x, const BigradedComplex& y) {
    if (!(x.field() == y.field())) throw field_mismatch_error("tensor over different fields");
    if (!x.position_bounded() || !y.position_bounded())
        throw unbounded_complex_error("tensor of position-unbounded complexes");
    const FieldSpec f = x.field();

    Window w{x.window().pos_lo + y.window().pos_lo, x.window().pos_hi + y.window().pos_hi,
             x.window().deg_lo + y.window().deg_lo, x.window().deg_hi + y.window().deg_hi};

    ComponentMap comps;
    for (const auto& [p, xs] : x.terms())
        for (const auto& [s, xslice] : xs)
            for (const auto& [q, ys] : y.terms())
                for (const auto& [u, yslice] : ys)
                    comps[{p + q, s + u}].push_back({p, s, xslice.dim, yslice.dim, 0});

    BigradedComplex::TermMap terms;
    for (auto& [bd, list] : comps) {
        std::sort(list.begin(), list.end(), [](const Component& a, const Component& b) {
            return a.p != b.p ? a.p < b.p : a.s < b.s;
        });
        size_t total = 0;
        for (auto& c : list) {
            c.offset = total;
            total += c.dx * c.dy;
        }
        terms[bd.pos][bd.deg].dim = total;
    }

    auto find_component = [&](int pos, int deg, int p, int s) -> const Component* {
        auto it = comps.find({pos, deg});
        if (it == comps.end()) return nullptr;
        for (const auto& c : it->second)
            if (c.p == p && c.s == s) return &c;
        return nullptr;
    };

    BigradedComplex::DiffMap diffs;
    for (const auto& [bd, list] : comps) {
        std::vector<SparseEntry> es;
        for (const auto& c : list) {
            // d_X ⊗ id: component (p,s) → (p+1,s)
            SparseMatrix dx = x.diff(c.p, c.s);
            if (!dx.is_zero()) {
                const Component* tgt = find_component(bd.pos + 1, bd.deg, c.p + 1, c.s);
                if (tgt)
                    for (const auto& e : dx.entries())
                        for (size_t j = 0; j < c.dy; ++j)
                            es.push_back({tgt->offset + e.row * c.dy + j,
                                          c.offset + e.col * c.dy + j, e.value});
            }
            // (−1)^p id ⊗ d_Y: component (p,s) → (p,s)
            int q = bd.pos - c.p, u = bd.deg - c.s;
            SparseMatrix dy = y.diff(q, u);
            if (!dy.is_zero()) {
                const Component* tgt = find_component(bd.pos + 1, bd.deg, c.p, c.s);
                if (tgt) {
                    FieldScalar sign = FieldScalar::integer(f, c.p % 2 == 0 ? 1 : -1);
                    for (const auto& e : dy.entries())
                        for (size_t i = 0; i < c.dx; ++i)
                            es.push_back({tgt->offset + i * dy.rows() + e.row,
                                          c.offset + i * c.dy + e.col, e.value * sign});
                }
            }
        }
        if (!es.empty()) {
            size_t rows = terms.count(bd.pos + 1) && terms[bd.pos + 1].count(bd.deg)
                              ? terms[bd.pos + 1][bd.deg].dim
                              : 0;
            diffs[bd] = SparseMatrix::from_triplets(f, rows, terms[bd.pos][bd.deg].dim, std::move(es));
        }
    }

    SupportBounds bounds;
    bounds.deg_zero_below = x.bounds().deg_zero_below && y.bounds().deg_zero_below;
    bounds.deg_zero_above = x.bounds().deg_zero_above && y.bounds().deg_zero_above;

    std::set<Bidegree> flags;
    for (int n = w.pos_lo; n <= w.pos_hi; ++n)
        for (int t = w.deg_lo; t <= w.deg_hi; ++t)
            for (int p = x.window().pos_lo; p <= x.window().pos_hi; ++p) {
                int q = n - p;
                if (q < y.window().pos_lo || q > y.window().pos_hi) continue;
                if (tensor_pair_flagged(x, y, p, q, t)) {
                    flags.insert({n, t});
                    break;
                }
            }
    return BigradedComplex::build(f, w, std::move(terms), std::move(diffs), bounds, std::move(flags));
}

BigradedComplex hom_complex(const BigradedComplex& x, const BigradedComplex& y) {
    if (!(x.field() == y.field())) throw field_mismatch_error("hom over different fields");
    if (!x.position_bounded())
        throw unbounded_complex_error("hom source must be bounded within its window");
    const FieldSpec f = x.field();

    Window w{y.window().pos_lo - x.window().pos_hi, y.window().pos_hi - x.window().pos_lo,
             y.window().deg_lo - x.window().deg_hi, y.window().deg_hi - x.window().deg_lo};

    ComponentMap comps;
    for (const auto& [p, xs] : x.terms())
        for (const auto& [s, xslice] : xs)
            for (const auto& [q, ys] : y.terms())
                for (const auto& [u, yslice] : ys)
                    comps[{q - p, u - s}].push_back({p, s, xslice.dim, yslice.dim, 0});

    BigradedComplex::TermMap terms;
    for (auto& [bd, list] : comps) {
        std::sort(list.begin(), list.end(), [](const Component& a, const Component& b) {
            return a.p != b.p ? a.p < b.p : a.s < b.s;
        });
        size_t total = 0;
        for (auto& c : list) {
            c.offset = total;
            total += c.dx * c.dy;
        }
        terms[bd.pos][bd.deg].dim = total;
    }

    auto find_component = [&](int pos, int deg, int p, int s) -> const Component* {
        auto it = comps.find({pos, deg});
        if (it == comps.end()) return nullptr;
        for (const auto& c : it->second)
            if (c.p == p && c.s == s) return &c;
        return nullptr;
    };

    // f ↦ d_Y∘f − (−1)^{|f|} f∘d_X; Hom(X(p,s), Y(q,u)) basis index i·dimY + j
    BigradedComplex::DiffMap diffs;
    for (const auto& [bd, list] : comps) {
        std::vector<SparseEntry> es;
        FieldScalar msign = FieldScalar::integer(f, bd.pos % 2 == 0 ? -1 : 1);
        for (const auto& c : list) {
            int q = bd.pos + c.p, u = bd.deg + c.s;
            SparseMatrix dy = y.diff(q, u);
            if (!dy.is_zero()) {
                const Component* tgt = find_component(bd.pos + 1, bd.deg, c.p, c.s);
                if (tgt)
                    for (const auto& e : dy.entries())
                        for (size_t i = 0; i < c.dx; ++i)
                            es.push_back({tgt->offset + i * tgt->dy + e.row,
                                          c.offset + i * c.dy + e.col, e.value});
            }
            SparseMatrix dx = x.diff(c.p - 1, c.s);
            if (!dx.is_zero()) {
                const Component* tgt = find_component(bd.pos + 1, bd.deg, c.p - 1, c.s);
                if (tgt)
                    for (const auto& e : dx.entries())
                        for (size_t j = 0; j < c.dy; ++j)
                            es.push_back({tgt->offset + e.col * tgt->dy + j,
                                          c.offset + e.row * c.dy + j, e.value * msign});
            }
        }
        if (!es.empty()) {
            size_t rows = terms.count(bd.pos + 1) && terms[bd.pos + 1].count(bd.deg)
                              ? terms[bd.pos + 1][bd.deg].dim
                              : 0;
            diffs[bd] = SparseMatrix::from_triplets(f, rows, terms[bd.pos][bd.deg].dim, std::move(es));
        }
    }

    SupportBounds bounds;
    bounds.deg_zero_below = x.bounds().deg_zero_above && y.bounds().deg_zero_below;
    bounds.deg_zero_above = x.bounds().deg_zero_below && y.bounds().deg_zero_above;
    if (!y.position_bounded()) bounds.pos_zero_below = bounds.pos_zero_above = false;

    std::set<Bidegree> flags;
    for (int n = w.pos_lo; n <= w.pos_hi; ++n)
        for (int t = w.deg_lo; t <= w.deg_hi; ++t)
            for (int p = x.window().pos_lo; p <= x.window().pos_hi; ++p) {
                int q = n + p;
                if (q < y.window().pos_lo || q > y.window().pos_hi) continue;
                if (hom_pair_flagged(x, y, p, q, t)) {
                    flags.insert({n, t});
                    break;
                }
            }
    return BigradedComplex::build(f, w, std::move(terms), std::move(diffs), bounds, std::move(flags));
}

BigradedComplex dualize(const BigradedComplex& x) {
    const FieldSpec f = x.field();
    Window w{-x.window().pos_hi, -x.window().pos_lo, -x.window().deg_hi, -x.window().deg_lo};
    BigradedComplex::TermMap terms;
    for (const auto& [p, xs] : x.terms())
        for (const auto& [s, slice] : xs) {
            TermSlice t;
            t.dim = slice.dim;
            t.labels = slice.labels;
            terms[-p][-s] = std::move(t);
        }
    BigradedComplex::DiffMap diffs;
    for (const auto& [bd, m] : x.diffs()) diffs[{-bd.pos - 1, -bd.deg}] = m.transpose();
    SupportBounds b;
    b.pos_zero_below = x.bounds().pos_zero_above;
    b.pos_zero_above = x.bounds().pos_zero_below;
    b.deg_zero_below = x.bounds().deg_zero_above;
    b.deg_zero_above = x.bounds().deg_zero_below;
    std::set<Bidegree> flags;
    for (const auto& bd : x.flags()) flags.insert({-bd.pos, -bd.deg});
    return BigradedComplex::build(f, w, std::move(terms), std::move(diffs), b, std::move(flags));
}

BigradedComplex shift(const BigradedComplex& x, int dpos, int ddeg) {
    Window w{x.window().pos_lo + dpos, x.window().pos_hi + dpos, x.window().deg_lo + ddeg,
             x.window().deg_hi + ddeg};
    BigradedComplex::TermMap terms;
    for (const auto& [p, xs] : x.terms())
        for (const auto& [s, slice] : xs) terms[p + dpos][s + ddeg] = slice;
    BigradedComplex::DiffMap diffs;
    for (const auto& [bd, m] : x.diffs()) diffs[{bd.pos + dpos, bd.deg + ddeg}] = m;
    std::set<Bidegree> flags;
    for (const auto& bd : x.flags()) flags.insert({bd.pos + dpos, bd.deg + ddeg});
    return BigradedComplex::build(x.field(), w, std::move(terms), std::move(diffs), x.bounds(),
                                  std::move(flags));
}

BigradedComplex point_complex(FieldSpec field, int pos, int deg) {
    BigradedComplex::TermMap terms;
    terms[pos][deg].dim = 1;
    return BigradedComplex::build(field, Window{pos, pos, deg, deg}, std::move(terms), {});
}

namespace {

std::string commutant_key(const FieldSpec& f, size_t a, size_t b,
                          const std::vector<std::pair<SparseMatrix, SparseMatrix>>& gens) {
    std::ostringstream os;
    os << f.str() << ':' << a << 'x' << b;
    for (const auto& [tgt, src] : gens) {
        os << "|T";
        for (const auto& e : tgt.entries()) os << e.row << ',' << e.col << ',' << e.value.str() << ';';
        os << "S";
        for (const auto& e : src.entries()) os << e.row << ',' << e.col << ',' << e.value.str() << ';';
    }
    return os.str();
}

} // namespace

// Results are memoized: the same block shape recurs across property-suite
// trials.
SparseMatrix commutant_basis(const FieldSpec& f, size_t a, size_t b,
                             const std::vector<std::pair<SparseMatrix, SparseMatrix>>& gens) {
    if (gens.empty()) return SparseMatrix::identity(f, a * b);
    static std::mutex mu;
    static std::map<std::string, SparseMatrix> cache;
    std::string key = commutant_key(f, a, b, gens);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<SparseEntry> es;
    size_t row_off = 0;
    for (const auto& [tgt, src] : gens) {
        // rows (j·a + i): Σ_k tgt[i,k] H[k,j] − Σ_l H[i,l] src[l,j] = 0
        for (const auto& e : tgt.entries())
            for (size_t j = 0; j < b; ++j)
                es.push_back({row_off + j * a + e.row, j * a + e.col, e.value});
        for (const auto& e : src.entries())
            for (size_t i = 0; i < a; ++i)
                es.push_back({row_off + e.col * a + i, e.row * a + i, -e.value});
        row_off += a * b;
    }
    SparseMatrix sys = SparseMatrix::from_triplets_accumulate(f, row_off, a * b, std::move(es));
    SparseMatrix basis = kernel_basis(sys);
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, basis);
    }
    return basis;
}

namespace {

struct SliceResult {
    bool feasible = false;
    std::map<Bidegree, SparseMatrix> blocks;
};

SliceResult solve_slice(const BigradedComplex& x, const Equivariance* eq, int t) {
    const FieldSpec f = x.field();
    std::vector<int> positions;
    for (const auto& [p, xs] : x.terms())
        if (xs.count(t) && xs.at(t).dim > 0) positions.push_back(p);
    SliceResult res;
    if (positions.empty()) {
        res.feasible = true;
        return res;
    }

    auto action = [&](size_t g, int p) -> SparseMatrix {
        const auto& m = eq->generators[g];
        auto it = m.find({p, t});
        if (it == m.end())
            throw shape_mismatch_error("equivariance generator missing block at (" +
                                       std::to_string(p) + "," + std::to_string(t) + ")");
        if (it->second.rows() != x.dim(p, t) || it->second.cols() != x.dim(p, t))
            throw shape_mismatch_error("equivariance block must be square of the term dimension");
        return it->second;
    };

    // one unknown block H_p : X(p,t) → X(p−1,t) per adjacent nonzero pair
    struct Block {
        int p;
        size_t a, b;      // target dim, source dim
        SparseMatrix K;   // parametrization of the admissible H's
        size_t var_off;
    };
    std::vector<Block> blocks;
    size_t nvars = 0;
    for (int p : positions) {
        size_t a = x.dim(p - 1, t), b = x.dim(p, t);
        if (a == 0 || b == 0) continue;
        std::vector<std::pair<SparseMatrix, SparseMatrix>> gens;
        if (eq)
            for (size_t g = 0; g < eq->generators.size(); ++g)
                gens.push_back({action(g, p - 1), action(g, p)});
        Block blk{p, a, b, commutant_basis(f, a, b, gens), 0};
        blk.var_off = nvars;
        nvars += blk.K.cols();
        blocks.push_back(std::move(blk));
    }
    auto block_for = [&](int p) -> const Block* {
        for (const auto& b : blocks)
            if (b.p == p) return &b;
        return nullptr;
    };

    size_t nrows = 0;
    std::map<int, size_t> row_off;
    for (int p : positions) {
        row_off[p] = nrows;
        nrows += x.dim(p, t) * x.dim(p, t);
    }

    std::vector<SparseEntry> es;
    std::vector<FieldScalar> rhs(nrows, FieldScalar::zero(f));
    for (int p : positions) {
        size_t n = x.dim(p, t);
        for (size_t i = 0; i < n; ++i) rhs[row_off[p] + i * n + i] = FieldScalar::one(f);

        if (const Block* blk = block_for(p)) {
            // d_{p−1}∘H_p
            SparseMatrix d_in = x.diff(p - 1, t); // n × a
            std::vector<std::vector<std::pair<size_t, FieldScalar>>> dcols(blk->a);
            for (const auto& e : d_in.entries()) dcols[e.col].push_back({e.row, e.value});
            for (const auto& ke : blk->K.entries()) {
                size_t j = ke.row / blk->a, k = ke.row % blk->a;
                for (const auto& [i, v] : dcols[k])
                    es.push_back({row_off[p] + j * n + i, blk->var_off + ke.col, v * ke.value});
            }
        }
        if (const Block* blk = block_for(p + 1)) {
            // H_{p+1}∘d_p ; H_{p+1} is n × c with c = dim(p+1,t)
            SparseMatrix d_out = x.diff(p, t); // c × n
            std::vector<std::vector<std::pair<size_t, FieldScalar>>> drows(blk->b);
            for (const auto& e : d_out.entries()) drows[e.row].push_back({e.col, e.value});
            for (const auto& ke : blk->K.entries()) {
                size_t l = ke.row / blk->a, i = ke.row % blk->a;
                for (const auto& [j, w] : drows[l])
                    es.push_back({row_off[p] + j * n + i, blk->var_off + ke.col, ke.value * w});
            }
        }
    }

    SparseMatrix sys = SparseMatrix::from_triplets_accumulate(f, nrows, nvars, std::move(es));
    auto sol = solve_feasible(sys, rhs);
    if (!sol) return res;
    res.feasible = true;
    for (const auto& blk : blocks) {
        std::vector<FieldScalar> lambda(blk.K.cols(), FieldScalar::zero(f));
        for (size_t m = 0; m < blk.K.cols(); ++m) lambda[m] = (*sol)[blk.var_off + m];
        std::vector<FieldScalar> vec = blk.K.apply(lambda);
        std::vector<SparseEntry> hes;
        for (size_t r = 0; r < vec.size(); ++r)
            if (!vec[r].is_zero()) hes.push_back({r % blk.a, r / blk.a, vec[r]});
        res.blocks[{blk.p, t}] =
            SparseMatrix::from_triplets(f, blk.a, blk.b, std::move(hes));
    }
    return res;
}

} // namespace

std::optional<std::map<Bidegree, SparseMatrix>> null_homotopy(const BigradedComplex& x,
                                                              const Equivariance* eq) {
    if (!x.position_bounded())
        throw unbounded_complex_error("null homotopy requires a position-bounded complex");
    std::vector<int> degs;
    for (int t : x.stored_degrees()) degs.push_back(t);
    std::vector<SliceResult> results(degs.size());
    par::parallel_for(degs.size(), [&](size_t i) { results[i] = solve_slice(x, eq, degs[i]); });

    std::map<Bidegree, SparseMatrix> h;
    for (auto& r : results) {
        if (!r.feasible) return std::nullopt;
        for (auto& [bd, m] : r.blocks) h[bd] = std::move(m);
    }
    // exact verification of dh + hd = id on every slice
    auto hblock = [&](int p, int t) {
        auto it = h.find({p, t});
        if (it != h.end()) return it->second;
        return SparseMatrix(x.field(), x.dim(p - 1, t), x.dim(p, t));
    };
    for (const auto& [p, xs] : x.terms())
        for (const auto& [t, slice] : xs) {
            SparseMatrix sum = x.diff(p - 1, t) * hblock(p, t) + hblock(p + 1, t) * x.diff(p, t);
            if (!(sum == SparseMatrix::identity(x.field(), slice.dim)))
                throw std::logic_error("homotopy verification failed");
        }
    return h;
}

CohomologyTable kuenneth_convolution(const CohomologyTable& hx, const CohomologyTable& hy) {
    CohomologyTable out;
    for (const auto& [bx, dx] : hx.dims)
        for (const auto& [by, dy] : hy.dims) {
            if (hx.flagged.count(bx) || hy.flagged.count(by)) continue;
            out.dims[{bx.pos + by.pos, bx.deg + by.deg}] += dx * dy;
        }
    auto other_touches = [](const CohomologyTable& t, const Bidegree& flag_bd) {
        std::vector<Bidegree> touched;
        for (const auto& [bd, d] : t.dims) touched.push_back({flag_bd.pos + bd.pos, flag_bd.deg + bd.deg});
        for (const auto& bd : t.flagged) touched.push_back({flag_bd.pos + bd.pos, flag_bd.deg + bd.deg});
        return touched;
    };
    for (const auto& bd : hx.flagged)
        for (const auto& o : other_touches(hy, bd)) out.flagged.insert(o);
    for (const auto& bd : hy.flagged)
        for (const auto& o : other_touches(hx, bd)) out.flagged.insert(o);
    for (auto it = out.dims.begin(); it != out.dims.end();)
        it = it->second == 0 ? out.dims.erase(it) : std::next(it);
    return out;
}

uint64_t mix_seed(uint64_t master, uint64_t index) {
    uint64_t z = master + index * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// I + N with N strictly upper triangular; the inverse is the finite
// alternating sum of powers of N.
std::pair<SparseMatrix, SparseMatrix> random_unitriangular(FieldSpec f, size_t n,
                                                           std::mt19937_64& rng) {
    std::vector<SparseEntry> ns;
    std::uniform_int_distribution<int> val(-2, 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            int v = val(rng);
            if (v != 0) ns.push_back({i, j, FieldScalar::integer(f, v)});
        }
    SparseMatrix nmat = SparseMatrix::from_triplets(f, n, n, std::move(ns));
    SparseMatrix id = SparseMatrix::identity(f, n);
    SparseMatrix u = id + nmat;
    SparseMatrix inv = id;
    SparseMatrix pw = nmat;
    int sign = -1;
    while (!pw.is_zero()) {
        inv = sign > 0 ? inv + pw : inv + (-pw);
        pw = pw * nmat;
        sign = -sign;
    }
    return {u, inv};
}

std::pair<SparseMatrix, SparseMatrix> random_change_of_basis(FieldSpec f, size_t n,
                                                             std::mt19937_64& rng) {
    auto [u1, inv1] = random_unitriangular(f, n, rng);
    // conjugating permutation
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<SparseEntry> pes;
    for (size_t i = 0; i < n; ++i) pes.push_back({perm[i], i, FieldScalar::one(f)});
    SparseMatrix p = SparseMatrix::from_triplets(f, n, n, std::move(pes));
    return {p * u1, inv1 * p.transpose()};
}

} // namespace

BigradedComplex random_complex(FieldSpec field, uint64_t seed, int max_positions, int max_degrees,
                               size_t max_dim) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pos_d(0, max_positions - 2);
    std::uniform_int_distribution<int> deg_d(0, max_degrees - 1);
    std::uniform_int_distribution<size_t> dim_d(1, max_dim);
    std::uniform_int_distribution<int> kind_d(0, 2);
    std::uniform_int_distribution<int> count_d(1, 3);

    std::map<Bidegree, size_t> dims;
    std::map<Bidegree, std::vector<SparseEntry>> diff_entries;
    int pieces = count_d(rng);
    for (int k = 0; k < pieces; ++k) {
        int p = pos_d(rng), t = deg_d(rng);
        size_t d = dim_d(rng);
        if (kind_d(rng) == 0) {
            dims[{p, t}] += d; // one-term piece: contributes to cohomology
        } else {
            size_t off_src = dims[{p, t}], off_tgt = dims[{p + 1, t}];
            dims[{p, t}] += d;
            dims[{p + 1, t}] += d;
            for (size_t i = 0; i < d; ++i)
                diff_entries[{p, t}].push_back(
                    {off_tgt + i, off_src + i, FieldScalar::one(field)});
        }
    }

    BigradedComplex::TermMap terms;
    for (const auto& [bd, d] : dims) terms[bd.pos][bd.deg].dim = d;

    // hide the direct-sum structure by a slicewise change of basis
    std::map<Bidegree, std::pair<SparseMatrix, SparseMatrix>> bases;
    for (const auto& [bd, d] : dims) bases[bd] = random_change_of_basis(field, d, rng);

    BigradedComplex::DiffMap diffs;
    for (auto& [bd, es] : diff_entries) {
        SparseMatrix raw =
            SparseMatrix::from_triplets(field, dims[{bd.pos + 1, bd.deg}], dims[bd], std::move(es));
        diffs[bd] = bases[{bd.pos + 1, bd.deg}].first * raw * bases[bd].second;
    }

    Window w{0, max_positions, 0, max_degrees - 1};
    return BigradedComplex::build(field, w, std::move(terms), std::move(diffs));
}

} // namespace acyclica
