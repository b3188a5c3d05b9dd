#include "acyclica/bigraded.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "acyclica/parallel.hpp"

namespace acyclica {

size_t CohomologyTable::at(int pos, int deg) const {
    auto it = dims.find({pos, deg});
    return it == dims.end() ? 0 : it->second;
}

size_t CohomologyTable::total_at_position(int pos) const {
    size_t t = 0;
    for (const auto& [bd, d] : dims)
        if (bd.pos == pos && !flagged.count(bd)) t += d;
    return t;
}

size_t CohomologyTable::total() const {
    size_t t = 0;
    for (const auto& [bd, d] : dims)
        if (!flagged.count(bd)) t += d;
    return t;
}

bool CohomologyTable::concentrated_at_position(int pos) const {
    for (const auto& [bd, d] : dims)
        if (d > 0 && bd.pos != pos && !flagged.count(bd)) return false;
    return true;
}

bool CohomologyTable::equal_unflagged(const CohomologyTable& o) const {
    std::set<Bidegree> keys;
    for (const auto& [bd, d] : dims) keys.insert(bd);
    for (const auto& [bd, d] : o.dims) keys.insert(bd);
    for (const auto& bd : keys) {
        if (flagged.count(bd) || o.flagged.count(bd)) continue;
        if (at(bd.pos, bd.deg) != o.at(bd.pos, bd.deg)) return false;
    }
    return true;
}

nlohmann::json CohomologyTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    std::set<Bidegree> keys = flagged;
    for (const auto& [bd, d] : dims) keys.insert(bd);
    for (const auto& bd : keys) {
        rows.push_back({{"position", bd.pos},
                        {"internal_degree", bd.deg},
                        {"dim", at(bd.pos, bd.deg)},
                        {"boundary_flag", flagged.count(bd) > 0}});
    }
    return rows;
}

std::string CohomologyTable::to_csv() const {
    std::ostringstream out;
    out << "position,internal_degree,dim,boundary_flag\n";
    std::set<Bidegree> keys = flagged;
    for (const auto& [bd, d] : dims) keys.insert(bd);
    for (const auto& bd : keys)
        out << bd.pos << "," << bd.deg << "," << at(bd.pos, bd.deg) << ","
            << (flagged.count(bd) ? 1 : 0) << "\n";
    return out.str();
}

BigradedComplex BigradedComplex::build(FieldSpec field, Window window, TermMap terms, DiffMap diffs,
                                       SupportBounds bounds, std::set<Bidegree> flags) {
    BigradedComplex c;
    c.field_ = field;
    c.window_ = window;
    c.bounds_ = bounds;
    c.flags_ = std::move(flags);

    // drop zero-dimensional slices, check window
    for (auto& [pos, slices] : terms) {
        for (auto it = slices.begin(); it != slices.end();) {
            if (it->second.dim == 0) {
                it = slices.erase(it);
                continue;
            }
            if (!window.contains(pos, it->first))
                throw shape_mismatch_error("term at (" + std::to_string(pos) + "," +
                                           std::to_string(it->first) + ") outside window");
            ++it;
        }
    }
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.empty() ? terms.erase(it) : std::next(it);
    c.terms_ = std::move(terms);

    for (auto it = diffs.begin(); it != diffs.end();) {
        if (it->second.is_zero()) {
            it = diffs.erase(it);
            continue;
        }
        const auto& [bd, m] = *it;
        if (!(m.field() == field)) throw field_mismatch_error("differential field mismatch");
        if (m.cols() != c.dim(bd.pos, bd.deg) || m.rows() != c.dim(bd.pos + 1, bd.deg))
            throw shape_mismatch_error("differential shape mismatch at (" + std::to_string(bd.pos) +
                                       "," + std::to_string(bd.deg) + ")");
        ++it;
    }
    c.diffs_ = std::move(diffs);

    // d∘d = 0 on every slice
    for (const auto& [bd, m] : c.diffs_) {
        auto next = c.diffs_.find({bd.pos + 1, bd.deg});
        if (next == c.diffs_.end()) continue;
        if (!(next->second * m).is_zero())
            throw composition_nonzero_error("d∘d ≠ 0 at position " + std::to_string(bd.pos) +
                                            ", internal degree " + std::to_string(bd.deg));
    }
    return c;
}

size_t BigradedComplex::dim(int pos, int deg) const {
    auto it = terms_.find(pos);
    if (it == terms_.end()) return 0;
    auto jt = it->second.find(deg);
    return jt == it->second.end() ? 0 : jt->second.dim;
}

const TermSlice* BigradedComplex::term(int pos, int deg) const {
    auto it = terms_.find(pos);
    if (it == terms_.end()) return nullptr;
    auto jt = it->second.find(deg);
    return jt == it->second.end() ? nullptr : &jt->second;
}

SparseMatrix BigradedComplex::diff(int pos, int deg) const {
    auto it = diffs_.find({pos, deg});
    if (it != diffs_.end()) return it->second;
    return SparseMatrix(field_, dim(pos + 1, deg), dim(pos, deg));
}

bool BigradedComplex::known_zero(int pos, int deg) const {
    if (pos < window_.pos_lo && bounds_.pos_zero_below) return true;
    if (pos > window_.pos_hi && bounds_.pos_zero_above) return true;
    if (deg < window_.deg_lo && bounds_.deg_zero_below) return true;
    if (deg > window_.deg_hi && bounds_.deg_zero_above) return true;
    return false;
}

std::set<int> BigradedComplex::stored_degrees() const {
    std::set<int> degs;
    for (const auto& [pos, slices] : terms_)
        for (const auto& [deg, slice] : slices) degs.insert(deg);
    return degs;
}

CohomologyTable BigradedComplex::cohomology() const {
    // rank every differential block once, in parallel
    std::vector<const SparseMatrix*> blocks;
    std::vector<Bidegree> keys;
    for (const auto& [bd, m] : diffs_) {
        keys.push_back(bd);
        blocks.push_back(&m);
    }
    std::vector<size_t> ranks(blocks.size(), 0);
    par::parallel_for(blocks.size(), [&](size_t i) { ranks[i] = rank(*blocks[i]); });
    std::map<Bidegree, size_t> rank_at;
    for (size_t i = 0; i < keys.size(); ++i) rank_at[keys[i]] = ranks[i];

    auto rk = [&](int pos, int deg) {
        auto it = rank_at.find({pos, deg});
        return it == rank_at.end() ? (size_t)0 : it->second;
    };

    CohomologyTable table;
    table.flagged = flags_;
    std::set<Bidegree> sites;
    for (const auto& [pos, slices] : terms_)
        for (const auto& [deg, slice] : slices) sites.insert({pos, deg});
    for (const auto& bd : sites) {
        size_t d = dim(bd.pos, bd.deg);
        size_t h = d - rk(bd.pos, bd.deg) - rk(bd.pos - 1, bd.deg);
        if (!known(bd.pos - 1, bd.deg) || !known(bd.pos + 1, bd.deg)) table.flagged.insert(bd);
        if (h > 0) table.dims[bd] = h;
    }
    return table;
}

bool BigradedComplex::operator==(const BigradedComplex& o) const {
    if (!(field_ == o.field_)) return false;
    std::set<Bidegree> sites;
    for (const auto& [pos, slices] : terms_)
        for (const auto& [deg, s] : slices) sites.insert({pos, deg});
    for (const auto& [pos, slices] : o.terms_)
        for (const auto& [deg, s] : slices) sites.insert({pos, deg});
    for (const auto& bd : sites) {
        if (dim(bd.pos, bd.deg) != o.dim(bd.pos, bd.deg)) return false;
        if (!(diff(bd.pos, bd.deg) == o.diff(bd.pos, bd.deg))) return false;
    }
    return true;
}

nlohmann::json BigradedComplex::to_json() const {
    nlohmann::json j;
    j["field"] = field_.str();
    j["window"] = {{"pos_lo", window_.pos_lo},
                   {"pos_hi", window_.pos_hi},
                   {"deg_lo", window_.deg_lo},
                   {"deg_hi", window_.deg_hi}};
    j["support_zero"] = {{"pos_below", bounds_.pos_zero_below},
                         {"pos_above", bounds_.pos_zero_above},
                         {"deg_below", bounds_.deg_zero_below},
                         {"deg_above", bounds_.deg_zero_above}};
    auto& terms = j["terms"] = nlohmann::json::array();
    for (const auto& [pos, slices] : terms_)
        for (const auto& [deg, slice] : slices) {
            nlohmann::json t{{"position", pos}, {"internal_degree", deg}, {"dim", slice.dim}};
            if (!slice.labels.empty()) t["labels"] = slice.labels;
            if (!slice.carrier.empty()) t["carrier"] = slice.carrier;
            terms.push_back(std::move(t));
        }
    auto& diffs = j["differentials"] = nlohmann::json::array();
    for (const auto& [bd, m] : diffs_)
        diffs.push_back({{"position", bd.pos}, {"internal_degree", bd.deg}, {"matrix", m.to_json()}});
    if (!flags_.empty()) {
        auto& fl = j["flagged"] = nlohmann::json::array();
        for (const auto& bd : flags_) fl.push_back({bd.pos, bd.deg});
    }
    return j;
}

BigradedComplex BigradedComplex::from_json(const nlohmann::json& j) {
    FieldSpec field = FieldSpec::parse(j.at("field").get<std::string>());
    Window w;
    w.pos_lo = j.at("window").at("pos_lo").get<int>();
    w.pos_hi = j.at("window").at("pos_hi").get<int>();
    w.deg_lo = j.at("window").at("deg_lo").get<int>();
    w.deg_hi = j.at("window").at("deg_hi").get<int>();
    SupportBounds b;
    if (j.contains("support_zero")) {
        b.pos_zero_below = j["support_zero"].value("pos_below", true);
        b.pos_zero_above = j["support_zero"].value("pos_above", true);
        b.deg_zero_below = j["support_zero"].value("deg_below", true);
        b.deg_zero_above = j["support_zero"].value("deg_above", true);
    }
    TermMap terms;
    for (const auto& t : j.at("terms")) {
        TermSlice slice;
        slice.dim = t.at("dim").get<size_t>();
        if (t.contains("labels")) slice.labels = t["labels"].get<std::vector<std::string>>();
        if (t.contains("carrier")) slice.carrier = t["carrier"].get<std::string>();
        terms[t.at("position").get<int>()][t.at("internal_degree").get<int>()] = std::move(slice);
    }
    DiffMap diffs;
    for (const auto& d : j.at("differentials"))
        diffs[{d.at("position").get<int>(), d.at("internal_degree").get<int>()}] =
            SparseMatrix::from_json(d.at("matrix"));
    std::set<Bidegree> flags;
    if (j.contains("flagged"))
        for (const auto& f : j["flagged"]) flags.insert({f[0].get<int>(), f[1].get<int>()});
    return build(field, w, std::move(terms), std::move(diffs), b, std::move(flags));
}

SparseMatrix ChainMap::block(const BigradedComplex& x, const BigradedComplex& y, int pos,
                             int deg) const {
    auto it = blocks.find({pos, deg});
    if (it != blocks.end()) return it->second;
    return SparseMatrix(x.field(), y.dim(pos, deg), x.dim(pos, deg));
}

ChainMap make_chain_map(const BigradedComplex& x, const BigradedComplex& y,
                        std::map<Bidegree, SparseMatrix> blocks) {
    if (!(x.field() == y.field())) throw field_mismatch_error("chain map between different fields");
    ChainMap f;
    for (auto it = blocks.begin(); it != blocks.end();) {
        const auto& [bd, m] = *it;
        if (m.cols() != x.dim(bd.pos, bd.deg) || m.rows() != y.dim(bd.pos, bd.deg))
            throw shape_mismatch_error("chain map block shape mismatch at (" +
                                       std::to_string(bd.pos) + "," + std::to_string(bd.deg) + ")");
        it = m.is_zero() ? blocks.erase(it) : std::next(it);
    }
    f.blocks = std::move(blocks);
    // commutes with the differentials
    std::set<Bidegree> sites;
    for (const auto& [bd, m] : f.blocks) sites.insert(bd);
    for (const auto& [bd, m] : x.diffs()) sites.insert(bd);
    for (const auto& bd : sites) {
        SparseMatrix lhs = y.diff(bd.pos, bd.deg) * f.block(x, y, bd.pos, bd.deg);
        SparseMatrix rhs = f.block(x, y, bd.pos + 1, bd.deg) * x.diff(bd.pos, bd.deg);
        if (!(lhs == rhs))
            throw composition_nonzero_error("chain map does not commute at (" +
                                            std::to_string(bd.pos) + "," + std::to_string(bd.deg) +
                                            ")");
    }
    return f;
}

bool induced_map_is_zero(const BigradedComplex& x, const BigradedComplex& y, const ChainMap& f,
                         int pos, int deg) {
    SparseMatrix cocycles = kernel_basis(x.diff(pos, deg));
    if (cocycles.cols() == 0) return true;
    SparseMatrix mapped = f.block(x, y, pos, deg) * cocycles;
    SparseMatrix boundaries = y.diff(pos - 1, deg);
    for (size_t k = 0; k < mapped.cols(); ++k) {
        std::vector<FieldScalar> v(mapped.rows(), FieldScalar::zero(x.field()));
        for (const auto& e : mapped.entries())
            if (e.col == k) v[e.row] = e.value;
        if (!solve_feasible(boundaries, v)) return false;
    }
    return true;
}

} // namespace acyclica
