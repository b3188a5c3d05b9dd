#include "acyclica/sparse_matrix.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace acyclica {

SparseMatrix SparseMatrix::from_triplets(FieldSpec field, size_t rows, size_t cols,
                                         std::vector<SparseEntry> entries) {
    SparseMatrix m(field, rows, cols);
    std::erase_if(entries, [](const SparseEntry& e) { return e.value.is_zero(); });
    std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.row >= rows || e.col >= cols)
            throw shape_mismatch_error("entry out of bounds at (" + std::to_string(e.row) + "," +
                                       std::to_string(e.col) + ")");
        if (!(e.value.field() == field))
            throw field_mismatch_error("matrix over " + field.str() + " got entry over " +
                                       e.value.field().str());
        if (i > 0 && entries[i - 1].row == e.row && entries[i - 1].col == e.col)
            throw shape_mismatch_error("duplicate entry at (" + std::to_string(e.row) + "," +
                                       std::to_string(e.col) + ")");
    }
    m.entries_ = std::move(entries);
    return m;
}

SparseMatrix SparseMatrix::from_triplets_accumulate(FieldSpec field, size_t rows, size_t cols,
                                                    std::vector<SparseEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<SparseEntry> merged;
    for (auto& e : entries) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
            merged.back().value = merged.back().value + e.value;
        else
            merged.push_back(std::move(e));
    }
    return from_triplets(field, rows, cols, std::move(merged));
}

SparseMatrix SparseMatrix::identity(FieldSpec field, size_t n) {
    std::vector<SparseEntry> es;
    es.reserve(n);
    for (size_t i = 0; i < n; ++i) es.push_back({i, i, FieldScalar::one(field)});
    return from_triplets(field, n, n, std::move(es));
}

FieldScalar SparseMatrix::at(size_t r, size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<size_t, size_t>{r, c},
                               [](const SparseEntry& e, const std::pair<size_t, size_t>& k) {
                                   return e.row != k.first ? e.row < k.first : e.col < k.second;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return FieldScalar::zero(field_);
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<SparseEntry> es;
    es.reserve(entries_.size());
    for (const auto& e : entries_) es.push_back({e.col, e.row, e.value});
    auto t = from_triplets(field_, cols_, rows_, std::move(es));
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (!(field_ == o.field_)) throw field_mismatch_error("product of matrices over different fields");
    if (cols_ != o.rows_) throw shape_mismatch_error("product shape mismatch");
    // row-major accumulation against o's rows
    std::vector<std::vector<std::pair<size_t, FieldScalar>>> orows(o.rows_);
    for (const auto& e : o.entries_) orows[e.row].push_back({e.col, e.value});
    std::vector<SparseEntry> out;
    size_t i = 0;
    std::vector<FieldScalar> acc(o.cols_, FieldScalar::zero(field_));
    std::vector<size_t> touched;
    while (i < entries_.size()) {
        size_t r = entries_[i].row;
        touched.clear();
        for (; i < entries_.size() && entries_[i].row == r; ++i) {
            for (const auto& [c, v] : orows[entries_[i].col]) {
                if (acc[c].is_zero()) touched.push_back(c);
                acc[c] = acc[c] + entries_[i].value * v;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (size_t c : touched) {
            if (!acc[c].is_zero()) out.push_back({r, c, acc[c]});
            acc[c] = FieldScalar::zero(field_);
        }
    }
    return from_triplets(field_, rows_, o.cols_, std::move(out));
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (!(field_ == o.field_)) throw field_mismatch_error("sum of matrices over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw shape_mismatch_error("sum shape mismatch");
    std::vector<SparseEntry> out;
    size_t i = 0, j = 0;
    auto key = [](const SparseEntry& e) { return std::pair{e.row, e.col}; };
    while (i < entries_.size() || j < o.entries_.size()) {
        if (j == o.entries_.size() || (i < entries_.size() && key(entries_[i]) < key(o.entries_[j]))) {
            out.push_back(entries_[i++]);
        } else if (i == entries_.size() || key(o.entries_[j]) < key(entries_[i])) {
            out.push_back(o.entries_[j++]);
        } else {
            FieldScalar s = entries_[i].value + o.entries_[j].value;
            if (!s.is_zero()) out.push_back({entries_[i].row, entries_[i].col, s});
            ++i; ++j;
        }
    }
    return from_triplets(field_, rows_, cols_, std::move(out));
}

SparseMatrix SparseMatrix::operator-() const {
    std::vector<SparseEntry> es = entries_;
    for (auto& e : es) e.value = -e.value;
    return from_triplets(field_, rows_, cols_, std::move(es));
}

SparseMatrix SparseMatrix::scaled(const FieldScalar& c) const {
    std::vector<SparseEntry> es = entries_;
    for (auto& e : es) e.value = e.value * c;
    return from_triplets(field_, rows_, cols_, std::move(es));
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (entries_.size() != o.entries_.size()) return false;
    for (size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].row != o.entries_[i].row || entries_[i].col != o.entries_[i].col ||
            entries_[i].value != o.entries_[i].value)
            return false;
    return true;
}

std::vector<FieldScalar> SparseMatrix::apply(const std::vector<FieldScalar>& v) const {
    if (v.size() != cols_) throw shape_mismatch_error("apply: vector length mismatch");
    std::vector<FieldScalar> out(rows_, FieldScalar::zero(field_));
    for (const auto& e : entries_) out[e.row] = out[e.row] + e.value * v[e.col];
    return out;
}

SparseMatrix SparseMatrix::direct_sum(const SparseMatrix& o) const {
    if (!(field_ == o.field_)) throw field_mismatch_error("direct sum over different fields");
    std::vector<SparseEntry> es = entries_;
    for (const auto& e : o.entries_) es.push_back({e.row + rows_, e.col + cols_, e.value});
    return from_triplets(field_, rows_ + o.rows_, cols_ + o.cols_, std::move(es));
}

SparseMatrix SparseMatrix::augment_cols(const SparseMatrix& o) const {
    if (!(field_ == o.field_)) throw field_mismatch_error("augment over different fields");
    if (rows_ != o.rows_) throw shape_mismatch_error("augment: row count mismatch");
    std::vector<SparseEntry> es = entries_;
    for (const auto& e : o.entries_) es.push_back({e.row, e.col + cols_, e.value});
    return from_triplets(field_, rows_, cols_ + o.cols_, std::move(es));
}

SparseMatrix SparseMatrix::stack_rows(const SparseMatrix& o) const {
    if (!(field_ == o.field_)) throw field_mismatch_error("stack over different fields");
    if (cols_ != o.cols_) throw shape_mismatch_error("stack: column count mismatch");
    std::vector<SparseEntry> es = entries_;
    for (const auto& e : o.entries_) es.push_back({e.row + rows_, e.col, e.value});
    return from_triplets(field_, rows_ + o.rows_, cols_, std::move(es));
}

nlohmann::json SparseMatrix::to_json() const {
    nlohmann::json j;
    j["rows"] = rows_;
    j["cols"] = cols_;
    j["field"] = field_.str();
    auto& ents = j["entries"] = nlohmann::json::array();
    for (const auto& e : entries_) {
        if (field_.is_rational())
            ents.push_back({e.row, e.col, e.value.str()});
        else
            ents.push_back({e.row, e.col, e.value.residue()});
    }
    if (!row_labels.empty()) j["row_labels"] = row_labels;
    if (!col_labels.empty()) j["col_labels"] = col_labels;
    return j;
}

SparseMatrix SparseMatrix::from_json(const nlohmann::json& j) {
    FieldSpec field = FieldSpec::parse(j.at("field").get<std::string>());
    size_t rows = j.at("rows").get<size_t>();
    size_t cols = j.at("cols").get<size_t>();
    std::vector<SparseEntry> es;
    for (const auto& t : j.at("entries")) {
        if (t.size() != 3) throw parse_error("matrix entry must be [row, col, value]");
        FieldScalar v = t[2].is_string()
                            ? FieldScalar::parse(field, t[2].get<std::string>())
                            : FieldScalar::integer(field, t[2].get<long>());
        es.push_back({t[0].get<size_t>(), t[1].get<size_t>(), v});
    }
    auto m = from_triplets(field, rows, cols, std::move(es));
    if (j.contains("row_labels")) m.row_labels = j["row_labels"].get<std::vector<std::string>>();
    if (j.contains("col_labels")) m.col_labels = j["col_labels"].get<std::vector<std::string>>();
    return m;
}

SparseMatrix column_vector(const std::vector<FieldScalar>& v, FieldSpec field) {
    std::vector<SparseEntry> es;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) es.push_back({i, 0, v[i]});
    return SparseMatrix::from_triplets(field, v.size(), 1, std::move(es));
}

} // namespace acyclica
