#ifndef ACYCLICA_BIGRADED_HPP
#define ACYCLICA_BIGRADED_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "acyclica/linalg.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acyclica {

struct composition_nonzero_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unbounded_complex_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Bidegree {
    int pos = 0;
    int deg = 0;
    auto operator<=>(const Bidegree&) const = default;
};

struct Window {
    int pos_lo = 0, pos_hi = 0;
    int deg_lo = 0, deg_hi = 0;
    bool contains(int p, int t) const {
        return p >= pos_lo && p <= pos_hi && t >= deg_lo && t <= deg_hi;
    }
};

struct TermSlice {
    size_t dim = 0;
    std::vector<std::string> labels; // optional basis labels
    std::string carrier;             // optional: "cofree:<dims>" / "free:<dims>"
};

/// Which regions outside the window are certified zero.  A complex whose
/// mathematical support sticks out of the window in some direction (e.g. a
/// polynomial-degree truncation) clears the corresponding bit; consumers
/// then treat that region as unknown rather than zero.
struct SupportBounds {
    bool pos_zero_below = true;
    bool pos_zero_above = true;
    bool deg_zero_below = true;
    bool deg_zero_above = true;
    bool pos_bounded() const { return pos_zero_below && pos_zero_above; }
};

class CohomologyTable {
public:
    std::map<Bidegree, size_t> dims; // nonzero entries only
    std::set<Bidegree> flagged;      // boundary-incomplete, excluded from assertions

    size_t at(int pos, int deg) const;
    bool is_flagged(int pos, int deg) const { return flagged.count({pos, deg}) > 0; }
    size_t total_at_position(int pos) const;
    /// Total over unflagged bidegrees.
    size_t total() const;
    /// All unflagged entries vanish outside the given position.
    bool concentrated_at_position(int pos) const;
    bool equal_unflagged(const CohomologyTable& o) const;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

/// Family of finite-dimensional terms indexed by (cohomological position,
/// internal degree) with degree-preserving differentials raising the
/// position by one; d² = 0 holds exactly on every slice.
class BigradedComplex {
public:
    using TermMap = std::map<int, std::map<int, TermSlice>>; // pos → deg → slice
    using DiffMap = std::map<Bidegree, SparseMatrix>;        // (pos,deg) → block into (pos+1,deg)

    static BigradedComplex build(FieldSpec field, Window window, TermMap terms, DiffMap diffs,
                                 SupportBounds bounds = {}, std::set<Bidegree> flags = {});

    const FieldSpec& field() const { return field_; }
    const Window& window() const { return window_; }
    const TermMap& terms() const { return terms_; }
    const DiffMap& diffs() const { return diffs_; }
    const SupportBounds& bounds() const { return bounds_; }
    const std::set<Bidegree>& flags() const { return flags_; }

    size_t dim(int pos, int deg) const;
    const TermSlice* term(int pos, int deg) const;
    /// Differential block leaving (pos,deg); explicit zero matrix when absent.
    SparseMatrix diff(int pos, int deg) const;

    /// The bidegree is provably zero although outside the window.
    bool known_zero(int pos, int deg) const;
    /// Term data at the bidegree is available (inside window or provably zero).
    bool known(int pos, int deg) const {
        return window_.contains(pos, deg) || known_zero(pos, deg);
    }
    /// Support certified to lie inside the window's position range.
    bool position_bounded() const { return bounds_.pos_bounded(); }

    std::set<int> stored_degrees() const;

    /// Per-bidegree dim ker − rank of the incoming differential, exact.
    /// Bidegrees with an unknown position neighbor are flagged.
    CohomologyTable cohomology() const;

    bool operator==(const BigradedComplex& o) const;

    nlohmann::json to_json() const;
    static BigradedComplex from_json(const nlohmann::json& j);

private:
    FieldSpec field_ = FieldSpec::Q();
    Window window_;
    TermMap terms_;
    DiffMap diffs_;
    SupportBounds bounds_;
    std::set<Bidegree> flags_;
};

/// Degree-(0,0) map of complexes commuting with the differentials; blocks
/// keyed by source bidegree.  Validated on construction.
struct ChainMap {
    std::map<Bidegree, SparseMatrix> blocks;

    SparseMatrix block(const BigradedComplex& x, const BigradedComplex& y, int pos, int deg) const;
};

ChainMap make_chain_map(const BigradedComplex& x, const BigradedComplex& y,
                        std::map<Bidegree, SparseMatrix> blocks);

/// True iff the map induced on cohomology at (pos,deg) is zero: every
/// cocycle of x maps into the boundaries of y.
bool induced_map_is_zero(const BigradedComplex& x, const BigradedComplex& y, const ChainMap& f,
                         int pos, int deg);

} // namespace acyclica

#endif
