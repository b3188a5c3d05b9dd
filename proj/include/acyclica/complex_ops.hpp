#ifndef ACYCLICA_COMPLEX_OPS_HPP
#define ACYCLICA_COMPLEX_OPS_HPP

#include <optional>

#include "acyclica/bigraded.hpp"

namespace acyclica {

/// Graded tensor product over the field, realized slicewise.  Signs follow
/// d(u⊗v) = du⊗v + (−1)^{|u|} u⊗dv.  Basis of a component X(p,s)⊗Y(q,u) is
/// ordered x-index major; components of one bidegree are ordered by (p,s).
BigradedComplex tensor(const BigradedComplex& x, const BigradedComplex& y);

/// Hom complex: term at position n collects Hom(X(p,s), Y(p+n, s+t)); the
/// differential is d(f) = d_Y∘f − (−1)^{|f|} f∘d_X.  Basis of a Hom component
/// is ordered source-index major.
BigradedComplex hom_complex(const BigradedComplex& x, const BigradedComplex& y);

/// Vector-space dual: positions and internal degrees negated, differential
/// matrices transposed.
BigradedComplex dualize(const BigradedComplex& x);

BigradedComplex shift(const BigradedComplex& x, int dpos, int ddeg);

/// One complex with a single one-dimensional term.
BigradedComplex point_complex(FieldSpec field, int pos = 0, int deg = 0);

/// Equivariance data for homotopy solving: per generator, one square block
/// per nonzero bidegree of the complex.  A homotopy is accepted only if all
/// of its blocks commute with every generator's action.
struct Equivariance {
    std::vector<std::map<Bidegree, SparseMatrix>> generators;
};

/// Contracting homotopy h with dh + hd = id, solved slicewise as one linear
/// feasibility problem per internal degree; blocks keyed by source bidegree
/// (they map (pos,deg) → (pos−1,deg)).  Returns nullopt when none exists.
std::optional<std::map<Bidegree, SparseMatrix>>
null_homotopy(const BigradedComplex& x, const Equivariance* eq = nullptr);

/// Künneth convolution of two tables: dim at (n,t) = Σ hx(p,s)·hy(n−p,t−s).
CohomologyTable kuenneth_convolution(const CohomologyTable& hx, const CohomologyTable& hy);

/// Deterministic pseudo-random bounded complex for property suites: a direct
/// sum of one-term and contractible two-term pieces hidden by slicewise base
/// change.  Same seed, same complex.
BigradedComplex random_complex(FieldSpec field, uint64_t seed, int max_positions = 4,
                               int max_degrees = 3, size_t max_dim = 3);

/// xorshift-style seed mixer for per-trial substreams.
uint64_t mix_seed(uint64_t master, uint64_t index);

/// Basis of {H : A_tgt·H = H·A_src for every supplied pair}, the morphism
/// space of structure-preserving maps; columns are vectorized column-major
/// (H[k,j] ↦ j·a + k for an a×b unknown).  Memoized on the generator pairs.
SparseMatrix commutant_basis(const FieldSpec& f, size_t a, size_t b,
                             const std::vector<std::pair<SparseMatrix, SparseMatrix>>& gens);

} // namespace acyclica

#endif
