#ifndef ACYCLICA_COMBINAT_HPP
#define ACYCLICA_COMBINAT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace acyclica::combi {

int64_t binomial(int n, int k);

/// Exponent vector of a monomial in a fixed number of variables.
using Expo = std::vector<int>;

/// dim of the degree-d component of a polynomial ring in nvars variables:
/// C(d+nvars−1, d) for d ≥ 0, else 0.
size_t monomial_count(int nvars, int d);

/// All exponent vectors of total degree d, graded-lex: higher exponent on
/// earlier variables first.  Deterministic; every basis in the project uses
/// this order.
const std::vector<Expo>& monomials(int nvars, int d);

/// Index of e in monomials(nvars, deg(e)).
size_t monomial_index(const Expo& e);

/// k-subsets of {0..n−1} as increasing tuples, in colex order.
const std::vector<std::vector<int>>& subsets_colex(int n, int k);

size_t subset_index(int n, const std::vector<int>& t);

/// ∏_i C(u_i, w_i): the multiplicity coefficient of the split u = (u−w)·w in
/// the symmetric coproduct (shuffle/divided convention).
int64_t split_coefficient(const Expo& u, const Expo& w);

std::string monomial_label(const Expo& e);              // "1", "x1^2*x3"
std::string subset_label(const std::vector<int>& t);    // "e{}", "e{1,3}" (1-based)

} // namespace acyclica::combi

#endif
