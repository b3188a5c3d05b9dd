#ifndef ACYCLICA_STABILITY_HPP
#define ACYCLICA_STABILITY_HPP

#include "acyclica/symcoalgebra.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acyclica::stab {

enum class Family { koszul_dual, comodule, contramodule, subcomplex };

std::string family_name(Family f);
Family parse_family(const std::string& s);

/// Sweep of one complex family over strictly increasing parameter values
/// inside a fixed window.
struct ParameterSweep {
    Family family = Family::comodule;
    std::vector<int> params; // m for koszul-dual/subcomplex, a otherwise
    int fixed_a = 0;         // ambient dimension for the subcomplex family
    Window window;
    FieldSpec field = FieldSpec::Fp(101);
};

/// Per position: vanishing threshold in the parameter.  H^n must vanish for
/// every parameter beyond it (n for the Koszul-dual family, |n| otherwise).
int family_threshold(Family f, int position);

struct StableRangeReport {
    ParameterSweep sweep;
    std::map<int, CohomologyTable> tables; // parameter → cohomology in window
    std::map<int, bool> position_pass;     // window position → verdict
    bool pass = false;

    nlohmann::json to_json() const;
};

StableRangeReport stable_range_report(const ParameterSweep& sweep);

/// True iff the transition map of the direct system (comodule family:
/// inclusion of the m′-subcomplex into the m″-subcomplex) induces zero on
/// H^n for every n in the window where the target's concentration bound
/// forces it (n > −m″; for the contramodule quotients, n < m″).
bool transition_vanishing_check(Family family, int m_small, int m_big, int a, Window w,
                                FieldSpec field);

/// Finite-stage witness: all restriction maps of the system
/// Hom(C_B, Λⁿ(W)) are surjective per internal-degree slice.
bool mittag_leffler_check(int n, int a, const std::vector<int>& stages, Window w, FieldSpec field);

} // namespace acyclica::stab

#endif
