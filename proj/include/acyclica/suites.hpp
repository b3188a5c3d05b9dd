#ifndef ACYCLICA_SUITES_HPP
#define ACYCLICA_SUITES_HPP

#include <optional>

#include "acyclica/endotransfer.hpp"
#include "acyclica/stability.hpp"

#include <nlohmann/json.hpp>

namespace acyclica::suite {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SuiteConfig {
    std::string suite = "all";
    FieldSpec field = FieldSpec::Fp(101);
    std::optional<int> m;
    std::optional<int> a;
    std::optional<int> min_pos;
    std::optional<int> max_pos;
    std::optional<int> max_internal_degree;
    std::optional<int> n_gens;     // N for the universal family
    std::optional<int> max_length; // L for the universal family
    int trials = 100;
    uint64_t seed = 20250810;
    std::string out;              // empty: stdout
    std::string format = "json"; // json | csv

    static SuiteConfig from_json(const nlohmann::json& j);
};

/// Canonical, reproducible run record.  The canonical body excludes timing.
struct Report {
    std::string suite;
    FieldSpec field = FieldSpec::Fp(101);
    nlohmann::json params = nlohmann::json::object();
    uint64_t seed = 0;
    nlohmann::json checks = nlohmann::json::array(); // {name, pass, ...}
    nlohmann::json tables = nlohmann::json::object(); // name → cohomology rows
    bool pass = true;
    double wall_seconds = 0;

    void add_check(const std::string& name, bool ok, nlohmann::json details = {});
    void add_table(const std::string& name, const CohomologyTable& table);
    nlohmann::json to_json(bool canonical) const;
    /// Tables only: rows "table,position,internal_degree,dim,boundary_flag".
    std::string to_csv() const;
};

Report run_suite(const SuiteConfig& config);

/// Byte-stable serialization: canonical body plus a separate timing section
/// (JSON), or the flattened tables (CSV).  Empty path writes to stdout.
void emit_report(const Report& report, const std::string& format, const std::string& path);

// --- building blocks reused by the acceptance suite ---

Report koszul_suite(FieldSpec field, std::vector<int> ms, int max_degree);
Report ext_suite(FieldSpec field, std::vector<int> ms, int max_degree);
Report coresolution_suite(FieldSpec field, std::vector<int> as, int max_degree);
Report dual_koszul_suite(FieldSpec field, std::vector<int> as, int max_degree);
Report concentration_suite(FieldSpec field, int a, int m, int max_degree);
Report stable_range_suite(FieldSpec field, int max_param, int pos_bound, int max_degree);
Report mittag_leffler_suite(FieldSpec field, int a, std::vector<int> stages, int n_bound,
                            int max_degree);
Report dress_suite(FieldSpec field, int trials, uint64_t seed);
Report universal_suite(FieldSpec field, int n_gens, int max_length);
Report remark83_suite(FieldSpec field, int max_degree);

/// Truncated (co)resolution preimages realized as module complexes with the
/// direct sum of their terms as the ambient object.
struct PreimageInstance {
    endo::ConstrainedSpace M;
    endo::ModuleComplex X;
    BigradedComplex graded;
};
PreimageInstance coresolution_preimage(FieldSpec f, int a, int max_degree);
PreimageInstance contramodule_resolution_preimage(FieldSpec f, int a, int max_degree);

/// Seeded random bounded complex in add(M) for the transfer property suite:
/// a sum of invertible and singular two-term pieces and bare terms, hidden
/// by automorphism twists and optional summand presentations.
endo::ModuleComplex random_addm_complex(const endo::ConstrainedSpace& M, uint64_t seed);

} // namespace acyclica::suite

#endif
