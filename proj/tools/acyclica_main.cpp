#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acyclica/suites.hpp"

using namespace acyclica;

int main(int argc, char** argv) {
    CLI::App app{"acyclica: exact verification suites for truncated complexes of graded modules, "
                 "comodules and contramodules"};

    std::string suite = "all";
    std::string field = "Fp:101";
    std::string config_path, out_path, format = "json";
    int m = 0, a = 0, min_pos = 0, max_pos = 0, max_internal_degree = 0;
    int n_gens = 0, max_length = 0, trials = 100;
    uint64_t seed = 20250810;

    app.add_option("--suite", suite,
                   "koszul | ext | coresolution | dual-koszul | concentration | stable-range | "
                   "mittag-leffler | dress | universal | remark83 | all");
    app.add_option("--field", field, "Q or Fp:<p>");
    app.add_option("--m", m, "variable count for the polynomial-side families");
    app.add_option("--a", a, "dimension of the coalgebra-side space");
    app.add_option("--min-pos", min_pos, "window: lowest cohomological position");
    app.add_option("--max-pos", max_pos, "window: highest cohomological position");
    app.add_option("--max-internal-degree", max_internal_degree, "window: internal degree bound");
    app.add_option("--n-gens", n_gens, "universal family: generators y0..yN");
    app.add_option("--max-length", max_length, "universal family: maximum word length");
    app.add_option("--trials", trials, "property-suite trial count");
    app.add_option("--seed", seed, "master seed, recorded verbatim in the report");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "json | csv");
    app.add_option("--config", config_path, "JSON config file mirroring the flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        suite::SuiteConfig cfg;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw suite::config_error("cannot open config file: " + config_path);
            nlohmann::json j;
            f >> j;
            cfg = suite::SuiteConfig::from_json(j);
        } else {
            cfg.suite = suite;
            cfg.field = FieldSpec::parse(field);
        }
        // explicit flags override the config file
        if (app.count("--suite")) cfg.suite = suite;
        if (app.count("--field")) cfg.field = FieldSpec::parse(field);
        if (app.count("--m")) cfg.m = m;
        if (app.count("--a")) cfg.a = a;
        if (app.count("--min-pos")) cfg.min_pos = min_pos;
        if (app.count("--max-pos")) cfg.max_pos = max_pos;
        if (app.count("--max-internal-degree")) cfg.max_internal_degree = max_internal_degree;
        if (app.count("--n-gens")) cfg.n_gens = n_gens;
        if (app.count("--max-length")) cfg.max_length = max_length;
        if (app.count("--trials")) cfg.trials = trials;
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--out")) cfg.out = out_path;
        if (app.count("--format")) cfg.format = format;

        suite::Report report = suite::run_suite(cfg);
        suite::emit_report(report, cfg.format, cfg.out);
        return report.pass ? 0 : 1;
    } catch (const suite::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
