#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace spectraljacobi::verify {

/// Precision targets, truncation budgets, output and seed configuration.
/// Defaults: identity checks 1e-10, quadrature-backed checks 1e-8,
/// tail-truncated sums 1e-6.
struct RunConfig {
    double identity_tol = 1e-10;
    double quadrature_tol = 1e-8;
    double tail_tol = 1e-6;
    double abs_tol = 1e-12;
    int window = 60;      // l^2(Z) window L
    int degree = 30;      // truncation degree M
    int quad_order = 200;
    std::string format = "csv";  // csv|json
    std::string output;          // empty = stdout
    unsigned seed = 20160701u;

    void validate() const;
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    /// Reads the file named by SPECTRALJACOBI_CONFIG if set, else defaults.
    static RunConfig from_environment();
};

struct Check {
    std::string name;
    double residual;
    double tol;
    bool pass;

    /// b value overrides etc. stored as free-form context for reports.
    std::string context;
};

/// Named suites enumerating the module invariants. Deterministic for a fixed
/// config (fixed seed, sorted check names).
std::vector<std::string> suite_names();
bool has_suite(const std::string& name);
std::vector<Check> run_suite(const std::string& name, const RunConfig& cfg);

// Individual suites (also reachable through run_suite).
std::vector<Check> suite_casorati(const RunConfig&);
std::vector<Check> suite_wronskian(const RunConfig&);
std::vector<Check> suite_qhermite(const RunConfig&);
std::vector<Check> suite_compactness(const RunConfig&);
std::vector<Check> suite_favard(const RunConfig&);
std::vector<Check> suite_interlacing(const RunConfig&);
std::vector<Check> suite_markov(const RunConfig&);
std::vector<Check> suite_cd(const RunConfig&);
std::vector<Check> suite_stieltjes(const RunConfig&);
std::vector<Check> suite_liouville(const RunConfig&);
std::vector<Check> suite_gegenbauer(const RunConfig&);
std::vector<Check> suite_commutant(const RunConfig&);
std::vector<Check> suite_gauge(const RunConfig&);
std::vector<Check> suite_matrix_cd(const RunConfig&);
std::vector<Check> suite_degenerate(const RunConfig&);
std::vector<Check> suite_morse(const RunConfig&, std::optional<double> b_override = {});
std::vector<Check> suite_jacobi_t(const RunConfig&);
std::vector<Check> suite_fiveterm(const RunConfig&);
std::vector<Check> suite_fold(const RunConfig&);

}  // namespace spectraljacobi::verify
