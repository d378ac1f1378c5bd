#ifndef BECBRAGG_RUN_CONFIG_HPP
#define BECBRAGG_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "becbragg/diagnostics.hpp"
#include "becbragg/model.hpp"

namespace becbragg {

inline constexpr int schema_version = 1;
inline constexpr const char* library_version = "1.0.0";

enum class Scenario { Dispersion, Evolve, Sweep, OracleCompare, Detect };

const char* to_string(Scenario scenario);

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::vector<double> points() const;  // inclusive of stop up to rounding
};

/// Schema-validated batch run description (schema_version 1).  Unknown
/// keys are rejected; every default is recorded into the output sidecar.
struct RunConfig {
    Scenario scenario = Scenario::Evolve;
    std::uint64_t seed = 1;
    std::string out = "becbragg_out.csv";
    bool quiet = false;

    SystemConfig system;  // defaults to the reference working point

    // evolve
    GridSpec times{0.01, 1.5, 0.01};

    // sweep
    GridSpec ratios{0.5, 2.0, 0.05};
    double sweep_time = 0.75;

    // pair/picture selection for evolve and sweep
    std::vector<std::string> pairs;  // empty = all four cross pairs
    std::string picture = "both";    // quasiparticle | particle | both
    BogoliubovUV bogoliubov;         // default from q_xi = 2
    double bogoliubov_q_xi = 2.0;

    // dispersion
    double dispersion_mu = 0.0428661;  // rad/us; 0.21/(2 sqrt(6)) by default
    GridSpec dispersion_q{0.1, 10.0, 0.1};

    // oracle-compare
    std::vector<double> oracle_n_probe{0.0, 1.0, 2.0};
    std::vector<double> oracle_times{0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
    std::vector<int> oracle_caps{6, 6, 6, 6, 14};
    double oracle_leakage_tolerance = 1e-6;

    // detect
    double detect_t_gen = 0.75;
    double detect_eta_verify = 0.0105;  // 0.05 * omega_B keeps the estimator informative
    double detect_duration = 78.5;      // us, near the |e^{i(delta-w)t}-1| maximum
    std::size_t detect_shots = 100000;
};

/// Parses and validates a config file; throws std::invalid_argument with a
/// message naming the offending key on any schema violation.
RunConfig parse_run_config_file(const std::string& path);
RunConfig parse_run_config_text(const std::string& text);

/// The fully-resolved config (defaults included) as a JSON string, for the
/// reproducibility sidecar.
std::string resolved_config_json(const RunConfig& config);

/// Executes the scenario: writes `config.out` (CSV) and a
/// `<out>.meta.json` sidecar.  Returns the paths written.
std::vector<std::string> run(const RunConfig& config);

}  // namespace becbragg

#endif
