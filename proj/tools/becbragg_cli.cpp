#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "becbragg/run_config.hpp"

// Exit codes: 0 success, 2 config/validation error, 3 I/O error,
// 4 resource ceiling exceeded.
int main(int argc, char** argv) {
    CLI::App app{"becbragg - two-condensate Bragg-scattering entanglement simulator"};

    std::string config_path;
    std::string out_path;
    std::string scenario_name;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool quiet = false;

    app.add_option("--config", config_path, "JSON run configuration (schema_version 1)")
        ->required();
    app.add_option("--out", out_path, "output CSV path (overrides config)");
    app.add_option("--scenario", scenario_name,
                   "dispersion|evolve|sweep|oracle-compare|detect (overrides config)");
    app.add_option("--seed", seed, "RNG seed (overrides config)")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_flag("--quiet", quiet, "suppress progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        becbragg::RunConfig config = becbragg::parse_run_config_file(config_path);
        if (!out_path.empty()) config.out = out_path;
        if (seed_set) config.seed = seed;
        if (quiet) config.quiet = true;
        if (!scenario_name.empty()) {
            // reuse the schema validation for the override
            const std::string patch = "{\"schema_version\":1,\"scenario\":\"" + scenario_name +
                                      "\"}";
            config.scenario = becbragg::parse_run_config_text(patch).scenario;
        }

        const auto written = becbragg::run(config);
        if (!config.quiet) {
            for (const auto& path : written) std::fprintf(stderr, "wrote %s\n", path.c_str());
        }
        return 0;
    } catch (const std::length_error& err) {
        std::fprintf(stderr, "{\"error\":\"resource\",\"message\":\"%s\"}\n", err.what());
        return 4;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "{\"error\":\"validation\",\"message\":\"%s\"}\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "{\"error\":\"io\",\"message\":\"%s\"}\n", err.what());
        return 3;
    }
}
