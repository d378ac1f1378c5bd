#include "becbragg/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace becbragg {

using nlohmann::json;

const char* to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::Dispersion: return "dispersion";
        case Scenario::Evolve: return "evolve";
        case Scenario::Sweep: return "sweep";
        case Scenario::OracleCompare: return "oracle-compare";
        case Scenario::Detect: return "detect";
    }
    return "?";
}

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0) || !(stop >= start)) {
        throw std::invalid_argument("grid: need step > 0 and stop >= start");
    }
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) out.push_back(start + k * step);
    return out;
}

namespace {

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& context) {
    for (const auto& item : object.items()) {
        if (!known.contains(item.key())) {
            throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + context);
        }
    }
}

double get_number(const json& object, const char* key, double fallback) {
    if (!object.contains(key)) return fallback;
    if (!object[key].is_number()) {
        throw std::invalid_argument(std::string("config: '") + key + "' must be a number");
    }
    return object[key].get<double>();
}

GridSpec get_grid(const json& object, const char* key, GridSpec fallback,
                  const std::string& context) {
    if (!object.contains(key)) return fallback;
    const json& g = object[key];
    reject_unknown_keys(g, {"start", "stop", "step"}, context + "." + key);
    GridSpec spec;
    spec.start = get_number(g, "start", fallback.start);
    spec.stop = get_number(g, "stop", fallback.stop);
    spec.step = get_number(g, "step", fallback.step);
    return spec;
}

Scenario parse_scenario(const std::string& name) {
    if (name == "dispersion") return Scenario::Dispersion;
    if (name == "evolve") return Scenario::Evolve;
    if (name == "sweep") return Scenario::Sweep;
    if (name == "oracle-compare") return Scenario::OracleCompare;
    if (name == "detect") return Scenario::Detect;
    throw std::invalid_argument("config: unknown scenario '" + name + "'");
}

Variant parse_variant(const std::string& name) {
    if (name == "full5") return Variant::Full5;
    if (name == "resonant3") return Variant::ResonantOnly3;
    if (name == "single3") return Variant::SingleCondensate3;
    throw std::invalid_argument("config: unknown variant '" + name + "'");
}

}  // namespace

RunConfig parse_run_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + err.what());
    }

    reject_unknown_keys(root,
                        {"schema_version", "scenario", "seed", "out", "quiet", "system", "times",
                         "ratios", "sweep_time", "pairs", "picture", "bogoliubov", "dispersion",
                         "oracle", "detect"},
                        "top level");

    if (!root.contains("schema_version") || !root["schema_version"].is_number_integer() ||
        root["schema_version"].get<int>() != schema_version) {
        throw std::invalid_argument("config: schema_version must be the integer 1");
    }
    if (!root.contains("scenario") || !root["scenario"].is_string()) {
        throw std::invalid_argument("config: 'scenario' (string) is required");
    }

    RunConfig config;
    config.system = SystemConfig::reference();
    config.scenario = parse_scenario(root["scenario"].get<std::string>());
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
            throw std::invalid_argument("config: 'seed' must be a non-negative integer");
        }
        const auto seed = root["seed"].get<std::int64_t>();
        if (seed < 0) throw std::invalid_argument("config: 'seed' must be >= 0");
        config.seed = static_cast<std::uint64_t>(seed);
    }
    if (root.contains("out")) config.out = root["out"].get<std::string>();
    if (root.contains("quiet")) config.quiet = root["quiet"].get<bool>();

    if (root.contains("system")) {
        const json& s = root["system"];
        reject_unknown_keys(s,
                            {"omega_A", "omega_B", "delta", "eta_A", "eta_B", "n_probe",
                             "probe_phase", "variant"},
                            "system");
        config.system.omega_A = get_number(s, "omega_A", config.system.omega_A);
        config.system.omega_B = get_number(s, "omega_B", config.system.omega_B);
        config.system.delta = get_number(s, "delta", config.system.delta);
        config.system.eta_A = get_number(s, "eta_A", config.system.eta_A);
        config.system.eta_B = get_number(s, "eta_B", config.system.eta_B);
        config.system.n_probe = get_number(s, "n_probe", config.system.n_probe);
        config.system.probe_phase = get_number(s, "probe_phase", config.system.probe_phase);
        if (s.contains("variant")) config.system.variant = parse_variant(s["variant"]);
        validate(config.system);
    }

    config.times = get_grid(root, "times", config.times, "top level");
    config.ratios = get_grid(root, "ratios", config.ratios, "top level");
    config.sweep_time = get_number(root, "sweep_time", config.sweep_time);

    if (root.contains("pairs")) {
        for (const auto& p : root["pairs"]) {
            const std::string code = p.get<std::string>();
            static const std::set<std::string> valid{"qA_qB", "qA_mqB", "mqA_qB", "mqA_mqB"};
            if (!valid.contains(code)) {
                throw std::invalid_argument("config: unknown pair code '" + code + "'");
            }
            config.pairs.push_back(code);
        }
    }
    if (root.contains("picture")) {
        config.picture = root["picture"].get<std::string>();
        if (config.picture != "quasiparticle" && config.picture != "particle" &&
            config.picture != "both") {
            throw std::invalid_argument("config: picture must be quasiparticle|particle|both");
        }
    }
    if (root.contains("bogoliubov")) {
        const json& b = root["bogoliubov"];
        reject_unknown_keys(b, {"q_xi", "u", "v"}, "bogoliubov");
        if (b.contains("u") != b.contains("v")) {
            throw std::invalid_argument("config: bogoliubov needs both u and v");
        }
        if (b.contains("u")) {
            config.bogoliubov.u = b["u"].get<double>();
            config.bogoliubov.v = b["v"].get<double>();
            config.bogoliubov_q_xi = 0.0;  // explicit (u, v) supplied
        } else {
            config.bogoliubov_q_xi = get_number(b, "q_xi", config.bogoliubov_q_xi);
        }
    }
    if (root.contains("dispersion")) {
        const json& d = root["dispersion"];
        reject_unknown_keys(d, {"mu_over_hbar", "q_xi"}, "dispersion");
        config.dispersion_mu = get_number(d, "mu_over_hbar", config.dispersion_mu);
        config.dispersion_q = get_grid(d, "q_xi", config.dispersion_q, "dispersion");
    }
    if (root.contains("oracle")) {
        const json& o = root["oracle"];
        reject_unknown_keys(o, {"n_probe_values", "times", "caps", "leakage_tolerance"}, "oracle");
        if (o.contains("n_probe_values")) {
            config.oracle_n_probe = o["n_probe_values"].get<std::vector<double>>();
        }
        if (o.contains("times")) config.oracle_times = o["times"].get<std::vector<double>>();
        if (o.contains("caps")) config.oracle_caps = o["caps"].get<std::vector<int>>();
        config.oracle_leakage_tolerance =
            get_number(o, "leakage_tolerance", config.oracle_leakage_tolerance);
    }
    if (root.contains("detect")) {
        const json& d = root["detect"];
        reject_unknown_keys(d, {"t_gen", "eta_verify", "duration", "shots"}, "detect");
        config.detect_t_gen = get_number(d, "t_gen", config.detect_t_gen);
        config.detect_eta_verify = get_number(d, "eta_verify", config.detect_eta_verify);
        config.detect_duration = get_number(d, "duration", config.detect_duration);
        if (d.contains("shots")) config.detect_shots = d["shots"].get<std::size_t>();
    }
    return config;
}

RunConfig parse_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config_text(buffer.str());
}

std::string resolved_config_json(const RunConfig& config) {
    json root;
    root["schema_version"] = schema_version;
    root["library_version"] = library_version;
    root["scenario"] = to_string(config.scenario);
    root["seed"] = config.seed;
    root["out"] = config.out;
    root["quiet"] = config.quiet;
    root["system"] = {{"omega_A", config.system.omega_A}, {"omega_B", config.system.omega_B},
                      {"delta", config.system.delta},     {"eta_A", config.system.eta_A},
                      {"eta_B", config.system.eta_B},     {"n_probe", config.system.n_probe},
                      {"probe_phase", config.system.probe_phase},
                      {"variant", to_string(config.system.variant)}};
    root["times"] = {{"start", config.times.start}, {"stop", config.times.stop},
                     {"step", config.times.step}};
    root["ratios"] = {{"start", config.ratios.start}, {"stop", config.ratios.stop},
                      {"step", config.ratios.step}};
    root["sweep_time"] = config.sweep_time;
    root["pairs"] = config.pairs.empty()
                        ? std::vector<std::string>{"qA_qB", "qA_mqB", "mqA_qB", "mqA_mqB"}
                        : config.pairs;
    root["picture"] = config.picture;
    root["bogoliubov"] = {{"q_xi", config.bogoliubov_q_xi},
                          {"u", config.bogoliubov.u},
                          {"v", config.bogoliubov.v}};
    root["dispersion"] = {{"mu_over_hbar", config.dispersion_mu},
                          {"q_xi",
                           {{"start", config.dispersion_q.start},
                            {"stop", config.dispersion_q.stop},
                            {"step", config.dispersion_q.step}}}};
    root["oracle"] = {{"n_probe_values", config.oracle_n_probe},
                      {"times", config.oracle_times},
                      {"caps", config.oracle_caps},
                      {"leakage_tolerance", config.oracle_leakage_tolerance}};
    root["detect"] = {{"t_gen", config.detect_t_gen},
                      {"eta_verify", config.detect_eta_verify},
                      {"duration", config.detect_duration},
                      {"shots", config.detect_shots}};
    return root.dump(2);
}

}  // namespace becbragg
