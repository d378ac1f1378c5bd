#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "becbragg/condensate.hpp"
#include "becbragg/detection.hpp"
#include "becbragg/fock_oracle.hpp"
#include "becbragg/rng.hpp"
#include "becbragg/run_config.hpp"

namespace becbragg {

namespace {

std::string fmt(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

struct CsvWriter {
    std::ofstream out;

    explicit CsvWriter(const std::string& path) : out(path) {
        if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out << ',';
            out << cells[k];
        }
        out << "\r\n";
    }
};

ModePair pair_from_code(const std::string& code, Picture picture) {
    for (const ModePair& p : all_cross_pairs(picture)) {
        if (pair_code(p) == code) return p;
    }
    throw std::invalid_argument("unknown pair code '" + code + "'");
}

std::vector<std::string> selected_pairs(const RunConfig& config) {
    if (!config.pairs.empty()) return config.pairs;
    return {"qA_qB", "qA_mqB", "mqA_qB", "mqA_mqB"};
}

std::vector<Picture> selected_pictures(const RunConfig& config) {
    if (config.picture == "quasiparticle") return {Picture::Quasiparticle};
    if (config.picture == "particle") return {Picture::Particle};
    return {Picture::Quasiparticle, Picture::Particle};
}

BogoliubovUV resolve_uv(const RunConfig& config) {
    if (config.bogoliubov_q_xi > 0.0) {
        const auto d = dispersion(config.bogoliubov_q_xi, 1.0);  // u, v depend only on q xi
        return {d.u_q, d.v_q};
    }
    return config.bogoliubov;
}

const char* picture_suffix(Picture picture) {
    return picture == Picture::Quasiparticle ? "quasi" : "part";
}

void run_dispersion(const RunConfig& config, CsvWriter& csv) {
    csv.row({"q_xi", "omega_q", "omega_B", "u_q", "v_q", "f_q"});
    for (double q : config.dispersion_q.points()) {
        if (q <= 0.0) continue;  // q = 0 is the phonon-limit singularity
        const auto d = dispersion(q, config.dispersion_mu);
        csv.row({fmt(d.q_xi), fmt(d.omega_q), fmt(d.omega_B), fmt(d.u_q), fmt(d.v_q),
                 fmt(d.f_q)});
    }
}

void xi_columns(const RunConfig& config, std::vector<std::string>& header) {
    for (const auto& code : selected_pairs(config)) {
        for (Picture picture : selected_pictures(config)) {
            header.push_back("xi_n_" + code + "_" + picture_suffix(picture));
            header.push_back("xi_p_" + code + "_" + picture_suffix(picture));
        }
    }
}

void xi_cells(const RunConfig& config, const InitialState& state, const EvolutionMap& map,
              const BogoliubovUV& uv, std::vector<std::string>& cells, std::string& flags) {
    for (const auto& code : selected_pairs(config)) {
        for (Picture picture : selected_pictures(config)) {
            const ModePair pair = pair_from_code(code, picture);
            const auto xn = diagnostics::xi_number(pair, state, map, uv);
            if (xn) {
                cells.push_back(fmt(*xn));
            } else {
                cells.push_back("nan");
                if (!flags.empty()) flags += ";";
                flags += "xi_n_undefined:" + code + "_" + picture_suffix(picture);
            }
            cells.push_back(fmt(diagnostics::xi_quadrature(pair, state, map, uv)));
        }
    }
}

void run_evolve(const RunConfig& config, CsvWriter& csv) {
    const auto generator = build_dynamical_matrix(config.system);
    const auto state = InitialState::standard(config.system);
    const auto uv = resolve_uv(config);
    const auto modes = variant_modes(config.system.variant);

    std::vector<std::string> header{"t_us"};
    xi_columns(config, header);
    for (ModeId m : modes) header.push_back(std::string("n_") + to_string(m));
    header.push_back("flags");
    csv.row(header);

    for (double t : config.times.points()) {
        const auto map = evolve(generator, t);
        std::vector<std::string> cells{fmt(t)};
        std::string flags;
        xi_cells(config, state, map, uv, cells, flags);
        for (ModeId m : modes) {
            cells.push_back(fmt(gaussian::occupation(operator_at(map, m, false), state)));
        }
        cells.push_back(flags);
        csv.row(cells);
    }
}

void run_sweep(const RunConfig& config, CsvWriter& csv) {
    const auto uv = resolve_uv(config);

    std::vector<std::string> header{"ratio"};
    xi_columns(config, header);
    header.push_back("flags");
    csv.row(header);

    for (double ratio : config.ratios.points()) {
        SystemConfig system = config.system;
        system.eta_B = ratio * system.eta_A;
        const auto generator = build_dynamical_matrix(system);
        const auto state = InitialState::standard(system);
        const auto map = evolve(generator, config.sweep_time);
        std::vector<std::string> cells{fmt(ratio)};
        std::string flags;
        xi_cells(config, state, map, uv, cells, flags);
        cells.push_back(flags);
        csv.row(cells);
    }
}

void run_oracle_compare(const RunConfig& config, CsvWriter& csv) {
    csv.row({"n_probe", "t_us", "trusted", "leakage", "err_occupation", "err_normal",
             "err_anomalous", "err_var_ndiff_rel", "norm_drift", "energy_drift"});

    SystemConfig system = config.system;
    for (double np : config.oracle_n_probe) {
        system.n_probe = np;
        validate(system);
        const auto generator = build_dynamical_matrix(system);
        const auto form = hamiltonian_quadratic_form(system);
        TruncationSpec spec;
        spec.caps = config.oracle_caps;
        spec.leakage_tolerance = config.oracle_leakage_tolerance;
        const auto hamiltonian = assemble_hamiltonian(form, spec);
        const auto gauss_state = InitialState::standard(system);
        const auto psi0 =
            coherent_product_state(hamiltonian.basis, gauss_state.amplitude, spec.leakage_tolerance);
        const double e0 = fock::energy(hamiltonian, psi0);

        const int n = static_cast<int>(form.modes.size());
        const int i1 = form.mode_index(ModeId::AlphaQ);
        const int i2 = form.mode_index(ModeId::BetaMinusQ);

        for (double t : config.oracle_times) {
            const auto psi = evolve_state(hamiltonian, psi0, t);
            const auto map = evolve(generator, t);

            std::vector<LinearOperatorForm> forms;
            for (ModeId m : form.modes) forms.push_back(operator_at(map, m, false));
            const auto moments = GaussianMomentSet::compute(forms, gauss_state);

            double err_occ = 0.0, err_normal = 0.0, err_anomalous = 0.0;
            for (int i = 0; i < n; ++i) {
                const double gauss_occ = std::norm(moments.means(i)) + moments.normal(i, i).real();
                err_occ = std::max(err_occ, std::abs(gauss_occ - fock::occupation(psi, i)));
                for (int j = 0; j < n; ++j) {
                    // displaced moments <a_i^dag a_j>, <a_i a_j>
                    const auto normal_full = moments.normal(i, j) +
                                             std::conj(moments.means(i)) * moments.means(j);
                    const auto anomalous_full =
                        moments.anomalous(i, j) + moments.means(i) * moments.means(j);
                    err_normal = std::max(err_normal,
                                          std::abs(normal_full - fock::normal_moment(psi, i, j)));
                    err_anomalous = std::max(
                        err_anomalous, std::abs(anomalous_full - fock::anomalous_moment(psi, i, j)));
                }
            }

            const auto f1 = operator_at(map, ModeId::AlphaQ, false);
            const auto f2 = operator_at(map, ModeId::BetaMinusQ, false);
            const double var_gauss = gaussian::number_covariance(f1, f1, gauss_state) +
                                     gaussian::number_covariance(f2, f2, gauss_state) -
                                     2.0 * gaussian::number_covariance(f1, f2, gauss_state);
            const double var_fock = fock::number_covariance(psi, i1, i1) +
                                    fock::number_covariance(psi, i2, i2) -
                                    2.0 * fock::number_covariance(psi, i1, i2);
            const double err_var = std::abs(var_gauss - var_fock) / std::max(var_fock, 1e-30);

            csv.row({fmt(np), fmt(t), psi.trusted ? "1" : "0", fmt(psi.leakage), fmt(err_occ),
                     fmt(err_normal), fmt(err_anomalous), fmt(err_var),
                     fmt(std::abs(psi.norm() - 1.0)),
                     fmt(std::abs(fock::energy(hamiltonian, psi) - e0))});
        }
    }
}

void run_detect(const RunConfig& config, CsvWriter& csv) {
    SystemConfig system = config.system;
    validate(system);
    VerificationConfig ver = VerificationConfig::defaults(system);
    ver.eta_verify = config.detect_eta_verify;
    ver.duration = config.detect_duration;

    const auto generator = build_dynamical_matrix(system);
    const auto map = evolve(generator, config.detect_t_gen);
    const auto state = InitialState::standard(system);
    ModePair pair{{Condensate::A, Momentum::PlusQ}, {Condensate::B, Momentum::MinusQ}};

    const double xi_p_ref = diagnostics::xi_quadrature(pair, state, map);
    const auto xi_n_ref = diagnostics::xi_number(pair, state, map);

    const auto est_p =
        estimate_xi_p_homodyne(system, ver, config.detect_t_gen, config.detect_shots, config.seed);
    const auto f = operator_at(map, ModeId::AlphaQ, false);
    const auto g = operator_at(map, ModeId::BetaMinusQ, false);
    const auto est_n =
        estimate_xi_n_heterodyne(f, g, state, config.detect_shots, derive_seed(config.seed, 7));

    csv.row({"estimator", "shots", "estimate", "std_error", "reference", "deviation_sigmas"});
    const double dev_p = est_p.std_error > 0.0 ? (est_p.value - xi_p_ref) / est_p.std_error : 0.0;
    csv.row({"xi_p_homodyne", fmt(double(config.detect_shots)), fmt(est_p.value),
             fmt(est_p.std_error), fmt(xi_p_ref), fmt(dev_p)});
    if (xi_n_ref && est_n.defined) {
        const double dev_n =
            est_n.std_error > 0.0 ? (est_n.value - *xi_n_ref) / est_n.std_error : 0.0;
        csv.row({"xi_n_heterodyne", fmt(double(config.detect_shots)), fmt(est_n.value),
                 fmt(est_n.std_error), fmt(*xi_n_ref), fmt(dev_n)});
        const double dev_raw =
            est_n.std_error > 0.0 ? (est_n.raw_value - *xi_n_ref) / est_n.std_error : 0.0;
        csv.row({"xi_n_heterodyne_raw", fmt(double(config.detect_shots)), fmt(est_n.raw_value),
                 fmt(est_n.std_error), fmt(*xi_n_ref), fmt(dev_raw)});
    }
}

}  // namespace

std::vector<std::string> run(const RunConfig& config) {
    validate(config.system);
    CsvWriter csv(config.out);

    switch (config.scenario) {
        case Scenario::Dispersion: run_dispersion(config, csv); break;
        case Scenario::Evolve: run_evolve(config, csv); break;
        case Scenario::Sweep: run_sweep(config, csv); break;
        case Scenario::OracleCompare: run_oracle_compare(config, csv); break;
        case Scenario::Detect: run_detect(config, csv); break;
    }
    csv.out.close();
    if (!csv.out) throw std::runtime_error("failed writing output file '" + config.out + "'");

    const std::string sidecar_path = config.out + ".meta.json";
    std::ofstream sidecar(sidecar_path);
    if (!sidecar) throw std::runtime_error("cannot open sidecar '" + sidecar_path + "'");
    sidecar << resolved_config_json(config) << "\n";
    sidecar.close();
    return {config.out, sidecar_path};
}

}  // namespace becbragg
