#include "becbragg/detection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

#include "becbragg/rng.hpp"

namespace becbragg {

namespace {
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

cplx sideband_coefficient(double eta, double mismatch, double t, bool& at_resonance) {
    // eta/mismatch (e^{i mismatch t} - 1), -> i eta t as mismatch -> 0
    if (std::abs(mismatch * t) < 1e-9) {
        at_resonance = true;
        return I * eta * t;
    }
    return eta / mismatch * (std::exp(I * mismatch * t) - 1.0);
}

}  // namespace

VerificationConfig VerificationConfig::defaults(const SystemConfig& system) {
    VerificationConfig v;
    v.omega_B = system.omega_A;
    v.eta_verify = 1e-3 * v.omega_B;
    v.duration = 20.0;
    v.delta = system.delta;
    return v;
}

std::optional<std::string> weak_coupling_warning(const VerificationConfig& config) {
    if (config.eta_verify > 0.1 * config.omega_B) {
        std::ostringstream msg;
        msg << "verification coupling eta_verify = " << config.eta_verify
            << " is not small against omega_B = " << config.omega_B
            << "; the perturbative output-probe form degrades";
        return msg.str();
    }
    return std::nullopt;
}

ProbeOutputForm output_probe_form(const VerificationConfig& config, Condensate side) {
    if (!(config.duration >= 0.0) || !(config.omega_B > 0.0)) {
        throw std::invalid_argument("output_probe_form: need duration >= 0 and omega_B > 0");
    }
    ProbeOutputForm out;
    out.side = side;
    out.duration = config.duration;
    out.input_coeff = 1.0;
    bool flagged = false;
    out.sideband_minus = sideband_coefficient(config.eta_verify, config.delta - config.omega_B,
                                              config.duration, flagged);
    out.sideband_plus = sideband_coefficient(config.eta_verify, config.delta + config.omega_B,
                                             config.duration, flagged);
    out.resonant_limit = flagged;
    return out;
}

InitialState extended_state(const InitialState& generation_state) {
    InitialState state(generation_state.n_modes() + 2);
    state.amplitude.head(generation_state.n_modes()) = generation_state.amplitude;
    return state;
}

LinearOperatorForm superpose_outputs(const ProbeOutputForm& a_out, const ProbeOutputForm& b_out,
                                     const EvolutionMap& generation_map) {
    if (a_out.side != Condensate::A || b_out.side != Condensate::B) {
        throw std::invalid_argument("superpose_outputs: expected an A-side and a B-side form");
    }
    if (a_out.duration != b_out.duration) {
        throw std::invalid_argument("superpose_outputs: verification durations differ");
    }
    const double gain_a = std::abs(a_out.sideband_minus);
    const double gain_b = std::abs(b_out.sideband_minus);
    if (gain_a > 0.0 && gain_b > 0.0 &&
        std::abs(gain_a - gain_b) > 1e-9 * std::max(gain_a, gain_b)) {
        throw std::invalid_argument("superpose_outputs: arm gains differ; use symmetric pulses");
    }

    const int n_gen = generation_map.source.size();
    const int total = n_gen + 2;  // verifier modes appended: A then B
    const int verifier_a = n_gen;
    const int verifier_b = n_gen + 1;

    const auto f_dag = operator_at(generation_map, ModeId::AlphaQ, true).extended(total);
    const auto g = operator_at(generation_map, ModeId::BetaMinusQ, false).extended(total);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    LinearOperatorForm w(total);
    if (gain_a > 0.0) w += cplx(gain_a) * f_dag;
    if (gain_b > 0.0) w += cplx(gain_b) * g;
    w.ann(verifier_a) += 1.0;
    w.cre(verifier_b) += 1.0;
    w *= cplx(inv_sqrt2);
    return w;
}

MeasurementRun sample_homodyne(const LinearOperatorForm& hermitian_form, const InitialState& state,
                               std::size_t shots, std::uint64_t seed, int blocks) {
    if (shots == 0 || blocks <= 0) {
        throw std::invalid_argument("sample_homodyne: need shots > 0 and blocks > 0");
    }
    blocks = std::min<int>(blocks, static_cast<int>(std::min<std::size_t>(shots, 1000)));
    const double mean = gaussian::mean(hermitian_form, state).real();
    const double sigma = std::sqrt(gaussian::hermitian_variance(hermitian_form, state));

    MeasurementRun run;
    run.seed = seed;
    run.shots = shots;
    run.blocks = blocks;

    std::vector<double> block_mean(blocks, 0.0), block_var(blocks, 0.0);
    const std::size_t per_block = shots / blocks;
    std::size_t remainder = shots % blocks;
    double total_sum = 0.0, total_sq = 0.0;
    for (int b = 0; b < blocks; ++b) {
        NormalSampler normal(derive_seed(seed, static_cast<std::uint64_t>(b)));
        const std::size_t n_b = per_block + (static_cast<std::size_t>(b) < remainder ? 1 : 0);
        double sum = 0.0, sq = 0.0;
        for (std::size_t k = 0; k < n_b; ++k) {
            const double x = mean + sigma * normal();
            sum += x;
            sq += x * x;
        }
        block_mean[b] = sum / n_b;
        block_var[b] = sq / n_b - block_mean[b] * block_mean[b];
        total_sum += sum;
        total_sq += sq;
    }
    run.sample_mean = total_sum / shots;
    run.sample_variance =
        (total_sq - shots * run.sample_mean * run.sample_mean) / (shots - 1.0);

    auto block_se = [&](const std::vector<double>& values, double center) {
        double ss = 0.0;
        for (double v : values) ss += (v - center) * (v - center);
        return std::sqrt(ss / (blocks * (blocks - 1.0)));
    };
    double mean_of_block_means = 0.0, mean_of_block_vars = 0.0;
    for (int b = 0; b < blocks; ++b) {
        mean_of_block_means += block_mean[b] / blocks;
        mean_of_block_vars += block_var[b] / blocks;
    }
    run.se_mean = block_se(block_mean, mean_of_block_means);
    run.se_variance = block_se(block_var, mean_of_block_vars);
    return run;
}

XiPEstimate estimate_xi_p_homodyne(const SystemConfig& system, const VerificationConfig& ver,
                                   double t_gen, std::size_t shots, std::uint64_t seed) {
    const auto generator = build_dynamical_matrix(system);
    const auto map = evolve(generator, t_gen);
    const auto state = extended_state(InitialState::standard(system));

    const auto a_out = output_probe_form(ver, Condensate::A);
    const auto b_out = output_probe_form(ver, Condensate::B);
    const auto w = superpose_outputs(a_out, b_out, map);
    const auto [x_form, p_form] = gaussian::quadrature_forms(w);

    const double gain2 = std::norm(a_out.sideband_minus);
    if (gain2 == 0.0) {
        throw std::invalid_argument("estimate_xi_p_homodyne: zero sideband gain (duration 0?)");
    }

    XiPEstimate est;
    est.gain_squared = gain2;
    est.x_run = sample_homodyne(x_form, state, shots, derive_seed(seed, 101));
    est.p_run = sample_homodyne(p_form, state, shots, derive_seed(seed, 202));
    est.value = (est.x_run.sample_variance + est.p_run.sample_variance - 1.0) / gain2;
    est.std_error = std::sqrt(est.x_run.se_variance * est.x_run.se_variance +
                              est.p_run.se_variance * est.p_run.se_variance) /
                    gain2;
    return est;
}

XiNEstimate estimate_xi_n_heterodyne(const LinearOperatorForm& f, const LinearOperatorForm& g,
                                     const InitialState& state, std::size_t shots,
                                     std::uint64_t seed, int blocks) {
    if (shots < 2 || blocks <= 0) {
        throw std::invalid_argument("estimate_xi_n_heterodyne: need shots >= 2 and blocks > 0");
    }
    blocks = std::min<int>(blocks, static_cast<int>(std::min<std::size_t>(shots / 2, 1000)));
    // anti-normally ordered joint moments of the two commuting modes
    const LinearOperatorForm forms[2] = {f, g};
    cplx mu[2];
    Eigen::Matrix2cd A, B;
    for (int i = 0; i < 2; ++i) {
        mu[i] = gaussian::mean(forms[i], state);
        for (int j = 0; j < 2; ++j) {
            A(i, j) = gaussian::contract_pair(forms[i], forms[j].conjugate(), state);
            B(i, j) = gaussian::contract_pair(forms[i], forms[j], state);
        }
    }

    // the estimator is undefined exactly where diagnostics xi_n is:
    // vanishing true occupations (the t = 0 vacuum limit)
    const double true_denominator = (A(0, 0).real() - 1.0) + std::norm(mu[0]) +
                                    (A(1, 1).real() - 1.0) + std::norm(mu[1]);
    if (true_denominator < 1e-12) {
        XiNEstimate undefined;
        undefined.defined = false;
        return undefined;
    }

    // real covariance of (Re z1, Im z1, Re z2, Im z2)
    Eigen::Matrix4d cov;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cov(2 * i, 2 * j) = 0.5 * (A(i, j) + B(i, j)).real();
            cov(2 * i + 1, 2 * j + 1) = 0.5 * (A(i, j) - B(i, j)).real();
            cov(2 * i, 2 * j + 1) = 0.5 * (B(i, j) - A(i, j)).imag();
            cov(2 * i + 1, 2 * j) = 0.5 * (B(i, j) + A(i, j)).imag();
        }
    }
    Eigen::LLT<Eigen::Matrix4d> llt(cov);
    if (llt.info() != Eigen::Success) {
        // physical Husimi covariances are PSD; rescue rounding-level cases
        llt.compute(cov + 1e-12 * Eigen::Matrix4d::Identity());
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("estimate_xi_n_heterodyne: covariance not PSD");
        }
    }
    const Eigen::Matrix4d chol = llt.matrixL();

    std::vector<double> block_xi;
    double sum1 = 0.0, sum2 = 0.0, sum_d = 0.0, sum_d2 = 0.0;
    const std::size_t per_block = shots / blocks;
    std::size_t remainder = shots % blocks;
    for (int b = 0; b < blocks; ++b) {
        NormalSampler normal(derive_seed(seed, 1000 + static_cast<std::uint64_t>(b)));
        const std::size_t n_b = per_block + (static_cast<std::size_t>(b) < remainder ? 1 : 0);
        double b1 = 0.0, b2 = 0.0, bd = 0.0, bd2 = 0.0;
        for (std::size_t k = 0; k < n_b; ++k) {
            Eigen::Vector4d xi_raw;
            for (int c = 0; c < 4; ++c) xi_raw(c) = normal();
            const Eigen::Vector4d u = chol * xi_raw;
            const cplx z1 = mu[0] + cplx(u(0), u(1));
            const cplx z2 = mu[1] + cplx(u(2), u(3));
            const double m1 = std::norm(z1);
            const double m2 = std::norm(z2);
            const double d = m1 - m2;
            b1 += m1;
            b2 += m2;
            bd += d;
            bd2 += d * d;
        }
        sum1 += b1;
        sum2 += b2;
        sum_d += bd;
        sum_d2 += bd2;
        const double n1b = b1 / n_b - 1.0;
        const double n2b = b2 / n_b - 1.0;
        const double var_b = bd2 / n_b - (bd / n_b) * (bd / n_b);
        if (n1b + n2b > 1e-12) {
            block_xi.push_back((var_b - (n1b + n2b + 2.0)) / (n1b + n2b));
        }
    }

    XiNEstimate est;
    est.n1 = sum1 / shots - 1.0;
    est.n2 = sum2 / shots - 1.0;
    const double mean_d = sum_d / shots;
    const double var_d = (sum_d2 - shots * mean_d * mean_d) / (shots - 1.0);
    const double denom = est.n1 + est.n2;
    if (denom < 1e-12) {
        est.defined = false;
        return est;
    }
    est.raw_value = var_d / denom;
    est.value = (var_d - (denom + 2.0)) / denom;
    if (block_xi.size() >= 2) {
        double mean_xi = 0.0;
        for (double v : block_xi) mean_xi += v / block_xi.size();
        double ss = 0.0;
        for (double v : block_xi) ss += (v - mean_xi) * (v - mean_xi);
        est.std_error = std::sqrt(ss / (block_xi.size() * (block_xi.size() - 1.0)));
    }
    return est;
}

}  // namespace becbragg
