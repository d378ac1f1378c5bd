#include "becbragg/gaussian.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace becbragg {

InitialState InitialState::standard(const SystemConfig& config) {
    validate(config);
    const auto modes = variant_modes(config.variant);
    InitialState state(static_cast<int>(modes.size()));
    for (int m = 0; m < state.n_modes(); ++m) {
        if (modes[m] == ModeId::Probe) {
            state.amplitude(m) = std::sqrt(config.n_probe) *
                                 std::exp(std::complex<double>(0.0, config.probe_phase));
        }
    }
    return state;
}

namespace gaussian {

namespace {

void check_same_space(const LinearOperatorForm& f, const InitialState& state) {
    if (f.n_modes() != state.n_modes()) {
        throw std::invalid_argument("gaussian: form and state live on different mode spaces");
    }
}

// <df dg> with elementary contractions <dx_m dx_m^dag> = 1.
std::complex<double> contract(const LinearOperatorForm& f, const LinearOperatorForm& g) {
    if (f.n_modes() != g.n_modes()) {
        throw std::invalid_argument("gaussian: forms live on different mode spaces");
    }
    return (f.ann.array() * g.cre.array()).sum();
}

// Sum over ordered pairings of the fluctuation factors.
std::complex<double> wick(std::span<const LinearOperatorForm> fluct) {
    const std::size_t n = fluct.size();
    if (n == 0) return {1.0, 0.0};
    if (n % 2 != 0) return {0.0, 0.0};
    if (n == 2) return contract(fluct[0], fluct[1]);

    std::complex<double> total{0.0, 0.0};
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<LinearOperatorForm> rest;
        rest.reserve(n - 2);
        for (std::size_t k = 1; k < n; ++k) {
            if (k != j) rest.push_back(fluct[k]);
        }
        total += contract(fluct[0], fluct[j]) * wick(rest);
    }
    return total;
}

}  // namespace

std::complex<double> mean(const LinearOperatorForm& f, const InitialState& state) {
    check_same_space(f, state);
    std::complex<double> value = f.constant;
    for (int m = 0; m < f.n_modes(); ++m) {
        value += f.ann(m) * state.amplitude(m) + f.cre(m) * std::conj(state.amplitude(m));
    }
    return value;
}

std::complex<double> contract_pair(const LinearOperatorForm& f, const LinearOperatorForm& g,
                                   const InitialState& state) {
    check_same_space(f, state);
    check_same_space(g, state);
    return contract(f, g);
}

std::complex<double> expectation_product(std::span<const LinearOperatorForm> factors,
                                         const InitialState& state) {
    const std::size_t n = factors.size();
    if (n > 4) {
        throw std::invalid_argument("expectation_product: supports up to four factors");
    }
    std::vector<std::complex<double>> mu(n);
    for (std::size_t k = 0; k < n; ++k) {
        mu[k] = mean(factors[k], state);
    }

    // <prod (mu_k + df_k)> = sum over even-size fluctuation subsets.
    std::complex<double> total{0.0, 0.0};
    for (unsigned subset = 0; subset < (1u << n); ++subset) {
        if (std::popcount(subset) % 2 != 0) continue;
        std::complex<double> mean_part{1.0, 0.0};
        std::vector<LinearOperatorForm> fluct;
        for (std::size_t k = 0; k < n; ++k) {
            if (subset & (1u << k)) {
                fluct.push_back(factors[k]);
            } else {
                mean_part *= mu[k];
            }
        }
        total += mean_part * wick(fluct);
    }
    return total;
}

double occupation(const LinearOperatorForm& f, const InitialState& state) {
    const auto mu = mean(f, state);
    const auto fd = f.conjugate();
    return std::norm(mu) + contract(fd, f).real();
}

double number_covariance(const LinearOperatorForm& f, const LinearOperatorForm& g,
                         const InitialState& state) {
    const LinearOperatorForm quad[4] = {f.conjugate(), f, g.conjugate(), g};
    const auto joint = expectation_product(std::span<const LinearOperatorForm>(quad, 4), state);
    const auto nf = expectation_product(std::span<const LinearOperatorForm>(quad, 2), state);
    const auto ng = expectation_product(std::span<const LinearOperatorForm>(quad + 2, 2), state);
    return (joint - nf * ng).real();
}

std::pair<LinearOperatorForm, LinearOperatorForm> quadrature_forms(const LinearOperatorForm& f) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto fd = f.conjugate();
    LinearOperatorForm x = inv_sqrt2 * (f + fd);
    LinearOperatorForm p = std::complex<double>(0.0, -inv_sqrt2) * (f - fd);
    return {x, p};
}

double hermitian_variance(const LinearOperatorForm& h, const InitialState& state) {
    check_same_space(h, state);
    return contract(h, h).real();
}

LinearOperatorForm particle_mode_form(const LinearOperatorForm& alpha_q,
                                      const LinearOperatorForm& alpha_minus_q_dag, double u,
                                      double v) {
    if (std::abs(u * u - v * v - 1.0) > 1e-10) {
        throw std::invalid_argument("particle_mode_form: (u, v) is not symplectic, u^2 - v^2 != 1");
    }
    return std::complex<double>(u) * alpha_q - std::complex<double>(v) * alpha_minus_q_dag;
}

}  // namespace gaussian

GaussianMomentSet GaussianMomentSet::compute(std::span<const LinearOperatorForm> forms,
                                             const InitialState& state) {
    const int n = static_cast<int>(forms.size());
    GaussianMomentSet set;
    set.means = Eigen::VectorXcd(n);
    set.normal = Eigen::MatrixXcd(n, n);
    set.anomalous = Eigen::MatrixXcd(n, n);
    for (int i = 0; i < n; ++i) {
        set.means(i) = gaussian::mean(forms[i], state);
    }
    for (int i = 0; i < n; ++i) {
        const auto fi_dag = forms[i].conjugate();
        for (int j = 0; j < n; ++j) {
            set.normal(i, j) = gaussian::contract_pair(fi_dag, forms[j], state);
            set.anomalous(i, j) = gaussian::contract_pair(forms[i], forms[j], state);
        }
    }
    return set;
}

bool GaussianMomentSet::physical(double tolerance) const {
    for (int i = 0; i < normal.rows(); ++i) {
        const double N = normal(i, i).real();
        if (N < -tolerance) return false;
        if (N * (N + 1.0) < std::norm(anomalous(i, i)) - tolerance) return false;
    }
    return true;
}

}  // namespace becbragg
