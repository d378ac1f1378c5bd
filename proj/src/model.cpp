#include "becbragg/model.hpp"

#include <cmath>
#include <stdexcept>

namespace becbragg {

namespace {
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
}

const char* to_string(ModeId mode) {
    switch (mode) {
        case ModeId::AlphaQ: return "alpha_q";
        case ModeId::AlphaMinusQ: return "alpha_-q";
        case ModeId::BetaQ: return "beta_q";
        case ModeId::BetaMinusQ: return "beta_-q";
        case ModeId::Probe: return "probe";
    }
    return "?";
}

const char* to_string(Variant variant) {
    switch (variant) {
        case Variant::Full5: return "full5";
        case Variant::ResonantOnly3: return "resonant3";
        case Variant::SingleCondensate3: return "single3";
    }
    return "?";
}

SystemConfig SystemConfig::reference() {
    SystemConfig c;
    c.omega_A = 0.21;
    c.omega_B = 0.21;
    c.delta = 0.17;
    c.eta_A = 1.62;
    c.eta_B = 1.25 * 1.62;
    c.n_probe = 10.0;
    c.probe_phase = 0.0;
    c.variant = Variant::Full5;
    return c;
}

void validate(const SystemConfig& config) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(config.omega_A) || !finite(config.omega_B) || !finite(config.delta) ||
        !finite(config.eta_A) || !finite(config.eta_B) || !finite(config.n_probe) ||
        !finite(config.probe_phase)) {
        throw std::invalid_argument("SystemConfig: all fields must be finite");
    }
    if (config.omega_A < 0.0 || config.omega_B < 0.0) {
        throw std::invalid_argument("SystemConfig: omega_A and omega_B must be >= 0");
    }
    if (config.eta_A < 0.0 || config.eta_B < 0.0) {
        throw std::invalid_argument("SystemConfig: couplings must be >= 0");
    }
    if (config.n_probe < 0.0) {
        throw std::invalid_argument("SystemConfig: n_probe must be >= 0");
    }
}

std::vector<ModeId> variant_modes(Variant variant) {
    switch (variant) {
        case Variant::Full5:
            return {ModeId::AlphaQ, ModeId::AlphaMinusQ, ModeId::BetaQ, ModeId::BetaMinusQ,
                    ModeId::Probe};
        case Variant::ResonantOnly3:
            return {ModeId::AlphaQ, ModeId::BetaQ, ModeId::Probe};
        case Variant::SingleCondensate3:
            return {ModeId::AlphaQ, ModeId::AlphaMinusQ, ModeId::Probe};
    }
    throw std::logic_error("variant_modes: unknown variant");
}

int DynamicalMatrix::slot_of(ModeId mode) const {
    for (int k = 0; k < size(); ++k) {
        if (basis[k].mode == mode) return k;
    }
    return -1;
}

DynamicalMatrix build_dynamical_matrix(const SystemConfig& config) {
    validate(config);

    DynamicalMatrix dm;
    dm.variant = config.variant;
    for (ModeId mode : variant_modes(config.variant)) {
        const bool daggered =
            mode == ModeId::AlphaMinusQ || mode == ModeId::BetaMinusQ || mode == ModeId::Probe;
        dm.basis.push_back({mode, daggered});
    }

    const int n = dm.size();
    dm.entries = Eigen::MatrixXcd::Zero(n, n);
    dm.metric = Eigen::VectorXd(n);
    for (int k = 0; k < n; ++k) {
        dm.metric(k) = dm.basis[k].daggered ? -1.0 : 1.0;
    }

    const int probe = dm.slot_of(ModeId::Probe);
    auto couple = [&](ModeId mode, double omega, double eta) {
        const int k = dm.slot_of(mode);
        if (k < 0) return;
        const bool daggered = dm.basis[k].daggered;
        // alpha_q:          d/dt = -i w alpha_q      - i eta c^dag
        // alpha_{-q}^dag:   d/dt = +i w alpha_-q^dag + i eta c^dag
        dm.entries(k, k) = daggered ? I * omega : -I * omega;
        dm.entries(k, probe) = daggered ? I * eta : -I * eta;
        // probe row: c^dag couples with +i eta to every quasiparticle slot
        dm.entries(probe, k) = I * eta;
    };
    couple(ModeId::AlphaQ, config.omega_A, config.eta_A);
    couple(ModeId::AlphaMinusQ, config.omega_A, config.eta_A);
    couple(ModeId::BetaQ, config.omega_B, config.eta_B);
    couple(ModeId::BetaMinusQ, config.omega_B, config.eta_B);
    dm.entries(probe, probe) = -I * config.delta;

    return dm;
}

int QuadraticHamiltonian::mode_index(ModeId mode) const {
    for (int m = 0; m < static_cast<int>(modes.size()); ++m) {
        if (modes[m] == mode) return m;
    }
    return -1;
}

std::complex<double> QuadraticHamiltonian::coefficient(ModeId a, ModeId b, bool pair) const {
    const int i = mode_index(a);
    const int j = mode_index(b);
    if (i < 0 || j < 0) return {0.0, 0.0};
    for (const auto& term : terms) {
        if (term.pair != pair) continue;
        if (term.i == i && term.j == j) return term.g;
        // pair terms are symmetric; hoppings transpose with conjugation
        if (term.i == j && term.j == i) return pair ? term.g : std::conj(term.g);
    }
    return {0.0, 0.0};
}

QuadraticHamiltonian hamiltonian_quadratic_form(const SystemConfig& config) {
    validate(config);

    QuadraticHamiltonian h;
    h.modes = variant_modes(config.variant);
    const int n = static_cast<int>(h.modes.size());
    h.number = Eigen::VectorXd::Zero(n);

    auto idx = [&](ModeId mode) { return h.mode_index(mode); };
    const int probe = idx(ModeId::Probe);
    h.number(probe) = -config.delta;

    // H_AF/hbar = eta_A c^dag (alpha_q^dag + alpha_{-q}) + h.c., same for B.
    auto couple = [&](ModeId resonant, ModeId offres, double omega, double eta) {
        if (int m = idx(resonant); m >= 0) {
            h.number(m) = omega;
            if (eta != 0.0) h.terms.push_back({probe, m, eta, true});
        }
        if (int m = idx(offres); m >= 0) {
            h.number(m) = omega;
            if (eta != 0.0) h.terms.push_back({probe, m, eta, false});
        }
    };
    couple(ModeId::AlphaQ, ModeId::AlphaMinusQ, config.omega_A, config.eta_A);
    couple(ModeId::BetaQ, ModeId::BetaMinusQ, config.omega_B, config.eta_B);
    return h;
}

Eigen::MatrixXcd heisenberg_matrix_from(const QuadraticHamiltonian& form,
                                        const std::vector<BasisSlot>& basis) {
    const int n = static_cast<int>(basis.size());

    // d x_m / dt = i [H, x_m]; accumulate coefficients over (mode, dagger)
    // pairs, then map onto the closed basis.
    auto slot_index = [&](int mode, bool daggered) {
        for (int k = 0; k < n; ++k) {
            if (form.mode_index(basis[k].mode) == mode && basis[k].daggered == daggered) return k;
        }
        return -1;
    };

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    const int n_modes = static_cast<int>(form.modes.size());

    for (int row = 0; row < n; ++row) {
        const int m = form.mode_index(basis[row].mode);
        // coefficients of d x_m/dt over annihilation / creation operators
        Eigen::VectorXcd ann = Eigen::VectorXcd::Zero(n_modes);
        Eigen::VectorXcd cre = Eigen::VectorXcd::Zero(n_modes);

        ann(m) += -I * form.number(m);  // i [w n_m, x_m] = -i w x_m
        for (const auto& term : form.terms) {
            if (!term.pair) {
                // i [g x_i^dag x_j + conj(g) x_j^dag x_i, x_m]
                if (term.i == m) ann(term.j) += -I * term.g;
                if (term.j == m) ann(term.i) += -I * std::conj(term.g);
            } else {
                // i [g x_i^dag x_j^dag + conj(g) x_j x_i, x_m]
                if (term.i == m) cre(term.j) += -I * term.g;
                if (term.j == m) cre(term.i) += -I * term.g;
            }
        }
        if (basis[row].daggered) {
            // d x^dag/dt = (d x/dt)^dag: conjugate and swap flavours
            std::swap(ann, cre);
            ann = ann.conjugate().eval();
            cre = cre.conjugate().eval();
        }
        for (int mode = 0; mode < n_modes; ++mode) {
            for (bool daggered : {false, true}) {
                const cplx coeff = daggered ? cre(mode) : ann(mode);
                if (coeff == cplx{0.0, 0.0}) continue;
                const int col = slot_index(mode, daggered);
                if (col < 0) {
                    throw std::logic_error(
                        "heisenberg_matrix_from: system does not close on the given basis");
                }
                M(row, col) += coeff;
            }
        }
    }
    return M;
}

}  // namespace becbragg
