#ifndef BECBRAGG_MODEL_HPP
#define BECBRAGG_MODEL_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace becbragg {

/// The five physical modes: quasiparticles at +-q in condensates A and B,
/// plus the common probe field.  Ordering is part of the contract.
enum class ModeId { AlphaQ = 0, AlphaMinusQ = 1, BetaQ = 2, BetaMinusQ = 3, Probe = 4 };

enum class Variant {
    Full5,             // all four quasiparticle modes + probe
    ResonantOnly3,     // resonant +q modes of A and B + probe
    SingleCondensate3  // condensate A (+-q) + probe, eta_B dropped
};

const char* to_string(ModeId mode);
const char* to_string(Variant variant);

/// One simulation instance.  All frequencies in rad/us.
struct SystemConfig {
    double omega_A = 0.21;   // Bogoliubov frequency of condensate A
    double omega_B = 0.21;   // Bogoliubov frequency of condensate B
    double delta = 0.17;     // pump-probe detuning
    double eta_A = 1.62;     // effective coupling, condensate A
    double eta_B = 2.025;    // effective coupling, condensate B
    double n_probe = 10.0;   // mean photon number of the initial coherent probe
    double probe_phase = 0.0;
    Variant variant = Variant::Full5;

    static SystemConfig reference();  // the reference working point
};

/// Throws std::invalid_argument on omega < 0, eta < 0 or n_probe < 0.
/// omega = 0 and delta = 0 are allowed: the closed-form regimes neglect
/// the diagonal frequencies entirely.
void validate(const SystemConfig& config);

/// One slot of the dynamical state vector: a mode operator or its dagger.
struct BasisSlot {
    ModeId mode;
    bool daggered;
};

/// Generator of the closed linear Heisenberg system vdot = M v over the
/// basis v = (alpha_q, alpha_{-q}^dag, beta_q, beta_{-q}^dag, c^dag)
/// (reduced variants drop rows/columns).  The metric G encodes the
/// canonical commutators; physical generators satisfy M G + G M^dag = 0.
struct DynamicalMatrix {
    Variant variant;
    std::vector<BasisSlot> basis;
    Eigen::MatrixXcd entries;
    Eigen::VectorXd metric;  // +1 for plain slots, -1 for daggered ones

    int size() const { return static_cast<int>(basis.size()); }
    /// Index of the slot holding `mode` (in either dagger flavour);
    /// returns -1 when the mode is absent from the variant.
    int slot_of(ModeId mode) const;
};

/// The mode list of a variant, in basis order.
std::vector<ModeId> variant_modes(Variant variant);

DynamicalMatrix build_dynamical_matrix(const SystemConfig& config);

/// H/hbar as a Hermitian quadratic form in the mode operators:
/// sum_m w_m n_m  +  sum (g x_i^dag x_j + h.c.)  +  sum (g x_i^dag x_j^dag + h.c.)
/// Shared by the Fock oracle and by the commutator consistency check.
struct QuadraticHamiltonian {
    struct Bilinear {
        int i, j;                // mode indices into `modes`
        std::complex<double> g;  // coefficient of x_i^dag x_j (hopping) or x_i^dag x_j^dag (pair)
        bool pair;
    };
    std::vector<ModeId> modes;
    Eigen::VectorXd number;  // w_m, with w_probe = -delta
    std::vector<Bilinear> terms;

    int mode_index(ModeId mode) const;
    /// Coefficient of x_i^dag x_j^dag (pair = true) or x_i^dag x_j (pair = false);
    /// zero when no such term exists.
    std::complex<double> coefficient(ModeId i, ModeId j, bool pair) const;
};

QuadraticHamiltonian hamiltonian_quadratic_form(const SystemConfig& config);

/// Regenerates the Heisenberg generator from the quadratic form via
/// canonical commutators, vdot = i [H/hbar, v].  Used as an algebraic
/// cross-check of build_dynamical_matrix and exercised by tests.
Eigen::MatrixXcd heisenberg_matrix_from(const QuadraticHamiltonian& form,
                                        const std::vector<BasisSlot>& basis);

}  // namespace becbragg

#endif
