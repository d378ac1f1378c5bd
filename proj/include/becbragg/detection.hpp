#ifndef BECBRAGG_DETECTION_HPP
#define BECBRAGG_DETECTION_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "becbragg/diagnostics.hpp"
#include "becbragg/gaussian.hpp"
#include "becbragg/propagator.hpp"

namespace becbragg {

/// Parameters of the weak verification stage applied after generation.
struct VerificationConfig {
    double eta_verify;  // rad/us, << omega_B for the perturbative output form
    double duration;    // us
    double delta;       // verification pump-probe detuning, rad/us
    double omega_B;     // Bogoliubov frequency, rad/us

    static VerificationConfig defaults(const SystemConfig& system);
};

/// Rotating-frame transfer coefficients of the output verification probe:
/// spectral components at delta -+ omega_B carrying the resonant
/// quasiparticle and the opposite-momentum mode,
///   K_-+ = eta/(delta -+ omega_B) (e^{i(delta -+ omega_B) t} - 1),
/// with the analytic limit i eta t at exact resonance (flagged).
struct ProbeOutputForm {
    Condensate side;
    std::complex<double> input_coeff;     // on the verifier's own operator
    std::complex<double> sideband_minus;  // resonant quasiparticle component
    std::complex<double> sideband_plus;   // opposite-momentum component
    double duration;
    bool resonant_limit = false;
};

/// Warning when eta_verify is not small against omega_B.
std::optional<std::string> weak_coupling_warning(const VerificationConfig& config);

ProbeOutputForm output_probe_form(const VerificationConfig& config, Condensate side);

/// Balanced beam-splitter superposition of the two PSD-filtered output
/// arms, as a form over the generation modes plus two fresh verifier
/// modes (appended in order A, B):
///   W = [ |K| (f^dag + g) + c_A + c_B^dag ] / sqrt(2),
/// f = alpha_q(t_gen), g = beta_{-q}(t_gen).  The PSD local-oscillator
/// phase absorbs arg K per arm; quadrature variances of W then encode
/// xi_p of the (q_A, -q_B) pair through
///   Var X(W) = [ |K|^2 Var(X1 + X2) + 1 ] / 2   (same for P).
LinearOperatorForm superpose_outputs(const ProbeOutputForm& a_out, const ProbeOutputForm& b_out,
                                     const EvolutionMap& generation_map);

/// Initial state extended with the two verifier vacua.
InitialState extended_state(const InitialState& generation_state);

/// Summary of one Monte Carlo measurement run; identical seed + inputs
/// give a bit-identical summary.
struct MeasurementRun {
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    int blocks = 0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;
    double se_mean = 0.0;      // block-based standard errors
    double se_variance = 0.0;
};

/// Draws `shots` homodyne outcomes of a Hermitian quadrature form from its
/// exact Gaussian distribution.
MeasurementRun sample_homodyne(const LinearOperatorForm& hermitian_form, const InitialState& state,
                               std::size_t shots, std::uint64_t seed, int blocks = 25);

struct XiPEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double gain_squared = 0.0;  // |K|^2 calibration used in the correction
    MeasurementRun x_run;
    MeasurementRun p_run;
};

/// Homodyne xi_p estimator on the beam-splitter output:
/// xi_p = (VarX(W) + VarP(W) - 1) / |K|^2, the -1 removing the verifier
/// vacuum noise.
XiPEstimate estimate_xi_p_homodyne(const SystemConfig& system, const VerificationConfig& ver,
                                   double t_gen, std::size_t shots, std::uint64_t seed);

struct XiNEstimate {
    bool defined = true;
    double value = 0.0;      // noise-corrected
    double raw_value = 0.0;  // without the heterodyne correction
    double std_error = 0.0;
    double n1 = 0.0;         // corrected occupation estimates
    double n2 = 0.0;
};

/// Dual-quadrature (heterodyne) xi_n estimator for a mode pair.  Outcomes
/// z_i are complex Gaussians with the anti-normal (+1) noise per mode;
/// corrections applied:
///   <n_i>          = E|z_i|^2 - 1
///   Var(n_1 - n_2) = Var(|z_1|^2 - |z_2|^2) - (<n_1> + <n_2> + 2).
XiNEstimate estimate_xi_n_heterodyne(const LinearOperatorForm& f, const LinearOperatorForm& g,
                                     const InitialState& state, std::size_t shots,
                                     std::uint64_t seed, int blocks = 25);

}  // namespace becbragg

#endif
