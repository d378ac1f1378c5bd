#ifndef BECBRAGG_GAUSSIAN_HPP
#define BECBRAGG_GAUSSIAN_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "becbragg/linear_form.hpp"
#include "becbragg/model.hpp"

namespace becbragg {

/// The initial Gaussian state: every mode is vacuum or coherent, specified
/// by its amplitude (0 = vacuum).  Fluctuations of both are vacuum, so the
/// only nonvanishing elementary contraction is <dx dx^dag> = 1 per mode.
struct InitialState {
    Eigen::VectorXcd amplitude;

    explicit InitialState(int n_modes) : amplitude(Eigen::VectorXcd::Zero(n_modes)) {}
    int n_modes() const { return static_cast<int>(amplitude.size()); }

    /// Quasiparticle vacua, probe coherent with sqrt(n_probe) e^{i phase}.
    static InitialState standard(const SystemConfig& config);
};

namespace gaussian {

/// <f> in the given state.
std::complex<double> mean(const LinearOperatorForm& f, const InitialState& state);

/// Centered second moment <df dg> (state-independent for vacuum/coherent
/// fluctuations; the state argument fixes the mode-space size).
std::complex<double> contract_pair(const LinearOperatorForm& f, const LinearOperatorForm& g,
                                   const InitialState& state);

/// Expectation of an ordered product of up to four displaced forms,
/// evaluated by Wick pairing of the fluctuation parts.
std::complex<double> expectation_product(std::span<const LinearOperatorForm> factors,
                                         const InitialState& state);

/// <f^dag f> = |<f>|^2 + <df^dag df>.
double occupation(const LinearOperatorForm& f, const InitialState& state);

/// Cov(f^dag f, g^dag g) via the full fourth-order Wick expansion.
double number_covariance(const LinearOperatorForm& f, const LinearOperatorForm& g,
                         const InitialState& state);

/// Quadratures X = (f + f^dag)/sqrt2, P = -i (f - f^dag)/sqrt2.
std::pair<LinearOperatorForm, LinearOperatorForm> quadrature_forms(const LinearOperatorForm& f);

/// Variance of a Hermitian form (real and non-negative).
double hermitian_variance(const LinearOperatorForm& h, const InitialState& state);

/// Particle-picture (atomic momentum side-mode) operator,
/// a_q = u alpha_q - v alpha_{-q}^dag.  Requires u^2 - v^2 = 1 to 1e-10.
LinearOperatorForm particle_mode_form(const LinearOperatorForm& alpha_q,
                                      const LinearOperatorForm& alpha_minus_q_dag, double u,
                                      double v);

}  // namespace gaussian

/// Means plus normal/anomalous second-moment blocks of a selected set of
/// forms: N_ij = <df_i^dag df_j>, M_ij = <df_i df_j>.
struct GaussianMomentSet {
    Eigen::VectorXcd means;
    Eigen::MatrixXcd normal;
    Eigen::MatrixXcd anomalous;

    static GaussianMomentSet compute(std::span<const LinearOperatorForm> forms,
                                     const InitialState& state);

    /// Single-mode physicality: N_ii >= 0 and N_ii (N_ii + 1) >= |M_ii|^2.
    bool physical(double tolerance = 1e-10) const;
};

}  // namespace becbragg

#endif
