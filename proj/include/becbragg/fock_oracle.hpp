#ifndef BECBRAGG_FOCK_ORACLE_HPP
#define BECBRAGG_FOCK_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "becbragg/model.hpp"

namespace becbragg {

/// Per-mode occupation caps for the truncated product basis.
struct TruncationSpec {
    std::vector<int> caps;
    double leakage_tolerance = 1e-6;
    std::size_t state_ceiling = 4'000'000;
};

/// Mixed-radix indexing over the truncated occupation-number basis.
class FockBasis {
  public:
    FockBasis() = default;
    explicit FockBasis(std::vector<int> caps);

    int n_modes() const { return static_cast<int>(caps_.size()); }
    std::size_t dim() const { return dim_; }
    int cap(int mode) const { return caps_[mode]; }
    std::size_t stride(int mode) const { return strides_[mode]; }
    int occupancy(std::size_t state, int mode) const {
        return static_cast<int>((state / strides_[mode]) % (caps_[mode] + 1));
    }

  private:
    std::vector<int> caps_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 0;
};

/// H restricted to the truncated basis, applied matrix-free from the
/// quadratic-form term table (Hermitian by construction).
struct FockHamiltonian {
    FockBasis basis;
    QuadraticHamiltonian form;
    double leakage_tolerance = 1e-6;

    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    double expectation(const Eigen::VectorXcd& psi) const;
    /// Upper bound on the spectral norm (max row absolute sum).
    double norm_bound() const;
};

/// Throws std::length_error when the basis dimension exceeds the ceiling.
FockHamiltonian assemble_hamiltonian(const QuadraticHamiltonian& form,
                                     const TruncationSpec& spec);

struct FockStateVector {
    FockBasis basis;
    Eigen::VectorXcd amp;
    bool trusted = true;
    double leakage = 0.0;  // worst top-layer population seen along the trajectory

    double norm() const { return amp.norm(); }
};

/// Product of coherent states (amplitude 0 = vacuum), truncated to the
/// basis and renormalised; the discarded tail is charged to `leakage`.
FockStateVector coherent_product_state(const FockBasis& basis,
                                       const Eigen::VectorXcd& amplitudes,
                                       double leakage_tolerance = 1e-6);

struct EvolveOptions {
    int krylov_dim = 40;
    double step_tolerance = 1e-12;  // per-step Lanczos truncation target
    double target_h_dt = 8.0;       // substep size heuristic, |H| dt <= this
    int leakage_checks = 8;         // trajectory points where leakage is sampled
};

/// |psi(t)> = exp(-i H t) |psi(0)> via Lanczos with full
/// reorthogonalisation; leakage is monitored along the way and the
/// trusted flag cleared when it exceeds the tolerance.
FockStateVector evolve_state(const FockHamiltonian& hamiltonian, const FockStateVector& initial,
                             double t, const EvolveOptions& options = {});

/// Dense eigendecomposition path for small bases (dim <= 2000); used as a
/// second, independent check of the Lanczos propagation.
FockStateVector evolve_state_dense(const FockHamiltonian& hamiltonian,
                                   const FockStateVector& initial, double t);

namespace fock {

/// Fraction of norm sitting in states where any mode is at its cap.
double top_layer_population(const FockStateVector& psi);

double occupation(const FockStateVector& psi, int mode);
double number_covariance(const FockStateVector& psi, int mode_i, int mode_j);
std::complex<double> mode_mean(const FockStateVector& psi, int mode);
std::complex<double> normal_moment(const FockStateVector& psi, int mode_i, int mode_j);
std::complex<double> anomalous_moment(const FockStateVector& psi, int mode_i, int mode_j);

/// Var(n_i - n_j) / (<n_i> + <n_j>), nullopt below the occupation guard.
std::optional<double> xi_number(const FockStateVector& psi, int mode_i, int mode_j);

/// [Var(X_i + X_j) + Var(P_i - P_j)] / 2 evaluated with ladder operators.
double xi_quadrature(const FockStateVector& psi, int mode_i, int mode_j);

double energy(const FockHamiltonian& hamiltonian, const FockStateVector& psi);

}  // namespace fock

}  // namespace becbragg

#endif
