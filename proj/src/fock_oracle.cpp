#include "becbragg/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace becbragg {

namespace {
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
}

FockBasis::FockBasis(std::vector<int> caps) : caps_(std::move(caps)) {
    if (caps_.empty()) throw std::invalid_argument("FockBasis: need at least one mode");
    strides_.resize(caps_.size());
    std::size_t stride = 1;
    for (std::size_t m = 0; m < caps_.size(); ++m) {
        if (caps_[m] < 0) throw std::invalid_argument("FockBasis: caps must be >= 0");
        strides_[m] = stride;
        stride *= static_cast<std::size_t>(caps_[m] + 1);
    }
    dim_ = stride;
}

void FockHamiltonian::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    const std::size_t dim = basis.dim();
    const int n_modes = basis.n_modes();
    y.setZero(dim);

    std::vector<int> n(n_modes, 0);
    for (std::size_t s = 0; s < dim; ++s) {
        for (int m = 0; m < n_modes; ++m) n[m] = basis.occupancy(s, m);
        const cplx xs = x(static_cast<Eigen::Index>(s));
        if (xs == cplx{0.0, 0.0}) continue;
        double diag = 0.0;
        for (int m = 0; m < n_modes; ++m) diag += form.number(m) * n[m];
        y(static_cast<Eigen::Index>(s)) += diag * xs;

        for (const auto& term : form.terms) {
            const int i = term.i;
            const int j = term.j;
            if (!term.pair) {
                // g a_i^dag a_j : |n_i+1, n_j-1>
                if (n[j] >= 1 && n[i] < basis.cap(i)) {
                    const std::size_t target = s + basis.stride(i) - basis.stride(j);
                    const double amp = std::sqrt(double(n[i] + 1) * double(n[j]));
                    y(static_cast<Eigen::Index>(target)) += term.g * amp * xs;
                }
                // conj(g) a_j^dag a_i : |n_j+1, n_i-1>
                if (n[i] >= 1 && n[j] < basis.cap(j)) {
                    const std::size_t target = s + basis.stride(j) - basis.stride(i);
                    const double amp = std::sqrt(double(n[j] + 1) * double(n[i]));
                    y(static_cast<Eigen::Index>(target)) += std::conj(term.g) * amp * xs;
                }
            } else {
                // g a_i^dag a_j^dag : |n_i+1, n_j+1>
                if (n[i] < basis.cap(i) && n[j] < basis.cap(j)) {
                    const std::size_t target = s + basis.stride(i) + basis.stride(j);
                    const double amp = std::sqrt(double(n[i] + 1) * double(n[j] + 1));
                    y(static_cast<Eigen::Index>(target)) += term.g * amp * xs;
                }
                // conj(g) a_j a_i : |n_i-1, n_j-1>
                if (n[i] >= 1 && n[j] >= 1) {
                    const std::size_t target = s - basis.stride(i) - basis.stride(j);
                    const double amp = std::sqrt(double(n[i]) * double(n[j]));
                    y(static_cast<Eigen::Index>(target)) += std::conj(term.g) * amp * xs;
                }
            }
        }
    }
}

double FockHamiltonian::expectation(const Eigen::VectorXcd& psi) const {
    Eigen::VectorXcd h_psi;
    apply(psi, h_psi);
    return psi.dot(h_psi).real();
}

double FockHamiltonian::norm_bound() const {
    const std::size_t dim = basis.dim();
    const int n_modes = basis.n_modes();
    double bound = 0.0;
    std::vector<int> n(n_modes, 0);
    for (std::size_t s = 0; s < dim; ++s) {
        for (int m = 0; m < n_modes; ++m) n[m] = basis.occupancy(s, m);
        double row = 0.0;
        for (int m = 0; m < n_modes; ++m) row += std::abs(form.number(m)) * n[m];
        for (const auto& term : form.terms) {
            const double g = std::abs(term.g);
            const int i = term.i;
            const int j = term.j;
            if (!term.pair) {
                row += g * std::sqrt(double(n[i] + 1) * double(n[j]));
                row += g * std::sqrt(double(n[j] + 1) * double(n[i]));
            } else {
                row += g * std::sqrt(double(n[i] + 1) * double(n[j] + 1));
                row += g * std::sqrt(double(n[i]) * double(n[j]));
            }
        }
        bound = std::max(bound, row);
    }
    return bound;
}

FockHamiltonian assemble_hamiltonian(const QuadraticHamiltonian& form,
                                     const TruncationSpec& spec) {
    if (static_cast<int>(spec.caps.size()) != static_cast<int>(form.modes.size())) {
        throw std::invalid_argument("assemble_hamiltonian: one cap per mode required");
    }
    std::size_t dim = 1;
    for (int cap : spec.caps) {
        if (cap < 0) throw std::invalid_argument("assemble_hamiltonian: caps must be >= 0");
        dim *= static_cast<std::size_t>(cap + 1);
        if (dim > spec.state_ceiling) {
            throw std::length_error("assemble_hamiltonian: basis exceeds the memory ceiling");
        }
    }
    FockHamiltonian h;
    h.basis = FockBasis(spec.caps);
    h.form = form;
    h.leakage_tolerance = spec.leakage_tolerance;
    return h;
}

FockStateVector coherent_product_state(const FockBasis& basis, const Eigen::VectorXcd& amplitudes,
                                       double leakage_tolerance) {
    if (amplitudes.size() != basis.n_modes()) {
        throw std::invalid_argument("coherent_product_state: one amplitude per mode");
    }
    const int n_modes = basis.n_modes();

    // per-mode truncated coherent amplitudes e^{-|g|^2/2} g^n / sqrt(n!)
    std::vector<std::vector<cplx>> mode_amp(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        const cplx g = amplitudes(m);
        std::vector<cplx>& a = mode_amp[m];
        a.resize(basis.cap(m) + 1);
        a[0] = std::exp(-0.5 * std::norm(g));
        for (int n = 1; n <= basis.cap(m); ++n) {
            a[n] = a[n - 1] * g / std::sqrt(double(n));
        }
    }

    FockStateVector psi;
    psi.basis = basis;
    psi.amp.resize(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        cplx value{1.0, 0.0};
        for (int m = 0; m < n_modes; ++m) value *= mode_amp[m][basis.occupancy(s, m)];
        psi.amp(static_cast<Eigen::Index>(s)) = value;
    }
    const double norm = psi.amp.norm();
    psi.leakage = std::abs(1.0 - norm * norm);  // tail discarded by the caps
    psi.amp /= norm;
    psi.trusted = psi.leakage < leakage_tolerance;
    return psi;
}

namespace {

// One Lanczos exp(-i H dt) step with full reorthogonalisation.  The
// truncation error is estimated by comparing against the (m-2)-dimensional
// projection; the caller halves dt when it is too large.
struct KrylovResult {
    Eigen::VectorXcd v;
    double error = 0.0;
};

KrylovResult krylov_step(const FockHamiltonian& h, const Eigen::VectorXcd& v, double dt,
                         int m_max) {
    const double beta0 = v.norm();
    KrylovResult out;
    if (beta0 == 0.0) {
        out.v = v;
        return out;
    }

    const Eigen::Index dim = v.size();
    const int m = std::min<int>(m_max, static_cast<int>(dim));
    Eigen::MatrixXcd V(dim, m);
    Eigen::VectorXd alpha(m), beta(m);
    V.col(0) = v / beta0;

    int built = m;
    Eigen::VectorXcd w(dim);
    for (int j = 0; j < m; ++j) {
        h.apply(V.col(j), w);
        alpha(j) = V.col(j).dot(w).real();
        w -= alpha(j) * V.col(j);
        if (j > 0) w -= beta(j - 1) * V.col(j - 1);
        // full reorthogonalisation, two passes
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k <= j; ++k) {
                w -= V.col(k).dot(w) * V.col(k);
            }
        }
        beta(j) = w.norm();
        if (beta(j) < 1e-14) {  // happy breakdown: subspace is invariant
            built = j + 1;
            break;
        }
        if (j + 1 < m) V.col(j + 1) = w / beta(j);
    }

    auto small_exp = [&](int k) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int j = 0; j < k; ++j) {
            T(j, j) = alpha(j);
            if (j + 1 < k) T(j, j + 1) = T(j + 1, j) = beta(j);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXcd phase(k);
        for (int j = 0; j < k; ++j) phase(j) = std::exp(-I * dt * es.eigenvalues()(j));
        Eigen::VectorXd e1 = es.eigenvectors().row(0).transpose();
        Eigen::VectorXcd y = es.eigenvectors().cast<cplx>() * (phase.array() * e1.cast<cplx>().array()).matrix();
        return y;  // exp(-i dt T) e_1
    };

    const Eigen::VectorXcd y_full = small_exp(built);
    out.v = beta0 * (V.leftCols(built) * y_full);
    if (built > 3) {
        const Eigen::VectorXcd y_red = small_exp(built - 2);
        double diff = 0.0;
        for (int j = 0; j < built; ++j) {
            const cplx a = y_full(j);
            const cplx b = j < built - 2 ? y_red(j) : cplx{0.0, 0.0};
            diff += std::norm(a - b);
        }
        out.error = beta0 * std::sqrt(diff);
    }
    return out;
}

}  // namespace

FockStateVector evolve_state(const FockHamiltonian& hamiltonian, const FockStateVector& initial,
                             double t, const EvolveOptions& options) {
    if (t < 0.0) throw std::invalid_argument("evolve_state: t must be >= 0");
    FockStateVector psi = initial;
    if (t == 0.0) return psi;

    const double h_norm = hamiltonian.norm_bound();
    int n_steps = std::max(1, static_cast<int>(std::ceil(h_norm * t / options.target_h_dt)));
    // leakage is sampled at a few points along the trajectory, not only at
    // the end, so transient cap population is not missed
    const int checks = std::max(1, options.leakage_checks);
    n_steps = ((n_steps + checks - 1) / checks) * checks;
    const double dt = t / n_steps;

    double worst_leakage = psi.leakage;
    for (int step = 0; step < n_steps; ++step) {
        double remaining = dt;
        double sub_dt = dt;
        while (remaining > 1e-300) {
            const double take = std::min(sub_dt, remaining);
            KrylovResult r = krylov_step(hamiltonian, psi.amp, take, options.krylov_dim);
            if (r.error > options.step_tolerance * std::max(1.0, psi.amp.norm())) {
                sub_dt = take / 2.0;
                continue;
            }
            psi.amp = std::move(r.v);
            remaining -= take;
        }
        if ((step + 1) % (n_steps / checks) == 0) {
            worst_leakage = std::max(worst_leakage, fock::top_layer_population(psi));
        }
    }
    psi.leakage = std::max(worst_leakage, fock::top_layer_population(psi));
    psi.trusted = initial.trusted && psi.leakage < hamiltonian.leakage_tolerance;
    return psi;
}

FockStateVector evolve_state_dense(const FockHamiltonian& hamiltonian,
                                   const FockStateVector& initial, double t) {
    const std::size_t dim = hamiltonian.basis.dim();
    if (dim > 2000) {
        throw std::length_error("evolve_state_dense: basis too large for the dense path");
    }
    Eigen::MatrixXcd H(dim, dim);
    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd column(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        unit(static_cast<Eigen::Index>(s)) = 1.0;
        hamiltonian.apply(unit, column);
        H.col(static_cast<Eigen::Index>(s)) = column;
        unit(static_cast<Eigen::Index>(s)) = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dim); ++k) {
        phases(k) = std::exp(-I * t * es.eigenvalues()(k));
    }
    FockStateVector psi = initial;
    psi.amp = es.eigenvectors() *
              (phases.array() * (es.eigenvectors().adjoint() * initial.amp).array()).matrix();
    psi.leakage = std::max(psi.leakage, fock::top_layer_population(psi));
    psi.trusted = initial.trusted && psi.leakage < hamiltonian.leakage_tolerance;
    return psi;
}

namespace fock {

double top_layer_population(const FockStateVector& psi) {
    const FockBasis& basis = psi.basis;
    double population = 0.0;
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        for (int m = 0; m < basis.n_modes(); ++m) {
            if (basis.occupancy(s, m) == basis.cap(m)) {
                population += std::norm(psi.amp(static_cast<Eigen::Index>(s)));
                break;
            }
        }
    }
    return population;
}

double occupation(const FockStateVector& psi, int mode) {
    double total = 0.0;
    for (std::size_t s = 0; s < psi.basis.dim(); ++s) {
        total += psi.basis.occupancy(s, mode) * std::norm(psi.amp(static_cast<Eigen::Index>(s)));
    }
    return total;
}

double number_covariance(const FockStateVector& psi, int mode_i, int mode_j) {
    double mean_i = 0.0, mean_j = 0.0, cross = 0.0;
    for (std::size_t s = 0; s < psi.basis.dim(); ++s) {
        const double p = std::norm(psi.amp(static_cast<Eigen::Index>(s)));
        const double ni = psi.basis.occupancy(s, mode_i);
        const double nj = psi.basis.occupancy(s, mode_j);
        mean_i += ni * p;
        mean_j += nj * p;
        cross += ni * nj * p;
    }
    return cross - mean_i * mean_j;
}

namespace {

// y = a_m x  (annihilation; truncated ladder algebra)
Eigen::VectorXcd apply_annihilation(const FockStateVector& psi, int mode) {
    const FockBasis& basis = psi.basis;
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(psi.amp.size());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const int n = basis.occupancy(s, mode);
        if (n >= 1) {
            y(static_cast<Eigen::Index>(s - basis.stride(mode))) +=
                std::sqrt(double(n)) * psi.amp(static_cast<Eigen::Index>(s));
        }
    }
    return y;
}

Eigen::VectorXcd apply_creation(const FockStateVector& psi, int mode) {
    const FockBasis& basis = psi.basis;
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(psi.amp.size());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const int n = basis.occupancy(s, mode);
        if (n < basis.cap(mode)) {
            y(static_cast<Eigen::Index>(s + basis.stride(mode))) +=
                std::sqrt(double(n + 1)) * psi.amp(static_cast<Eigen::Index>(s));
        }
    }
    return y;
}

}  // namespace

std::complex<double> mode_mean(const FockStateVector& psi, int mode) {
    return psi.amp.dot(apply_annihilation(psi, mode));
}

std::complex<double> normal_moment(const FockStateVector& psi, int mode_i, int mode_j) {
    // <a_i^dag a_j> = (a_i psi, a_j psi)
    const Eigen::VectorXcd ai = apply_annihilation(psi, mode_i);
    const Eigen::VectorXcd aj = apply_annihilation(psi, mode_j);
    return ai.dot(aj);
}

std::complex<double> anomalous_moment(const FockStateVector& psi, int mode_i, int mode_j) {
    // <a_i a_j> = (a_i^dag psi, a_j psi)
    const Eigen::VectorXcd ai_dag = apply_creation(psi, mode_i);
    const Eigen::VectorXcd aj = apply_annihilation(psi, mode_j);
    return ai_dag.dot(aj);
}

std::optional<double> xi_number(const FockStateVector& psi, int mode_i, int mode_j) {
    const double n1 = occupation(psi, mode_i);
    const double n2 = occupation(psi, mode_j);
    if (n1 + n2 < 1e-12) return std::nullopt;
    const double var = number_covariance(psi, mode_i, mode_i) +
                       number_covariance(psi, mode_j, mode_j) -
                       2.0 * number_covariance(psi, mode_i, mode_j);
    return var / (n1 + n2);
}

double xi_quadrature(const FockStateVector& psi, int mode_i, int mode_j) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Eigen::VectorXcd ai = apply_annihilation(psi, mode_i);
    const Eigen::VectorXcd aj = apply_annihilation(psi, mode_j);
    const Eigen::VectorXcd ai_dag = apply_creation(psi, mode_i);
    const Eigen::VectorXcd aj_dag = apply_creation(psi, mode_j);

    // X_i + X_j and P_i - P_j applied to psi
    const Eigen::VectorXcd x_psi = inv_sqrt2 * (ai + ai_dag + aj + aj_dag);
    const Eigen::VectorXcd p_psi =
        cplx{0.0, -1.0} * inv_sqrt2 * (ai - ai_dag - aj + aj_dag);

    const double mean_x = psi.amp.dot(x_psi).real();
    const double mean_p = psi.amp.dot(p_psi).real();
    const double var_x = x_psi.squaredNorm() - mean_x * mean_x;
    const double var_p = p_psi.squaredNorm() - mean_p * mean_p;
    return 0.5 * (var_x + var_p);
}

double energy(const FockHamiltonian& hamiltonian, const FockStateVector& psi) {
    return hamiltonian.expectation(psi.amp);
}

}  // namespace fock

}  // namespace becbragg
