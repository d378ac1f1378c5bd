#ifndef BECBRAGG_CONDENSATE_HPP
#define BECBRAGG_CONDENSATE_HPP

#include <optional>
#include <string>

namespace becbragg {

// All angular frequencies in this library are stored in rad/us.
// SI inputs (kg, m, m^-3) are converted at this boundary.
constexpr double rad_per_us_from_rad_per_s = 1e-6;

/// Microscopic parameters of one homogeneous condensate.
struct CondensateParams {
    double atom_mass;          // kg
    double scattering_length;  // m
    double density;            // m^-3
    double atom_count;         // N (dimensionless)
    double rabi_frequency;     // two-photon Rabi frequency, rad/us
};

/// Bogoliubov dispersion data at a single wavenumber q, with q given in
/// units of the inverse healing length (q_xi = q * xi).
struct DispersionPoint {
    double q_xi;           // dimensionless q * xi
    double omega_q;        // free-particle frequency hbar q^2 / 2m, rad/us
    double mu_over_hbar;   // chemical potential / hbar, rad/us
    double omega_B;        // Bogoliubov quasiparticle frequency, rad/us
    double u_q;            // Bogoliubov coefficients, u^2 - v^2 = 1
    double v_q;
    double f_q;            // u_q - v_q
};

/// Throws std::invalid_argument when any field is non-positive.
void validate(const CondensateParams& params);

/// Diluteness check: returns a warning string when n0 * a_s^3 > 1e-3,
/// std::nullopt otherwise.  Never throws for valid params.
std::optional<std::string> diluteness_warning(const CondensateParams& params);

/// Healing length xi = (8 pi n0 a_s)^{-1/2}, in metres.
double healing_length(const CondensateParams& params);

/// Chemical potential over hbar, mu/hbar = hbar / (2 m xi^2), in rad/us.
double mu_over_hbar(const CondensateParams& params);

/// Dispersion and Bogoliubov coefficients at q = q_xi / xi.
/// q_xi = 0 is rejected (v_q diverges in the phonon limit).
DispersionPoint dispersion(double q_xi, double mu_over_hbar);

/// Convenience overload deriving mu/hbar from microscopic parameters.
DispersionPoint dispersion(double q_xi, const CondensateParams& params);

/// Effective atom-field coupling sqrt(N) * Omega * f_q, rad/us.
double effective_coupling(const CondensateParams& params, double f_q);

}  // namespace becbragg

#endif
