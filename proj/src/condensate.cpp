#include "becbragg/condensate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace becbragg {

namespace {
constexpr double hbar_si = 1.054571817e-34;  // J s
}

void validate(const CondensateParams& params) {
    auto require_positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(std::string("CondensateParams: ") + name +
                                        " must be strictly positive and finite");
        }
    };
    require_positive(params.atom_mass, "atom_mass");
    require_positive(params.scattering_length, "scattering_length");
    require_positive(params.density, "density");
    require_positive(params.atom_count, "atom_count");
    require_positive(params.rabi_frequency, "rabi_frequency");
}

std::optional<std::string> diluteness_warning(const CondensateParams& params) {
    validate(params);
    const double a3 = std::pow(params.scattering_length, 3);
    const double gas_parameter = params.density * a3;
    if (gas_parameter > 1e-3) {
        std::ostringstream msg;
        msg << "condensate not dilute: n0 a_s^3 = " << gas_parameter
            << " exceeds 1e-3; Bogoliubov treatment unreliable";
        return msg.str();
    }
    return std::nullopt;
}

double healing_length(const CondensateParams& params) {
    if (!(params.density > 0.0) || !(params.scattering_length > 0.0)) {
        throw std::invalid_argument("healing_length: density and scattering_length must be positive");
    }
    return 1.0 / std::sqrt(8.0 * std::numbers::pi * params.density * params.scattering_length);
}

double mu_over_hbar(const CondensateParams& params) {
    validate(params);
    const double xi = healing_length(params);
    const double mu_rad_per_s = hbar_si / (2.0 * params.atom_mass * xi * xi);
    return mu_rad_per_s * rad_per_us_from_rad_per_s;
}

DispersionPoint dispersion(double q_xi, double mu) {
    if (!(mu > 0.0)) {
        throw std::invalid_argument("dispersion: mu_over_hbar must be positive");
    }
    if (q_xi < 0.0) {
        throw std::invalid_argument("dispersion: q_xi must be non-negative");
    }
    if (q_xi == 0.0) {
        throw std::domain_error("dispersion: q = 0 is the phonon-limit singularity (v_q diverges)");
    }
    DispersionPoint p;
    p.q_xi = q_xi;
    p.mu_over_hbar = mu;
    p.omega_q = mu * q_xi * q_xi;
    p.omega_B = std::sqrt((p.omega_q + mu) * (p.omega_q + mu) - mu * mu);
    p.v_q = std::sqrt(0.5 * ((p.omega_q + mu) / p.omega_B - 1.0));
    p.u_q = std::sqrt(1.0 + p.v_q * p.v_q);
    p.f_q = p.u_q - p.v_q;
    return p;
}

DispersionPoint dispersion(double q_xi, const CondensateParams& params) {
    return dispersion(q_xi, mu_over_hbar(params));
}

double effective_coupling(const CondensateParams& params, double f_q) {
    validate(params);
    if (!(f_q > 0.0) || f_q > 1.0 + 1e-12) {
        throw std::invalid_argument("effective_coupling: require 0 < f_q <= 1");
    }
    return std::sqrt(params.atom_count) * params.rabi_frequency * f_q;
}

}  // namespace becbragg
