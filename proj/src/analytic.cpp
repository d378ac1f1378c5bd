#include "becbragg/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace becbragg::analytic {

double ClosedFormInputs::eta() const { return std::hypot(eta_A, eta_B); }

double xi_p_short_time_resonant_offres(const ClosedFormInputs& in) {
    if (in.eta_B == 0.0) return 1.0;  // the eta_A eta_B product vanishes first
    return 1.0 - in.eta_A * in.eta_B * in.t * in.t * (1.0 - in.eta_A / in.eta_B);
}

double xi_p_short_time_offres_resonant(const ClosedFormInputs& in) {
    if (in.eta_B == 0.0) return 1.0;
    const double x = in.eta_B * in.t;
    return 1.0 + x * x * (1.0 - in.eta_A / in.eta_B);
}

double r_number(const ClosedFormInputs& in) {
    const double a2 = in.eta_A * in.eta_A;
    const double b2 = in.eta_B * in.eta_B;
    const double t4 = std::pow(in.t, 4);
    return 8.0 * a2 * t4 * (b2 - 2.0 * a2 + 4.0 * in.n_p * (b2 - a2));
}

double r_number_threshold_ratio(double n_p) {
    if (n_p < 0.0) throw std::invalid_argument("r_number_threshold_ratio: n_p must be >= 0");
    return std::sqrt(1.0 + 1.0 / (1.0 + 4.0 * n_p));
}

double r_number_empirical_prefactor() { return 0.5; }

double xi_p_resonant_pair_sinh(const ClosedFormInputs& in) {
    const double s = std::sinh(in.eta() * in.t);
    return 1.0 + s * s;
}

double xi_n_resonant_pair_sinh(const ClosedFormInputs& in) {
    const double eta2 = in.eta_A * in.eta_A + in.eta_B * in.eta_B;
    if (eta2 == 0.0) return 1.0;
    const double asym = (in.eta_A * in.eta_A - in.eta_B * in.eta_B) / eta2;
    const double s = std::sinh(in.eta() * in.t);
    return 1.0 + (1.0 + in.n_p / (in.n_p + 1.0)) * asym * asym * s * s;
}

double xi_p_same_resonant_fullsystem_shorttime(const ClosedFormInputs& in) {
    const double eta2 = in.eta_A * in.eta_A + in.eta_B * in.eta_B;
    return 1.0 + in.eta_B * in.t * in.t / 2.0 + eta2 * eta2 * std::pow(in.t, 4) / 4.0;
}

double xi_p_same_resonant_fullsystem_shorttime_alt(const ClosedFormInputs& in) {
    const double eta2 = in.eta_A * in.eta_A + in.eta_B * in.eta_B;
    return 1.0 + in.eta_B * in.eta_B * in.t * in.t / 2.0 + eta2 * eta2 * std::pow(in.t, 4) / 4.0;
}

double xi_p_same_resonant_empirical_t2_coefficient(const ClosedFormInputs& in) {
    return in.eta_A * in.eta_A + in.eta_B * in.eta_B;
}

}  // namespace becbragg::analytic
