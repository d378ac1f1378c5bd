#ifndef BECBRAGG_DIAGNOSTICS_HPP
#define BECBRAGG_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "becbragg/gaussian.hpp"
#include "becbragg/propagator.hpp"

namespace becbragg {

enum class Condensate { A, B };
enum class Momentum { PlusQ, MinusQ };
enum class Picture { Quasiparticle, Particle };

struct ModeSelector {
    Condensate condensate;
    Momentum momentum;
};

/// A cross-condensate mode pair; same-condensate pairs are rejected
/// (the entanglement criteria target correlations between A and B).
struct ModePair {
    ModeSelector first;
    ModeSelector second;
    Picture picture = Picture::Quasiparticle;
};

/// Short code like "qA_mqB" used in CSV headers and reports.
std::string pair_code(const ModePair& pair);

/// The four cross-condensate pairs, first mode in A, second in B.
std::vector<ModePair> all_cross_pairs(Picture picture);

/// Bogoliubov (u, v) used to rotate into the particle picture.
struct BogoliubovUV {
    double u = 1.0;
    double v = 0.0;
};

/// The evolved operator form of one selected mode (quasiparticle, or
/// particle-picture combination u x_q - v x_{-q}^dag).  Particle picture
/// requires the Full5 variant.
LinearOperatorForm mode_form(const EvolutionMap& map, const ModeSelector& selector,
                             Picture picture, const BogoliubovUV& uv);

namespace diagnostics {

inline constexpr double occupation_epsilon = 1e-12;

/// Number entanglement parameter Var(n1 - n2) / (<n1> + <n2>); nullopt
/// when the occupation denominator is below occupation_epsilon (the t = 0
/// vacuum limit).  Values < 1 certify number entanglement.
std::optional<double> xi_number(const ModePair& pair, const InitialState& state,
                                const EvolutionMap& map, const BogoliubovUV& uv = {});

/// Quadrature entanglement parameter
/// [Var(X1 + X2) + Var(P1 - P2)] / 2; equals 1 at t = 0 on vacua.
double xi_quadrature(const ModePair& pair, const InitialState& state, const EvolutionMap& map,
                     const BogoliubovUV& uv = {});

}  // namespace diagnostics

/// Time- or ratio-series of both parameters for one pair.
struct EntanglementReport {
    SystemConfig config;
    ModePair pair;
    std::vector<double> axis;  // times (us) or coupling ratios
    std::vector<std::optional<double>> xi_n;
    std::vector<double> xi_p;
};

EntanglementReport time_series(const SystemConfig& config, const ModePair& pair,
                               const std::vector<double>& times, const BogoliubovUV& uv = {});

/// One report per ratio, with eta_B = ratio * eta_A, evaluated at time t.
std::vector<EntanglementReport> sweep_coupling_ratio(const SystemConfig& base,
                                                     const std::vector<double>& ratios, double t,
                                                     const ModePair& pair,
                                                     const BogoliubovUV& uv = {});

}  // namespace becbragg

#endif
