#include "becbragg/diagnostics.hpp"

#include <stdexcept>

namespace becbragg {

namespace {

ModeId quasiparticle_id(const ModeSelector& s) {
    if (s.condensate == Condensate::A) {
        return s.momentum == Momentum::PlusQ ? ModeId::AlphaQ : ModeId::AlphaMinusQ;
    }
    return s.momentum == Momentum::PlusQ ? ModeId::BetaQ : ModeId::BetaMinusQ;
}

ModeSelector opposite(const ModeSelector& s) {
    return {s.condensate,
            s.momentum == Momentum::PlusQ ? Momentum::MinusQ : Momentum::PlusQ};
}

void check_pair(const ModePair& pair) {
    if (pair.first.condensate == pair.second.condensate) {
        throw std::invalid_argument("ModePair: modes must belong to different condensates");
    }
}

}  // namespace

std::string pair_code(const ModePair& pair) {
    auto code = [](const ModeSelector& s) {
        std::string c = s.momentum == Momentum::PlusQ ? "q" : "mq";
        c += s.condensate == Condensate::A ? "A" : "B";
        return c;
    };
    return code(pair.first) + "_" + code(pair.second);
}

std::vector<ModePair> all_cross_pairs(Picture picture) {
    std::vector<ModePair> pairs;
    for (Momentum ma : {Momentum::PlusQ, Momentum::MinusQ}) {
        for (Momentum mb : {Momentum::PlusQ, Momentum::MinusQ}) {
            pairs.push_back({{Condensate::A, ma}, {Condensate::B, mb}, picture});
        }
    }
    return pairs;
}

LinearOperatorForm mode_form(const EvolutionMap& map, const ModeSelector& selector,
                             Picture picture, const BogoliubovUV& uv) {
    const ModeId id = quasiparticle_id(selector);
    if (picture == Picture::Quasiparticle) {
        return operator_at(map, id, false);
    }
    // a_q = u alpha_q - v alpha_{-q}^dag; needs the opposite-momentum mode.
    const ModeId partner = quasiparticle_id(opposite(selector));
    if (map.source.slot_of(partner) < 0) {
        throw std::invalid_argument(
            "mode_form: particle picture needs both +-q modes (Full5 variant)");
    }
    return gaussian::particle_mode_form(operator_at(map, id, false),
                                        operator_at(map, partner, true), uv.u, uv.v);
}

namespace diagnostics {

std::optional<double> xi_number(const ModePair& pair, const InitialState& state,
                                const EvolutionMap& map, const BogoliubovUV& uv) {
    check_pair(pair);
    const auto f = mode_form(map, pair.first, pair.picture, uv);
    const auto g = mode_form(map, pair.second, pair.picture, uv);
    const double n1 = gaussian::occupation(f, state);
    const double n2 = gaussian::occupation(g, state);
    if (n1 + n2 < occupation_epsilon) {
        return std::nullopt;
    }
    const double var = gaussian::number_covariance(f, f, state) +
                       gaussian::number_covariance(g, g, state) -
                       2.0 * gaussian::number_covariance(f, g, state);
    return var / (n1 + n2);
}

double xi_quadrature(const ModePair& pair, const InitialState& state, const EvolutionMap& map,
                     const BogoliubovUV& uv) {
    check_pair(pair);
    const auto f = mode_form(map, pair.first, pair.picture, uv);
    const auto g = mode_form(map, pair.second, pair.picture, uv);
    const auto [xf, pf] = gaussian::quadrature_forms(f);
    const auto [xg, pg] = gaussian::quadrature_forms(g);
    const double var_x = gaussian::hermitian_variance(xf + xg, state);
    const double var_p = gaussian::hermitian_variance(pf - pg, state);
    return 0.5 * (var_x + var_p);
}

}  // namespace diagnostics

EntanglementReport time_series(const SystemConfig& config, const ModePair& pair,
                               const std::vector<double>& times, const BogoliubovUV& uv) {
    const auto generator = build_dynamical_matrix(config);
    const auto state = InitialState::standard(config);
    EntanglementReport report;
    report.config = config;
    report.pair = pair;
    report.axis = times;
    for (double t : times) {
        const auto map = evolve(generator, t);
        report.xi_n.push_back(diagnostics::xi_number(pair, state, map, uv));
        report.xi_p.push_back(diagnostics::xi_quadrature(pair, state, map, uv));
    }
    return report;
}

std::vector<EntanglementReport> sweep_coupling_ratio(const SystemConfig& base,
                                                     const std::vector<double>& ratios, double t,
                                                     const ModePair& pair,
                                                     const BogoliubovUV& uv) {
    std::vector<EntanglementReport> reports;
    for (double ratio : ratios) {
        if (!(ratio > 0.0)) {
            throw std::invalid_argument("sweep_coupling_ratio: ratios must be positive");
        }
        SystemConfig config = base;
        config.eta_B = ratio * base.eta_A;
        EntanglementReport r = time_series(config, pair, {t}, uv);
        r.axis = {ratio};
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace becbragg
