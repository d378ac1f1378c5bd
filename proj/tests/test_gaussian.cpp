#include <cmath>
#include <random>

#include <stdexcept>

#include <doctest.h>

#include "becbragg/gaussian.hpp"
#include "becbragg/propagator.hpp"

using namespace becbragg;
using cplx = std::complex<double>;

namespace {

LinearOperatorForm bare(int n, int mode, bool daggered = false) {
    LinearOperatorForm f(n);
    (daggered ? f.cre : f.ann)(mode) = 1.0;
    return f;
}

}  // namespace

TEST_CASE("elementary contractions") {
    const auto state = InitialState::standard(SystemConfig::reference());
    const auto a = bare(5, 0);
    CHECK(gaussian::contract_pair(a, a.conjugate(), state) == cplx{1.0, 0.0});
    CHECK(gaussian::contract_pair(a.conjugate(), a, state) == cplx{0.0, 0.0});
    CHECK(gaussian::contract_pair(a, a, state) == cplx{0.0, 0.0});
    CHECK(gaussian::contract_pair(a, bare(5, 2).conjugate(), state) == cplx{0.0, 0.0});
}

TEST_CASE("means and occupations of the initial state") {
    SystemConfig c = SystemConfig::reference();
    c.probe_phase = 0.7;
    const auto state = InitialState::standard(c);
    const auto probe = bare(5, 4);
    const cplx expected_amp = std::sqrt(10.0) * std::exp(cplx{0.0, 0.7});
    CHECK(std::abs(gaussian::mean(probe, state) - expected_amp) < 1e-14);
    CHECK(gaussian::occupation(probe, state) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(gaussian::occupation(bare(5, 0), state) == doctest::Approx(0.0));
}

TEST_CASE("number statistics of vacuum and coherent modes") {
    const auto state = InitialState::standard(SystemConfig::reference());
    const auto vac = bare(5, 1);
    const auto probe = bare(5, 4);
    CHECK(gaussian::number_covariance(vac, vac, state) == doctest::Approx(0.0));
    // Poissonian coherent statistics
    CHECK(gaussian::number_covariance(probe, probe, state) == doctest::Approx(10.0).epsilon(1e-12));
    // independent modes are uncorrelated
    CHECK(gaussian::number_covariance(vac, probe, state) == doctest::Approx(0.0));
}

TEST_CASE("wick fourth moment of a vacuum quadrature") {
    const auto state = InitialState::standard(SystemConfig::reference());
    const auto [x, p] = gaussian::quadrature_forms(bare(5, 0));
    const LinearOperatorForm xxxx[4] = {x, x, x, x};
    // <X^4> = 3 Var(X)^2 = 3/4 on vacuum
    CHECK(gaussian::expectation_product({xxxx, 4}, state).real() ==
          doctest::Approx(0.75).epsilon(1e-13));
    CHECK(gaussian::hermitian_variance(x, state) == doctest::Approx(0.5));
    CHECK(gaussian::hermitian_variance(p, state) == doctest::Approx(0.5));
}

TEST_CASE("quadratures of the coherent probe") {
    const auto state = InitialState::standard(SystemConfig::reference());
    const auto [x, p] = gaussian::quadrature_forms(bare(5, 4));
    CHECK(gaussian::hermitian_variance(x, state) == doctest::Approx(0.5));
    CHECK(gaussian::mean(x, state).real() ==
          doctest::Approx(std::sqrt(2.0) * std::sqrt(10.0)).epsilon(1e-13));
    CHECK(std::abs(gaussian::mean(p, state)) < 1e-13);
}

TEST_CASE("single-mode variance closed form anchors the wick engine") {
    // Var(n) = N^2 + N + |M|^2 + |mu|^2 (2N + 1) + 2 Re(mu*^2 M)
    const auto config = SystemConfig::reference();
    const auto dm = build_dynamical_matrix(config);
    const auto state = InitialState::standard(config);
    for (double t : {0.1, 0.35, 0.6}) {
        const auto map = evolve(dm, t);
        for (ModeId mode : variant_modes(Variant::Full5)) {
            const auto f = operator_at(map, mode, false);
            const cplx mu = gaussian::mean(f, state);
            const double N = gaussian::contract_pair(f.conjugate(), f, state).real();
            const cplx M = gaussian::contract_pair(f, f, state);
            const double closed = N * N + N + std::norm(M) + std::norm(mu) * (2.0 * N + 1.0) +
                                  2.0 * (std::conj(mu) * std::conj(mu) * M).real();
            const double engine = gaussian::number_covariance(f, f, state);
            CHECK(engine == doctest::Approx(closed).epsilon(1e-11));
        }
    }
}

TEST_CASE("evolved commutator identity and physicality") {
    const auto config = SystemConfig::reference();
    const auto dm = build_dynamical_matrix(config);
    const auto state = InitialState::standard(config);
    std::vector<LinearOperatorForm> forms;
    for (double t : {0.25, 0.8, 1.4}) {
        const auto map = evolve(dm, t);
        forms.clear();
        for (ModeId mode : variant_modes(Variant::Full5)) {
            const auto f = operator_at(map, mode, false);
            // <[f, f^dag]> = 1: metric preservation at the moment level
            const cplx comm = gaussian::contract_pair(f, f.conjugate(), state) -
                              gaussian::contract_pair(f.conjugate(), f, state);
            CHECK(std::abs(comm - cplx{1.0, 0.0}) < 1e-10);
            forms.push_back(f);
        }
        const auto moments = GaussianMomentSet::compute(forms, state);
        CHECK(moments.physical());
        CHECK((moments.normal - moments.normal.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((moments.anomalous - moments.anomalous.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("displacement compensation leaves centered moments unchanged") {
    const auto config = SystemConfig::reference();
    const auto state = InitialState::standard(config);
    auto probe = bare(5, 4);
    // subtracting the mean as a constant removes occupation down to N = 0
    probe.constant = -gaussian::mean(probe, state);
    CHECK(gaussian::occupation(probe, state) == doctest::Approx(0.0));
    CHECK(gaussian::number_covariance(probe, probe, state) == doctest::Approx(0.0));
    // centered second moments never see the amplitude
    InitialState shifted = state;
    shifted.amplitude(4) += cplx{0.4, -1.1};
    const auto f = bare(5, 4);
    CHECK(gaussian::contract_pair(f, f.conjugate(), state) ==
          gaussian::contract_pair(f, f.conjugate(), shifted));
}

TEST_CASE("quadrature completeness: Var(X) + Var(P) = 2<n> + 1 for zero-mean modes") {
    const auto config = SystemConfig::reference();
    const auto dm = build_dynamical_matrix(config);
    const auto state = InitialState::standard(config);
    const auto map = evolve(dm, 0.6);
    for (ModeId mode : {ModeId::AlphaQ, ModeId::BetaMinusQ}) {
        const auto f = operator_at(map, mode, false);
        const auto [x, p] = gaussian::quadrature_forms(f);
        const double lhs =
            gaussian::hermitian_variance(x, state) + gaussian::hermitian_variance(p, state);
        const double n = gaussian::contract_pair(f.conjugate(), f, state).real();
        CHECK(lhs == doctest::Approx(2.0 * n + 1.0).epsilon(1e-12));
    }
}

TEST_CASE("particle mode form") {
    const auto config = SystemConfig::reference();
    const auto dm = build_dynamical_matrix(config);
    const auto state = InitialState::standard(config);
    const auto map0 = evolve(dm, 0.0);
    const auto alpha = operator_at(map0, ModeId::AlphaQ, false);
    const auto alpha_md = operator_at(map0, ModeId::AlphaMinusQ, true);

    // u = 1, v = 0 is the identity
    const auto trivial = gaussian::particle_mode_form(alpha, alpha_md, 1.0, 0.0);
    CHECK((trivial.ann - alpha.ann).cwiseAbs().maxCoeff() < 1e-15);

    const double v = 0.10153995804523852;
    const double u = std::sqrt(1.0 + v * v);
    const auto particle = gaussian::particle_mode_form(alpha, alpha_md, u, v);
    // quantum depletion of the side-mode at t = 0
    CHECK(gaussian::occupation(particle, state) == doctest::Approx(v * v).epsilon(1e-12));

    // inverse transform recovers the quasiparticle operator:
    // alpha_q = u a_q + v a_{-q}^dag
    const auto partner =
        gaussian::particle_mode_form(operator_at(map0, ModeId::AlphaMinusQ, false),
                                     operator_at(map0, ModeId::AlphaQ, true), u, v);
    const auto recovered = cplx(u) * particle + cplx(v) * partner.conjugate();
    CHECK((recovered.ann - alpha.ann).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((recovered.cre - alpha.cre).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(gaussian::particle_mode_form(alpha, alpha_md, 1.2, 0.1),
                    std::invalid_argument);
}

TEST_CASE("basis mismatch is rejected") {
    const auto state = InitialState::standard(SystemConfig::reference());
    CHECK_THROWS_AS(gaussian::mean(bare(3, 0), state), std::invalid_argument);
    CHECK_THROWS_AS(gaussian::contract_pair(bare(5, 0), bare(3, 0), state),
                    std::invalid_argument);
}
