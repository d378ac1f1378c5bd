#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "becbragg/diagnostics.hpp"
#include "becbragg/fock_oracle.hpp"
#include "becbragg/gaussian.hpp"
#include "becbragg/propagator.hpp"

using namespace becbragg;
using cplx = std::complex<double>;

namespace {

Eigen::VectorXcd unit_vector(std::size_t dim, std::size_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("single-mode number operator is diagonal") {
    QuadraticHamiltonian form;
    form.modes = {ModeId::AlphaQ};
    form.number = Eigen::VectorXd::Constant(1, 1.0);
    TruncationSpec spec;
    spec.caps = {2};
    const auto h = assemble_hamiltonian(form, spec);
    REQUIRE(h.basis.dim() == 3);
    Eigen::VectorXcd y;
    for (int n = 0; n <= 2; ++n) {
        h.apply(unit_vector(3, n), y);
        CHECK(std::abs(y(n) - cplx(double(n), 0.0)) < 1e-15);
    }
}

TEST_CASE("pair-creation matrix elements carry the ladder factors") {
    // coupling c^dag alpha^dag between |n_a, n_c> and |n_a+1, n_c+1>
    QuadraticHamiltonian form;
    form.modes = {ModeId::AlphaQ, ModeId::Probe};
    form.number = Eigen::VectorXd::Zero(2);
    form.terms.push_back({1, 0, cplx{0.7, 0.0}, true});  // 0.7 c^dag a^dag + h.c.
    TruncationSpec spec;
    spec.caps = {3, 3};
    const auto h = assemble_hamiltonian(form, spec);

    const FockBasis& basis = h.basis;
    Eigen::VectorXcd y;
    for (int na = 0; na < 3; ++na) {
        for (int nc = 0; nc < 3; ++nc) {
            const std::size_t from = na * basis.stride(0) + nc * basis.stride(1);
            const std::size_t to = from + basis.stride(0) + basis.stride(1);
            h.apply(unit_vector(basis.dim(), from), y);
            const double expected = 0.7 * std::sqrt(double(na + 1) * double(nc + 1));
            CHECK(std::abs(y(static_cast<Eigen::Index>(to)) - cplx(expected, 0.0)) < 1e-14);
        }
    }

    // hermiticity: <u|H v> = conj(<v|H u>) on random vectors
    Eigen::VectorXcd u = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(basis.dim()));
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(basis.dim()));
    Eigen::VectorXcd hu, hv;
    h.apply(u, hu);
    h.apply(v, hv);
    CHECK(std::abs(u.dot(hv) - std::conj(v.dot(hu))) < 1e-12);
}

TEST_CASE("memory ceiling is enforced") {
    QuadraticHamiltonian form = hamiltonian_quadratic_form(SystemConfig::reference());
    TruncationSpec spec;
    spec.caps = {40, 40, 40, 40, 40};
    spec.state_ceiling = 1000000;
    CHECK_THROWS_AS(assemble_hamiltonian(form, spec), std::length_error);
}

TEST_CASE("coherent state construction") {
    FockBasis basis({1, 10});
    Eigen::VectorXcd amp(2);
    amp << cplx{0.0, 0.0}, cplx{std::sqrt(2.0), 0.0};
    const auto psi = coherent_product_state(basis, amp);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // amplitude ratios follow g^n / sqrt(n!)
    const double a0 = std::abs(psi.amp(0));
    const double a1 = std::abs(psi.amp(static_cast<Eigen::Index>(basis.stride(1))));
    const double a2 = std::abs(psi.amp(static_cast<Eigen::Index>(2 * basis.stride(1))));
    CHECK(a1 / a0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(a2 / a1 == doctest::Approx(1.0).epsilon(1e-12));
    // vacuum mode stays empty; coherent statistics are Poissonian
    CHECK(fock::occupation(psi, 0) == doctest::Approx(0.0));
    CHECK(fock::occupation(psi, 1) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(fock::number_covariance(psi, 1, 1) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("free evolution only rotates phases") {
    SystemConfig c = SystemConfig::reference();
    c.eta_A = c.eta_B = 0.0;
    c.n_probe = 1.0;
    const auto form = hamiltonian_quadratic_form(c);
    TruncationSpec spec;
    spec.caps = {2, 2, 2, 2, 12};
    const auto h = assemble_hamiltonian(form, spec);
    const auto state = InitialState::standard(c);
    const auto psi0 = coherent_product_state(h.basis, state.amplitude);
    const auto psi = evolve_state(h, psi0, 0.8);
    CHECK(psi.trusted);
    for (int m = 0; m < 5; ++m) {
        CHECK(fock::occupation(psi, m) ==
              doctest::Approx(fock::occupation(psi0, m)).epsilon(1e-10));
    }
    for (std::size_t s = 0; s < h.basis.dim(); ++s) {
        CHECK(std::abs(psi.amp(static_cast<Eigen::Index>(s))) ==
              doctest::Approx(std::abs(psi0.amp(static_cast<Eigen::Index>(s)))).epsilon(1e-10));
    }
}

TEST_CASE("lanczos agrees with the dense eigendecomposition path") {
    SystemConfig c = SystemConfig::reference();
    c.variant = Variant::ResonantOnly3;
    c.n_probe = 1.0;
    const auto form = hamiltonian_quadratic_form(c);
    TruncationSpec spec;
    spec.caps = {8, 8, 12};
    const auto h = assemble_hamiltonian(form, spec);
    const auto state = InitialState::standard(c);
    const auto psi0 = coherent_product_state(h.basis, state.amplitude);

    const auto lanczos = evolve_state(h, psi0, 0.35);
    const auto dense = evolve_state_dense(h, psi0, 0.35);
    CHECK((lanczos.amp - dense.amp).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("step-halving agreement and conservation laws") {
    SystemConfig c = SystemConfig::reference();
    c.n_probe = 1.0;
    const auto form = hamiltonian_quadratic_form(c);
    TruncationSpec spec;
    spec.caps = {6, 6, 6, 6, 12};
    const auto h = assemble_hamiltonian(form, spec);
    const auto state = InitialState::standard(c);
    const auto psi0 = coherent_product_state(h.basis, state.amplitude);
    const double e0 = fock::energy(h, psi0);

    EvolveOptions coarse;
    EvolveOptions fine;
    fine.target_h_dt = coarse.target_h_dt / 2.0;
    const auto psi_a = evolve_state(h, psi0, 0.3, coarse);
    const auto psi_b = evolve_state(h, psi0, 0.3, fine);
    CHECK((psi_a.amp - psi_b.amp).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(psi_a.norm() - 1.0) < 1e-8);
    CHECK(std::abs(fock::energy(h, psi_a) - e0) < 1e-8);
}

TEST_CASE("gaussian engine matches the oracle in the trusted regime") {
    SystemConfig c = SystemConfig::reference();
    c.n_probe = 1.0;
    const auto generator = build_dynamical_matrix(c);
    const auto gauss_state = InitialState::standard(c);
    const auto form = hamiltonian_quadratic_form(c);
    TruncationSpec spec;
    spec.caps = {6, 6, 6, 6, 12};
    const auto h = assemble_hamiltonian(form, spec);
    const auto psi0 = coherent_product_state(h.basis, gauss_state.amplitude);

    for (double t : {0.05, 0.1}) {
        const auto psi = evolve_state(h, psi0, t);
        CHECK(psi.trusted);
        const auto map = evolve(generator, t);

        const int i1 = form.mode_index(ModeId::AlphaQ);
        const int i2 = form.mode_index(ModeId::BetaMinusQ);
        for (ModeId mode : form.modes) {
            const auto f = operator_at(map, mode, false);
            const int idx = form.mode_index(mode);
            CHECK(std::abs(gaussian::occupation(f, gauss_state) - fock::occupation(psi, idx)) <
                  1e-4);
            CHECK(std::abs(gaussian::mean(f, gauss_state) - fock::mode_mean(psi, idx)) < 1e-4);
        }

        // second moments and the pair statistics of (q_A, -q_B)
        const auto f1 = operator_at(map, ModeId::AlphaQ, false);
        const auto f2 = operator_at(map, ModeId::BetaMinusQ, false);
        const cplx anomalous = gaussian::contract_pair(f1, f2, gauss_state) +
                               gaussian::mean(f1, gauss_state) * gaussian::mean(f2, gauss_state);
        CHECK(std::abs(anomalous - fock::anomalous_moment(psi, i1, i2)) < 1e-4);

        const double var_gauss = gaussian::number_covariance(f1, f1, gauss_state) +
                                 gaussian::number_covariance(f2, f2, gauss_state) -
                                 2.0 * gaussian::number_covariance(f1, f2, gauss_state);
        const double var_fock = fock::number_covariance(psi, i1, i1) +
                                fock::number_covariance(psi, i2, i2) -
                                2.0 * fock::number_covariance(psi, i1, i2);
        CHECK(var_gauss == doctest::Approx(var_fock).epsilon(1e-3));

        const auto xi_n_fock = fock::xi_number(psi, i1, i2);
        REQUIRE(xi_n_fock.has_value());
        const double xi_p_fock = fock::xi_quadrature(psi, i1, i2);
        const ModePair pair{{Condensate::A, Momentum::PlusQ}, {Condensate::B, Momentum::MinusQ}};
        CHECK(diagnostics::xi_quadrature(pair, gauss_state, map) ==
              doctest::Approx(xi_p_fock).epsilon(1e-3));
        const auto xi_n_gauss = diagnostics::xi_number(pair, gauss_state, map);
        REQUIRE(xi_n_gauss.has_value());
        CHECK(*xi_n_gauss == doctest::Approx(*xi_n_fock).epsilon(1e-3));
    }
}

TEST_CASE("leakage flags an under-truncated run as untrusted") {
    SystemConfig c = SystemConfig::reference();
    c.n_probe = 2.0;
    const auto form = hamiltonian_quadratic_form(c);
    TruncationSpec spec;
    spec.caps = {6, 6, 6, 6, 14};
    const auto h = assemble_hamiltonian(form, spec);
    const auto psi0 = coherent_product_state(h.basis, InitialState::standard(c).amplitude);
    const auto psi = evolve_state(h, psi0, 0.5);
    CHECK(!psi.trusted);
    CHECK(psi.leakage > 1e-6);
}
