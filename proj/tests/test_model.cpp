#include <complex>
#include <random>

#include <stdexcept>

#include <doctest.h>

#include "becbragg/model.hpp"

using namespace becbragg;
using cplx = std::complex<double>;

namespace {

double metric_antisymmetry_residual(const DynamicalMatrix& dm) {
    const Eigen::MatrixXcd G = dm.metric.asDiagonal().toDenseMatrix().cast<cplx>();
    return (dm.entries * G + G * dm.entries.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("decoupled oscillators") {
    SystemConfig c = SystemConfig::reference();
    c.eta_A = c.eta_B = 0.0;
    const auto dm = build_dynamical_matrix(c);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(5, 5);
    const cplx I{0.0, 1.0};
    expected(0, 0) = -I * 0.21;
    expected(1, 1) = I * 0.21;
    expected(2, 2) = -I * 0.21;
    expected(3, 3) = I * 0.21;
    expected(4, 4) = -I * 0.17;
    CHECK((dm.entries - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("reference-point probe row") {
    const auto dm = build_dynamical_matrix(SystemConfig::reference());
    const cplx I{0.0, 1.0};
    CHECK(std::abs(dm.entries(4, 0) - I * 1.62) < 1e-15);
    CHECK(std::abs(dm.entries(4, 1) - I * 1.62) < 1e-15);
    CHECK(std::abs(dm.entries(4, 2) - I * 2.025) < 1e-15);
    CHECK(std::abs(dm.entries(4, 3) - I * 2.025) < 1e-15);
    CHECK(std::abs(dm.entries(4, 4) + I * 0.17) < 1e-15);

    // quasiparticle rows couple only to the probe slot
    CHECK(std::abs(dm.entries(0, 0) + I * 0.21) < 1e-15);
    CHECK(std::abs(dm.entries(0, 4) + I * 1.62) < 1e-15);
    CHECK(std::abs(dm.entries(1, 4) - I * 1.62) < 1e-15);
    CHECK(std::abs(dm.entries(0, 1)) == 0.0);
}

TEST_CASE("resonant-only reduction") {
    SystemConfig c = SystemConfig::reference();
    c.variant = Variant::ResonantOnly3;
    const auto dm = build_dynamical_matrix(c);
    REQUIRE(dm.size() == 3);
    const cplx I{0.0, 1.0};
    // rows: alpha_q, beta_q, c^dag
    CHECK(std::abs(dm.entries(0, 0) + I * 0.21) < 1e-15);
    CHECK(std::abs(dm.entries(0, 2) + I * 1.62) < 1e-15);
    CHECK(std::abs(dm.entries(1, 2) + I * 2.025) < 1e-15);
    CHECK(std::abs(dm.entries(2, 0) - I * 1.62) < 1e-15);
    CHECK(std::abs(dm.entries(2, 1) - I * 2.025) < 1e-15);
    CHECK(std::abs(dm.entries(2, 2) + I * 0.17) < 1e-15);
    CHECK(std::abs(dm.entries(0, 1)) == 0.0);
}

TEST_CASE("metric antisymmetry over random configs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        SystemConfig c;
        c.omega_A = u(gen);
        c.omega_B = u(gen);
        c.delta = u(gen) - 1.5;
        c.eta_A = u(gen);
        c.eta_B = u(gen);
        c.n_probe = u(gen);
        c.variant = trial % 3 == 0   ? Variant::Full5
                    : trial % 3 == 1 ? Variant::ResonantOnly3
                                     : Variant::SingleCondensate3;
        CHECK(metric_antisymmetry_residual(build_dynamical_matrix(c)) < 1e-14);
    }
}

TEST_CASE("quadratic form coefficients") {
    const auto c = SystemConfig::reference();
    const auto h = hamiltonian_quadratic_form(c);
    CHECK(h.coefficient(ModeId::Probe, ModeId::AlphaQ, true) == cplx{1.62, 0.0});
    CHECK(h.coefficient(ModeId::Probe, ModeId::AlphaMinusQ, false) == cplx{1.62, 0.0});
    CHECK(std::abs(h.coefficient(ModeId::Probe, ModeId::BetaQ, true) - cplx{2.025, 0.0}) < 1e-15);
    CHECK(std::abs(h.coefficient(ModeId::Probe, ModeId::BetaMinusQ, false) - cplx{2.025, 0.0}) <
          1e-15);
    CHECK(h.number(h.mode_index(ModeId::Probe)) == -0.17);
    CHECK(h.number(h.mode_index(ModeId::AlphaQ)) == 0.21);

    SystemConfig free = c;
    free.eta_A = free.eta_B = 0.0;
    free.delta = 0.0;
    const auto h0 = hamiltonian_quadratic_form(free);
    CHECK(h0.terms.empty());
    CHECK(h0.number(h0.mode_index(ModeId::Probe)) == 0.0);
}

TEST_CASE("commutator consistency reproduces the dynamical matrix") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 2.5);
    for (int trial = 0; trial < 100; ++trial) {
        SystemConfig c;
        c.omega_A = u(gen);
        c.omega_B = u(gen);
        c.delta = u(gen) - 1.0;
        c.eta_A = u(gen);
        c.eta_B = u(gen);
        c.variant = trial % 3 == 0   ? Variant::Full5
                    : trial % 3 == 1 ? Variant::ResonantOnly3
                                     : Variant::SingleCondensate3;
        const auto dm = build_dynamical_matrix(c);
        const auto regenerated = heisenberg_matrix_from(hamiltonian_quadratic_form(c), dm.basis);
        CHECK((dm.entries - regenerated).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("variant consistency: Full5 with eta_B = 0 contains SingleCondensate3") {
    SystemConfig c = SystemConfig::reference();
    c.eta_B = 0.0;
    const auto full = build_dynamical_matrix(c);
    c.variant = Variant::SingleCondensate3;
    const auto single = build_dynamical_matrix(c);

    // restrict the full matrix to (alpha_q, alpha_-q^dag, probe)
    const int keep[3] = {full.slot_of(ModeId::AlphaQ), full.slot_of(ModeId::AlphaMinusQ),
                         full.slot_of(ModeId::Probe)};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(full.entries(keep[i], keep[j]) - single.entries(i, j)) < 1e-15);
        }
    }
}

TEST_CASE("config validation") {
    SystemConfig c = SystemConfig::reference();
    c.omega_A = -0.1;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = SystemConfig::reference();
    c.n_probe = -1.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = SystemConfig::reference();
    c.eta_A = -0.5;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    // omega = delta = 0 is the closed-form regime and must be accepted
    c = SystemConfig::reference();
    c.omega_A = c.omega_B = 0.0;
    c.delta = 0.0;
    CHECK_NOTHROW(validate(c));
}
