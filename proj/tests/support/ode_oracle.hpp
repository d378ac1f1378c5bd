#ifndef BECBRAGG_TESTS_ODE_ORACLE_HPP
#define BECBRAGG_TESTS_ODE_ORACLE_HPP

#include <Eigen/Dense>

namespace becbragg::testing {

/// Classic fixed-step RK4 for X' = M X, X(0) = I.  Independent of the
/// matrix-exponential path; used as the integration oracle.
inline Eigen::MatrixXcd rk4_propagator(const Eigen::MatrixXcd& m, double t, double dt) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(n, n);
    const int steps = static_cast<int>(t / dt + 0.5);
    const double h = t / steps;
    for (int s = 0; s < steps; ++s) {
        const Eigen::MatrixXcd k1 = m * x;
        const Eigen::MatrixXcd k2 = m * (x + 0.5 * h * k1);
        const Eigen::MatrixXcd k3 = m * (x + 0.5 * h * k2);
        const Eigen::MatrixXcd k4 = m * (x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

}  // namespace becbragg::testing

#endif
