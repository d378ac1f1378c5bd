#ifndef BECBRAGG_PROPAGATOR_HPP
#define BECBRAGG_PROPAGATOR_HPP

#include <Eigen/Dense>

#include "becbragg/linear_form.hpp"
#include "becbragg/model.hpp"

namespace becbragg {

/// The Heisenberg evolution map E(t) = exp(M t): v(t) = E(t) v(0).
struct EvolutionMap {
    double time = 0.0;  // us
    Eigen::MatrixXcd matrix;
    DynamicalMatrix source;
};

/// One-shot matrix exponential (scaling-and-squaring, Pade), with a
/// step-doubling self-check ||E(t) - E(t/2)^2||_max < 1e-10 ||E(t)||_max.
/// Times are absolute from t = 0; sweeps never chain increments.
EvolutionMap evolve(const DynamicalMatrix& generator, double t);

/// The evolved operator for `mode` as a linear form over the initial
/// operators (the row of E(t), conjugated when the requested dagger flag
/// differs from the basis convention).  Throws std::invalid_argument when
/// the mode is absent from the variant.
LinearOperatorForm operator_at(const EvolutionMap& map, ModeId mode, bool daggered);

/// Max-norm residual of the metric identity E G E^dag - G; a physical map
/// keeps this at machine-precision level.
double metric_residual(const EvolutionMap& map);

}  // namespace becbragg

#endif
