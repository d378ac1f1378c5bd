#include "becbragg/propagator.hpp"

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace becbragg {

LinearOperatorForm LinearOperatorForm::conjugate() const {
    LinearOperatorForm out(n_modes());
    out.ann = cre.conjugate();
    out.cre = ann.conjugate();
    out.constant = std::conj(constant);
    return out;
}

LinearOperatorForm LinearOperatorForm::extended(int total_modes) const {
    if (total_modes < n_modes()) {
        throw std::invalid_argument("LinearOperatorForm::extended: cannot shrink");
    }
    LinearOperatorForm out(total_modes);
    out.ann.head(n_modes()) = ann;
    out.cre.head(n_modes()) = cre;
    out.constant = constant;
    return out;
}

LinearOperatorForm& LinearOperatorForm::operator+=(const LinearOperatorForm& other) {
    ann += other.ann;
    cre += other.cre;
    constant += other.constant;
    return *this;
}

LinearOperatorForm& LinearOperatorForm::operator-=(const LinearOperatorForm& other) {
    ann -= other.ann;
    cre -= other.cre;
    constant -= other.constant;
    return *this;
}

LinearOperatorForm& LinearOperatorForm::operator*=(std::complex<double> scale) {
    ann *= scale;
    cre *= scale;
    constant *= scale;
    return *this;
}

LinearOperatorForm operator+(LinearOperatorForm a, const LinearOperatorForm& b) { return a += b; }
LinearOperatorForm operator-(LinearOperatorForm a, const LinearOperatorForm& b) { return a -= b; }
LinearOperatorForm operator*(std::complex<double> scale, LinearOperatorForm f) { return f *= scale; }

EvolutionMap evolve(const DynamicalMatrix& generator, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("evolve: t must be >= 0");
    }
    EvolutionMap map;
    map.time = t;
    map.source = generator;

    const Eigen::MatrixXcd scaled = generator.entries * t;
    map.matrix = scaled.exp();

    // Step-doubling self-check against exceptional-point pathologies.
    const Eigen::MatrixXcd half = (generator.entries * (0.5 * t)).exp();
    const double reference = map.matrix.cwiseAbs().maxCoeff();
    const double residual = (map.matrix - half * half).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * std::max(reference, 1.0)) {
        throw std::runtime_error("evolve: step-doubling self-check failed");
    }
    return map;
}

LinearOperatorForm operator_at(const EvolutionMap& map, ModeId mode, bool daggered) {
    const int row = map.source.slot_of(mode);
    if (row < 0) {
        throw std::invalid_argument(std::string("operator_at: mode ") + to_string(mode) +
                                    " not present in variant " + to_string(map.source.variant));
    }
    const int n = map.source.size();
    LinearOperatorForm f(n);
    for (int k = 0; k < n; ++k) {
        const std::complex<double> coeff = map.matrix(row, k);
        if (map.source.basis[k].daggered) {
            f.cre(k) = coeff;
        } else {
            f.ann(k) = coeff;
        }
    }
    // The basis row carries the slot's own dagger convention.
    if (map.source.basis[row].daggered != daggered) {
        f = f.conjugate();
    }
    return f;
}

double metric_residual(const EvolutionMap& map) {
    const Eigen::MatrixXcd G = map.source.metric.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    const Eigen::MatrixXcd r = map.matrix * G * map.matrix.adjoint() - G;
    return r.cwiseAbs().maxCoeff();
}

}  // namespace becbragg
