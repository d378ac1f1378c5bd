#ifndef BECBRAGG_LINEAR_FORM_HPP
#define BECBRAGG_LINEAR_FORM_HPP

#include <complex>

#include <Eigen/Dense>

namespace becbragg {

/// A mode operator written over the initial-time elementary operators:
///   f = sum_m ( ann[m] x_m(0) + cre[m] x_m(0)^dag ) + constant.
/// Heisenberg-evolved operators of a linear system stay in this class,
/// which is what makes the Gaussian moment calculus closed.
struct LinearOperatorForm {
    Eigen::VectorXcd ann;
    Eigen::VectorXcd cre;
    std::complex<double> constant{0.0, 0.0};

    LinearOperatorForm() = default;
    explicit LinearOperatorForm(int n_modes)
        : ann(Eigen::VectorXcd::Zero(n_modes)), cre(Eigen::VectorXcd::Zero(n_modes)) {}

    int n_modes() const { return static_cast<int>(ann.size()); }

    /// The form of f^dag: coefficients conjugated, dagger flags flipped.
    LinearOperatorForm conjugate() const;

    /// Embeds the form into a larger mode space (extra modes appended with
    /// zero coefficients).
    LinearOperatorForm extended(int total_modes) const;

    LinearOperatorForm& operator+=(const LinearOperatorForm& other);
    LinearOperatorForm& operator-=(const LinearOperatorForm& other);
    LinearOperatorForm& operator*=(std::complex<double> scale);
};

LinearOperatorForm operator+(LinearOperatorForm a, const LinearOperatorForm& b);
LinearOperatorForm operator-(LinearOperatorForm a, const LinearOperatorForm& b);
LinearOperatorForm operator*(std::complex<double> scale, LinearOperatorForm f);

}  // namespace becbragg

#endif
