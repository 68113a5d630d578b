// types.hpp — Shared aliases, error categories, and small matrix helpers

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace nmregress {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Bad user input: unknown keys, missing keys, out-of-range physical parameters.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature non-convergence, step underflow, invariant breaches and the like.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

// max |m - m†|
inline double hermiticity_defect(const Matrix& m) {
    return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && hermiticity_defect(m) < tol;
}

inline void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(who) + ": operator must be square and non-empty");
    }
}

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    }
}

inline void require_hermitian(const Matrix& m, const char* who, double tol = 1e-9) {
    require_square(m, who);
    if (hermiticity_defect(m) >= tol) {
        throw std::invalid_argument(std::string(who) + ": operator is not Hermitian (defect " +
                                    std::to_string(hermiticity_defect(m)) + ")");
    }
}

} // namespace nmregress
