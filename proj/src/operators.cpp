#include "nmregress/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace nmregress {

Matrix identity_op(int dim) {
    return Matrix::Identity(dim, dim);
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

Matrix sigma_y() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = Complex(0.0, -1.0);
    m(0, 1) = Complex(0.0, +1.0);
    return m;
}

Matrix excited_projector() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 1) = 1.0;
    return m;
}

Matrix ground_projector() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
}

EigenFrame eigendecompose(const Matrix& h, double hermitian_tol) {
    require_square(h, "eigendecompose");
    if (h.rows() < 2) {
        throw std::invalid_argument("eigendecompose: dimension must be >= 2");
    }
    if (hermiticity_defect(h) >= hermitian_tol) {
        throw std::invalid_argument("eigendecompose: input not Hermitian to tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("eigendecompose: eigensolver failed");
    }
    EigenFrame frame;
    frame.eigenvalues = solver.eigenvalues();
    frame.eigenvectors = solver.eigenvectors();
    return frame;
}

Matrix frame_rotate(const Matrix& x, const EigenFrame& frame, double s) {
    if (x.rows() != frame.dim() || x.cols() != frame.dim()) {
        throw std::invalid_argument("frame_rotate: dimension mismatch");
    }
    const int d = frame.dim();
    Eigen::VectorXcd phases(d);
    for (int k = 0; k < d; ++k) {
        phases(k) = std::exp(Complex(0.0, -frame.eigenvalues(k) * s));
    }
    const Matrix& v = frame.eigenvectors;
    // U x U† = V diag(e^{-i eps s}) V† x V diag(e^{+i eps s}) V†
    Matrix x_eig = v.adjoint() * x * v;
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            x_eig(k, l) *= phases(k) * std::conj(phases(l));
        }
    }
    return v * x_eig * v.adjoint();
}

std::vector<double> BohrDecomposition::frequencies() const {
    std::vector<double> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(t.omega);
    return out;
}

Matrix BohrDecomposition::sum() const {
    if (terms.empty()) return Matrix();
    Matrix s = Matrix::Zero(terms.front().op.rows(), terms.front().op.cols());
    for (const auto& t : terms) s += t.op;
    return s;
}

BohrDecomposition bohr_decompose(const Matrix& a, const EigenFrame& frame, double merge_tol) {
    if (a.rows() != frame.dim() || a.cols() != frame.dim()) {
        throw std::invalid_argument("bohr_decompose: dimension mismatch");
    }
    const int d = frame.dim();
    const Matrix& v = frame.eigenvectors;
    Matrix a_eig = v.adjoint() * a * v;

    // Collect |k><l| blocks by Bohr frequency eps_k - eps_l, merging frequencies
    // that agree within merge_tol to avoid spurious near-duplicate channels.
    std::vector<std::pair<double, Matrix>> groups;
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            const double omega = frame.eigenvalues(k) - frame.eigenvalues(l);
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                return std::abs(g.first - omega) < merge_tol;
            });
            if (it == groups.end()) {
                groups.emplace_back(omega, Matrix::Zero(d, d));
                it = std::prev(groups.end());
            }
            it->second(k, l) += a_eig(k, l);
        }
    }

    BohrDecomposition out;
    const double drop_tol = 1e-13 * std::max(1.0, max_abs(a));
    for (auto& [omega, block] : groups) {
        if (max_abs(block) <= drop_tol) continue; // frequency not present in a
        out.terms.push_back({omega, v * block * v.adjoint()});
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const BohrTerm& x, const BohrTerm& y) { return x.omega < y.omega; });
    return out;
}

double trace_distance(const Matrix& a, const Matrix& b) {
    require_hermitian(a, "trace_distance", 1e-9);
    require_hermitian(b, "trace_distance", 1e-9);
    require_same_dim(a, b, "trace_distance");
    Matrix diff = a - b;
    diff = 0.5 * (diff + diff.adjoint().eval()); // scrub roundoff asymmetry
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("trace_distance: eigensolver failed");
    }
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace nmregress
