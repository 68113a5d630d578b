// operators.hpp — Dense operator algebra: eigenframes, frame rotations,
// Bohr (eigenoperator) decompositions, and the trace distance.
//
// Basis convention for the two-level presets: index 0 = |g>, index 1 = |e>,
// sigma = |g><e| is the lowering operator.

#pragma once

#include "nmregress/types.hpp"

#include <vector>

namespace nmregress {

// --------------------------- small operator builders -------------------------

Matrix identity_op(int dim);
Matrix sigma_minus(); // |g><e|
Matrix sigma_plus();  // |e><g|
Matrix sigma_y();     // -i|e><g| + i|g><e|
Matrix excited_projector(); // sigma† sigma = |e><e|
Matrix ground_projector();  // |g><g|

// --------------------------- eigenframe --------------------------------------

// Spectral factorisation of a Hermitian operator: h = V diag(eps) V†.
// Used to evaluate U(s) = exp(-i h s) exactly.
struct EigenFrame {
    RealVector eigenvalues; // ascending, ps^-1
    Matrix eigenvectors;    // unitary, columns are eigenvectors

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Throws std::invalid_argument for non-Hermitian input (defect >= 1e-12) or dim < 2.
EigenFrame eigendecompose(const Matrix& h, double hermitian_tol = 1e-12);

// U(s) x U(s)† with U(s) = exp(-i h s) evaluated in the eigenbasis of h.
Matrix frame_rotate(const Matrix& x, const EigenFrame& frame, double s);

// --------------------------- Bohr decomposition ------------------------------

struct BohrTerm {
    double omega;  // Bohr frequency eps_k - eps_l, ps^-1
    Matrix op;     // component A_j, lab basis
};

// a = sum_j A_j with frame_rotate(A_j, s) = exp(-i omega_j s) A_j.
// Frequencies within merge_tol of each other are collapsed into one term.
struct BohrDecomposition {
    std::vector<BohrTerm> terms;

    std::vector<double> frequencies() const;
    Matrix sum() const;
};

BohrDecomposition bohr_decompose(const Matrix& a, const EigenFrame& frame,
                                 double merge_tol = 1e-9);

// --------------------------- trace distance ----------------------------------

// (1/2) sum of |eigenvalues| of (a - b); a, b Hermitian.
double trace_distance(const Matrix& a, const Matrix& b);

} // namespace nmregress
