// oracles.hpp — Test-only reference implementations. Each one computes a
// quantity the library also computes, but through an independent route:
// direct matrix exponentials instead of eigenframes, direct s-quadrature of
// the double-commutator contraction instead of eigenoperator tables, a
// discretised bath instead of continuum integrals.

#pragma once

#include "nmregress/bath.hpp"
#include "nmregress/generators.hpp"
#include "nmregress/types.hpp"

#include <random>
#include <vector>

namespace nmregress::test {

Matrix expm(const Matrix& m); // scaling-and-squaring via Eigen

Matrix random_matrix(std::mt19937_64& rng, int d);
Matrix random_hermitian(std::mt19937_64& rng, int d);
Matrix random_density(std::mt19937_64& rng, int d);

// C(s) by a fixed composite 10-point Gauss-Legendre rule (panels*10 nodes),
// independent of both the adaptive integrator and the SIMD batch path.
Complex correlation_gl10(double s, const BathSpec& spec, int panels = 1000);

// Direct s-quadrature of -[A, M (C(s) A(-s) x - C(s)* x A(-s))] over [a, b]
// on a uniform grid of step h (endpoints included exactly). Frame rotations
// go through expm, the bath correlation through the adaptive integrator; no
// eigenoperator decomposition and no precomputed tables are involved.
Matrix bath_contraction_bruteforce(const Matrix& x, const Matrix* insert, const SystemModel& model,
                                   const BathSpec& bath, double a, double b, double h);

Matrix dissipator_bruteforce(const Matrix& x, double tau, const SystemModel& model,
                             const BathSpec& bath, double h = 0.005);

// t_anchor = infinity is realised by integrating to s_max, matching the
// tail convention of the tables.
Matrix inhomogeneous_bruteforce(const Matrix& rho_frame, double tau, double t_anchor,
                                const SystemModel& model, const BathSpec& bath, double s_max,
                                double h = 0.005);

// Exact dephasing exponent of a discretised bath: n_modes harmonic modes at
// midpoint frequencies with g_k^2 = J(w_k) dw, each contributing its exact
// displaced-oscillator phase sum.
double ibm_exponent_discrete(double tau, const BathSpec& spec, int n_modes = 200);

} // namespace nmregress::test
