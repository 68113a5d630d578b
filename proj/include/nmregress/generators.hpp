// generators.hpp — Right-hand sides of the equations of motion: the
// second-order time-local dissipator with tau-dependent rates, the
// inhomogeneous correction that carries the system-bath correlations built
// up before the first emission-operator insertion, the spontaneous-emission
// Lindblad term, and their assembly for the physical state rho(t) and the
// effective operator Lambda(t, tau).
//
// With A the system coupling operator, A = sum_j A_j its Bohr decomposition,
// and Theta(a, b) = sum_j Gamma(-w_j; a, b) A_j, the bath trace reduces to
//
//   D(x)            = -[A, Theta(0, tau) x - x Theta(0, tau)†]
//   C(rho_frame)    = -[A, M (Theta(tau, tau + t) rho_frame
//                             - rho_frame Theta(tau, tau + t)†)]
//
// where M is the frame-rotated emission operator inserted between the outer
// and inner commutators (identity for the dissipator). Both are evaluated by
// one shared kernel so the operator ordering cannot drift between them.

#pragma once

#include "nmregress/bath.hpp"
#include "nmregress/operators.hpp"
#include "nmregress/types.hpp"

#include <limits>
#include <string_view>
#include <vector>

namespace nmregress {

enum class SolverMode {
    Markovian, // rate integrals saturated at infinity, no inhomogeneous term
    Naive,     // tau-dependent rates, inhomogeneous term dropped
    Full,      // tau-dependent rates plus inhomogeneous term
};

SolverMode parse_mode(std::string_view name);
const char* mode_name(SolverMode mode);

constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

struct LindbladChannel {
    Matrix op;
    double rate; // ps^-1
};

struct SystemModel {
    int dim = 0;
    Matrix h_s;          // Hermitian, ps^-1
    Matrix coupling;     // Hermitian system factor of the bath interaction
    Matrix emission_op;  // B in Lambda(t, 0) = B rho(t)
    std::vector<LindbladChannel> lindblad;

    // derived, filled by finalize()
    EigenFrame frame;
    BohrDecomposition coupling_bohr;

    void finalize(); // validates and builds frame + Bohr decomposition
    std::vector<double> bohr_frequencies() const { return coupling_bohr.frequencies(); }
};

// Driven two-level emitter: h_s = detuning |e><e| + (rabi/2)(sigma† + sigma),
// coupling sigma†sigma, emission operator sigma, one decay channel (sigma, gamma).
SystemModel qd_model(double rabi, double detuning, double gamma_sp);

Matrix dissipator(const Matrix& x, double tau, const SystemModel& model,
                  const CorrelationTables& tables, SolverMode mode);

// rho_frame must already be rotated into the tau frame; t_anchor may be
// kInfiniteTime (tail integrals) or finite (validation runs).
Matrix inhomogeneous(const Matrix& rho_frame, double tau, double t_anchor,
                     const SystemModel& model, const CorrelationTables& tables);

Matrix lindblad_term(const Matrix& x, const SystemModel& model);

// -i[H_S, rho] + D(rho) + lindblad(rho); rates at [0, t] (saturated for Markovian)
Matrix rhs_physical(const Matrix& rho, double t, const SystemModel& model,
                    const CorrelationTables& tables, SolverMode mode);

// i[Lambda, H_S] + D(Lambda) + lindblad(Lambda) + C(rho(t) rotated), per mode
Matrix rhs_effective(const Matrix& lam, const Matrix& rho_anchor, double tau, double t_anchor,
                     const SystemModel& model, const CorrelationTables& tables, SolverMode mode);

} // namespace nmregress
