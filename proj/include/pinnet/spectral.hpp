#pragma once

#include <Eigen/Dense>
#include <string>

#include "pinnet/coupling_matrix.hpp"
#include "pinnet/oscillator.hpp"

namespace pinnet {

/// Coupling matrix with the control gain subtracted from the pinned node's
/// diagonal entry: the pinned row sums to -eps instead of 0.
struct PinnedMatrix {
    CouplingMatrix base;
    double eps = 0;
    int pinned = -1;

    Eigen::MatrixXd dense() const;
};

PinnedMatrix pin(const CouplingMatrix& A, double eps, int pinned);

/// Real eigenvalues of a symmetric matrix, sorted descending so values[0] is
/// the largest.
struct Spectrum {
    Eigen::VectorXd values;
    double largest() const { return values[0]; }
    double smallest() const { return values[values.size() - 1]; }
};

/// Eigenvalues of (S + S^T)/2. Rejects inputs whose asymmetry exceeds
/// 1e-9 * max|S|; extreme eigenpairs are validated by a residual check.
Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& S);

/// Positive left null vector of an irreducible coupling matrix, normalized to
/// sum 1: xi^T A = 0.
struct PerronWeights {
    Eigen::VectorXd xi;
    Eigen::MatrixXd as_diagonal() const { return xi.asDiagonal(); }
};

PerronWeights left_perron(const CouplingMatrix& A);

/// (1/2)(Xi*At + At^T*Xi); exactly symmetric by construction.
Eigen::MatrixXd weighted_symmetric_part(const PerronWeights& xi,
                                        const PinnedMatrix& At);

enum class Theorem { LocalLinearized, GlobalSymmetric, GlobalAsymmetric, GlobalNonlinear };

std::string theorem_name(Theorem t);

/// Outcome of a synchronization criterion check. `margins` holds one value
/// per state dimension; the criterion is satisfied iff every margin is
/// strictly negative (below -1e-12, to avoid float-equality acceptance).
struct CriterionReport {
    Theorem theorem;
    bool satisfied = false;
    Eigen::VectorXd margins;
    double spectral_input = 0;  // lambda_1 or mu_max, whichever the theorem uses
    double eps = 0;
    double c = 0;
    int pinned = -1;
    std::string details;

    /// key=value lines: theorem, satisfied, lambda1|mu_max, margins, eps, c, pinned.
    std::string serialize() const;
};

/// Global criteria: margins are
///   GlobalSymmetric:  Delta_k + c * lambda_1(At)            (A symmetric)
///   GlobalAsymmetric: Delta_k + c * mu_max({Xi At}^s)
///   GlobalNonlinear:  Delta_k + alpha_lower * c * lambda_1(At)
CriterionReport check_global_criterion(Theorem kind, const CouplingMatrix& A,
                                       double eps, int pinned, double c,
                                       const Eigen::VectorXd& delta,
                                       double alpha_lower = 1.0);

/// Linearized criterion along the target trajectory: integrates s(t) from s0
/// over [0, T] and samples mu(t), the largest eigenvalue of the symmetrized
/// Jacobian. Satisfied iff max_t mu(t) < -c*lambda_1 - eta over the sampled
/// horizon (a finite-horizon check; it cannot certify all t > 0).
CriterionReport check_local_criterion(const Oscillator& osc,
                                      const Eigen::VectorXd& s0, double c,
                                      double eps, int pinned,
                                      const CouplingMatrix& A, double eta,
                                      double horizon, double dt);

}  // namespace pinnet
