#include "pinnet/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pinnet/structure.hpp"

namespace pinnet {

Eigen::MatrixXd PinnedMatrix::dense() const {
    Eigen::MatrixXd M = base.dense();
    M(pinned, pinned) -= eps;
    return M;
}

PinnedMatrix pin(const CouplingMatrix& A, double eps, int pinned) {
    if (eps <= 0) throw std::invalid_argument("pin: eps must be > 0");
    if (pinned < 0 || pinned >= A.size())
        throw std::invalid_argument("pin: node index " + std::to_string(pinned) +
                                    " out of range");
    return PinnedMatrix{A, eps, pinned};
}

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& S) {
    if (S.rows() != S.cols())
        throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
    const double scale = S.cwiseAbs().maxCoeff();
    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0 && asym > 1e-9 * scale)
        throw std::invalid_argument(
            "symmetric_eigenvalues: asymmetry " + std::to_string(asym) +
            " exceeds tolerance");

    const Eigen::MatrixXd H = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric_eigenvalues: eigensolver failed");

    // Only the extreme eigenvalues feed the criteria; validate those pairs.
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    const int m = static_cast<int>(vals.size());
    for (int idx : {0, m - 1}) {
        const double res =
            (H * vecs.col(idx) - vals[idx] * vecs.col(idx)).cwiseAbs().maxCoeff();
        if (res > 1e-8 * std::max(scale, 1.0))
            throw std::runtime_error("symmetric_eigenvalues: residual check failed");
    }

    Spectrum spec;
    spec.values = vals.reverse();  // Eigen sorts ascending
    return spec;
}

PerronWeights left_perron(const CouplingMatrix& A) {
    const int m = A.size();
    const auto structure = analyze_structure(A);
    if (!structure.irreducible)
        throw std::invalid_argument(
            "left_perron: matrix is reducible; use root-block pinning on the "
            "Frobenius form instead");

    if (m == 1) return PerronWeights{Eigen::VectorXd::Ones(1)};

    // Shifted power iteration on B = I + A^T / (2 max|a_ii|); B is nonnegative
    // with spectral radius 1 and its Perron vector is the left null vector of A.
    const double shift = 2.0 * A.max_abs_diagonal();
    const double norm_a = 2.0 * A.max_abs_diagonal();  // inf-norm of zero-row-sum A
    Eigen::VectorXd xi = Eigen::VectorXd::Constant(m, 1.0 / m);
    Eigen::VectorXd next(m);
    const long max_iter =
        static_cast<long>(10.0 * m * std::log(std::max(m, 2)) + 1000);
    auto apply = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
        // out = v + A^T v / shift, using the row-wise storage of A
        out = v;
        for (int i = 0; i < m; ++i) {
            out[i] += A.diagonal(i) * v[i] / shift;
            for (const auto& e : A.row(i)) out[e.col] += e.weight * v[i] / shift;
        }
    };
    auto residual = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < m; ++i) {
            r[i] += A.diagonal(i) * v[i];
            for (const auto& e : A.row(i)) r[e.col] += e.weight * v[i];
        }
        return r.cwiseAbs().maxCoeff();
    };

    bool converged = false;
    for (long it = 0; it < max_iter; ++it) {
        apply(xi, next);
        next /= next.sum();
        xi = next;
        if (residual(xi) < 1e-12 * norm_a) {
            converged = true;
            break;
        }
    }

    // One polishing solve of [A^T; 1^T] xi = [0; 1] in the least-squares sense.
    Eigen::MatrixXd M(m + 1, m);
    M.topRows(m) = A.dense().transpose();
    M.bottomRows(1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs[m] = 1.0;
    Eigen::VectorXd polished = M.colPivHouseholderQr().solve(rhs);
    if (polished.sum() != 0) polished /= polished.sum();
    if (residual(polished) < residual(xi)) xi = polished;

    const double res = residual(xi);
    if (res >= 1e-9 * norm_a)
        throw std::runtime_error(
            "left_perron: power iteration did not converge; residual " +
            std::to_string(res) + " (inf-norm scale " + std::to_string(norm_a) + ")");
    if (!converged && (xi.array() <= 0).any())
        throw std::runtime_error("left_perron: nonpositive component after polish");
    if ((xi.array() <= 0).any())
        throw std::runtime_error("left_perron: nonpositive Perron component");
    return PerronWeights{xi};
}

Eigen::MatrixXd weighted_symmetric_part(const PerronWeights& xi,
                                        const PinnedMatrix& At) {
    if (xi.xi.size() != At.base.size())
        throw std::invalid_argument("weighted_symmetric_part: dimension mismatch");
    const Eigen::MatrixXd xa = xi.xi.asDiagonal() * At.dense();
    return 0.5 * (xa + xa.transpose());
}

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::LocalLinearized: return "T1-local";
        case Theorem::GlobalSymmetric: return "T2-symmetric";
        case Theorem::GlobalAsymmetric: return "T3-asymmetric";
        case Theorem::GlobalNonlinear: return "T4-nonlinear";
    }
    return "?";
}

std::string CriterionReport::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "theorem=" << theorem_name(theorem) << '\n';
    out << "satisfied=" << (satisfied ? "true" : "false") << '\n';
    out << (theorem == Theorem::GlobalAsymmetric ? "mu_max=" : "lambda1=")
        << spectral_input << '\n';
    out << "margins=";
    for (int k = 0; k < margins.size(); ++k)
        out << (k ? "," : "") << margins[k];
    out << '\n';
    out << "eps=" << eps << '\n';
    out << "c=" << c << '\n';
    out << "pinned=" << pinned << '\n';
    return out.str();
}

namespace {

constexpr double kStrict = -1e-12;

CriterionReport make_report(Theorem kind, double eps, int pinned, double c,
                            const Eigen::VectorXd& delta, double rate,
                            double spectral_input, const std::string& details) {
    CriterionReport rep;
    rep.theorem = kind;
    rep.eps = eps;
    rep.c = c;
    rep.pinned = pinned;
    rep.spectral_input = spectral_input;
    rep.margins = delta.array() + rate;
    rep.satisfied = (rep.margins.array() < kStrict).all();
    rep.details = details;
    return rep;
}

}  // namespace

CriterionReport check_global_criterion(Theorem kind, const CouplingMatrix& A,
                                       double eps, int pinned, double c,
                                       const Eigen::VectorXd& delta,
                                       double alpha_lower) {
    if (kind == Theorem::LocalLinearized)
        throw std::invalid_argument(
            "check_global_criterion: use check_local_criterion for T1");
    const auto structure = analyze_structure(A);
    if (!structure.irreducible)
        throw std::invalid_argument(
            theorem_name(kind) +
            ": coupling matrix is reducible; pin inside the root block of the "
            "Frobenius form instead");
    const bool needs_symmetric = (kind != Theorem::GlobalAsymmetric);
    if (needs_symmetric && !A.is_symmetric())
        throw std::invalid_argument(theorem_name(kind) +
                                    ": requires a symmetric coupling matrix");
    if (kind == Theorem::GlobalNonlinear && !(alpha_lower > 0))
        throw std::invalid_argument("T4-nonlinear: alpha_lower must be > 0");

    const PinnedMatrix At = pin(A, eps, pinned);
    if (kind == Theorem::GlobalAsymmetric) {
        const auto xi = left_perron(A);
        const double mu_max =
            symmetric_eigenvalues(weighted_symmetric_part(xi, At)).largest();
        return make_report(kind, eps, pinned, c, delta, c * mu_max, mu_max,
                           "margins are Delta_k + c*mu_max({Xi At}^s)");
    }
    const double lambda1 = symmetric_eigenvalues(At.dense()).largest();
    const double alpha = (kind == Theorem::GlobalNonlinear) ? alpha_lower : 1.0;
    return make_report(kind, eps, pinned, c, delta, alpha * c * lambda1, lambda1,
                       kind == Theorem::GlobalNonlinear
                           ? "margins are Delta_k + alpha_lower*c*lambda1(At)"
                           : "margins are Delta_k + c*lambda1(At)");
}

CriterionReport check_local_criterion(const Oscillator& osc,
                                      const Eigen::VectorXd& s0, double c,
                                      double eps, int pinned,
                                      const CouplingMatrix& A, double eta,
                                      double horizon, double dt) {
    if (!(eta > 0)) throw std::invalid_argument("check_local_criterion: eta must be > 0");
    if (!(dt > 0) || !(horizon >= dt))
        throw std::invalid_argument("check_local_criterion: bad integration window");
    if (!A.is_symmetric())
        throw std::invalid_argument("T1-local: requires a symmetric coupling matrix");
    if (!analyze_structure(A).irreducible)
        throw std::invalid_argument("T1-local: requires an irreducible coupling matrix");

    const double lambda1 = symmetric_eigenvalues(pin(A, eps, pinned).dense()).largest();

    const int n = osc.dimension();
    Eigen::VectorXd s = s0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    double mu_max = -std::numeric_limits<double>::infinity();
    auto mu_at = [&](const Eigen::VectorXd& x) {
        const Eigen::MatrixXd J = osc.jacobian(x);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (J + J.transpose()));
        return es.eigenvalues().maxCoeff();
    };
    mu_max = std::max(mu_max, mu_at(s));
    const long steps = static_cast<long>(std::llround(horizon / dt));
    for (long st = 0; st < steps; ++st) {
        osc.eval_into(s, k1);
        tmp = s + 0.5 * dt * k1;
        osc.eval_into(tmp, k2);
        tmp = s + 0.5 * dt * k2;
        osc.eval_into(tmp, k3);
        tmp = s + dt * k3;
        osc.eval_into(tmp, k4);
        s += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!s.allFinite())
            throw std::runtime_error("T1-local: target trajectory diverged at t=" +
                                     std::to_string((st + 1) * dt));
        mu_max = std::max(mu_max, mu_at(s));
    }

    CriterionReport rep;
    rep.theorem = Theorem::LocalLinearized;
    rep.eps = eps;
    rep.c = c;
    rep.pinned = pinned;
    rep.spectral_input = lambda1;
    rep.margins = Eigen::VectorXd::Constant(1, mu_max - (-c * lambda1 - eta));
    rep.satisfied = (rep.margins.array() < kStrict).all();
    rep.details = "finite-horizon check over [0," + std::to_string(horizon) +
                  "]; max_t mu(t) = " + std::to_string(mu_max) +
                  "; satisfied over the sampled horizon only";
    return rep;
}

}  // namespace pinnet
