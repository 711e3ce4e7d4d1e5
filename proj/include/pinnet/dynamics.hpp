#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pinnet/coupling_function.hpp"
#include "pinnet/coupling_matrix.hpp"
#include "pinnet/oscillator.hpp"
#include "pinnet/structure.hpp"

namespace pinnet {

enum class ControlMode { Linear, Nonlinear, AdaptiveLinear };
enum class PinStrategy { MaxColumnSum, Random, RootScc, Explicit };

/// Full description of one controlled-network run. Node states live in an
/// n x m matrix (one column per node); the target s(t) is co-integrated with
/// the network so both see the same discretization.
struct SimulationConfig {
    Oscillator oscillator = Oscillator::lorenz();
    CouplingMatrix A = CouplingMatrix::from_weighted_adjacency(Eigen::MatrixXd::Zero(1, 1));
    ControlMode mode = ControlMode::AdaptiveLinear;
    CouplingFunction g = CouplingFunction::identity();  // nonlinear mode only
    double c0 = 0;             // initial (fixed modes: constant) coupling strength
    double eps = 100;          // control gain on the pinned node
    double adaptive_gain = 0;  // adaptive mode growth rate
    // Adaptive ablation: if >= 0, the pinned control term uses this fixed
    // coupling strength instead of c(t), while the network coupling still
    // scales with c(t).
    double control_gain_override = -1;
    Eigen::VectorXd P;         // positive diagonal weight in the adaptive law; empty = identity
    double dt = 1e-3;
    double T = 0;
    int sample_every = 100;
    std::uint64_t seed = 0;
    Eigen::VectorXd init_lo, init_hi;   // empty = oscillator default box
    std::optional<Eigen::VectorXd> s0;  // empty = drawn from the init box
    PinStrategy pin_strategy = PinStrategy::MaxColumnSum;
    int explicit_pinned = -1;

    void validate() const;
};

struct NetworkState {
    double t = 0;
    Eigen::MatrixXd X;  // n x m node states
    Eigen::VectorXd s;  // target state
    double c = 0;       // coupling strength
};

struct RunResult {
    std::vector<double> times;
    std::vector<double> E;  // synchronization error per sample
    std::vector<double> c;  // coupling strength per sample
    NetworkState final_state;
    int pinned = -1;
    bool diverged = false;
    double diverged_at = 0;
    std::string config_digest;

    double final_E() const { return E.back(); }
    double final_c() const { return c.back(); }
};

/// Thrown when an integration stage produces non-finite values.
struct DivergenceError : std::runtime_error {
    DivergenceError(double t, int stage)
        : std::runtime_error("divergence at t=" + std::to_string(t) + " (stage " +
                             std::to_string(stage) + ")"),
          time(t),
          stage(stage) {}
    double time;
    int stage;
};

/// Pinned-node selection. max-column-sum is argmax_i of the off-diagonal
/// column sum (ties to the smallest index); root-scc is the smallest index in
/// the unique root component.
int select_pinned_node(const CouplingMatrix& A, PinStrategy strategy,
                       const NetworkStructure& structure, std::uint64_t seed,
                       int explicit_index = -1);

/// Time derivative of the full controlled system.
NetworkState rhs(const SimulationConfig& config, int pinned,
                 const NetworkState& state);

/// Classical fixed-step RK4 applied jointly to (X, s, c).
template <typename Rhs>
NetworkState rk4_step(Rhs&& f, const NetworkState& state, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("rk4_step: dt must be > 0");
    auto check = [&](const NetworkState& d, int stage) {
        if (!d.X.allFinite() || !d.s.allFinite() || !std::isfinite(d.c))
            throw DivergenceError(state.t, stage);
    };
    NetworkState k1 = f(state);
    check(k1, 1);
    NetworkState mid = state;
    auto advance = [&](const NetworkState& k, double h) {
        mid.X = state.X + h * k.X;
        mid.s = state.s + h * k.s;
        mid.c = state.c + h * k.c;
        mid.t = state.t + h;
    };
    advance(k1, dt / 2);
    NetworkState k2 = f(mid);
    check(k2, 2);
    advance(k2, dt / 2);
    NetworkState k3 = f(mid);
    check(k3, 3);
    advance(k3, dt);
    NetworkState k4 = f(mid);
    check(k4, 4);

    NetworkState next = state;
    next.X = state.X + (dt / 6) * (k1.X + 2 * k2.X + 2 * k3.X + k4.X);
    next.s = state.s + (dt / 6) * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
    next.c = state.c + (dt / 6) * (k1.c + 2 * k2.c + 2 * k3.c + k4.c);
    next.t = state.t + dt;
    check(next, 5);
    return next;
}

/// Root-mean-square distance of the node states from the target:
/// sqrt(sum_i |x_i - s|^2 / m).
double sync_error(const NetworkState& state);

RunResult simulate(const SimulationConfig& config);

std::string control_mode_name(ControlMode m);
ControlMode control_mode_from_string(const std::string& s);
std::string pin_strategy_name(PinStrategy s);
PinStrategy pin_strategy_from_string(const std::string& s);

}  // namespace pinnet
