#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "pinnet/dynamics.hpp"
#include "pinnet/rng.hpp"

using namespace pinnet;

namespace {

CouplingMatrix two_node_symmetric() {
    Eigen::MatrixXd W(2, 2);
    W << 0, 1, 1, 0;
    return CouplingMatrix::from_weighted_adjacency(W);
}

SimulationConfig base_config(const CouplingMatrix& A) {
    SimulationConfig cfg;
    cfg.A = A;
    cfg.mode = ControlMode::Linear;
    cfg.c0 = 1.0;
    cfg.eps = 1.0;
    cfg.dt = 1e-3;
    cfg.T = 1.0;
    cfg.sample_every = 10;
    cfg.pin_strategy = PinStrategy::Explicit;
    cfg.explicit_pinned = 0;
    return cfg;
}

}  // namespace

TEST_CASE("pinned-node selection strategies") {
    Eigen::MatrixXd W(3, 3);
    W << 0, 1, 0, 1, 0, 3, 0, 3, 0;
    const auto A = CouplingMatrix::from_weighted_adjacency(W);
    const auto st = analyze_structure(A);
    // off-diagonal column sums are (1, 4, 3)
    CHECK(select_pinned_node(A, PinStrategy::MaxColumnSum, st, 0) == 1);

    Eigen::MatrixXd dir(2, 2);
    dir << 0, 0, 2, 0;
    const auto D = CouplingMatrix::from_weighted_adjacency(dir);
    CHECK(select_pinned_node(D, PinStrategy::RootScc, analyze_structure(D), 0) == 0);

    // tie: both columns sum to 1, smaller index wins
    const auto T = two_node_symmetric();
    CHECK(select_pinned_node(T, PinStrategy::MaxColumnSum, analyze_structure(T), 0) == 0);

    CHECK(select_pinned_node(T, PinStrategy::Explicit, analyze_structure(T), 0, 1) == 1);
    CHECK_THROWS_AS(select_pinned_node(T, PinStrategy::Explicit, analyze_structure(T), 0, 5),
                    std::invalid_argument);

    const int r = select_pinned_node(T, PinStrategy::Random, analyze_structure(T), 99);
    CHECK(r >= 0);
    CHECK(r < 2);
    CHECK(select_pinned_node(T, PinStrategy::Random, analyze_structure(T), 99) == r);

    // no spanning tree: root-scc must refuse
    Eigen::MatrixXd sink = Eigen::MatrixXd::Zero(3, 3);
    sink(2, 0) = 1;
    sink(2, 1) = 1;
    const auto S = CouplingMatrix::from_weighted_adjacency(sink);
    CHECK_THROWS_AS(select_pinned_node(S, PinStrategy::RootScc, analyze_structure(S), 0),
                    std::invalid_argument);
}

TEST_CASE("rhs on the synchronized manifold") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::lorenz();
    NetworkState state;
    state.t = 0;
    state.s.resize(3);
    state.s << 1.0, 2.0, 3.0;
    state.X.resize(3, 2);
    state.X.col(0) = state.s;
    state.X.col(1) = state.s;
    state.c = 5.0;
    const auto d = rhs(cfg, 0, state);
    const Eigen::VectorXd fs = cfg.oscillator.eval(state.s, 0.0);
    CHECK((d.X.col(0) - fs).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((d.X.col(1) - fs).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((d.s - fs).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.c == 0.0);
}

TEST_CASE("rhs single-node tracking control") {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(1, 1);
    auto cfg = base_config(CouplingMatrix::from_weighted_adjacency(W));
    cfg.oscillator = Oscillator::lorenz();
    cfg.c0 = 2.0;
    cfg.eps = 3.0;
    NetworkState state;
    state.s = Eigen::VectorXd::Zero(3);
    state.X.resize(3, 1);
    state.X.col(0) << 1, 1, 1;
    state.c = 2.0;
    const auto d = rhs(cfg, 0, state);
    const Eigen::VectorXd expect =
        cfg.oscillator.eval(state.X.col(0), 0.0) -
        2.0 * 3.0 * (state.X.col(0) - state.s);
    CHECK((d.X.col(0) - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adaptive law arithmetic") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::lorenz();
    cfg.mode = ControlMode::AdaptiveLinear;
    cfg.adaptive_gain = 0.5;
    NetworkState state;
    state.s = Eigen::VectorXd::Zero(3);
    state.X.resize(3, 2);
    state.X.col(0) << 1, 0, 0;
    state.X.col(1) << 0, 2, 0;
    state.c = 0.0;
    const auto d = rhs(cfg, 0, state);
    CHECK(d.c == doctest::Approx(0.25 * 5.0).epsilon(1e-15));

    // positive diagonal P reweights the law
    cfg.P = Eigen::VectorXd::Ones(3);
    cfg.P[1] = 2.0;
    const auto dP = rhs(cfg, 0, state);
    CHECK(dP.c == doctest::Approx(0.25 * (1.0 + 8.0)).epsilon(1e-15));
}

TEST_CASE("rhs rejects non-finite state") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::lorenz();
    NetworkState state;
    state.s = Eigen::VectorXd::Zero(3);
    state.X.resize(3, 2);
    state.X.setZero();
    state.X(1, 1) = std::numeric_limits<double>::infinity();
    state.c = 1.0;
    CHECK_THROWS_AS(rhs(cfg, 0, state), DivergenceError);
}

TEST_CASE("rk4 on scalar exponential decay") {
    NetworkState state;
    state.t = 0;
    state.X.resize(1, 1);
    state.X(0, 0) = 1.0;
    state.s = Eigen::VectorXd::Zero(1);
    state.c = 0.0;
    auto f = [](const NetworkState& st) {
        NetworkState d = st;
        d.X = -st.X;
        d.s.setZero();
        d.c = 0;
        return d;
    };
    const auto next = rk4_step(f, state, 0.1);
    CHECK(next.X(0, 0) == doctest::Approx(0.9048375).epsilon(1e-12));
    CHECK(next.t == doctest::Approx(0.1));

    auto zero = [](const NetworkState& st) {
        NetworkState d = st;
        d.X.setZero();
        d.s.setZero();
        d.c = 0;
        return d;
    };
    const auto still = rk4_step(zero, state, 0.1);
    CHECK(still.X(0, 0) == 1.0);
    CHECK(still.t == doctest::Approx(0.1));

    CHECK_THROWS_AS(rk4_step(f, state, 0.0), std::invalid_argument);
}

TEST_CASE("rk4 error shrinks ~16x when dt halves") {
    auto f = [](const NetworkState& st) {
        NetworkState d = st;
        d.X = -st.X;
        d.s.setZero();
        d.c = 0;
        return d;
    };
    auto integrate = [&](double dt) {
        NetworkState st;
        st.t = 0;
        st.X.resize(1, 1);
        st.X(0, 0) = 1.0;
        st.s = Eigen::VectorXd::Zero(1);
        st.c = 0;
        const long steps = std::lround(1.0 / dt);
        for (long k = 0; k < steps; ++k) st = rk4_step(f, st, dt);
        return std::abs(st.X(0, 0) - std::exp(-1.0));
    };
    const double ratio = integrate(0.1) / integrate(0.05);
    const double order = std::log2(ratio);
    CHECK(order > 3.9);
    CHECK(order < 4.1);
}

TEST_CASE("sync error arithmetic") {
    NetworkState state;
    state.s = Eigen::VectorXd::Zero(3);
    state.X = Eigen::MatrixXd::Zero(3, 2);
    CHECK(sync_error(state) == 0.0);

    state.X(0, 0) = 1.0;
    state.X(0, 1) = 1.0;
    CHECK(sync_error(state) == doctest::Approx(1.0).epsilon(1e-15));

    NetworkState one;
    one.s = Eigen::VectorXd::Zero(3);
    one.X = Eigen::MatrixXd::Zero(3, 1);
    one.X.col(0) << 3, 4, 0;
    CHECK(sync_error(one) == doctest::Approx(5.0).epsilon(1e-15));

    // invariant under node permutation
    NetworkState sw = state;
    sw.X.col(0).swap(sw.X.col(1));
    CHECK(sync_error(sw) == sync_error(state));
}

TEST_CASE("simulate keeps a synchronized start synchronized") {
    for (auto osc : {Oscillator::lorenz(), Oscillator::chen(), Oscillator::rossler(),
                     Oscillator::chua()}) {
        auto cfg = base_config(two_node_symmetric());
        cfg.oscillator = osc;
        Eigen::VectorXd s0(3);
        s0 << 0.1, 0.2, 0.3;
        cfg.s0 = s0;
        cfg.init_lo = s0;  // point box: every node starts exactly on s0
        cfg.init_hi = s0;
        cfg.T = 2.0;
        const auto res = simulate(cfg);
        CHECK_FALSE(res.diverged);
        for (double e : res.E) CHECK(e <= 1e-9);
    }
}

TEST_CASE("simulate matches the matrix-exponential oracle on a linear system") {
    const auto A = two_node_symmetric();
    auto cfg = base_config(A);
    cfg.oscillator = Oscillator::linear_test(-Eigen::MatrixXd::Identity(3, 3));
    cfg.c0 = 1.0;
    cfg.eps = 1.0;
    cfg.T = 5.0;
    cfg.dt = 1e-3;
    cfg.s0 = Eigen::VectorXd::Zero(3);
    cfg.init_lo = Eigen::VectorXd::Constant(3, -2.0);
    cfg.init_hi = Eigen::VectorXd::Constant(3, 2.0);
    cfg.seed = 17;
    const auto res = simulate(cfg);
    CHECK_FALSE(res.diverged);
    CHECK(res.E.back() / res.E.front() < std::exp(-4.0));

    // closed form: delta-dynamics matrix K = At (x) I_3 + I_2 (x) M, symmetric
    Eigen::MatrixXd At(2, 2);
    At << -2, 1, 1, -1;  // A with eps=1 subtracted at node 0
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            K.block<3, 3>(3 * i, 3 * j) = At(i, j) * Eigen::MatrixXd::Identity(3, 3);
    K -= Eigen::MatrixXd::Identity(6, 6);

    // reconstruct the initial deviation exactly as simulate draws it
    Rng rng(17);
    Eigen::VectorXd z0(6);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k) z0[3 * i + k] = rng.uniform(-2.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    const Eigen::VectorXd zT =
        es.eigenvectors() *
        (es.eigenvalues().array() * 5.0).exp().matrix().asDiagonal() *
        es.eigenvectors().transpose() * z0;
    const double oracle_E =
        std::sqrt((zT.head<3>().squaredNorm() + zT.tail<3>().squaredNorm()) / 2.0);
    CHECK(res.E.back() == doctest::Approx(oracle_E).epsilon(1e-6));
}

TEST_CASE("simulate determinism: identical config gives identical arrays") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::lorenz();
    cfg.mode = ControlMode::AdaptiveLinear;
    cfg.adaptive_gain = 1e-2;
    cfg.c0 = 0.0;
    cfg.T = 2.0;
    cfg.seed = 5;
    const auto a = simulate(cfg);
    const auto b = simulate(cfg);
    CHECK(a.times == b.times);
    CHECK(a.E == b.E);
    CHECK(a.c == b.c);
    CHECK(a.config_digest == b.config_digest);
    cfg.seed = 6;
    CHECK(simulate(cfg).E != a.E);
}

TEST_CASE("adaptive coupling strength never decreases") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::lorenz();
    cfg.mode = ControlMode::AdaptiveLinear;
    cfg.adaptive_gain = 1e-2;
    cfg.c0 = 0.0;
    cfg.eps = 100.0;
    cfg.T = 5.0;
    const auto res = simulate(cfg);
    for (std::size_t i = 1; i < res.c.size(); ++i) CHECK(res.c[i] >= res.c[i - 1]);
    CHECK(res.c.front() == 0.0);
}

TEST_CASE("translation consistency for the linear oscillator") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::linear_test(-Eigen::MatrixXd::Identity(3, 3));
    cfg.T = 2.0;
    cfg.s0 = Eigen::VectorXd::Zero(3);
    cfg.init_lo = Eigen::VectorXd::Constant(3, -1.0);
    cfg.init_hi = Eigen::VectorXd::Constant(3, 1.0);
    cfg.seed = 23;
    const auto res = simulate(cfg);

    const Eigen::VectorXd shift = Eigen::VectorXd::Constant(3, 0.7);
    auto shifted = cfg;
    shifted.s0 = shift;
    shifted.init_lo = cfg.init_lo + shift;
    shifted.init_hi = cfg.init_hi + shift;
    const auto res2 = simulate(shifted);
    for (std::size_t i = 0; i < res.E.size(); ++i)
        CHECK(std::abs(res.E[i] - res2.E[i]) < 1e-10);
}

TEST_CASE("divergence is recorded, not fatal") {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(1, 1);
    auto cfg = base_config(CouplingMatrix::from_weighted_adjacency(W));
    cfg.oscillator = Oscillator::linear_test(5.0 * Eigen::MatrixXd::Identity(3, 3));
    cfg.c0 = 0.0;  // no control: pure exponential growth
    cfg.T = 20.0;
    cfg.dt = 1e-2;
    cfg.s0 = Eigen::VectorXd::Zero(3);
    cfg.init_lo = Eigen::VectorXd::Constant(3, 1.0);
    cfg.init_hi = Eigen::VectorXd::Constant(3, 2.0);
    const auto res = simulate(cfg);
    CHECK(res.diverged);
    CHECK(res.diverged_at > 0.0);
    CHECK(res.diverged_at < 20.0);
}

TEST_CASE("config validation") {
    auto cfg = base_config(two_node_symmetric());
    cfg.oscillator = Oscillator::lorenz();
    cfg.dt = 0.0;
    CHECK_THROWS_AS(simulate(cfg), std::invalid_argument);
    cfg.dt = 1e-3;
    cfg.eps = -1.0;
    CHECK_THROWS_AS(simulate(cfg), std::invalid_argument);
    cfg.eps = 1.0;
    cfg.mode = ControlMode::AdaptiveLinear;
    cfg.adaptive_gain = 0.0;
    CHECK_THROWS_AS(simulate(cfg), std::invalid_argument);
}

TEST_CASE("mode and strategy name round trips") {
    for (auto m : {ControlMode::Linear, ControlMode::Nonlinear, ControlMode::AdaptiveLinear})
        CHECK(control_mode_from_string(control_mode_name(m)) == m);
    for (auto s : {PinStrategy::MaxColumnSum, PinStrategy::Random, PinStrategy::RootScc,
                   PinStrategy::Explicit})
        CHECK(pin_strategy_from_string(pin_strategy_name(s)) == s);
    CHECK_THROWS_AS(control_mode_from_string("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(pin_strategy_from_string("bogus"), std::invalid_argument);
}
