#include "pinnet/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pinnet/rng.hpp"

namespace pinnet {

void SimulationConfig::validate() const {
    if (!(dt > 0)) throw std::invalid_argument("simulation: dt must be > 0");
    if (!(T >= dt)) throw std::invalid_argument("simulation: T must be >= dt");
    if (!(eps > 0)) throw std::invalid_argument("simulation: eps must be > 0");
    if (c0 < 0) throw std::invalid_argument("simulation: c0 must be >= 0");
    if (sample_every < 1) throw std::invalid_argument("simulation: sample_every >= 1");
    if (mode == ControlMode::AdaptiveLinear && !(adaptive_gain > 0))
        throw std::invalid_argument("simulation: adaptive mode needs adaptive_gain > 0");
    const int n = oscillator.dimension();
    if (P.size() != 0 && (P.size() != n || (P.array() <= 0).any()))
        throw std::invalid_argument("simulation: P must be a positive diagonal of size n");
    if (init_lo.size() != init_hi.size())
        throw std::invalid_argument("simulation: init box bounds disagree");
    // a point box (lo == hi) is allowed: it pins the initial states exactly
    if (init_lo.size() != 0 &&
        (init_lo.size() != n || (init_lo.array() > init_hi.array()).any()))
        throw std::invalid_argument("simulation: empty init box");
    if (s0 && s0->size() != n)
        throw std::invalid_argument("simulation: s0 has wrong dimension");
    if (pin_strategy == PinStrategy::Explicit &&
        (explicit_pinned < 0 || explicit_pinned >= A.size()))
        throw std::invalid_argument("simulation: explicit pinned index out of range");
}

int select_pinned_node(const CouplingMatrix& A, PinStrategy strategy,
                       const NetworkStructure& structure, std::uint64_t seed,
                       int explicit_index) {
    const int m = A.size();
    switch (strategy) {
        case PinStrategy::MaxColumnSum: {
            // argmax_i sum_{j != i} |a_ji|, smallest index on ties
            Eigen::VectorXd col = Eigen::VectorXd::Zero(m);
            for (int i = 0; i < m; ++i)
                for (const auto& e : A.row(i)) col[e.col] += std::abs(e.weight);
            int best = 0;
            for (int i = 1; i < m; ++i)
                if (col[i] > col[best]) best = i;
            return best;
        }
        case PinStrategy::Random:
            return static_cast<int>(Rng(seed).below(m));
        case PinStrategy::RootScc: {
            if (!structure.has_spanning_tree)
                throw std::invalid_argument(
                    "select_pinned_node: root-scc strategy needs a spanning tree");
            const auto& root = structure.scc_partition[structure.root_components[0]];
            return *std::min_element(root.begin(), root.end());
        }
        case PinStrategy::Explicit:
            if (explicit_index < 0 || explicit_index >= m)
                throw std::invalid_argument("select_pinned_node: index out of range");
            return explicit_index;
    }
    throw std::logic_error("select_pinned_node: unreachable");
}

namespace {

void rhs_into(const SimulationConfig& config, int pinned, const NetworkState& state,
              NetworkState& deriv, Eigen::MatrixXd& phi_buf, Eigen::VectorXd& phis_buf) {
    const int m = config.A.size();
    const int n = config.oscillator.dimension();
    const bool nonlinear = (config.mode == ControlMode::Nonlinear);

    deriv.t = 1;
    deriv.X.resize(n, m);
    deriv.s.resize(n);

    // phi is the coupling output: identity for linear/adaptive, g otherwise
    const Eigen::MatrixXd* phi = &state.X;
    const Eigen::VectorXd* phis = &state.s;
    if (nonlinear) {
        phi_buf.resize(n, m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < n; ++k) phi_buf(k, i) = config.g.apply(state.X(k, i));
        phis_buf = config.g.apply(state.s);
        phi = &phi_buf;
        phis = &phis_buf;
    }

    const double c = state.c;
    for (int i = 0; i < m; ++i) {
        config.oscillator.eval_into(state.X.col(i), deriv.X.col(i));
        deriv.X.col(i) += c * config.A.diagonal(i) * phi->col(i);
        for (const auto& e : config.A.row(i))
            deriv.X.col(i) += c * e.weight * phi->col(e.col);
    }
    const double control_c =
        (config.mode == ControlMode::AdaptiveLinear && config.control_gain_override >= 0)
            ? config.control_gain_override
            : c;
    deriv.X.col(pinned) -= control_c * config.eps * (phi->col(pinned) - *phis);

    config.oscillator.eval_into(state.s, deriv.s);

    if (config.mode == ControlMode::AdaptiveLinear) {
        double sum = 0;
        if (config.P.size() == 0) {
            for (int i = 0; i < m; ++i) sum += (state.X.col(i) - state.s).squaredNorm();
        } else {
            for (int i = 0; i < m; ++i) {
                const Eigen::VectorXd d = state.X.col(i) - state.s;
                sum += (d.array() * config.P.array() * d.array()).sum();
            }
        }
        deriv.c = 0.5 * config.adaptive_gain * sum;
    } else {
        deriv.c = 0;
    }
}

std::string digest(const SimulationConfig& config) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<int>(config.oscillator.kind()) << '|'
       << config.A.size() << '|' << config.A.nonzero_count() << '|'
       << static_cast<int>(config.mode) << '|' << config.c0 << '|' << config.eps
       << '|' << config.adaptive_gain << '|' << config.control_gain_override
       << '|' << config.dt << '|' << config.T << '|'
       << config.sample_every << '|' << config.seed << '|'
       << static_cast<int>(config.pin_strategy) << '|' << config.explicit_pinned;
    for (int i = 0; i < config.A.size(); ++i)
        for (const auto& e : config.A.row(i)) os << '|' << i << ',' << e.col << ',' << e.weight;
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char ch : os.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

}  // namespace

NetworkState rhs(const SimulationConfig& config, int pinned,
                 const NetworkState& state) {
    if (!state.X.allFinite() || !state.s.allFinite() || !std::isfinite(state.c))
        throw DivergenceError(state.t, 0);
    NetworkState deriv;
    Eigen::MatrixXd phi_buf;
    Eigen::VectorXd phis_buf;
    rhs_into(config, pinned, state, deriv, phi_buf, phis_buf);
    return deriv;
}

double sync_error(const NetworkState& state) {
    const int m = static_cast<int>(state.X.cols());
    double sum = 0;
    for (int i = 0; i < m; ++i) sum += (state.X.col(i) - state.s).squaredNorm();
    return std::sqrt(sum / m);
}

RunResult simulate(const SimulationConfig& config) {
    config.validate();
    const int m = config.A.size();
    const int n = config.oscillator.dimension();

    const auto structure = analyze_structure(config.A);
    const int pinned = select_pinned_node(config.A, config.pin_strategy, structure,
                                          config.seed, config.explicit_pinned);

    Eigen::VectorXd lo = config.init_lo, hi = config.init_hi;
    if (lo.size() == 0) config.oscillator.default_init_box(lo, hi);

    Rng rng(config.seed);
    NetworkState state;
    state.t = 0;
    state.X.resize(n, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) state.X(k, i) = rng.uniform(lo[k], hi[k]);
    if (config.s0) {
        state.s = *config.s0;
    } else {
        state.s.resize(n);
        for (int k = 0; k < n; ++k) state.s[k] = rng.uniform(lo[k], hi[k]);
    }
    state.c = config.c0;

    RunResult result;
    result.pinned = pinned;
    result.config_digest = digest(config);

    Eigen::MatrixXd phi_buf;
    Eigen::VectorXd phis_buf;
    NetworkState deriv;
    auto f = [&](const NetworkState& st) -> NetworkState {
        rhs_into(config, pinned, st, deriv, phi_buf, phis_buf);
        return deriv;
    };

    auto record = [&](const NetworkState& st) {
        result.times.push_back(st.t);
        result.E.push_back(sync_error(st));
        result.c.push_back(st.c);
    };
    record(state);

    const long steps = static_cast<long>(std::llround(config.T / config.dt));
    for (long st = 0; st < steps; ++st) {
        try {
            state = rk4_step(f, state, config.dt);
        } catch (const DivergenceError& e) {
            result.diverged = true;
            result.diverged_at = e.time;
            break;
        }
        const bool at_sample = ((st + 1) % config.sample_every == 0) || (st + 1 == steps);
        if (at_sample) {
            const double err = sync_error(state);
            if (!std::isfinite(err) || err > 1e12) {
                result.diverged = true;
                result.diverged_at = state.t;
                break;
            }
            record(state);
        }
    }
    result.final_state = state;
    return result;
}

std::string control_mode_name(ControlMode m) {
    switch (m) {
        case ControlMode::Linear: return "linear";
        case ControlMode::Nonlinear: return "nonlinear";
        case ControlMode::AdaptiveLinear: return "adaptive-linear";
    }
    return "?";
}

ControlMode control_mode_from_string(const std::string& s) {
    if (s == "linear") return ControlMode::Linear;
    if (s == "nonlinear") return ControlMode::Nonlinear;
    if (s == "adaptive-linear") return ControlMode::AdaptiveLinear;
    throw std::invalid_argument("unknown control mode: " + s);
}

std::string pin_strategy_name(PinStrategy s) {
    switch (s) {
        case PinStrategy::MaxColumnSum: return "max-column-sum";
        case PinStrategy::Random: return "random";
        case PinStrategy::RootScc: return "root-scc";
        case PinStrategy::Explicit: return "explicit";
    }
    return "?";
}

PinStrategy pin_strategy_from_string(const std::string& s) {
    if (s == "max-column-sum") return PinStrategy::MaxColumnSum;
    if (s == "random") return PinStrategy::Random;
    if (s == "root-scc") return PinStrategy::RootScc;
    if (s == "explicit") return PinStrategy::Explicit;
    throw std::invalid_argument("unknown pin strategy: " + s);
}

}  // namespace pinnet
