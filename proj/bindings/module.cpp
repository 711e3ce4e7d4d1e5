#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "pinnet/dynamics.hpp"
#include "pinnet/experiment.hpp"
#include "pinnet/generator.hpp"
#include "pinnet/quad.hpp"
#include "pinnet/spectral.hpp"
#include "pinnet/structure.hpp"
#include "pinnet/triplet_io.hpp"

namespace py = pybind11;
using namespace pinnet;

namespace {

Theorem theorem_from_short(const std::string& s) {
    if (s == "T1") return Theorem::LocalLinearized;
    if (s == "T2") return Theorem::GlobalSymmetric;
    if (s == "T3") return Theorem::GlobalAsymmetric;
    if (s == "T4") return Theorem::GlobalNonlinear;
    throw std::invalid_argument("unknown theorem `" + s + "` (expected T1..T4)");
}

GeneratorConfig make_generator_config(const std::string& kind, int m, int k,
                                      double p_rewire, double density,
                                      bool symmetric, double weight_low,
                                      double weight_high, std::uint64_t seed) {
    GeneratorConfig cfg;
    if (kind == "small-world") {
        cfg.kind = GeneratorConfig::Kind::SmallWorld;
    } else if (kind == "random-sparse") {
        cfg.kind = GeneratorConfig::Kind::RandomSparse;
    } else {
        throw std::invalid_argument("kind must be small-world or random-sparse");
    }
    cfg.m = m;
    cfg.k = k;
    cfg.p_rewire = p_rewire;
    cfg.density = density;
    cfg.symmetric = symmetric;
    cfg.weight_low = weight_low;
    cfg.weight_high = weight_high;
    cfg.seed = seed;
    return cfg;
}

Oscillator make_oscillator(const std::string& kind) {
    switch (oscillator_kind_from_string(kind)) {
        case Oscillator::Kind::Lorenz: return Oscillator::lorenz();
        case Oscillator::Kind::Chen: return Oscillator::chen();
        case Oscillator::Kind::Rossler: return Oscillator::rossler();
        case Oscillator::Kind::Chua: return Oscillator::chua();
        case Oscillator::Kind::LinearTest: break;
    }
    throw std::invalid_argument("use linear_test() for the linear oscillator");
}

py::dict report_to_dict(const CriterionReport& rep) {
    py::dict d;
    d["theorem"] = theorem_name(rep.theorem);
    d["satisfied"] = rep.satisfied;
    d["margins"] = rep.margins;
    d["spectral_input"] = rep.spectral_input;
    d["eps"] = rep.eps;
    d["c"] = rep.c;
    d["pinned"] = rep.pinned;
    d["details"] = rep.details;
    return d;
}

}  // namespace

PYBIND11_MODULE(_pinnet, mod) {
    mod.doc() = "pinning control of coupled oscillator networks (native core)";

    py::register_exception<SpecParseError>(mod, "SpecError");
    py::register_exception<DivergenceError>(mod, "DivergenceError");

    py::class_<CouplingMatrix>(mod, "CouplingMatrix")
        .def_static("from_dense", &CouplingMatrix::from_weighted_adjacency,
                    py::arg("W"),
                    "Build from nonnegative off-diagonal weights; diagonal is "
                    "recomputed as minus the off-diagonal row sum.")
        .def_property_readonly("m", &CouplingMatrix::size)
        .def("dense", &CouplingMatrix::dense)
        .def("is_symmetric", &CouplingMatrix::is_symmetric,
             py::arg("rel_tol") = 1e-9)
        .def("nonzero_count", &CouplingMatrix::nonzero_count)
        .def("save", [](const CouplingMatrix& A, const std::string& path) {
            save_triplets(A, path);
        })
        .def_static("load", [](const std::string& path) {
            return load_triplets(path);
        });

    mod.def(
        "generate",
        [](const std::string& kind, int m, int k, double p_rewire, double density,
           bool symmetric, double weight_low, double weight_high,
           std::uint64_t seed) {
            return generate(make_generator_config(kind, m, k, p_rewire, density,
                                                  symmetric, weight_low,
                                                  weight_high, seed));
        },
        py::arg("kind"), py::arg("m"), py::arg("k") = 3,
        py::arg("p_rewire") = 0.1, py::arg("density") = 0.2,
        py::arg("symmetric") = true, py::arg("weight_low") = 0.0,
        py::arg("weight_high") = 1.0, py::arg("seed") = 0,
        "Deterministic network generator (small-world or random-sparse).");

    py::class_<NetworkStructure>(mod, "NetworkStructure")
        .def_readonly("scc_partition", &NetworkStructure::scc_partition)
        .def_readonly("condensation_edges", &NetworkStructure::condensation_edges)
        .def_readonly("root_components", &NetworkStructure::root_components)
        .def_readonly("irreducible", &NetworkStructure::irreducible)
        .def_readonly("has_spanning_tree", &NetworkStructure::has_spanning_tree)
        .def_readonly("frobenius_permutation",
                      &NetworkStructure::frobenius_permutation);

    mod.def("analyze_structure", &analyze_structure, py::arg("A"));

    mod.def(
        "pinned_dense",
        [](const CouplingMatrix& A, double eps, int pinned) {
            return pin(A, eps, pinned).dense();
        },
        py::arg("A"), py::arg("eps"), py::arg("pinned"));

    mod.def(
        "symmetric_eigenvalues",
        [](const Eigen::MatrixXd& S) { return symmetric_eigenvalues(S).values; },
        py::arg("S"), "Eigenvalues of (S+S^T)/2 sorted descending.");

    mod.def(
        "left_perron",
        [](const CouplingMatrix& A) { return left_perron(A).xi; }, py::arg("A"),
        "Positive left null vector, normalized to sum 1.");

    py::class_<Oscillator>(mod, "Oscillator")
        .def_static("of", &make_oscillator, py::arg("kind"))
        .def_static("linear_test", &Oscillator::linear_test, py::arg("M"))
        .def_property_readonly("dimension", &Oscillator::dimension)
        .def("eval", &Oscillator::eval, py::arg("x"), py::arg("t") = 0.0)
        .def("jacobian", &Oscillator::jacobian, py::arg("x"))
        .def("param", &Oscillator::param, py::arg("name"))
        .def("set_param", &Oscillator::set_param, py::arg("name"), py::arg("value"));

    mod.def(
        "estimate_quad",
        [](const Oscillator& osc, const Eigen::VectorXd& P,
           const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int samples,
           std::uint64_t seed, double delta_max, double delta_step) {
            const auto est = estimate_quad(osc, P, lo, hi, samples, seed,
                                           delta_grid(delta_max, delta_step));
            py::dict d;
            d["P"] = est.P;
            d["Delta"] = est.Delta;
            d["eta"] = est.eta;
            d["samples"] = est.samples;
            d["certified"] = est.certified;
            return d;
        },
        py::arg("oscillator"), py::arg("P"), py::arg("box_lo"), py::arg("box_hi"),
        py::arg("samples") = 20000, py::arg("seed") = 0,
        py::arg("delta_max") = 60.0, py::arg("delta_step") = 0.5,
        "Sampling-based (uncertified) estimate of the quadratic decrement "
        "constants.");

    mod.def(
        "check_global_criterion",
        [](const std::string& theorem, const CouplingMatrix& A, double eps,
           int pinned, double c, const Eigen::VectorXd& delta,
           double alpha_lower) {
            return report_to_dict(check_global_criterion(
                theorem_from_short(theorem), A, eps, pinned, c, delta, alpha_lower));
        },
        py::arg("theorem"), py::arg("A"), py::arg("eps"), py::arg("pinned"),
        py::arg("c"), py::arg("delta"), py::arg("alpha_lower") = 1.0);

    mod.def(
        "check_local_criterion",
        [](const std::string& oscillator, const Eigen::VectorXd& s0, double c,
           double eps, int pinned, const CouplingMatrix& A, double eta,
           double horizon, double dt) {
            return report_to_dict(check_local_criterion(
                make_oscillator(oscillator), s0, c, eps, pinned, A, eta, horizon, dt));
        },
        py::arg("oscillator"), py::arg("s0"), py::arg("c"), py::arg("eps"),
        py::arg("pinned"), py::arg("A"), py::arg("eta") = 0.1,
        py::arg("horizon") = 100.0, py::arg("dt") = 1e-3);

    mod.def(
        "simulate",
        [](const std::string& oscillator, const CouplingMatrix& A,
           const std::string& mode, double c0, double eps, double adaptive_gain,
           double dt, double T, int sample_every, std::uint64_t seed,
           const std::string& pin_strategy, int pinned, double g_a, double g_b) {
            SimulationConfig cfg;
            cfg.oscillator = make_oscillator(oscillator);
            cfg.A = A;
            cfg.mode = control_mode_from_string(mode);
            if (cfg.mode == ControlMode::Nonlinear)
                cfg.g = CouplingFunction::affine_sine(g_a, g_b);
            cfg.c0 = c0;
            cfg.eps = eps;
            cfg.adaptive_gain = adaptive_gain;
            cfg.dt = dt;
            cfg.T = T;
            cfg.sample_every = sample_every;
            cfg.seed = seed;
            cfg.pin_strategy = pin_strategy_from_string(pin_strategy);
            cfg.explicit_pinned = pinned;
            const RunResult res = simulate(cfg);
            py::dict d;
            d["t"] = res.times;
            d["E"] = res.E;
            d["c"] = res.c;
            d["pinned"] = res.pinned;
            d["diverged"] = res.diverged;
            d["final_E"] = res.final_E();
            d["final_c"] = res.final_c();
            return d;
        },
        py::arg("oscillator"), py::arg("A"), py::arg("mode") = "adaptive-linear",
        py::arg("c0") = 0.0, py::arg("eps") = 100.0,
        py::arg("adaptive_gain") = 1e-4, py::arg("dt") = 1e-3, py::arg("T") = 10.0,
        py::arg("sample_every") = 100, py::arg("seed") = 0,
        py::arg("pin_strategy") = "max-column-sum", py::arg("pinned") = -1,
        py::arg("g_a") = 2.0, py::arg("g_b") = 1.0,
        "Integrate the controlled network and return sampled (t, E, c).");

    mod.def(
        "run_spec",
        [](const std::string& path, std::optional<std::string> out_dir,
           std::optional<std::uint64_t> seed_override, bool desk_scale) {
            ExperimentSpec spec = parse_spec_file(path);
            RunOptions options{seed_override, out_dir, desk_scale};
            std::ostringstream log;
            const int code = run_experiment(spec, options, log);
            py::dict d;
            d["exit_code"] = code;
            d["log"] = log.str();
            return d;
        },
        py::arg("path"), py::arg("out_dir") = std::nullopt,
        py::arg("seed_override") = std::nullopt, py::arg("desk_scale") = false,
        "Run an experiment spec file; returns exit code and captured log.");
}
