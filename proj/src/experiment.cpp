#include "pinnet/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "pinnet/quad.hpp"
#include "pinnet/rng.hpp"
#include "pinnet/structure.hpp"
#include "pinnet/triplet_io.hpp"

namespace pinnet {

namespace {

struct Field {
    std::string value;
    int line = 0;
    bool consumed = false;
};

using SectionMap = std::map<std::string, std::map<std::string, Field>>;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

SectionMap scan(std::istream& in, const std::string& source) {
    SectionMap sections;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw SpecParseError(source, lineno, "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw SpecParseError(source, lineno, "empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw SpecParseError(source, lineno, "expected `key = value`");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw SpecParseError(source, lineno, "empty key");
        auto [it, fresh] = sections[section].emplace(key, Field{value, lineno});
        if (!fresh)
            throw SpecParseError(source, lineno,
                                 "duplicate key `" + key + "` (first at line " +
                                     std::to_string(it->second.line) + ")");
    }
    return sections;
}

/// Typed access into one scanned section, tracking consumed keys so leftovers
/// can be reported with their line numbers.
class Section {
public:
    Section(SectionMap& all, std::string name, const std::string& source)
        : source_(source), name_(std::move(name)) {
        auto it = all.find(name_);
        if (it != all.end()) fields_ = &it->second;
    }

    bool present() const { return fields_ != nullptr; }
    bool has(const std::string& key) const {
        return fields_ && fields_->count(key);
    }

    Field* take(const std::string& key) {
        if (!fields_) return nullptr;
        auto it = fields_->find(key);
        if (it == fields_->end()) return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    std::string require(const std::string& key) {
        Field* f = take(key);
        if (!f)
            throw SpecParseError(source_, 0, "[" + name_ + "] missing required key `" + key + "`");
        return f->value;
    }

    template <typename T, typename Parse>
    T get(const std::string& key, T fallback, Parse parse) {
        Field* f = take(key);
        if (!f) return fallback;
        return parse(key, *f);
    }

    double number(const std::string& key, double fallback) {
        return get(key, fallback, [&](const std::string& k, const Field& f) {
            return parse_double(k, f);
        });
    }

    double parse_double(const std::string& key, const Field& f) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(f.value, &pos);
            if (pos != f.value.size()) throw std::invalid_argument("trailing text");
            return v;
        } catch (const std::exception&) {
            throw SpecParseError(source_, f.line, "field `" + key + "`: not a number: `" + f.value + "`");
        }
    }

    long integer(const std::string& key, long fallback) {
        Field* f = take(key);
        if (!f) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(f->value, &pos);
            if (pos != f->value.size()) throw std::invalid_argument("trailing text");
            return v;
        } catch (const std::exception&) {
            throw SpecParseError(source_, f->line, "field `" + key + "`: not an integer: `" + f->value + "`");
        }
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        Field* f = take(key);
        if (!f) return fallback;
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(f->value, &pos);
            if (pos != f->value.size()) throw std::invalid_argument("trailing text");
            return v;
        } catch (const std::exception&) {
            throw SpecParseError(source_, f->line, "field `" + key + "`: not an unsigned integer: `" + f->value + "`");
        }
    }

    bool boolean(const std::string& key, bool fallback) {
        Field* f = take(key);
        if (!f) return fallback;
        if (f->value == "true") return true;
        if (f->value == "false") return false;
        throw SpecParseError(source_, f->line, "field `" + key + "`: expected true or false, got `" + f->value + "`");
    }

    Eigen::VectorXd vector(const std::string& key) {
        Field* f = take(key);
        if (!f) return {};
        std::vector<double> vals;
        std::stringstream ss(f->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            try {
                std::size_t pos = 0;
                vals.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing text");
            } catch (const std::exception&) {
                throw SpecParseError(source_, f->line, "field `" + key + "`: bad number `" + item + "`");
            }
        }
        if (vals.empty())
            throw SpecParseError(source_, f->line, "field `" + key + "`: empty list");
        return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
    }

    /// Rejects with a line-level diagnostic if a domain check throws.
    template <typename Fn>
    void guarded(const std::string& key, const Field& f, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            throw SpecParseError(source_, f.line, "field `" + key + "`: " + e.what());
        }
    }

    const std::string& source() const { return source_; }
    const std::string& name() const { return name_; }

    std::map<std::string, Field>* fields_ = nullptr;

private:
    std::string source_;
    std::string name_;
};

void reject_leftovers(const SectionMap& sections, const std::string& source,
                      const std::vector<std::string>& known_sections) {
    for (const auto& [sec, fields] : sections) {
        if (std::find(known_sections.begin(), known_sections.end(), sec) ==
            known_sections.end()) {
            const int line = fields.empty() ? 0 : fields.begin()->second.line;
            throw SpecParseError(source, line, "unknown section [" + sec + "]");
        }
        for (const auto& [key, f] : fields)
            if (!f.consumed)
                throw SpecParseError(source, f.line,
                                     "unknown key `" + key + "` in [" + sec + "]");
    }
}

Theorem theorem_from_string(const std::string& s) {
    if (s == "T1") return Theorem::LocalLinearized;
    if (s == "T2") return Theorem::GlobalSymmetric;
    if (s == "T3") return Theorem::GlobalAsymmetric;
    if (s == "T4") return Theorem::GlobalNonlinear;
    throw std::invalid_argument("unknown theorem `" + s + "` (expected T1..T4)");
}

}  // namespace

ExperimentSpec parse_spec(std::istream& in, const std::string& source) {
    SectionMap sections = scan(in, source);
    ExperimentSpec spec;

    Section top(sections, "", source);
    spec.name = top.require("name");
    if (spec.name.empty()) throw SpecParseError(source, 0, "name must be nonempty");

    Section net(sections, "network", source);
    if (!net.present())
        throw SpecParseError(source, 0, "missing [network] section");
    {
        Field* kind = net.take("kind");
        if (!kind) throw SpecParseError(source, 0, "[network] missing required key `kind`");
        if (kind->value == "small-world") {
            spec.network.gen.kind = GeneratorConfig::Kind::SmallWorld;
        } else if (kind->value == "random-sparse") {
            spec.network.gen.kind = GeneratorConfig::Kind::RandomSparse;
        } else if (kind->value == "file") {
            spec.network.gen.kind = GeneratorConfig::Kind::Explicit;
        } else {
            throw SpecParseError(source, kind->line,
                                 "field `kind`: expected small-world, random-sparse or file");
        }
        if (spec.network.gen.kind == GeneratorConfig::Kind::Explicit) {
            Field* file = net.take("file");
            if (!file)
                throw SpecParseError(source, kind->line, "[network] kind=file needs `file`");
            spec.network.file = file->value;
        } else {
            spec.network.gen.m = static_cast<int>(net.integer("m", 0));
            spec.network.gen.k = static_cast<int>(net.integer("k", spec.network.gen.k));
            spec.network.gen.p_rewire = net.number("p_rewire", spec.network.gen.p_rewire);
            spec.network.gen.density = net.number("density", spec.network.gen.density);
            spec.network.gen.symmetric = net.boolean("symmetric", spec.network.gen.symmetric);
            spec.network.gen.weight_low = net.number("weight_low", spec.network.gen.weight_low);
            spec.network.gen.weight_high = net.number("weight_high", spec.network.gen.weight_high);
            if (net.has("seed")) {
                spec.network.gen.seed = net.unsigned64("seed", 0);
                spec.network.fixed_seed = true;
            }
        }
    }

    Section osc(sections, "oscillator", source);
    if (osc.present()) {
        Field* kind = osc.take("kind");
        if (!kind) throw SpecParseError(source, 0, "[oscillator] missing required key `kind`");
        osc.guarded("kind", *kind, [&] {
            switch (oscillator_kind_from_string(kind->value)) {
                case Oscillator::Kind::Lorenz: spec.sim.oscillator = Oscillator::lorenz(); break;
                case Oscillator::Kind::Chen: spec.sim.oscillator = Oscillator::chen(); break;
                case Oscillator::Kind::Rossler: spec.sim.oscillator = Oscillator::rossler(); break;
                case Oscillator::Kind::Chua: spec.sim.oscillator = Oscillator::chua(); break;
                case Oscillator::Kind::LinearTest:
                    throw std::invalid_argument("linear-test is not available in spec files");
            }
        });
        if (osc.has("rossler_alt_sign")) {
            Field* f = osc.take("rossler_alt_sign");
            osc.guarded("rossler_alt_sign", *f, [&] {
                spec.sim.oscillator.set_rossler_alt_sign(f->value == "true");
            });
            if (f->value != "true" && f->value != "false")
                throw SpecParseError(source, f->line,
                                     "field `rossler_alt_sign`: expected true or false");
        }
        // remaining keys are named oscillator parameters
        if (osc.fields_) {
            for (auto& [key, f] : *osc.fields_) {
                if (f.consumed) continue;
                f.consumed = true;
                const double v = osc.parse_double(key, f);
                osc.guarded(key, f, [&] { spec.sim.oscillator.set_param(key, v); });
            }
        }
    }

    Section control(sections, "control", source);
    if (control.present()) {
        Field* mode = control.take("mode");
        if (mode)
            control.guarded("mode", *mode,
                            [&] { spec.sim.mode = control_mode_from_string(mode->value); });
        spec.sim.c0 = control.number("c0", spec.sim.c0);
        spec.sim.eps = control.number("eps", spec.sim.eps);
        spec.sim.adaptive_gain = control.number("adaptive_gain", spec.sim.adaptive_gain);
        spec.sim.control_gain_override =
            control.number("control_gain_override", spec.sim.control_gain_override);
        Field* strat = control.take("pin_strategy");
        if (strat)
            control.guarded("pin_strategy", *strat, [&] {
                spec.sim.pin_strategy = pin_strategy_from_string(strat->value);
            });
        spec.sim.explicit_pinned = static_cast<int>(control.integer("pinned", -1));
        if (control.has("P")) spec.sim.P = control.vector("P");
    }

    Section cf(sections, "coupling_function", source);
    if (cf.present()) {
        Field* kind = cf.take("kind");
        if (!kind)
            throw SpecParseError(source, 0, "[coupling_function] missing required key `kind`");
        if (kind->value == "identity") {
            spec.sim.g = CouplingFunction::identity();
        } else if (kind->value == "affine-sine") {
            const double a = cf.number("a", 2.0);
            const double b = cf.number("b", 1.0);
            cf.guarded("kind", *kind, [&] { spec.sim.g = CouplingFunction::affine_sine(a, b); });
        } else {
            throw SpecParseError(source, kind->line,
                                 "field `kind`: expected identity or affine-sine");
        }
    }

    Section integ(sections, "integration", source);
    if (!integ.present())
        throw SpecParseError(source, 0, "missing [integration] section");
    spec.sim.dt = integ.number("dt", spec.sim.dt);
    {
        Field* T = integ.take("T");
        if (!T) throw SpecParseError(source, 0, "[integration] missing required key `T`");
        spec.sim.T = integ.parse_double("T", *T);
    }
    spec.sim.sample_every = static_cast<int>(integ.integer("sample_every", spec.sim.sample_every));

    Section init(sections, "init", source);
    if (init.present()) {
        if (init.has("lo") != init.has("hi"))
            throw SpecParseError(source, 0, "[init] needs both lo and hi (or neither)");
        if (init.has("lo")) {
            spec.sim.init_lo = init.vector("lo");
            spec.sim.init_hi = init.vector("hi");
        }
        if (init.has("s0")) spec.sim.s0 = init.vector("s0");
    }

    Section seeds(sections, "seeds", source);
    if (!seeds.present()) throw SpecParseError(source, 0, "missing [seeds] section");
    {
        Field* list = seeds.take("list");
        if (!list) throw SpecParseError(source, 0, "[seeds] missing required key `list`");
        std::stringstream ss(list->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            try {
                std::size_t pos = 0;
                spec.seeds.push_back(std::stoull(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing text");
            } catch (const std::exception&) {
                throw SpecParseError(source, list->line, "field `list`: bad seed `" + item + "`");
            }
        }
        if (spec.seeds.empty())
            throw SpecParseError(source, list->line, "field `list`: at least one seed required");
    }

    Section checks(sections, "checks", source);
    if (checks.present()) {
        Field* th = checks.take("theorems");
        if (th) {
            std::stringstream ss(th->value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                checks.guarded("theorems", *th, [&] {
                    spec.checks.theorems.push_back(theorem_from_string(item));
                });
            }
        }
        Field* src = checks.take("delta_source");
        if (src) {
            if (src->value == "estimate-quad") {
                spec.checks.use_quad = true;
            } else if (src->value != "explicit") {
                throw SpecParseError(source, src->line,
                                     "field `delta_source`: expected explicit or estimate-quad");
            }
        }
        if (checks.has("delta")) spec.checks.delta = checks.vector("delta");
        spec.checks.quad_samples = static_cast<int>(checks.integer("quad_samples", spec.checks.quad_samples));
        spec.checks.quad_seed = checks.unsigned64("quad_seed", spec.checks.quad_seed);
        spec.checks.quad_delta_max = checks.number("quad_delta_max", spec.checks.quad_delta_max);
        spec.checks.quad_delta_step = checks.number("quad_delta_step", spec.checks.quad_delta_step);
        if (checks.has("quad_box_lo")) spec.checks.quad_box_lo = checks.vector("quad_box_lo");
        if (checks.has("quad_box_hi")) spec.checks.quad_box_hi = checks.vector("quad_box_hi");
        spec.checks.c = checks.number("c", spec.checks.c);
        spec.checks.eta = checks.number("eta", spec.checks.eta);
        spec.checks.t1_horizon = checks.number("t1_horizon", spec.checks.t1_horizon);
        spec.checks.t1_dt = checks.number("t1_dt", spec.checks.t1_dt);
        if (!spec.checks.theorems.empty() && !spec.checks.use_quad &&
            spec.checks.delta.size() == 0) {
            const bool only_t1 =
                std::all_of(spec.checks.theorems.begin(), spec.checks.theorems.end(),
                            [](Theorem t) { return t == Theorem::LocalLinearized; });
            if (!only_t1)
                throw SpecParseError(source, 0,
                                     "[checks] needs `delta` or delta_source = estimate-quad");
        }
    }

    Section output(sections, "output", source);
    if (output.present()) {
        Field* dir = output.take("dir");
        if (dir) spec.output_dir = dir->value;
        spec.converged_threshold =
            output.number("converged_threshold", spec.converged_threshold);
    }

    reject_leftovers(sections, source,
                     {"", "network", "oscillator", "control", "coupling_function",
                      "integration", "init", "seeds", "checks", "output"});

    if (spec.network.gen.kind != GeneratorConfig::Kind::Explicit) {
        GeneratorConfig probe = spec.network.gen;
        try {
            probe.validate();
        } catch (const std::exception& e) {
            throw SpecParseError(source, 0, std::string("[network] ") + e.what());
        }
    }
    return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open spec file: " + path);
    return parse_spec(in, path);
}

namespace {

void apply_options(ExperimentSpec& spec, const RunOptions& options) {
    if (options.out_dir) spec.output_dir = *options.out_dir;
    if (options.seed_override) spec.seeds = {*options.seed_override};
    if (options.desk_scale &&
        spec.network.gen.kind != GeneratorConfig::Kind::Explicit)
        spec.network.gen.m = 100;
}

CouplingMatrix build_network(const ExperimentSpec& spec, std::uint64_t run_seed) {
    if (spec.network.gen.kind == GeneratorConfig::Kind::Explicit)
        return load_triplets(spec.network.file);
    GeneratorConfig cfg = spec.network.gen;
    if (!spec.network.fixed_seed) cfg.seed = run_seed;
    return generate(cfg);
}

Eigen::VectorXd resolve_delta(const ExperimentSpec& spec, std::string& delta_note) {
    const int n = spec.sim.oscillator.dimension();
    if (!spec.checks.use_quad) {
        Eigen::VectorXd d = spec.checks.delta;
        if (d.size() == 1) d = Eigen::VectorXd::Constant(n, d[0]);
        if (d.size() != n)
            throw std::invalid_argument("checks: delta has wrong dimension");
        delta_note = "explicit";
        return d;
    }
    Eigen::VectorXd P = spec.sim.P.size() ? spec.sim.P : Eigen::VectorXd::Ones(n);
    Eigen::VectorXd lo = spec.checks.quad_box_lo, hi = spec.checks.quad_box_hi;
    if (lo.size() == 0) spec.sim.oscillator.default_init_box(lo, hi);
    const auto est = estimate_quad(
        spec.sim.oscillator, P, lo, hi, spec.checks.quad_samples,
        spec.checks.quad_seed,
        delta_grid(spec.checks.quad_delta_max, spec.checks.quad_delta_step));
    std::ostringstream note;
    note.precision(17);
    note << "estimate-quad samples=" << est.samples << " eta=" << est.eta
         << " (uncertified)";
    delta_note = note.str();
    return est.Delta;
}

struct SeedChecks {
    std::string text;  // serialized criterion blocks for the report file
    bool precondition_failure = false;
};

SeedChecks evaluate_checks(const ExperimentSpec& spec, const CouplingMatrix& A,
                           int pinned, std::uint64_t seed, bool rethrow) {
    SeedChecks out;
    if (spec.checks.theorems.empty()) return out;

    const double c = std::isnan(spec.checks.c) ? spec.sim.c0 : spec.checks.c;
    Eigen::VectorXd delta;
    std::string delta_note;
    const bool needs_delta =
        std::any_of(spec.checks.theorems.begin(), spec.checks.theorems.end(),
                    [](Theorem t) { return t != Theorem::LocalLinearized; });
    if (needs_delta) delta = resolve_delta(spec, delta_note);

    std::ostringstream text;
    text.precision(17);
    for (Theorem t : spec.checks.theorems) {
        try {
            CriterionReport rep;
            if (t == Theorem::LocalLinearized) {
                Eigen::VectorXd s0;
                if (spec.sim.s0) {
                    s0 = *spec.sim.s0;
                } else {
                    Eigen::VectorXd lo = spec.sim.init_lo, hi = spec.sim.init_hi;
                    if (lo.size() == 0) spec.sim.oscillator.default_init_box(lo, hi);
                    Rng rng(seed);
                    s0.resize(lo.size());
                    for (int k = 0; k < lo.size(); ++k) s0[k] = rng.uniform(lo[k], hi[k]);
                }
                rep = check_local_criterion(spec.sim.oscillator, s0, c, spec.sim.eps,
                                            pinned, A, spec.checks.eta,
                                            spec.checks.t1_horizon, spec.checks.t1_dt);
            } else {
                rep = check_global_criterion(t, A, spec.sim.eps, pinned, c, delta,
                                             spec.sim.g.alpha_lower());
            }
            text << rep.serialize();
            if (t != Theorem::LocalLinearized && !delta_note.empty())
                text << "delta_source=" << delta_note << '\n';
            text << '\n';
        } catch (const std::exception& e) {
            if (rethrow) throw;
            out.precondition_failure = true;
            text << "theorem=" << theorem_name(t) << '\n'
                 << "error=" << e.what() << "\n\n";
        }
    }
    out.text = text.str();
    return out;
}

}  // namespace

int run_experiment(ExperimentSpec spec, const RunOptions& options,
                   std::ostream& log) {
    apply_options(spec, options);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(spec.output_dir, ec);
    if (ec) {
        log << "error: cannot create output dir " << spec.output_dir << ": "
            << ec.message() << '\n';
        return 3;
    }

    struct SummaryRow {
        std::uint64_t seed;
        double final_E, final_c;
        bool converged;
    };
    std::vector<SummaryRow> summary;

    for (std::uint64_t seed : spec.seeds) {
        CouplingMatrix A = build_network(spec, seed);
        const auto structure = analyze_structure(A);

        SimulationConfig cfg = spec.sim;
        cfg.A = A;
        cfg.seed = seed;
        const int pinned = select_pinned_node(A, cfg.pin_strategy, structure, seed,
                                              cfg.explicit_pinned);
        const SeedChecks checks = evaluate_checks(spec, A, pinned, seed, false);

        const RunResult result = simulate(cfg);

        const std::string stem =
            (fs::path(spec.output_dir) / (spec.name + "-" + std::to_string(seed)))
                .string();
        {
            std::ofstream csv(stem + ".csv");
            if (!csv) {
                log << "error: cannot write " << stem << ".csv\n";
                return 3;
            }
            csv.precision(15);
            csv << "t,E,c\n";
            for (std::size_t i = 0; i < result.times.size(); ++i)
                csv << result.times[i] << ',' << result.E[i] << ',' << result.c[i]
                    << '\n';
            if (!csv.flush()) {
                log << "error: write failure on " << stem << ".csv\n";
                return 3;
            }
        }
        {
            std::ofstream rep(stem + ".report");
            if (!rep) {
                log << "error: cannot write " << stem << ".report\n";
                return 3;
            }
            rep.precision(17);
            rep << "name=" << spec.name << '\n'
                << "seed=" << seed << '\n'
                << "pinned=" << result.pinned << '\n'
                << "config_digest=" << result.config_digest << "\n\n";
            rep << checks.text;
            rep << "final_E=" << result.final_E() << '\n'
                << "final_c=" << result.final_c() << '\n'
                << "diverged=" << (result.diverged ? "true" : "false") << '\n';
            if (result.diverged) rep << "diverged_at=" << result.diverged_at << '\n';
            if (!rep.flush()) {
                log << "error: write failure on " << stem << ".report\n";
                return 3;
            }
        }

        const bool converged = result.final_E() < spec.converged_threshold;
        summary.push_back({seed, result.final_E(), result.final_c(), converged});
        log << spec.name << " seed=" << seed << " final_E=" << result.final_E()
            << " final_c=" << result.final_c()
            << (result.diverged ? " DIVERGED" : (converged ? " converged" : ""))
            << '\n';
    }

    const std::string sum_path =
        (std::filesystem::path(spec.output_dir) / (spec.name + "-summary.csv")).string();
    std::ofstream sum(sum_path);
    if (!sum) {
        log << "error: cannot write " << sum_path << '\n';
        return 3;
    }
    sum.precision(15);
    sum << "seed,final_E,final_c,converged\n";
    for (const auto& row : summary)
        sum << row.seed << ',' << row.final_E << ',' << row.final_c << ','
            << (row.converged ? "true" : "false") << '\n';
    if (!sum.flush()) {
        log << "error: write failure on " << sum_path << '\n';
        return 3;
    }
    return 0;
}

int check_experiment(ExperimentSpec spec, const RunOptions& options,
                     std::ostream& log) {
    apply_options(spec, options);
    if (spec.checks.theorems.empty()) {
        log << "error: spec requests no criteria ([checks] theorems is empty)\n";
        return 2;
    }
    const std::uint64_t seed = spec.seeds.front();
    CouplingMatrix A = build_network(spec, seed);
    const auto structure = analyze_structure(A);
    const int pinned = select_pinned_node(A, spec.sim.pin_strategy, structure, seed,
                                          spec.sim.explicit_pinned);
    const SeedChecks checks = evaluate_checks(spec, A, pinned, seed, true);
    log << checks.text;

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(spec.output_dir, ec);
    if (ec) {
        log << "error: cannot create output dir " << spec.output_dir << ": "
            << ec.message() << '\n';
        return 3;
    }
    const std::string path =
        (fs::path(spec.output_dir) / (spec.name + "-check.report")).string();
    std::ofstream rep(path);
    if (!rep) {
        log << "error: cannot write " << path << '\n';
        return 3;
    }
    rep << "name=" << spec.name << '\n'
        << "seed=" << seed << '\n'
        << "pinned=" << pinned << "\n\n"
        << checks.text;
    if (!rep.flush()) {
        log << "error: write failure on " << path << '\n';
        return 3;
    }
    return 0;
}

int gen_experiment(ExperimentSpec spec, const RunOptions& options,
                   std::ostream& log) {
    apply_options(spec, options);
    CouplingMatrix A = build_network(spec, spec.seeds.front());

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(spec.output_dir, ec);
    if (ec) {
        log << "error: cannot create output dir " << spec.output_dir << ": "
            << ec.message() << '\n';
        return 3;
    }
    const std::string path =
        (fs::path(spec.output_dir) / (spec.name + "-network.dat")).string();
    std::ofstream out(path);
    if (!out) {
        log << "error: cannot write " << path << '\n';
        return 3;
    }
    save_triplets(A, out);
    if (!out.flush()) {
        log << "error: write failure on " << path << '\n';
        return 3;
    }
    log << "wrote " << path << " (m=" << A.size() << ", nnz=" << A.nonzero_count()
        << ")\n";
    return 0;
}

}  // namespace pinnet
