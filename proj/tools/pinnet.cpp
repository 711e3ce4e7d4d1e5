#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pinnet/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pinnet: pinning-control experiments on coupled oscillator networks"};
    app.require_subcommand(1);

    std::string spec_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_dir;
    bool desk_scale = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", spec_path, "experiment spec file")->required();
        sub->add_option("--seed-override", seed_override,
                        "run only this seed, replacing the spec's list");
        sub->add_option("--out-dir", out_dir, "override the spec's output directory");
        sub->add_flag("--desk-scale", desk_scale,
                      "force generated networks to m=100");
    };

    CLI::App* run = app.add_subcommand("run", "simulate every seed and write csv/report/summary");
    CLI::App* check = app.add_subcommand("check", "evaluate criteria only, no simulation");
    CLI::App* gen = app.add_subcommand("gen", "emit the network as a triplet file");
    add_common(run);
    add_common(check);
    add_common(gen);

    CLI11_PARSE(app, argc, argv);

    pinnet::RunOptions options{seed_override, out_dir, desk_scale};
    try {
        pinnet::ExperimentSpec spec = pinnet::parse_spec_file(spec_path);
        if (run->parsed()) return pinnet::run_experiment(spec, options, std::cout);
        if (check->parsed()) return pinnet::check_experiment(spec, options, std::cout);
        return pinnet::gen_experiment(spec, options, std::cout);
    } catch (const pinnet::SpecParseError& e) {
        std::cerr << "spec error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "spec error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
