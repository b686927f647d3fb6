#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "figures.hpp"
#include "qcap/error.hpp"
#include "qcap/synth.hpp"

using namespace qcap;
using namespace qcap::cli;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw IoError("cannot write '" + out_path + "'");
    f << text;
    if (!f) throw IoError("write failed for '" + out_path + "'");
}

Matrix load_states(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open states file '" + path + "'");
    return read_matrix(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Superadditive coding gain, optimal detection and decoder synthesis for binary pure-state letters"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    SweepConfig config;
    std::string format = "csv";
    std::string out_path;
    double kappa = 0.5;
    std::string outdir = "synth_out";
    std::string states_path;
    std::vector<double> priors;
    double tol = 1e-10;

    app.add_option("--kappa-min", config.kappa_min, "Lower end of the kappa grid")->capture_default_str();
    app.add_option("--kappa-max", config.kappa_max, "Upper end of the kappa grid")->capture_default_str();
    app.add_option("--steps", config.steps, "Number of grid points")->capture_default_str();
    app.add_option("--n", config.n_list, "Block lengths, comma separated")->delimiter(',');
    app.add_option("--code", config.codes, "Codes: nn12:N, simplex:R or file:PATH")->delimiter(',');
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--kappa", kappa, "Letter overlap for synth and optimize")->capture_default_str();
    app.add_option("--outdir", outdir, "Directory for synth output")->capture_default_str();
    app.add_option("--states", states_path, "optimize: matrix file whose columns are the states");
    app.add_option("--priors", priors, "optimize: priors, comma separated")->delimiter(',');
    app.add_option("--tol", tol, "optimize: residual tolerance")->capture_default_str();

    const std::map<std::string, std::pair<std::string, std::function<Table(const SweepConfig&)>>> figures = {
        {"fig2", {"Quantum gain per letter against kappa for each block length", fig2}},
        {"fig3", {"Threshold overlap kappa* against block length", fig3}},
        {"fig4", {"Holevo capacity, code information per letter and C1", fig4}},
        {"fig5", {"Code error against the threshold error", fig5}},
        {"fig6", {"Simplex [[7,3,4]] against [[7,6,2]] information per letter", fig6}},
        {"fig7", {"Simplex [[7,3,4]] against [[7,6,2]] error", fig7}},
        {"fig8", {"Simplex [[7,3,4]] against [[3,2,2]] information per letter", fig8}},
        {"sweep", {"Information and error of arbitrary codes over the grid", sweep}},
    };
    for (const auto& [name, entry] : figures) app.add_subcommand(name, entry.first)->fallthrough();
    app.add_subcommand("synth", "Synthesize the decoding unitary and its rotation schedule")->fallthrough();
    app.add_subcommand("optimize", "Square-root start then Bayes cost reduction")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (const auto it = figures.find(cmd); it != figures.end()) {
            const Table t = it->second.second(config);
            std::ostringstream text;
            if (format == "json") write_json(text, t); else write_csv(text, t);
            emit(text.str(), out_path);
        } else if (cmd == "synth") {
            const std::string spec = config.codes.empty() ? "nn12:3" : config.codes.front();
            emit(to_json(run_synth(spec, kappa, outdir)) + "\n", out_path);
        } else {
            Matrix states;
            if (states_path.empty()) {
                const LetterPair l = embed_binary_letters(kappa);
                states.resize(2, 2);
                states << l.plus, l.minus;
            } else {
                states = load_states(states_path);
            }
            if (priors.empty()) priors.assign(static_cast<std::size_t>(states.cols()), 1.0 / static_cast<double>(states.cols()));
            emit(to_json(run_optimize(states, priors, tol)) + "\n", out_path);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", to_string(e.kind()), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
