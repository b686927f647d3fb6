#include "figures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qcap/detection.hpp"
#include "qcap/error.hpp"
#include "qcap/fastcode.hpp"
#include "qcap/information.hpp"
#include "qcap/synth.hpp"

namespace qcap::cli {

namespace {

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Rounded to the printed precision so CSV and JSON carry the same values.
double rounded(double x) { return std::stod(number(x)); }

std::vector<int> n_list_or(const SweepConfig& config, std::vector<int> fallback) {
    return config.n_list.empty() ? fallback : config.n_list;
}

std::vector<CodeSpec> codes_or(const SweepConfig& config, const std::vector<std::string>& fallback) {
    std::vector<CodeSpec> out;
    for (const std::string& s : config.codes.empty() ? fallback : config.codes) out.push_back(parse_code_spec(s));
    return out;
}

int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw InvalidInput(what + ": not an integer: '" + text + "'");
    return v;
}

// kappa, holevo, per-letter information of each code, c1.
Table capacity_table(const SweepConfig& config, const std::vector<std::string>& fallback) {
    validate(config);
    const std::vector<CodeSpec> codes = codes_or(config, fallback);
    Table t;
    t.columns = {"kappa", "holevo"};
    for (const CodeSpec& c : codes) t.columns.push_back("info_per_letter_" + c.label);
    t.columns.push_back("c1");
    for (double k : kappa_grid(config)) {
        std::vector<std::optional<double>> row{k, holevo_binary(k)};
        for (const CodeSpec& c : codes) row.emplace_back(per_letter_information(c, k));
        row.emplace_back(c1_binary(k));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

void validate(const SweepConfig& config) {
    if (!(config.kappa_min >= 0.0 && config.kappa_min < config.kappa_max && config.kappa_max < 1.0)) {
        throw InvalidInput("kappa grid needs 0 <= kappa-min < kappa-max < 1");
    }
    if (config.steps < 2) throw InvalidInput("kappa grid needs at least 2 steps");
}

std::vector<double> kappa_grid(const SweepConfig& config) {
    validate(config);
    std::vector<double> g(static_cast<std::size_t>(config.steps));
    const double h = (config.kappa_max - config.kappa_min) / (config.steps - 1);
    for (int i = 0; i < config.steps; ++i) g[static_cast<std::size_t>(i)] = rounded(config.kappa_min + i * h);
    return g;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (row[c]) out << number(*row[c]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::ordered_json j;
    j["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (cell) r.push_back(rounded(*cell)); else r.push_back(nullptr);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
}

Table read_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("read_csv: missing header");
    t.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != t.columns.size()) throw InvalidInput("read_csv: row width differs from header");
        std::vector<std::optional<double>> row;
        for (const std::string& c : cells) {
            if (c.empty()) {
                row.emplace_back();
                continue;
            }
            std::size_t used = 0;
            row.emplace_back(std::stod(c, &used));
            if (used != c.size()) throw InvalidInput("read_csv: bad number '" + c + "'");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CodeSpec parse_code_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw InvalidInput("code spec must be nn12:N, simplex:R or file:PATH, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "nn12") {
        const int n = parse_int(arg, "nn12 length");
        std::optional<Code> code;
        if (n <= kMaxEmbeddingBits) code = build_nn12_code(n);
        return {CodeSpec::Family::nn12, n, "nn12_" + arg, std::move(code)};
    }
    if (kind == "simplex") {
        const int r = parse_int(arg, "simplex order");
        return {CodeSpec::Family::simplex, r, "simplex_" + arg, build_simplex_code(r)};
    }
    if (kind == "file") {
        std::ifstream in(arg);
        if (!in) throw IoError("cannot open code file '" + arg + "'");
        Code c = read_code(in);
        return {CodeSpec::Family::file, c.n(), std::filesystem::path(arg).stem().string(), std::move(c)};
    }
    throw InvalidInput("unknown code family '" + kind + "'");
}

double per_letter_information(const CodeSpec& c, double kappa) {
    switch (c.family) {
    case CodeSpec::Family::nn12:
        return nn12_mutual_information(c.parameter, kappa) / c.parameter;
    case CodeSpec::Family::simplex:
        return simplex_profile(c.parameter, kappa).info_bits / ((1 << c.parameter) - 1);
    case CodeSpec::Family::file:
        break;
    }
    return superadditivity_gain(*c.code, kappa).in_per_letter;
}

double code_error(const CodeSpec& c, double kappa) {
    switch (c.family) {
    case CodeSpec::Family::nn12:
        return nn12_error_probability(c.parameter, kappa);
    case CodeSpec::Family::simplex:
        return simplex_profile(c.parameter, kappa).error;
    case CodeSpec::Family::file:
        break;
    }
    const Matrix root = square_root_measurement(gram(*c.code, kappa, true)).sqrt_gram;
    return 1.0 - root.diagonal().squaredNorm();
}

Table fig2(const SweepConfig& config) {
    validate(config);
    const std::vector<int> ns = n_list_or(config, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
    Table t;
    t.columns = {"kappa"};
    for (int n : ns) t.columns.push_back("gain_n" + std::to_string(n));
    for (double k : kappa_grid(config)) {
        std::vector<std::optional<double>> row{k};
        for (int n : ns) row.emplace_back(nn12_gain(n, k));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig3(const SweepConfig& config) {
    const std::vector<int> ns = n_list_or(config, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
    Table t;
    t.columns = {"n", "kappa_star", "guide"};
    for (int n : ns) {
        std::optional<double> ks;
        try {
            ks = find_kappa_star(n);
        } catch (const NoRoot&) {
        }
        t.rows.push_back({static_cast<double>(n), ks, std::pow(2.0 / n, 2.0 / 3.0)});
    }
    return t;
}

Table fig4(const SweepConfig& config) { return capacity_table(config, {"nn12:9"}); }

Table fig5(const SweepConfig& config) {
    validate(config);
    const std::vector<int> ns = n_list_or(config, {3, 5, 7, 9, 11, 13});
    Table t;
    t.columns = {"kappa", "p"};
    for (int n : ns) {
        t.columns.push_back("code_error_n" + std::to_string(n));
        t.columns.push_back("threshold_error_n" + std::to_string(n));
    }
    for (double k : kappa_grid(config)) {
        std::vector<std::optional<double>> row{k, letter_error(k)};
        for (int n : ns) {
            row.emplace_back(nn12_error_probability(n, k));
            row.emplace_back(threshold_quantities(k, n).error);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig6(const SweepConfig& config) { return capacity_table(config, {"simplex:3", "nn12:7"}); }

Table fig7(const SweepConfig& config) {
    validate(config);
    const std::vector<CodeSpec> codes = codes_or(config, {"simplex:3", "nn12:7"});
    Table t;
    t.columns = {"kappa", "p"};
    for (const CodeSpec& c : codes) t.columns.push_back("error_" + c.label);
    for (double k : kappa_grid(config)) {
        std::vector<std::optional<double>> row{k, letter_error(k)};
        for (const CodeSpec& c : codes) row.emplace_back(code_error(c, k));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig8(const SweepConfig& config) { return capacity_table(config, {"simplex:3", "nn12:3"}); }

Table sweep(const SweepConfig& config) {
    validate(config);
    const std::vector<CodeSpec> codes = codes_or(config, {"nn12:3"});
    Table t;
    t.columns = {"kappa", "holevo", "c1"};
    for (const CodeSpec& c : codes) {
        t.columns.push_back("info_per_letter_" + c.label);
        t.columns.push_back("error_" + c.label);
    }
    for (double k : kappa_grid(config)) {
        std::vector<std::optional<double>> row{k, holevo_binary(k), c1_binary(k)};
        for (const CodeSpec& c : codes) {
            row.emplace_back(per_letter_information(c, k));
            row.emplace_back(code_error(c, k));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

SynthReport run_synth(const std::string& code_spec, double kappa, const std::string& outdir) {
    const CodeSpec spec = parse_code_spec(code_spec);
    const int n = spec.code ? spec.code->n() : spec.parameter;
    if (!spec.code || n > kMaxSynthBits) {
        throw ResourceLimit("synth: block length " + std::to_string(n) + " exceeds the limit of " +
                            std::to_string(kMaxSynthBits));
    }
    const Code& code = *spec.code;
    const StateEmbedding states = codeword_states(code, kappa);
    const Measurement srm = square_root_measurement(states, code.priors());
    const SynthesizedUnitary su = synthesize_unitary(code, kappa, srm);
    const RotationSchedule schedule = reck_decompose(su.u);

    SynthReport r;
    r.code = code_spec;
    r.n = code.n();
    r.kappa = kappa;
    r.certified_error = check_optimality(srm, states, code.priors()).error_probability;
    r.adaptor_error = adaptor_error_probability(su, code, kappa);
    const Index dim = su.u.rows();
    r.orthogonality_residual = max_abs(su.u.transpose() * su.u - Matrix::Identity(dim, dim));
    r.reconstruction_residual = max_abs(reconstruct(schedule) - su.u);
    r.rotations = schedule.rotations.size();
    r.reflect_last = schedule.reflect_last;

    const std::filesystem::path dir(outdir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + outdir + "': " + ec.message());
    auto open = [](const std::filesystem::path& p) {
        std::ofstream f(p);
        if (!f) throw IoError("cannot write '" + p.string() + "'");
        return f;
    };
    {
        std::ofstream f = open(dir / "unitary.txt");
        write_matrix(f, su.u);
    }
    {
        std::ofstream f = open(dir / "schedule.csv");
        write_schedule_csv(f, schedule);
    }
    {
        std::ofstream f = open(dir / "report.json");
        f << to_json(r) << '\n';
    }
    return r;
}

std::string to_json(const SynthReport& r) {
    nlohmann::ordered_json j;
    j["code"] = r.code;
    j["n"] = r.n;
    j["kappa"] = rounded(r.kappa);
    j["certified_error"] = rounded(r.certified_error);
    j["adaptor_error"] = rounded(r.adaptor_error);
    j["orthogonality_residual"] = rounded(r.orthogonality_residual);
    j["reconstruction_residual"] = rounded(r.reconstruction_residual);
    j["rotations"] = r.rotations;
    j["reflect_last"] = r.reflect_last;
    return j.dump(2);
}

OptimizeReport run_optimize(const Matrix& states, const std::vector<double>& priors, double tol) {
    const StateEmbedding s{states.rows(), states};
    const Measurement init = square_root_measurement(s, priors);
    const BayesResult b = bayes_cost_reduction(s, priors, init, tol);
    OptimizeReport r;
    r.initial_error = b.error_history.front();
    r.final_error = b.report.error_probability;
    r.cond_i_residual = b.report.cond_i_residual;
    r.cond_ii_min_eig = b.report.cond_ii_min_eig;
    r.is_optimal = b.report.is_optimal;
    r.converged = b.converged;
    r.sweeps = b.sweeps;
    return r;
}

std::string to_json(const OptimizeReport& r) {
    nlohmann::ordered_json j;
    j["initial_error"] = rounded(r.initial_error);
    j["final_error"] = rounded(r.final_error);
    j["improvement"] = rounded(r.initial_error - r.final_error);
    j["cond_i_residual"] = rounded(r.cond_i_residual);
    j["cond_ii_min_eig"] = rounded(r.cond_ii_min_eig);
    j["is_optimal"] = r.is_optimal;
    j["converged"] = r.converged;
    j["sweeps"] = r.sweeps;
    return j.dump(2);
}

}  // namespace qcap::cli
