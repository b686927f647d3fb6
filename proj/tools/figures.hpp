#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcap/ensembles.hpp"

namespace qcap::cli {

struct SweepConfig {
    double kappa_min = 0.01;
    double kappa_max = 0.99;
    int steps = 99;
    std::vector<int> n_list;          // empty: the figure's default
    std::vector<std::string> codes;   // nn12:N, simplex:R or file:PATH; empty: the figure's default
};

void validate(const SweepConfig& config);
std::vector<double> kappa_grid(const SweepConfig& config);

/// Header plus rows; a missing cell (no root, say) is nullopt.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// A code named on the command line. Families keep their closed forms; the
/// explicit word list is only built when it is small enough to embed.
struct CodeSpec {
    enum class Family { nn12, simplex, file } family;
    int parameter = 0;  // n for nn12, r for simplex
    std::string label;
    std::optional<Code> code;
};

CodeSpec parse_code_spec(const std::string& spec);
double per_letter_information(const CodeSpec& c, double kappa);
double code_error(const CodeSpec& c, double kappa);

Table fig2(const SweepConfig& config);
Table fig3(const SweepConfig& config);
Table fig4(const SweepConfig& config);
Table fig5(const SweepConfig& config);
Table fig6(const SweepConfig& config);
Table fig7(const SweepConfig& config);
Table fig8(const SweepConfig& config);
/// kappa, holevo, c1, then per-letter information and error of each code.
Table sweep(const SweepConfig& config);

struct SynthReport {
    std::string code;
    int n = 0;
    double kappa = 0.0;
    double certified_error = 0.0;
    double adaptor_error = 0.0;
    double orthogonality_residual = 0.0;
    double reconstruction_residual = 0.0;
    std::size_t rotations = 0;
    bool reflect_last = false;
};

/// Writes unitary.txt, schedule.csv and report.json into outdir.
SynthReport run_synth(const std::string& code_spec, double kappa, const std::string& outdir);
std::string to_json(const SynthReport& r);

struct OptimizeReport {
    double initial_error = 0.0;
    double final_error = 0.0;
    double cond_i_residual = 0.0;
    double cond_ii_min_eig = 0.0;
    bool is_optimal = false;
    bool converged = false;
    int sweeps = 0;
};

/// Square-root start, then Bayes cost reduction. States are the columns.
OptimizeReport run_optimize(const Matrix& states, const std::vector<double>& priors, double tol);
std::string to_json(const OptimizeReport& r);

}  // namespace qcap::cli
