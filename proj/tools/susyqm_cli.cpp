// Command-line front end: spectra, parameter sweeps, and the verification
// suite for the deformed SUSY pair, with CSV/JSON output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "susyqm/analytic.hpp"
#include "susyqm/operators.hpp"
#include "susyqm/spectral.hpp"
#include "susyqm/superpotential.hpp"
#include "susyqm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

struct RunConfig {
    std::string model = "harmonic";
    double omega = 2.0;
    double a = 3.0;
    double kappa = 1.0;
    double hbar = 1.0;
    double mass = 0.5;
    double c = 0.0;
    std::optional<double> c_from;
    std::optional<double> c_to;
    std::optional<double> c_step;
    std::string partner = "minus";
    int grid_n = 1001;
    double grid_l = 12.0;
    int levels = 6;
    std::string format = "csv";
    std::string out;
};

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

susyqm::BaseSuperpotential make_base(const RunConfig& cfg) {
    susyqm::UnitSystem units{cfg.hbar, cfg.mass};
    if (cfg.model == "harmonic") return susyqm::BaseSuperpotential::harmonic(cfg.omega, units);
    if (cfg.model == "tanh") return susyqm::BaseSuperpotential::tanh_scarf(cfg.a, cfg.kappa, units);
    throw susyqm::UnsupportedFamilyError("model must be 'harmonic' or 'tanh' (got '" + cfg.model +
                                         "')");
}

std::vector<int> partner_list(const RunConfig& cfg) {
    if (cfg.partner == "minus") return {-1};
    if (cfg.partner == "plus") return {1};
    if (cfg.partner == "both") return {-1, 1};
    throw susyqm::UnsupportedFamilyError("partner must be 'minus', 'plus' or 'both' (got '" +
                                         cfg.partner + "')");
}

std::optional<double> analytic_energy(const susyqm::Deformation& d, int s, int nodes) {
    try {
        return susyqm::deformed_energy(d, s, nodes).energy;
    } catch (const susyqm::NotBoundError&) {
        return std::nullopt;
    } catch (const susyqm::UnsupportedFamilyError&) {
        return std::nullopt;
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw susyqm::Error("cannot open output file '" + path + "'");
    out << content;
}

// Inserts the partner tag before the extension: spec.csv -> spec.minus.csv.
std::string partner_path(const std::string& path, int s) {
    const std::string tag = (s == -1) ? "minus" : "plus";
    const size_t dot = path.find_last_of('.');
    const size_t slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "." + tag;
    return path.substr(0, dot) + "." + tag + path.substr(dot);
}

std::vector<double> sweep_values(const RunConfig& cfg) {
    if (!cfg.c_from || !cfg.c_to || !cfg.c_step)
        throw susyqm::NonPositiveError("sweep requires --c-from, --c-to and --c-step");
    if (*cfg.c_step <= 0.0) throw susyqm::NonPositiveError("c-step must be positive");
    std::vector<double> values;
    const int count = static_cast<int>(std::floor((*cfg.c_to - *cfg.c_from) / *cfg.c_step + 1e-9));
    for (int i = 0; i <= count; ++i) values.push_back(*cfg.c_from + i * *cfg.c_step);
    return values;
}

bool near_singular(double c) { return std::abs(std::abs(c) - 1.0) < 1e-12; }

susyqm::Grid make_cli_grid(const RunConfig& cfg) {
    try {
        return susyqm::make_grid(cfg.grid_l, cfg.grid_n);
    } catch (const susyqm::Error& e) {
        throw susyqm::Error("grid-n/grid-l: " + std::string(e.what()));
    }
}

int cmd_spectrum(const RunConfig& cfg) {
    const susyqm::Grid grid = make_cli_grid(cfg);
    const susyqm::Deformation d(cfg.c, make_base(cfg));
    d.reject_singular();
    const std::vector<int> partners = partner_list(cfg);

    for (int s : partners) {
        const susyqm::OperatorMatrix h = susyqm::deformed_hamiltonian(d, s, grid);
        const susyqm::Spectrum spectrum = susyqm::solve_labeled(h, grid, cfg.levels);

        std::ostringstream body;
        nlohmann::ordered_json j;
        if (cfg.format == "csv") {
            body << "n_label,parity,energy_numeric,energy_analytic,abs_error,nodes\n";
        } else {
            j["partner"] = (s == -1) ? "minus" : "plus";
            j["levels"] = nlohmann::ordered_json::array();
        }
        for (const susyqm::SpectrumLevel& level : spectrum.levels) {
            const std::optional<double> exact = analytic_energy(d, s, level.nodes);
            if (cfg.format == "csv") {
                body << level.nodes << ',' << level.parity << ','
                     << format_number(level.energy) << ',';
                if (exact) body << format_number(*exact);
                body << ',';
                if (exact) body << format_number(std::abs(level.energy - *exact));
                body << ',' << level.nodes << '\n';
            } else {
                nlohmann::ordered_json row;
                row["n_label"] = level.nodes;
                row["parity"] = level.parity;
                row["energy_numeric"] = level.energy;
                if (exact) {
                    row["energy_analytic"] = *exact;
                    row["abs_error"] = std::abs(level.energy - *exact);
                } else {
                    row["energy_analytic"] = nullptr;
                    row["abs_error"] = nullptr;
                }
                row["nodes"] = level.nodes;
                j["levels"].push_back(std::move(row));
            }
        }
        const std::string content = (cfg.format == "csv") ? body.str() : j.dump(2) + "\n";
        if (cfg.out.empty()) {
            if (partners.size() > 1 && cfg.format == "csv")
                std::cout << "# partner=" << ((s == -1) ? "minus" : "plus") << "\n";
            std::cout << content;
        } else {
            write_output(partners.size() > 1 ? partner_path(cfg.out, s) : cfg.out, content);
        }
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, bool c_given) {
    susyqm::SuiteConfig suite;
    suite.omega = cfg.omega;
    suite.units = susyqm::UnitSystem{cfg.hbar, cfg.mass};
    suite.grid_l = cfg.grid_l;
    suite.grid_n = cfg.grid_n;
    if (cfg.c_from && cfg.c_to && cfg.c_step)
        suite.c_values = sweep_values(cfg);
    else if (c_given)
        suite.c_values = {cfg.c};

    const susyqm::VerificationReport report = susyqm::run_suite(suite);
    write_output(cfg.out, susyqm::report_to_json(report));
    return report.overall() ? kExitOk : kExitVerificationFailure;
}

int cmd_sweep(const RunConfig& cfg) {
    const susyqm::Grid grid = make_cli_grid(cfg);
    const susyqm::BaseSuperpotential base = make_base(cfg);
    const std::vector<int> partners = partner_list(cfg);

    std::ostringstream body;
    body << "c,s,n_label,energy_numeric,energy_analytic\n";
    for (double c : sweep_values(cfg)) {
        if (near_singular(c)) {
            std::cerr << "notice: skipping singular deformation c=" << format_number(c) << "\n";
            continue;
        }
        const susyqm::Deformation d(c, base);
        for (int s : partners) {
            const susyqm::OperatorMatrix h = susyqm::deformed_hamiltonian(d, s, grid);
            susyqm::Spectrum spectrum = susyqm::solve_labeled(h, grid, cfg.levels);
            std::stable_sort(spectrum.levels.begin(), spectrum.levels.end(),
                             [](const susyqm::SpectrumLevel& x, const susyqm::SpectrumLevel& y) {
                                 return x.nodes < y.nodes;
                             });
            for (const susyqm::SpectrumLevel& level : spectrum.levels) {
                const std::optional<double> exact = analytic_energy(d, s, level.nodes);
                body << format_number(c) << ',' << s << ',' << level.nodes << ','
                     << format_number(level.energy) << ',';
                if (exact) body << format_number(*exact);
                body << '\n';
            }
        }
    }
    write_output(cfg.out, body.str());
    return kExitOk;
}

// Flat key=value file; keys are the long flag names without the leading
// dashes. Values from the command line take precedence.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw susyqm::Error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    while (std::getline(in, line)) {
        const size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw susyqm::Error("config line is not key=value: '" + line + "'");
        auto trim = [](std::string s) {
            const size_t a = s.find_first_not_of(" \t\r");
            const size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        values[trim(line.substr(start, eq - start))] = trim(line.substr(eq + 1));
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed supersymmetric partner Hamiltonians: spectra, sweeps, verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--model", cfg.model, "Base model: harmonic | tanh");
        cmd->add_option("--omega", cfg.omega, "Harmonic frequency");
        cmd->add_option("--a", cfg.a, "tanh model amplitude");
        cmd->add_option("--kappa", cfg.kappa, "tanh model steepness");
        cmd->add_option("--hbar", cfg.hbar, "Planck constant");
        cmd->add_option("--mass", cfg.mass, "Particle mass");
        cmd->add_option("--c", cfg.c, "Deformation parameter");
        cmd->add_option("--c-from", cfg.c_from, "Sweep start");
        cmd->add_option("--c-to", cfg.c_to, "Sweep end");
        cmd->add_option("--c-step", cfg.c_step, "Sweep step (> 0)");
        cmd->add_option("--partner", cfg.partner, "minus | plus | both");
        cmd->add_option("--grid-n", cfg.grid_n, "Grid points (odd)");
        cmd->add_option("--grid-l", cfg.grid_l, "Grid half-width");
        cmd->add_option("--levels", cfg.levels, "Levels to report");
        cmd->add_option("--format", cfg.format, "csv | json");
        cmd->add_option("--out", cfg.out, "Output path (default stdout)");
        cmd->add_option("--config", config_path, "key=value config file");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalues of one deformed partner");
    CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
    CLI::App* sweep = app.add_subcommand("sweep", "Level flow over a range of c");
    add_common(spectrum);
    add_common(verify);
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    CLI::App* cmd = app.get_subcommands().front();
    bool config_set_c = false;
    try {
        if (!config_path.empty()) {
            for (const auto& [key, value] : read_config_file(config_path)) {
                const std::string flag = "--" + key;
                const CLI::Option* opt = cmd->get_option_no_throw(flag);
                if (!opt) throw susyqm::Error("unknown config key '" + key + "'");
                if (opt->count() == 0) {
                    std::stringstream ss(value);
                    if (key == "model") ss >> cfg.model;
                    else if (key == "omega") ss >> cfg.omega;
                    else if (key == "a") ss >> cfg.a;
                    else if (key == "kappa") ss >> cfg.kappa;
                    else if (key == "hbar") ss >> cfg.hbar;
                    else if (key == "mass") ss >> cfg.mass;
                    else if (key == "c") { ss >> cfg.c; config_set_c = true; }
                    else if (key == "c-from") { double v; ss >> v; cfg.c_from = v; }
                    else if (key == "c-to") { double v; ss >> v; cfg.c_to = v; }
                    else if (key == "c-step") { double v; ss >> v; cfg.c_step = v; }
                    else if (key == "partner") ss >> cfg.partner;
                    else if (key == "grid-n") ss >> cfg.grid_n;
                    else if (key == "grid-l") ss >> cfg.grid_l;
                    else if (key == "levels") ss >> cfg.levels;
                    else if (key == "format") ss >> cfg.format;
                    else if (key == "out") cfg.out = value;
                    else if (key == "config") {}
                    if (ss.fail()) throw susyqm::Error("bad value for config key '" + key + "'");
                }
            }
        }
        if (cfg.format != "csv" && cfg.format != "json")
            throw susyqm::Error("format must be 'csv' or 'json' (got '" + cfg.format + "')");

        if (cmd == spectrum) return cmd_spectrum(cfg);
        if (cmd == verify)
            return cmd_verify(cfg, config_set_c || cmd->get_option("--c")->count() > 0);
        return cmd_sweep(cfg);
    } catch (const susyqm::NoConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
