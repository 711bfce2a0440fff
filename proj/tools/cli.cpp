// Copyright 2026 The fockgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "fockgate/analytic.hpp"
#include "fockgate/errors.hpp"
#include "fockgate/fock.hpp"
#include "fockgate/verify.hpp"

namespace fockgate::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json metadata(const RunConfig& config) {
    return {{"tool", "fockgate"},
            {"tool_version", FOCKGATE_VERSION},
            {"timestamp", utc_timestamp()},
            {"parameters", to_json(config)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require(bool ok, const std::string& message) {
    if (!ok) throw ParameterError(message);
}

json report_json(const ErrorReport& report) {
    json j = {{"p_fn", report.p_false_negative},
              {"p_fp", report.p_false_positive},
              {"method", std::string(to_string(report.method))}};
    if (report.trials) j["trials"] = *report.trials;
    if (report.std_err) {
        j["std_err"] = {{"p_fn", report.std_err->false_negative}, {"p_fp", report.std_err->false_positive}};
    }
    return j;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    const std::vector<double> grid = linear_grid(config.beta_min, config.beta_max, config.steps);
    const std::vector<SweepRow> rows =
        sweep(grid, config.vacuum ? 0 : config.n, config.eta, config.r, config.cutoff);
    if (config.format == "csv") {
        write_output(config.output, sweep_csv(rows), out);
    } else {
        json j = {{"metadata", metadata(config)}, {"rows", json::array()}};
        for (const SweepRow& row : rows) j["rows"].push_back(sweep_row_json(row));
        write_output(config.output, dump(j), out);
    }
    return kExitOk;
}

int cmd_optimize(const RunConfig& config, std::ostream& out) {
    const OptimizationResult best =
        optimize_operating_point(config.n, config.eta, config.r, config.alpha, config.cutoff);
    json result = report_json(best.report);
    result["beta_eta"] = best.beta_eta_abs;
    result["beta_abs"] = std::abs(best.beta);
    result["phi"] = best.phi;
    write_output(config.output, dump({{"metadata", metadata(config)}, {"result", result}}), out);
    return kExitOk;
}

int cmd_montecarlo(const RunConfig& config, std::ostream& out) {
    InterferometerConfig setup;
    setup.signal = params_for_beta_eta(config.beta_eta, config.n, config.eta, config.r, config.alpha);
    setup.cutoff_dark = config.cutoff;
    const bool keep = !config.trials_csv.empty();
    const MonteCarloResult mc = monte_carlo(setup, config.trials, config.seed, keep);

    ErrorReport reference;
    if (config.n == 1) {
        reference.p_false_negative = p_fn_lossy({config.beta_eta, 0.0}, config.eta);
        reference.p_false_positive = p_fp_lossy(config.eta);
    } else {
        reference = error_probabilities_numeric(setup);
    }

    if (keep) {
        std::string csv = "trial,true_hypothesis,count,decision,seed\n";
        for (std::size_t i = 0; i < mc.records.size(); ++i) {
            const TrialRecord& t = mc.records[i];
            csv += std::to_string(i) + "," + std::string(to_string(t.true_hypothesis)) + "," +
                   std::to_string(t.count) + "," + std::string(to_string(t.decision)) + "," +
                   std::to_string(t.seed) + "\n";
        }
        write_output(config.trials_csv, csv, out);
    }
    json result = report_json(mc.report);
    result["seed"] = config.seed;
    write_output(config.output,
                 dump({{"metadata", metadata(config)}, {"result", result}, {"reference", report_json(reference)}}),
                 out);
    return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
    const std::vector<VerificationCheck> checks = run_verification(config.suite);
    bool all_passed = true;
    json list = json::array();
    for (const VerificationCheck& c : checks) {
        all_passed = all_passed && c.passed;
        list.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"deviation", c.deviation},
                        {"tolerance", c.tolerance},
                        {"passed", c.passed}});
    }
    write_output(config.output, dump({{"metadata", metadata(config)}, {"checks", list}, {"passed", all_passed}}),
                 out);
    return all_passed ? kExitOk : kExitVerificationFailed;
}

// Splices config-file entries in front of the command-line flags of the
// selected subcommand. Later occurrences win, so the command line overrides.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.rfind('-', 0) != 0; });
    if (sub == args.end()) return args;
    std::vector<std::string> injected;
    for (const auto& [key, value] : parse_config_text(text)) injected.push_back("--" + key + "=" + value);
    args.insert(std::next(sub), injected.begin(), injected.end());
    return args;
}

}  // namespace

void RunConfig::validate() const {
    const auto finite = [](double x) { return std::isfinite(x); };
    require(finite(eta) && eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
    require(finite(r) && std::abs(r) <= 2.0, "r must satisfy |r| <= 2");
    require(n >= 0, "n must be non-negative");
    require(cutoff == 0 || (cutoff >= 1 && cutoff <= kMaxCutoff), "cutoff must be 0 (auto) or in [1, 512]");
    if (command == "sweep") {
        require(steps >= 1, "steps must be at least 1");
        require(finite(beta_min) && beta_min >= 0.0, "beta-min must be finite and >= 0");
        require(finite(beta_max) && beta_max >= beta_min, "beta-max must be finite and >= beta-min");
        require(format == "csv" || format == "json", "format must be csv or json");
    } else if (command == "optimize") {
        require(n >= 1, "optimize needs n >= 1");
        require(eta > 0.0, "eta must be positive");
        require(finite(alpha) && alpha > 0.0, "alpha must be positive");
    } else if (command == "montecarlo") {
        require(trials >= 1, "trials must be at least 1");
        require(eta > 0.0, "eta must be positive");
        require(finite(beta_eta) && beta_eta >= 0.0, "beta-eta must be finite and >= 0");
        require(finite(alpha) && alpha > 0.0, "alpha must be positive");
    } else if (command == "verify") {
        const auto& names = verification_suites();
        require(suite == "all" || std::find(names.begin(), names.end(), suite) != names.end(),
                "unknown suite '" + suite + "'");
    } else {
        throw ParameterError("unknown command '" + command + "'");
    }
}

json to_json(const RunConfig& c) {
    return {{"command", c.command}, {"n", c.n},
            {"eta", c.eta},         {"r", c.r},
            {"alpha", c.alpha},     {"beta_min", c.beta_min},
            {"beta_max", c.beta_max}, {"steps", c.steps},
            {"vacuum", c.vacuum},   {"beta_eta", c.beta_eta},
            {"trials", c.trials},   {"seed", c.seed},
            {"suite", c.suite},     {"cutoff", c.cutoff},
            {"output", c.output},   {"format", c.format},
            {"trials_csv", c.trials_csv}};
}

RunConfig run_config_from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.n = j.at("n").get<int>();
    c.eta = j.at("eta").get<double>();
    c.r = j.at("r").get<double>();
    c.alpha = j.at("alpha").get<double>();
    c.beta_min = j.at("beta_min").get<double>();
    c.beta_max = j.at("beta_max").get<double>();
    c.steps = j.at("steps").get<int>();
    c.vacuum = j.at("vacuum").get<bool>();
    c.beta_eta = j.at("beta_eta").get<double>();
    c.trials = j.at("trials").get<long long>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.suite = j.at("suite").get<std::string>();
    c.cutoff = j.at("cutoff").get<int>();
    c.output = j.at("output").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.trials_csv = j.at("trials_csv").get<std::string>();
    return c;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 1) throw ParameterError("grid needs at least one step");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) {
        grid[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    }
    if (steps > 1) grid.back() = hi;
    return grid;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string csv = "beta_eta_abs,p_fn,p_fp,method\n";
    char buf[128];
    for (const SweepRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.11e,%.11e,%.11e,", row.beta_eta_abs, row.p_fn, row.p_fp);
        csv += buf;
        csv += to_string(row.method);
        csv += '\n';
    }
    return csv;
}

json sweep_row_json(const SweepRow& row) {
    return {{"beta_eta_abs", row.beta_eta_abs},
            {"p_fn", row.p_fn},
            {"p_fp", row.p_fp},
            {"method", std::string(to_string(row.method))}};
}

SweepRow sweep_row_from_json(const json& j) {
    return {j.at("beta_eta_abs").get<double>(), j.at("p_fn").get<double>(), j.at("p_fp").get<double>(),
            method_from_string(j.at("method").get<std::string>())};
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config line " + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ParameterError("config line " + std::to_string(number) + ": empty key");
        std::replace(key.begin(), key.end(), '_', '-');
        entries.emplace_back(std::move(key), value);
    }
    return entries;
}

void write_output(const std::string& path, const std::string& body, std::ostream& stdout_stream) {
    if (path == "-") {
        stdout_stream << body;
        stdout_stream.flush();
        if (!stdout_stream) throw IoError("failed writing to standard output");
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + tmp + "' for writing");
        file << body;
        file.close();
        if (!file) {
            std::remove(tmp.c_str());
            throw IoError("failed writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("cannot move output into '" + path + "': " + ec.message());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    CLI::App app{"Fock-state phase-shift detection simulator", "fockgate"};
    app.set_version_flag("--version", std::string(FOCKGATE_VERSION));
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string config_path;
    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Flat key = value defaults file");
        sub->add_option("--output,-o", config.output, "Output path, '-' for stdout");
        sub->add_option("--cutoff", config.cutoff, "Fock cutoff override, 0 = recommended");
    };
    const auto physics = [&](CLI::App* sub) {
        sub->add_option("--n", config.n, "Fock photon number of the probe");
        sub->add_option("--eta", config.eta, "Detector quantum efficiency");
        sub->add_option("--r", config.r, "Squeeze factor");
    };

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Error probabilities over a |beta_eta| grid");
    common(sweep_cmd);
    physics(sweep_cmd);
    sweep_cmd->add_option("--beta-min", config.beta_min, "Grid start");
    sweep_cmd->add_option("--beta-max", config.beta_max, "Grid end");
    sweep_cmd->add_option("--steps", config.steps, "Number of grid points");
    sweep_cmd->add_flag("--vacuum", config.vacuum, "Vacuum reference curve instead of a Fock probe");
    sweep_cmd->add_option("--format", config.format, "csv or json");

    CLI::App* optimize_cmd = app.add_subcommand("optimize", "Operating point minimizing P_fn");
    common(optimize_cmd);
    physics(optimize_cmd);
    optimize_cmd->add_option("--alpha", config.alpha, "Bright-port coherent amplitude");

    CLI::App* mc_cmd = app.add_subcommand("montecarlo", "Sampled photon-counting trials");
    common(mc_cmd);
    physics(mc_cmd);
    mc_cmd->add_option("--beta-eta", config.beta_eta, "Detected displacement |beta_eta|");
    mc_cmd->add_option("--alpha", config.alpha, "Bright-port coherent amplitude");
    mc_cmd->add_option("--trials", config.trials, "Trials per hypothesis");
    mc_cmd->add_option("--seed", config.seed, "Base seed");
    mc_cmd->add_option("--trials-csv", config.trials_csv, "Optional per-trial CSV path");

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the numerical cross-check suites");
    common(verify_cmd);
    verify_cmd->add_option("--suite", config.suite, "all, overlap, displacement, squeeze, kraus, rho-eta, errors, convergence");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (e.get_name() == "CallForVersion" ? std::string(FOCKGATE_VERSION) + "\n" : app.help());
            return kExitOk;
        }
        err << "fockgate: error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const IoError& e) {
        err << "fockgate: error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "fockgate: error: " << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        config.command = app.get_subcommands().front()->get_name();
        config.validate();
        if (config.command == "sweep") return cmd_sweep(config, out);
        if (config.command == "optimize") return cmd_optimize(config, out);
        if (config.command == "montecarlo") return cmd_montecarlo(config, out);
        return cmd_verify(config, out);
    } catch (const IoError& e) {
        err << "fockgate: error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "fockgate: error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

}  // namespace fockgate::cli
