// todatt: command-line front end for the tt*-Toda library.
//
// Exit codes: 0 success, 2 schema / input errors, 3 solver non-convergence,
// 4 failed verification. Failures print {"error": {...}} on stderr.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "todatt/classify.hpp"
#include "todatt/identities.hpp"
#include "todatt/json_io.hpp"
#include "todatt/solver.hpp"
#include "todatt/walgebra.hpp"

namespace fs = std::filesystem;
using namespace todatt;

namespace {

enum Exit { kOk = 0, kSchema = 2, kNoConvergence = 3, kVerification = 4 };

struct CliError {
    int code;
    std::string kind;
    std::string message;
    Json extra = Json::object();
};

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    std::string format = "json";
    std::optional<double> tol;
    std::optional<int> grid_points;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::string arithmetic = "exact";
    std::string left = "dirichlet";
    int jobs = 1;
    int window = 10;
    int n_min = 1;
    int n_max = 8;
    std::string config;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw CliError{kSchema, "io", "cannot write \"" + cfg.output + "\""};
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json require_input(const RunConfig& cfg) {
    if (cfg.input.empty()) throw CliError{kSchema, "schema", "--input is required for " + cfg.command};
    return load_json_argument(cfg.input);
}

// ---- commands -------------------------------------------------------------

int run_validate(const RunConfig& cfg) {
    const FrameStructure s = frame_from_json(require_input(cfg));
    const ValidityReport r = validate_ttstar_frame(s, cfg.tol.value_or(kIdentityTol));
    emit(cfg, dump(to_json(r)));
    return r.all_passed() ? kOk : kVerification;
}

int run_classify(const RunConfig& cfg) {
    const FrameStructure s = frame_from_json(require_input(cfg));
    const ClassificationReport r = classify_frame(s, cfg.tol.value_or(1e-10));
    emit(cfg, dump(to_json(r)));
    return kOk;
}

int run_normalize(const RunConfig& cfg) {
    const AsymmetryClass c = asymmetry_class_from_json(require_input(cfg));
    const NormalizationResult r = normalize_l(c.n, c.l, c.values, cfg.tol.value_or(kIdentityTol));
    emit(cfg, dump(to_json(c.n, r)));
    return kOk;
}

int run_reduce(const RunConfig& cfg) {
    const auto [n, l] = reduce_request_from_json(require_input(cfg));
    emit(cfg, dump(to_json(reduce_system(n, l))));
    return kOk;
}

SolveRequest apply_overrides(SolveRequest r, const RunConfig& cfg) {
    if (cfg.tol) r.opts.tol = *cfg.tol;
    if (cfg.grid_points) r.grid.points = *cfg.grid_points;
    if (cfg.x_min) r.grid.x_min = *cfg.x_min;
    if (cfg.x_max) r.grid.x_max = *cfg.x_max;
    if (cfg.left == "slope") r.opts.left = LeftBoundary::slope;
    return r;
}

struct SolveOutcome {
    Json summary;
    std::string csv;
    std::optional<CliError> error;
};

SolveOutcome solve_one(const SolveRequest& request, int window) {
    SolveOutcome out;
    try {
        const RadialSolution sol = solve_radial_toda(request.data, request.grid, request.opts);
        for (const auto& w : sol.warnings) spdlog::warn("{}", w);
        out.summary = solve_summary(request, sol, window);
        std::ostringstream csv;
        write_solution_csv(csv, sol);
        out.csv = csv.str();
    } catch (const ConvergenceError& e) {
        out.error = CliError{kNoConvergence, "convergence", e.what(),
                             {{"last_residual", e.last_residual()}, {"iterations", e.iterations()}}};
    } catch (const InvalidInput& e) {
        out.error = CliError{kSchema, "input", e.what()};
    }
    return out;
}

// One record per worker slot; results land in their own index, so the only
// shared state is the atomic cursor.
int run_solve(const RunConfig& cfg) {
    std::vector<SolveRequest> requests = solve_batch_from_json(require_input(cfg));
    for (auto& r : requests) r = apply_overrides(std::move(r), cfg);
    const bool batch = requests.size() > 1;
    if (batch && cfg.format == "csv" && cfg.output.empty())
        throw CliError{kSchema, "schema", "batch solves need --output DIR for CSV output"};

    std::vector<SolveOutcome> outcomes(requests.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < requests.size(); i = next++) {
            spdlog::info("solving record {} (n = {}, {} points)", i, requests[i].data.n, requests[i].grid.points);
            outcomes[i] = solve_one(requests[i], cfg.window);
        }
    };
    const int jobs = std::clamp(cfg.jobs, 1, static_cast<int>(requests.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int status = kOk;
    Json summaries = Json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].error) {
            const CliError& e = *outcomes[i].error;
            status = std::max(status, e.code);
            Json err = {{"record", i}, {"code", e.code}, {"kind", e.kind}, {"message", e.message}};
            err.update(e.extra);
            std::cerr << Json{{"error", err}}.dump() << "\n";
            summaries.push_back({{"record", i}, {"converged", false}});
            continue;
        }
        summaries.push_back(outcomes[i].summary);
    }

    if (!cfg.output.empty()) {
        fs::create_directories(cfg.output);
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i].error) continue;
            char stem[32];
            std::snprintf(stem, sizeof stem, "record_%03zu", i);
            std::ofstream(fs::path(cfg.output) / (std::string(stem) + ".csv"), std::ios::binary) << outcomes[i].csv;
            std::ofstream(fs::path(cfg.output) / (std::string(stem) + ".json"), std::ios::binary)
                << dump(outcomes[i].summary);
        }
        std::cout << dump(batch ? summaries : summaries.front());
    } else if (cfg.format == "csv") {
        if (!outcomes.front().error) std::cout << outcomes.front().csv;
    } else {
        std::cout << dump(batch ? summaries : summaries.front());
    }
    return status;
}

int run_asymptotics(const RunConfig& cfg) {
    if (cfg.input.empty()) throw CliError{kSchema, "schema", "--input CSV path is required for asymptotics"};
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) throw CliError{kSchema, "io", "cannot open \"" + cfg.input + "\""};
    const RadialSolution sol = read_solution_csv(in);
    emit(cfg, dump(Json{{"n", sol.n}, {"window", cfg.window}, {"m_hat", extract_asymptotics(sol, cfg.window)}}));
    return kOk;
}

int run_ceff(const RunConfig& cfg) {
    const CeffRequest r = ceff_request_from_json(require_input(cfg));
    const MinimalModelData d = minimal_model_data(r.data, r.q);
    emit(cfg, dump(to_json(d)));
    return ceff_consistency(d) ? kOk : kVerification;
}

int run_verify_identities(const RunConfig& cfg) {
    if (cfg.arithmetic != "exact" && cfg.arithmetic != "float")
        throw CliError{kSchema, "schema", "--arithmetic must be float or exact"};
    const Arithmetic mode = cfg.arithmetic == "exact" ? Arithmetic::exact : Arithmetic::floating;
    const auto results = run_identity_suite(cfg.n_min, cfg.n_max, mode, cfg.tol.value_or(kIdentityTol));
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (cfg.format == "text") {
        std::ostringstream text;
        for (const auto& r : results)
            text << (r.passed ? "PASS " : "FAIL ") << r.name << " n=" << r.n << " param=" << r.parameter << "\n";
        emit(cfg, text.str());
    } else {
        emit(cfg, dump(Json{{"arithmetic", cfg.arithmetic}, {"all_passed", all}, {"results", to_json(results)}}));
    }
    return all ? kOk : kVerification;
}

// ---- configuration --------------------------------------------------------

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("todatt");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("TODA_TTSTAR_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else spdlog::set_level(spdlog::level::err);
}

// Values from --config fill in every option the command line left unset.
void merge_config_file(CLI::App& sub, RunConfig& cfg) {
    if (cfg.config.empty()) return;
    Json file;
    try {
        std::ifstream in(cfg.config);
        if (!in) throw CliError{kSchema, "io", "cannot open config \"" + cfg.config + "\""};
        file = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CliError{kSchema, "schema", std::string("config: ") + e.what()};
    }
    if (!file.is_object()) throw CliError{kSchema, "schema", "config must be a JSON object"};
    const auto unset = [&](const char* flag) {
        const CLI::Option* opt = sub.get_option_no_throw(flag);
        return opt != nullptr && opt->count() == 0;
    };
    try {
        for (const auto& [key, value] : file.items()) {
            const std::string flag = "--" + key;
            if (!unset(flag.c_str())) continue;
            if (key == "input") cfg.input = value.is_string() ? value.get<std::string>() : value.dump();
            else if (key == "output") cfg.output = value.get<std::string>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "tol") cfg.tol = value.get<double>();
            else if (key == "grid-points") cfg.grid_points = value.get<int>();
            else if (key == "x-min") cfg.x_min = value.get<double>();
            else if (key == "x-max") cfg.x_max = value.get<double>();
            else if (key == "arithmetic") cfg.arithmetic = value.get<std::string>();
            else if (key == "left") cfg.left = value.get<std::string>();
            else if (key == "jobs") cfg.jobs = value.get<int>();
            else if (key == "window") cfg.window = value.get<int>();
            else if (key == "n-min") cfg.n_min = value.get<int>();
            else if (key == "n-max") cfg.n_max = value.get<int>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw CliError{kSchema, "schema", std::string("config: ") + e.what()};
    }
}

void check_config(const RunConfig& cfg) {
    if (cfg.tol && !(*cfg.tol > 0.0)) throw CliError{kSchema, "schema", "--tol must be > 0"};
    if (cfg.jobs < 1) throw CliError{kSchema, "schema", "--jobs must be >= 1"};
    if (cfg.left != "dirichlet" && cfg.left != "slope") throw CliError{kSchema, "schema", "--left must be dirichlet or slope"};
}

int report(const CliError& e) {
    std::cerr << Json{{"error", {{"code", e.code}, {"kind", e.kind}, {"message", e.message}}}}.dump() << "\n";
    return e.code;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    RunConfig cfg;
    CLI::App app{"Toda-type tt*-structures: classification, radial solves and W-algebra data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "todatt 0.1.0");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
    };
    const std::vector<Command> commands{
        {"validate", "check the tt*-structure conditions of a frame", run_validate},
        {"classify", "bring a frame to Toda form and report its class", run_classify},
        {"normalize", "shift an anti-symmetric tuple to l in {0,1}", run_normalize},
        {"reduce", "look up the reduced system for (n, l)", run_reduce},
        {"solve", "solve the radial boundary-value problem (single or batch)", run_solve},
        {"asymptotics", "estimate m from a solution CSV", run_asymptotics},
        {"ceff", "minimal-model data and effective central charge", run_ceff},
        {"verify-identities", "run the frame-change identity suite", run_verify_identities},
    };

    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", cfg.config, "JSON file of defaults; flags override it")->check(CLI::ExistingFile);
        sub->add_option("--output,-o", cfg.output, std::string(c.name) == "solve" ? "output directory" : "output file");
        sub->add_option("--tol", cfg.tol, "tolerance override");
        const std::string name = c.name;
        if (name != "verify-identities") sub->add_option("--input,-i", cfg.input, "input path or inline JSON");
        if (name == "solve") {
            sub->add_option("--grid-points", cfg.grid_points, "grid size");
            sub->add_option("--x-min", cfg.x_min, "left end in x = log r");
            sub->add_option("--x-max", cfg.x_max, "right end in x = log r");
            sub->add_option("--jobs,-j", cfg.jobs, "worker threads for batch input");
            sub->add_option("--left", cfg.left, "left boundary: dirichlet or slope");
            sub->add_option("--format", cfg.format, "stdout payload: json (summary) or csv")->check(CLI::IsMember({"json", "csv"}));
        }
        if (name == "solve" || name == "asymptotics") sub->add_option("--window", cfg.window, "points used for the slope fit");
        if (name == "verify-identities") {
            sub->add_option("--arithmetic", cfg.arithmetic, "float or exact");
            sub->add_option("--n-min", cfg.n_min, "smallest n");
            sub->add_option("--n-max", cfg.n_max, "largest n");
            sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        }
        subs.emplace_back(sub, &c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(CliError{kSchema, "usage", e.what()});
    }

    for (const auto& [sub, command] : subs) {
        if (!sub->parsed()) continue;
        cfg.command = command->name;
        try {
            merge_config_file(*sub, cfg);
            check_config(cfg);
            return command->run(cfg);
        } catch (const CliError& e) {
            return report(e);
        } catch (const ClassificationError& e) {
            return report(CliError{kVerification, "classification", e.what()});
        } catch (const ConvergenceError& e) {
            return report(CliError{kNoConvergence, "convergence", e.what()});
        } catch (const InvalidInput& e) {
            return report(CliError{kSchema, "input", e.what()});
        } catch (const std::exception& e) {
            return report(CliError{kSchema, "input", e.what()});
        }
    }
    return kSchema;
}
