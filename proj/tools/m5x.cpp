#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "m5x/config.hpp"
#include "m5x/estimate.hpp"
#include "m5x/report.hpp"

namespace {

// Exit codes: 0 success, 1 verification failure, 2 config error, 3 runtime error.
enum ExitCode { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kRuntimeError = 3 };

constexpr double kZGate = 4.0;

int run_command(const m5x::ExperimentConfig& cfg, const std::string& command, int threads) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const auto out_path = [&](const char* name) { return (fs::path(cfg.output_dir) / name).string(); };

    m5x::SimConfig sim{cfg.n, cfg.reps, cfg.seed, cfg.model};

    if (command == "theory") {
        const m5x::TheorySummary s = m5x::summarize(cfg.model, cfg.tau_list.front());
        m5x::write_file(out_path("theory_summary.csv"), m5x::theory_csv(s));
        m5x::write_file(out_path("theory_report.txt"), m5x::theory_report(s));
        std::cout << m5x::theory_report(s);
        return kOk;
    }
    if (command == "simulate") {
        const std::vector<m5x::BlockMaxima> maxima = m5x::block_maxima(sim, threads);
        std::ofstream mf(out_path("maxima.csv"), std::ios::binary);
        if (!mf) throw m5x::IoError("cannot open " + out_path("maxima.csv"));
        m5x::write_maxima_csv(mf, maxima);
        std::ofstream pf(out_path("paths.csv"), std::ios::binary);
        if (!pf) throw m5x::IoError("cannot open " + out_path("paths.csv"));
        m5x::write_paths_csv(pf, sim);
        std::cout << "wrote " << out_path("maxima.csv") << " and " << out_path("paths.csv") << "\n";
        return kOk;
    }
    if (command == "verify") {
        m5x::VerifyOptions opts;
        opts.threads = threads;
        const m5x::VerifyReport report = m5x::verify(sim, cfg.tau_list, cfg.u_levels, opts);
        m5x::write_file(out_path("verify_report.csv"), m5x::verify_csv(report));
        std::cout << m5x::verify_report_text(report, kZGate);
        return report.passed(kZGate) ? kOk : kVerifyFailed;
    }
    throw m5x::ValidationError("unknown command \"" + command + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"M5 moving-maxima models: closed-form extreme-value quantities and their "
                 "Monte Carlo verification"};
    std::string config_path;
    std::string command;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--command", command, "theory | simulate | verify (default: the config's list)");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out_dir, "override the config output directory");
    app.add_option("--threads", threads, "worker threads, 0 = hardware")->envname("M5X_THREADS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        m5x::ExperimentConfig cfg = [&] {
            try {
                return m5x::load_config(config_path);
            } catch (const m5x::Error& e) {
                std::cerr << "config error: " << e.what() << "\n";
                std::exit(kConfigError);
            }
        }();
        if (app.count("--seed")) cfg.seed = seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        const std::vector<std::string> commands =
            command.empty() ? cfg.commands : std::vector<std::string>{command};

        int status = kOk;
        for (const auto& c : commands) status = std::max(status, run_command(cfg, c, threads));
        return status;
    } catch (const m5x::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}
