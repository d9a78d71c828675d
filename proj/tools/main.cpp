// Command-line driver for the proof pipeline.
//
// Subcommands: equilibria, eigen, manifolds, connection, all, tune,
// export-trajectory; `run --stage NAME` is an alias. Exit codes: 0 success,
// 2 configuration violation, 3 missing upstream certificate, 4 proof failure.

#include <CLI11.hpp>
#include <iostream>

#include "smproof/pipeline.hpp"
#include "smproof/version.hpp"

using namespace smproof;

namespace {

int dispatch(const std::string& stage, Pipeline& pipe, const std::string& csv,
             const std::string& out_dir) {
    if (stage == "equilibria") pipe.run_equilibria();
    else if (stage == "eigen") pipe.run_eigenpairs();
    else if (stage == "manifolds") pipe.run_manifolds();
    else if (stage == "connection") pipe.run_connection();
    else if (stage == "all") pipe.run_all();
    else if (stage == "export-trajectory") {
        std::string path = csv.empty() ? out_dir + "/trajectory.csv" : csv;
        pipe.export_trajectory(path);
    } else if (stage == "tune") {
        PipelineConfig resolved = pipe.tune();
        std::string path = out_dir + "/resolved.cfg";
        std::ofstream out(path);
        out << resolved.to_text();
        std::cout << "[tune] wrote " << path << "\n";
    } else {
        std::cerr << "unknown stage '" << stage << "'\n";
        return 2;
    }
    if (!csv.empty() && stage == "all") pipe.export_trajectory(csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"smproof: validated equilibria, eigenpairs, invariant manifolds and a "
                 "transverse connecting orbit of the Shimizu-Morioka system"};
    app.set_version_flag("--version", kVersion);

    std::string config_path, out_dir, csv_path, log_level = "info", stage;
    app.add_option("--config", config_path, "configuration file (flat key = value)");
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--export-csv", csv_path, "CSV path for trajectory export");
    app.add_option("--log-level", log_level, "quiet | info | debug");

    std::vector<std::string> names{"equilibria", "eigen", "manifolds",
                                   "connection", "all", "tune", "export-trajectory"};
    for (const auto& n : names) app.add_subcommand(n, "");
    CLI::App* run = app.add_subcommand("run", "run a stage given by --stage");
    run->add_option("--stage", stage, "stage name")->required();

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    for (const auto& n : names)
        if (app.got_subcommand(n)) stage = n;

    try {
        PipelineConfig cfg =
            config_path.empty() ? PipelineConfig{} : PipelineConfig::from_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cfg.validate();

        LogLevel level = LogLevel::info;
        if (log_level == "quiet") level = LogLevel::quiet;
        else if (log_level == "debug") level = LogLevel::debug;
        else if (log_level != "info") throw ConfigError("unknown log level " + log_level);

        Pipeline pipe(cfg, level);
        return dispatch(stage, pipe, csv_path, cfg.out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const MissingDependency& e) {
        std::cerr << "dependency error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "proof failed: " << e.what() << "\n";
        return 4;
    }
}
