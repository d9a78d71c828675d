#pragma once

// Stage orchestration: run the proofs in dependency order, persist
// certificates and the proof report, export trajectory data, and resolve the
// open tuning parameters (eigenvector scales, tau, alpha0) on the
// floating-point path.

#include <optional>

#include "smproof/config.hpp"
#include "smproof/serialize.hpp"

namespace smproof {

struct MissingDependency : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProofFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

class Pipeline {
public:
    Pipeline(PipelineConfig cfg, LogLevel level = LogLevel::info);

    // Each stage validates its objects, logs REPL-style enclosures, writes
    // its certificate file, and updates the report.
    void run_equilibria();
    void run_eigenpairs();
    void run_manifolds();
    void run_connection();
    void run_all();

    void export_trajectory(const std::string& csv_path);

    /// Resolve scales / tau / alpha0 on the float path; returns the resolved
    /// config (idempotent on an already-resolved one).
    PipelineConfig tune() const;

    const PipelineConfig& config() const { return cfg_; }

private:
    void log(LogLevel at, const std::string& msg) const;
    void save_stage(const std::string& name, const json& certs, const json& bounds,
                    double seconds);
    json load_stage_file(const std::string& name) const;

    // In-memory certificates for chained runs; loaded from disk otherwise.
    std::optional<EquilibriumCertificate> c0_, c1_;
    std::vector<EigenCertificate> eigs_c0_, eigs_c1_;
    std::optional<ManifoldCertificate> unstable_, stable_;
    std::optional<ConnectionCertificate> connection_;

    void ensure_equilibria();
    void ensure_eigenpairs();
    void ensure_manifolds();
    void ensure_connection();

    PipelineConfig cfg_;
    LogLevel level_;
    Params params_ = Params::standard();
};

} // namespace smproof
