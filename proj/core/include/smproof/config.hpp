#pragma once

// Pipeline configuration: every truncation order, weight, scaling and
// heuristic that the proofs leave open. Flat key = value text format so
// resolved proof parameters stay human-diffable.

#include <stdexcept>
#include <string>

namespace smproof {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineConfig {
    struct Manifold {
        int K = 22;
        double nu = 1.0625; // 17/16
        double scale_u = 0.075;  // eigenvector scale, unstable chart at c1
        double scale_s = 0.26;   // eigenvector scale, stable chart at c0
        double R_factor = 10.0;
        double newton_tol = 1e-12;
    } manifold;

    struct Orbit {
        int K = 160;
        double mu = 1.02;
        double tau = 28.0;
        bool tau_auto = false;
        double alpha0 = 0.7;
        bool alpha0_auto = false;
        double R_factor = 10.0;
        int rk_steps = 4096;
        double endpoint_tol = 1e-6;
        double entry_radius = 0.08; // tau scan: first entry of |w - c0|_1 below this
        double newton_tol = 1e-11;
        int newton_max_iter = 30;
    } orbit;

    struct Newton {
        double tol = 1e-14;
        int max_iter = 20;
    } newton;

    std::string out_dir = "out";
    int plot_points = 2001;

    bool tau_is_auto() const { return orbit.tau_auto; }
    bool alpha0_is_auto() const { return orbit.alpha0_auto; }

    void validate() const;

    static PipelineConfig from_file(const std::string& path);
    std::string to_text() const;
};

} // namespace smproof
