#pragma once

// Validated equilibria: Newton on f, floating-point approximate inverse of
// the Jacobian, then interval Y/Z bounds over an interval box and the
// contraction gate.

#include "smproof/model.hpp"
#include "smproof/rpa.hpp"

namespace smproof {

struct EquilibriumCertificate {
    std::array<double, 3> c_bar{};
    double r = 0.0; // certified 1-norm radius
    Vec3<Interval> enclosure{}; // Box(c_bar, r)
    Interval Y;
    Interval Z;
    double R = 0.0;
};

/// Validate the equilibrium reached by Newton from c_init. The Z bound is
/// evaluated over Box(c_bar, R) with R = R_factor * sup(Y). Throws on Newton
/// failure or when the contraction gate fails.
EquilibriumCertificate validate_equilibrium(const Params& p,
                                            const std::array<double, 3>& c_init,
                                            double R_factor = 10.0,
                                            const NewtonOptions& opt = {});

} // namespace smproof
