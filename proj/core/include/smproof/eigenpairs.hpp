#pragma once

// Validated eigenpairs of the Jacobian at a certified equilibrium. The
// zero-finding problem is (Df(c)v - lambda v, v^(l*) - 1) on C^3 x C with the
// normalization row isolating the eigenvector; the Jacobian is always
// evaluated over the equilibrium's certified box so the certificate holds for
// the true equilibrium, not its approximation.

#include <vector>

#include "smproof/equilibrium.hpp"

namespace smproof {

enum class Stability { stable, unstable };

struct EigenCertificate {
    ComplexInterval lambda;
    Vec3<ComplexInterval> v{};
    int l_star = 1; // 1-based normalization index; midpoint of v[l_star-1] is 1
    double r = 0.0; // certified radius in the sum-of-moduli norm on C^3 x C
    Stability stability = Stability::stable;
    bool sign_definite = true; // false: Re(lambda) enclosure straddles 0
    bool real_pair = true;     // imaginary parts are exact zeros
    Interval Y;
    Interval Z;
    double R = 0.0;
};

struct EigenGuess {
    std::complex<double> lambda;
    std::array<std::complex<double>, 3> v{};
    int l_star = 1;
};

/// Numerical eigen-decomposition of a 3x3 Jacobian; each eigenvector is
/// normalized so its largest-magnitude component equals one, which fixes the
/// normalization index l*.
std::vector<EigenGuess> eigen_initial_guesses(const Eigen::Matrix3d& J);

EigenCertificate validate_eigenpair(const Params& p, const EquilibriumCertificate& c,
                                    const EigenGuess& guess, double R_factor = 10.0,
                                    const NewtonOptions& opt = {});

/// Certificate for the conjugate eigenpair, valid because f has real
/// coefficients; enclosures are conjugated exactly.
EigenCertificate conjugate_pair(const EigenCertificate& e);

} // namespace smproof
