#pragma once

// The connecting-orbit boundary value problem in Chebyshev coefficients:
// u = P(gamma(alpha)) + (tau/2) int f(u), u(1) = Q(theta), with the unstable
// coordinates pinned to the unit circle and tau prescribed. The unknown is
// x = (u, alpha, theta1, theta2); the proof reuses the certified manifold
// parameterizations through their rigorous evaluation bounds.

#include "smproof/manifold.hpp"

namespace smproof {

struct OrbitGuess {
    Vec3<ChebSeq<double>> u{};
    double alpha = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

struct ConnectionCertificate {
    Vec3<ChebSeq<double>> u_bar{};
    double alpha = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double tau = 0.0;
    double mu = 0.0;
    int K = 0;
    double r = 0.0;
    bool contraction_success = false;
    // The certified contraction implies local uniqueness and invertibility of
    // DF at the zero, hence transversality of the intersection.
    std::string transversality_note;
    Interval Y, Z0, Z1, Z;
    double R = 0.0;
};

/// Fixed-step RK4 trajectory of the vector field from w0 over [0, tau],
/// with dense evaluation at arbitrary times from the stored knots.
class OrbitIntegrator {
public:
    OrbitIntegrator(const Params& p, const std::array<double, 3>& w0, double tau,
                    int steps);
    std::array<double, 3> at(double t) const;
    const std::vector<std::array<double, 3>>& knots() const { return knots_; }
    double tau() const { return tau_; }

private:
    double tau_, h_;
    Params p_;
    std::vector<std::array<double, 3>> knots_;
};

/// Initial guess: integrate from P(gamma(alpha0)), interpolate at
/// Chebyshev-Lobatto nodes, and fit theta by least squares on Q(theta) = w(tau).
OrbitGuess generate_initial_guess(const ManifoldCertificate& P_cert,
                                  const ManifoldCertificate& Q_cert, const Params& p,
                                  double alpha0, double tau, int K, int rk_steps = 4096,
                                  double endpoint_tol = 1e-6);

struct ConnectionOptions {
    int K = 160;
    double mu = 1.02;
    double tau = 30.0;
    double alpha0 = 0.0;
    double R_factor = 10.0;
    int rk_steps = 4096;
    double endpoint_tol = 1e-6;
    NewtonOptions newton{1e-11, 30};
};

ConnectionCertificate validate_connection(const Params& p,
                                          const ManifoldCertificate& P_cert,
                                          const ManifoldCertificate& Q_cert,
                                          const ConnectionOptions& opt);

/// Max defect of du/ds - (tau/2) f(u) at sample points (floating-point
/// sanity check of the certified trajectory, not part of the proof).
double connection_ode_residual(const ConnectionCertificate& cert, const Params& p,
                               int n_samples = 100);

} // namespace smproof
