#pragma once

// Local invariant manifolds by the parameterization method: solve
// P = phi + DiagL f(P) order by order via Newton on the truncated problem,
// build the tail-extended approximate inverse, and certify via the
// contraction gate. The unstable manifold of the nontrivial equilibrium uses
// complex conjugate eigendata; the stable manifold of the origin stays real.

#include "smproof/eigenpairs.hpp"
#include "smproof/operator.hpp"

namespace smproof {

struct ManifoldCertificate {
    Vec3<Taylor2Seq<ComplexInterval>> P{}; // approximate coefficients, point enclosures
    double r = 0.0;                        // certified radius in the nu-weighted norm
    double nu = 0.0;
    int K = 0;
    double scale = 1.0;
    bool stable_side = false;
    bool real_valued = false;
    ComplexInterval lambda1, lambda2;
    Vec3<ComplexInterval> v1{}, v2{}; // scaled eigenvector enclosures
    std::array<double, 3> c_bar{};
    double c_r = 0.0;
    Interval Y, Z0, Z1, Z;
    double R = 0.0;
};

/// First-order data phi = c + v1 theta1 + v2 theta2.
template <class S>
Vec3<Taylor2Seq<S>> build_phi(const Vec3<S>& c, const Vec3<S>& v1, const Vec3<S>& v2) {
    Vec3<Taylor2Seq<S>> phi;
    for (int i = 0; i < 3; ++i) {
        Taylor2Seq<S> u(1, 1);
        u.at(0, 0) = c[static_cast<size_t>(i)];
        u.at(1, 0) = v1[static_cast<size_t>(i)];
        u.at(0, 1) = v2[static_cast<size_t>(i)];
        phi[static_cast<size_t>(i)] = std::move(u);
    }
    return phi;
}

/// F(P) = P - phi - DiagL f(P); input order K gives output order 2K.
template <class S, class C>
Vec3<Taylor2Seq<S>> manifold_residual(const Vec3<Taylor2Seq<S>>& P,
                                      const Vec3<Taylor2Seq<S>>& phi, const S& l1,
                                      const S& l2, const C& a, const C& b) {
    auto fP = vector_field(P, a, b);
    Vec3<Taylor2Seq<S>> r;
    for (int i = 0; i < 3; ++i)
        r[static_cast<size_t>(i)] =
            P[static_cast<size_t>(i)] - phi[static_cast<size_t>(i)] -
            apply_homology_inverse(fP[static_cast<size_t>(i)], l1, l2);
    return r;
}

/// Truncation of DF(P) = I - DiagL Df(P) as a matrix: rows over the square
/// grid max(k1,k2) <= rows_K, columns over max(l1,l2) <= cols_K,
/// component-major layout.
template <class S, class C>
Mat<S> manifold_jacobian_matrix(const Vec3<Taylor2Seq<S>>& P, const S& l1, const S& l2,
                                const C& a, const C& b, int rows_K, int cols_K) {
    using T = ScalarTraits<S>;
    auto W = jacobian_multipliers(P, a, b);
    int nr = (rows_K + 1) * (rows_K + 1);
    int nc = (cols_K + 1) * (cols_K + 1);
    Mat<S> m(3 * nr, 3 * nc);

    // Divisor inverses for rows with k1 + k2 >= 2.
    std::vector<S> linv(static_cast<size_t>(nr), T::zero());
    for (int k1 = 0; k1 <= rows_K; ++k1)
        for (int k2 = 0; k2 <= rows_K; ++k2) {
            if (k1 + k2 < 2) continue;
            S div = T::from_int(k1) * l1 + T::from_int(k2) * l2;
            linv[static_cast<size_t>(k1) * (rows_K + 1) + k2] = T::one() / div;
        }

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& w = W[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int k1 = 0; k1 <= rows_K; ++k1)
                for (int k2 = 0; k2 <= rows_K; ++k2) {
                    int row = i * nr + k1 * (rows_K + 1) + k2;
                    if (k1 + k2 >= 2) {
                        const S& li = linv[static_cast<size_t>(k1) * (rows_K + 1) + k2];
                        int m1max = std::min(k1, w.order1());
                        int m2max = std::min(k2, w.order2());
                        for (int m1 = 0; m1 <= m1max; ++m1)
                            for (int m2 = 0; m2 <= m2max; ++m2) {
                                int q1 = k1 - m1, q2 = k2 - m2;
                                if (q1 > cols_K || q2 > cols_K) continue;
                                int col = j * nc + q1 * (cols_K + 1) + q2;
                                m(row, col) = m(row, col) - li * w.at(m1, m2);
                            }
                    }
                    if (i == j && k1 <= cols_K && k2 <= cols_K)
                        m(row, i * nc + k1 * (cols_K + 1) + k2) += T::one();
                }
        }
    return m;
}

/// Floating-point Newton solution of the truncated problem from the
/// first-order initial guess; eigvecs are assumed already scaled.
Vec3<Taylor2Seq<std::complex<double>>> solve_manifold_float(
    const Params& p, const std::array<double, 3>& c_bar,
    std::complex<double> l1, std::complex<double> l2,
    const std::array<std::complex<double>, 3>& v1,
    const std::array<std::complex<double>, 3>& v2, int K, const NewtonOptions& opt = {});

Vec3<Taylor2Seq<double>> solve_manifold_float_real(
    const Params& p, const std::array<double, 3>& c_bar, double l1, double l2,
    const std::array<double, 3>& v1, const std::array<double, 3>& v2, int K,
    const NewtonOptions& opt = {});

/// Coefficients of the truncated solution by the order-by-order recursion
/// (fast path used for scale tuning; equals the Newton fixed point).
Vec3<Taylor2Seq<std::complex<double>>> manifold_recursion_float(
    const Params& p, const std::array<double, 3>& c_bar,
    std::complex<double> l1, std::complex<double> l2,
    const std::array<std::complex<double>, 3>& v1,
    const std::array<std::complex<double>, 3>& v2, int K);

/// Full proof for one manifold. e2 must be the conjugate certificate of e1
/// when the pair is complex.
ManifoldCertificate validate_manifold(const Params& p, const EquilibriumCertificate& c,
                                      const EigenCertificate& e1,
                                      const EigenCertificate& e2, int K, double nu,
                                      double scale, double R_factor,
                                      const NewtonOptions& opt = {});

/// Max floating-point defect of DP(theta) Lambda theta - f(P(theta)) over
/// n sample points with |theta_j| = 1 (complex side) or on the boundary of
/// the real unit square (real side). Sanity check, not part of the proof.
double manifold_invariance_residual(const ManifoldCertificate& cert, const Params& p,
                                    int n_samples = 50);

/// Rigorous evaluation of the certified parameterization inside the unit
/// polydisk: value enclosure widened by r, partial derivatives widened by
/// r / (e |theta_j| |ln(|theta_j| / nu)|).
Vec3<ComplexInterval> rigorous_eval_value(const ManifoldCertificate& cert,
                                          const ComplexInterval& t1,
                                          const ComplexInterval& t2);
std::array<std::array<ComplexInterval, 2>, 3> rigorous_eval_jacobian(
    const ManifoldCertificate& cert, const ComplexInterval& t1, const ComplexInterval& t2);

/// Real-path variants for a real-valued certificate at real coordinates.
Vec3<Interval> rigorous_eval_value_real(const ManifoldCertificate& cert,
                                        const Interval& t1, const Interval& t2);
std::array<std::array<Interval, 2>, 3> rigorous_eval_jacobian_real(
    const ManifoldCertificate& cert, const Interval& t1, const Interval& t2);

/// Real coefficient view of a real-valued certificate (throws if any
/// imaginary part is not exactly zero).
Vec3<Taylor2Seq<Interval>> real_coefficients(const ManifoldCertificate& cert);

/// Floating-point midpoints of the stored coefficients.
Vec3<Taylor2Seq<std::complex<double>>> midpoint_coefficients(const ManifoldCertificate& cert);

} // namespace smproof
