#include "smproof/eigenpairs.hpp"

#include <Eigen/Eigenvalues>

#include "smproof/linalg.hpp"

namespace smproof {

namespace {

using CI = ComplexInterval;
using Eigen::Matrix3d;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

Mat<CI> jacobian_over_box(const Params& p, const Vec3<Interval>& box) {
    auto j = jacobian<Interval>(box, p.a, p.b);
    Mat<CI> m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            m(i, k) = CI(j[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    return m;
}

// DF over complex rectangles: [[J - lambda I, -v], [e_l, 0]].
Mat<CI> df_eig(const Mat<CI>& J, const CI& lambda, const Vec3<CI>& v, int l_star) {
    Mat<CI> m(4, 4);
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) m(i, k) = J(i, k);
        m(i, i) = m(i, i) - lambda;
        m(i, 3) = -v[static_cast<size_t>(i)];
    }
    m(3, l_star - 1) = CI(exact(1));
    return m;
}

} // namespace

std::vector<EigenGuess> eigen_initial_guesses(const Matrix3d& J) {
    Eigen::EigenSolver<Matrix3d> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigen_initial_guesses: eigensolver failed");
    std::vector<EigenGuess> out;
    for (int i = 0; i < 3; ++i) {
        EigenGuess g;
        g.lambda = es.eigenvalues()(i);
        Eigen::Vector3cd v = es.eigenvectors().col(i);
        int l = 0;
        for (int k = 1; k < 3; ++k)
            if (std::abs(v(k)) > std::abs(v(l))) l = k;
        v /= v(l);
        for (int k = 0; k < 3; ++k) g.v[static_cast<size_t>(k)] = v(k);
        g.l_star = l + 1;
        out.push_back(g);
    }
    // Guard against clustered spectra; the equilibria here have simple
    // eigenvalues and anything else means a wrong Jacobian upstream.
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k)
            if (std::abs(out[i].lambda - out[k].lambda) < 1e-8)
                throw std::runtime_error("eigen_initial_guesses: clustered spectrum");
    return out;
}

EigenCertificate validate_eigenpair(const Params& p, const EquilibriumCertificate& c,
                                    const EigenGuess& guess, double R_factor,
                                    const NewtonOptions& opt) {
    bool real_pair = guess.lambda.imag() == 0.0 && guess.v[0].imag() == 0.0 &&
                     guess.v[1].imag() == 0.0 && guess.v[2].imag() == 0.0;
    const int l = guess.l_star;

    Vec3<double> cb{c.c_bar[0], c.c_bar[1], c.c_bar[2]};
    auto jf = jacobian<double>(cb, p.a_mid, p.b_mid);
    Matrix3d J;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) J(i, k) = jf[static_cast<size_t>(i)][static_cast<size_t>(k)];

    // Floating-point Newton on (v, lambda); the complex problem is flattened
    // to R^8 as [Re v, Re lambda, Im v, Im lambda].
    VectorXcd x(4);
    for (int i = 0; i < 3; ++i) x(i) = guess.v[static_cast<size_t>(i)];
    x(3) = guess.lambda;

    auto f_c = [&](const VectorXcd& z) -> VectorXcd {
        VectorXcd r(4);
        for (int i = 0; i < 3; ++i) {
            complex<double> s = 0.0;
            for (int k = 0; k < 3; ++k) s += J(i, k) * z(k);
            r(i) = s - z(3) * z(i);
        }
        r(3) = z(l - 1) - 1.0;
        return r;
    };
    auto df_c = [&](const VectorXcd& z) -> MatrixXcd {
        MatrixXcd m = MatrixXcd::Zero(4, 4);
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) m(i, k) = J(i, k);
            m(i, i) -= z(3);
            m(i, 3) = -z(i);
        }
        m(3, l - 1) = 1.0;
        return m;
    };

    bool ok = false;
    if (real_pair) {
        VectorXd xr(4);
        for (int i = 0; i < 4; ++i) xr(i) = x(i).real();
        auto f_r = [&](const VectorXd& z) -> VectorXd {
            VectorXcd zc = z.cast<complex<double>>();
            return f_c(zc).real();
        };
        auto df_r = [&](const VectorXd& z) -> MatrixXd {
            VectorXcd zc = z.cast<complex<double>>();
            return df_c(zc).real();
        };
        std::tie(xr, ok) = newton(f_r, df_r, xr, opt);
        for (int i = 0; i < 4; ++i) x(i) = xr(i);
    } else {
        auto f_r8 = [&](const VectorXd& z) -> VectorXd {
            VectorXcd zc(4);
            for (int i = 0; i < 4; ++i) zc(i) = complex<double>(z(i), z(i + 4));
            VectorXcd r = f_c(zc);
            VectorXd out(8);
            for (int i = 0; i < 4; ++i) {
                out(i) = r(i).real();
                out(i + 4) = r(i).imag();
            }
            return out;
        };
        auto df_r8 = [&](const VectorXd& z) -> MatrixXd {
            VectorXcd zc(4);
            for (int i = 0; i < 4; ++i) zc(i) = complex<double>(z(i), z(i + 4));
            MatrixXcd m = df_c(zc);
            MatrixXd out(8, 8);
            out.topLeftCorner(4, 4) = m.real();
            out.topRightCorner(4, 4) = -m.imag();
            out.bottomLeftCorner(4, 4) = m.imag();
            out.bottomRightCorner(4, 4) = m.real();
            return out;
        };
        VectorXd z8(8);
        for (int i = 0; i < 4; ++i) {
            z8(i) = x(i).real();
            z8(i + 4) = x(i).imag();
        }
        std::tie(z8, ok) = newton(f_r8, df_r8, z8, opt);
        for (int i = 0; i < 4; ++i) x(i) = complex<double>(z8(i), z8(i + 4));
    }
    if (!ok) throw std::runtime_error("validate_eigenpair: Newton did not converge");

    // Rigorous bounds on C^3 x C with the sum-of-moduli norm; Df is evaluated
    // over the equilibrium's certified box.
    Mat<CI> J_box = jacobian_over_box(p, c.enclosure);
    Vec3<CI> v_bar;
    for (int i = 0; i < 3; ++i)
        v_bar[static_cast<size_t>(i)] = CI(Interval(x(i).real()), Interval(x(i).imag()));
    CI lam_bar(Interval(x(3).real()), Interval(x(3).imag()));

    Mat<CI> A = to_interval_mat(approx_inverse(MatrixXcd(df_c(x))));

    std::vector<CI> F(4);
    for (int i = 0; i < 3; ++i) {
        CI s = J_box(i, 0) * v_bar[0] + J_box(i, 1) * v_bar[1] + J_box(i, 2) * v_bar[2];
        F[static_cast<size_t>(i)] = s - lam_bar * v_bar[static_cast<size_t>(i)];
    }
    F[3] = v_bar[static_cast<size_t>(l - 1)] - CI(exact(1));
    Interval Y = norm1(matvec(A, F));

    double R = R_factor * Y.hi;
    auto widen = [&](const CI& z) {
        return CI(midpoint_radius(mid(z.re), R), midpoint_radius(mid(z.im), R));
    };
    Vec3<CI> v_box{widen(v_bar[0]), widen(v_bar[1]), widen(v_bar[2])};
    CI lam_box = widen(lam_bar);
    Mat<CI> DF_box = df_eig(J_box, lam_box, v_box, l);
    Mat<CI> m = mul_naive(A, DF_box);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            CI id = (i == k) ? CI(exact(1)) : CI(exact(0));
            m(i, k) = id - m(i, k);
        }
    Interval Z = opnorm1(m);

    ExistenceResult res = interval_of_existence(Y, Z, R);
    if (!res.success)
        throw std::runtime_error("validate_eigenpair: contraction gate failed (Z = " +
                                 to_string(Z) + ")");

    EigenCertificate cert;
    double r = res.r_inf;
    auto enclose = [&](const complex<double>& z, bool real_part_only) {
        Interval im = real_part_only ? Interval(0.0) : midpoint_radius(z.imag(), r);
        return CI(midpoint_radius(z.real(), r), im);
    };
    cert.lambda = enclose(x(3), real_pair);
    for (int i = 0; i < 3; ++i)
        cert.v[static_cast<size_t>(i)] = enclose(x(i), real_pair);
    // The normalization row of F forces the true eigenvector to have this
    // component exactly one.
    cert.v[static_cast<size_t>(l - 1)] = CI(exact(1));
    cert.l_star = l;
    cert.r = r;
    cert.real_pair = real_pair;
    cert.Y = Y;
    cert.Z = Z;
    cert.R = R;
    cert.sign_definite = !cert.lambda.re.contains_zero();
    cert.stability = mid(cert.lambda.re) < 0.0 ? Stability::stable : Stability::unstable;

    // Certified eigen-residual: Df(Box(c)) v - lambda v must enclose zero.
    for (int i = 0; i < 3; ++i) {
        CI s = J_box(i, 0) * cert.v[0] + J_box(i, 1) * cert.v[1] + J_box(i, 2) * cert.v[2];
        s = s - cert.lambda * cert.v[static_cast<size_t>(i)];
        if (!s.re.contains_zero() || !s.im.contains_zero())
            throw std::logic_error("validate_eigenpair: certified residual check failed");
    }
    return cert;
}

EigenCertificate conjugate_pair(const EigenCertificate& e) {
    EigenCertificate c = e;
    c.lambda = conj(e.lambda);
    for (auto& vi : c.v) vi = conj(vi);
    return c;
}

} // namespace smproof
