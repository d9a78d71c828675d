#include "smproof/equilibrium.hpp"

#include "smproof/linalg.hpp"

namespace smproof {

namespace {

Vec3<Interval> to_interval(const std::array<double, 3>& c) {
    return {Interval(c[0]), Interval(c[1]), Interval(c[2])};
}

Mat<Interval> jacobian_mat(const Vec3<Interval>& c, const Params& p) {
    auto j = jacobian<Interval>(c, p.a, p.b);
    Mat<Interval> m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m(i, k) = j[static_cast<size_t>(i)][static_cast<size_t>(k)];
    return m;
}

} // namespace

EquilibriumCertificate validate_equilibrium(const Params& p,
                                            const std::array<double, 3>& c_init,
                                            double R_factor,
                                            const NewtonOptions& opt) {
    using Eigen::Matrix3d;
    using Eigen::Vector3d;

    auto f_float = [&](const Vector3d& c) -> Vector3d {
        Vec3<double> u{c(0), c(1), c(2)};
        auto r = vector_field(u, p.a_mid, p.b_mid);
        return Vector3d(r[0], r[1], r[2]);
    };
    auto df_float = [&](const Vector3d& c) -> Matrix3d {
        Vec3<double> u{c(0), c(1), c(2)};
        auto j = jacobian<double>(u, p.a_mid, p.b_mid);
        Matrix3d m;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) m(i, k) = j[static_cast<size_t>(i)][static_cast<size_t>(k)];
        return m;
    };

    auto [c_bar_v, ok] = newton(f_float, df_float, Vector3d(c_init[0], c_init[1], c_init[2]), opt);
    if (!ok) throw std::runtime_error("validate_equilibrium: Newton did not converge");
    std::array<double, 3> c_bar{c_bar_v(0), c_bar_v(1), c_bar_v(2)};

    Mat<Interval> A = to_interval_mat(approx_inverse(Eigen::MatrixXd(df_float(c_bar_v))));

    // Y = ||A f(c_bar)||_1 in interval arithmetic, c_bar treated as exact.
    auto fc = vector_field(to_interval(c_bar), p.a, p.b);
    std::vector<Interval> fc_v{fc[0], fc[1], fc[2]};
    Interval Y = norm1(matvec(A, fc_v));

    double R = R_factor * Y.hi;
    Vec3<Interval> box{midpoint_radius(c_bar[0], R), midpoint_radius(c_bar[1], R),
                       midpoint_radius(c_bar[2], R)};
    Mat<Interval> m = mul_naive(A, jacobian_mat(box, p));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            m(i, k) = (i == k ? exact(1) : exact(0)) - m(i, k);
    Interval Z = opnorm1(m);

    ExistenceResult res = interval_of_existence(Y, Z, R);
    if (!res.success)
        throw std::runtime_error("validate_equilibrium: contraction gate failed (Z = " +
                                 to_string(Z) + ")");

    EquilibriumCertificate cert;
    cert.c_bar = c_bar;
    cert.r = res.r_inf;
    cert.enclosure = {midpoint_radius(c_bar[0], cert.r), midpoint_radius(c_bar[1], cert.r),
                      midpoint_radius(c_bar[2], cert.r)};
    cert.Y = Y;
    cert.Z = Z;
    cert.R = R;

    // Necessary condition on the certified box: f must enclose zero.
    auto fbox = vector_field(cert.enclosure, p.a, p.b);
    for (int i = 0; i < 3; ++i)
        if (!fbox[static_cast<size_t>(i)].contains_zero())
            throw std::logic_error("validate_equilibrium: residual check failed on certified box");
    return cert;
}

} // namespace smproof
