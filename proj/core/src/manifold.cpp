#include "smproof/manifold.hpp"

#include "smproof/linalg.hpp"

namespace smproof {

namespace {

using CI = ComplexInterval;
using std::complex;

template <class FS>
using EVec = Eigen::Matrix<FS, Eigen::Dynamic, 1>;
template <class FS>
using EMat = Eigen::Matrix<FS, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
EVec<S> to_eigen_vec(const std::vector<S>& v) {
    EVec<S> out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

template <class S>
EMat<S> to_eigen_mat(const Mat<S>& m) {
    EMat<S> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

template <class FS>
Vec3<Taylor2Seq<FS>> solve_impl(const Params& p, const std::array<double, 3>& c_bar,
                                FS l1, FS l2, const std::array<FS, 3>& v1,
                                const std::array<FS, 3>& v2, int K,
                                const NewtonOptions& opt) {
    Vec3<FS> c{FS(c_bar[0]), FS(c_bar[1]), FS(c_bar[2])};
    auto phi = build_phi<FS>(c, {v1[0], v1[1], v1[2]}, {v2[0], v2[1], v2[2]});

    auto f = [&](const EVec<FS>& x) -> EVec<FS> {
        std::vector<FS> xv(x.data(), x.data() + x.size());
        auto P = unflatten_taylor(xv, K);
        auto r = manifold_residual(P, phi, l1, l2, p.a_mid, p.b_mid);
        for (auto& ri : r) ri = truncate(ri, K);
        return to_eigen_vec(flatten(r, K));
    };
    auto df = [&](const EVec<FS>& x) -> EMat<FS> {
        std::vector<FS> xv(x.data(), x.data() + x.size());
        auto P = unflatten_taylor(xv, K);
        return to_eigen_mat(manifold_jacobian_matrix(P, l1, l2, p.a_mid, p.b_mid, K, K));
    };

    auto [sol, ok] = newton(f, df, to_eigen_vec(flatten(phi, K)), opt);
    if (!ok)
        throw std::runtime_error(
            "solve_manifold: Newton did not converge; try a smaller eigenvector scale");
    std::vector<FS> sv(sol.data(), sol.data() + sol.size());
    return unflatten_taylor(sv, K);
}

} // namespace

Vec3<Taylor2Seq<complex<double>>> solve_manifold_float(
    const Params& p, const std::array<double, 3>& c_bar, complex<double> l1,
    complex<double> l2, const std::array<complex<double>, 3>& v1,
    const std::array<complex<double>, 3>& v2, int K, const NewtonOptions& opt) {
    return solve_impl<complex<double>>(p, c_bar, l1, l2, v1, v2, K, opt);
}

Vec3<Taylor2Seq<double>> solve_manifold_float_real(const Params& p,
                                                   const std::array<double, 3>& c_bar,
                                                   double l1, double l2,
                                                   const std::array<double, 3>& v1,
                                                   const std::array<double, 3>& v2, int K,
                                                   const NewtonOptions& opt) {
    return solve_impl<double>(p, c_bar, l1, l2, v1, v2, K, opt);
}

Vec3<Taylor2Seq<complex<double>>> manifold_recursion_float(
    const Params& p, const std::array<double, 3>& c_bar, complex<double> l1,
    complex<double> l2, const std::array<complex<double>, 3>& v1,
    const std::array<complex<double>, 3>& v2, int K) {
    using CD = complex<double>;
    Vec3<Taylor2Seq<CD>> P{Taylor2Seq<CD>(K, K), Taylor2Seq<CD>(K, K), Taylor2Seq<CD>(K, K)};
    for (int i = 0; i < 3; ++i) {
        P[static_cast<size_t>(i)].at(0, 0) = c_bar[static_cast<size_t>(i)];
        P[static_cast<size_t>(i)].at(1, 0) = v1[static_cast<size_t>(i)];
        P[static_cast<size_t>(i)].at(0, 1) = v2[static_cast<size_t>(i)];
    }
    Eigen::Matrix3cd J;
    {
        Vec3<double> c{c_bar[0], c_bar[1], c_bar[2]};
        auto j = jacobian<double>(c, p.a_mid, p.b_mid);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                J(i, k) = j[static_cast<size_t>(i)][static_cast<size_t>(k)];
    }
    // Graded order-by-order solve: ((k.lambda) I - Df(c)) P_k = Q_k with Q_k
    // the convolution contributions from strictly lower orders.
    for (int n = 2; n <= 2 * K; ++n) {
        for (int k1 = std::max(0, n - K); k1 <= std::min(K, n); ++k1) {
            int k2 = n - k1;
            if (k2 > K) continue;
            CD conv13 = 0.0, conv11 = 0.0;
            for (int m1 = 0; m1 <= k1; ++m1)
                for (int m2 = 0; m2 <= k2; ++m2) {
                    conv13 += P[0].get(k1 - m1, k2 - m2) * P[2].get(m1, m2);
                    conv11 += P[0].get(k1 - m1, k2 - m2) * P[0].get(m1, m2);
                }
            Eigen::Vector3cd q(0.0, -conv13, conv11);
            CD kl = static_cast<double>(k1) * l1 + static_cast<double>(k2) * l2;
            Eigen::Matrix3cd lhs = kl * Eigen::Matrix3cd::Identity() - J;
            Eigen::Vector3cd pk = lhs.partialPivLu().solve(q);
            for (int i = 0; i < 3; ++i) P[static_cast<size_t>(i)].at(k1, k2) = pk(i);
        }
    }
    return P;
}

// ---------------------------------------------------------------------------
// Validation.

namespace {

// Scaled eigenvector enclosures and float mirrors for one side of the proof.
template <class S>
struct EigenData {
    S l1, l2;
    Vec3<S> v1, v2;
};

Interval real_part(const CI& z, const char* what) {
    if (!(z.im.lo == 0.0 && z.im.hi == 0.0))
        throw std::invalid_argument(std::string(what) + ": expected exactly real enclosure");
    return z.re;
}

template <class S>
EigenData<S> eigen_data(const EigenCertificate& e1, const EigenCertificate& e2,
                        double scale) {
    Interval s = exact(scale);
    if constexpr (std::is_same_v<S, CI>) {
        EigenData<CI> d;
        d.l1 = e1.lambda;
        d.l2 = e2.lambda;
        for (int i = 0; i < 3; ++i) {
            d.v1[static_cast<size_t>(i)] = s * e1.v[static_cast<size_t>(i)];
            d.v2[static_cast<size_t>(i)] = s * e2.v[static_cast<size_t>(i)];
        }
        return d;
    } else {
        EigenData<Interval> d;
        d.l1 = real_part(e1.lambda, "eigenvalue");
        d.l2 = real_part(e2.lambda, "eigenvalue");
        for (int i = 0; i < 3; ++i) {
            d.v1[static_cast<size_t>(i)] = s * real_part(e1.v[static_cast<size_t>(i)], "eigenvector");
            d.v2[static_cast<size_t>(i)] = s * real_part(e2.v[static_cast<size_t>(i)], "eigenvector");
        }
        return d;
    }
}

Vec3<Taylor2Seq<CI>> promote(const Vec3<Taylor2Seq<complex<double>>>& P) {
    Vec3<Taylor2Seq<CI>> out;
    for (int c = 0; c < 3; ++c) {
        Taylor2Seq<CI> u(P[static_cast<size_t>(c)].order1(), P[static_cast<size_t>(c)].order2());
        for (int i = 0; i <= u.order1(); ++i)
            for (int j = 0; j <= u.order2(); ++j) {
                complex<double> z = P[static_cast<size_t>(c)].at(i, j);
                u.at(i, j) = CI(Interval(z.real()), Interval(z.imag()));
            }
        out[static_cast<size_t>(c)] = std::move(u);
    }
    return out;
}
Vec3<Taylor2Seq<Interval>> promote(const Vec3<Taylor2Seq<double>>& P) {
    Vec3<Taylor2Seq<Interval>> out;
    for (int c = 0; c < 3; ++c) {
        Taylor2Seq<Interval> u(P[static_cast<size_t>(c)].order1(),
                               P[static_cast<size_t>(c)].order2());
        for (int i = 0; i <= u.order1(); ++i)
            for (int j = 0; j <= u.order2(); ++j)
                u.at(i, j) = Interval(P[static_cast<size_t>(c)].at(i, j));
        out[static_cast<size_t>(c)] = std::move(u);
    }
    return out;
}

Vec3<Taylor2Seq<CI>> complexify(const Vec3<Taylor2Seq<Interval>>& P) {
    Vec3<Taylor2Seq<CI>> out;
    for (int c = 0; c < 3; ++c) {
        Taylor2Seq<CI> u(P[static_cast<size_t>(c)].order1(), P[static_cast<size_t>(c)].order2());
        for (int i = 0; i <= u.order1(); ++i)
            for (int j = 0; j <= u.order2(); ++j)
                u.at(i, j) = CI(P[static_cast<size_t>(c)].at(i, j));
        out[static_cast<size_t>(c)] = std::move(u);
    }
    return out;
}

// Lower bound of min |Re lambda_i| with the same-half-plane gate.
double min_re_margin(const Interval& re1, const Interval& re2) {
    bool both_neg = re1.hi < 0.0 && re2.hi < 0.0;
    bool both_pos = re1.lo > 0.0 && re2.lo > 0.0;
    if (!both_neg && !both_pos)
        throw std::domain_error(
            "manifold: eigenvalues are not rigorously in the same half-plane");
    return std::min(mig(re1), mig(re2));
}

template <class S>
Interval re_interval(const S& z) {
    if constexpr (std::is_same_v<S, CI>) return z.re;
    else return z;
}

// The Prop-style Z assembly shared by both manifold proofs.
struct ZParts {
    Interval Z0, Z1, Z;
    Interval finite_norm, tail_L, df_norm, opnorm_AL;
};

template <class S>
ZParts z_bounds(const Mat<S>& A_fin, const Vec3<Taylor2Seq<S>>& P_enc,
                const Mat<S>& DF_K, const S& l1, const S& l2, const Params& p,
                int K, const Interval& nu, double R) {
    using T = ScalarTraits<S>;
    int nc = (K + 1) * (K + 1);
    int cols = 3 * nc;

    std::vector<Interval> pw(static_cast<size_t>(4 * K) + 1);
    pw[0] = exact(1);
    for (int n = 1; n <= 4 * K; ++n) pw[n] = pw[n - 1] * nu;

    // Finite block of Z0: columns of  P_{<=K} - A DF(P)  restricted to
    // rows of order <= 2K; rows <= K carry I - A_fin DF_K, higher rows pass
    // through A's identity tail and contribute -L Df entries directly.
    Mat<S> prod = mul(A_fin, DF_K);
    std::vector<Interval> col_sums(static_cast<size_t>(cols), Interval(0.0));
    for (int c = 0; c < 3; ++c)
        for (int k1 = 0; k1 <= K; ++k1)
            for (int k2 = 0; k2 <= K; ++k2) {
                int row = c * nc + k1 * (K + 1) + k2;
                const Interval& w = pw[static_cast<size_t>(k1) + k2];
                for (int l = 0; l < cols; ++l) {
                    S v = (row == l ? T::one() : T::zero()) - prod(row, l);
                    Interval a = T::abs_enclosure(v);
                    if (a.hi != 0.0) col_sums[static_cast<size_t>(l)] += a * w;
                }
            }

    // Streamed tail rows K < max(k1,k2) <= 2K of -DiagL Df(P).
    auto W = jacobian_multipliers(P_enc, p.a, p.b);
    for (int k1 = 0; k1 <= 2 * K; ++k1)
        for (int k2 = 0; k2 <= 2 * K; ++k2) {
            if (std::max(k1, k2) <= K) continue;
            S div = T::from_int(k1) * l1 + T::from_int(k2) * l2;
            S li = T::one() / div;
            Interval li_abs = T::abs_enclosure(li);
            const Interval& w = pw[static_cast<size_t>(k1) + k2];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const auto& wij = W[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    int m1lo = std::max(0, k1 - K), m2lo = std::max(0, k2 - K);
                    int m1hi = std::min(k1, wij.order1()), m2hi = std::min(k2, wij.order2());
                    for (int m1 = m1lo; m1 <= m1hi; ++m1)
                        for (int m2 = m2lo; m2 <= m2hi; ++m2) {
                            Interval a = T::abs_enclosure(wij.at(m1, m2));
                            if (a.hi == 0.0) continue;
                            int col = j * nc + (k1 - m1) * (K + 1) + (k2 - m2);
                            col_sums[static_cast<size_t>(col)] += li_abs * a * w;
                        }
                }
        }

    ZParts out;
    Interval finite(0.0);
    for (int c = 0; c < 3; ++c)
        for (int l1i = 0; l1i <= K; ++l1i)
            for (int l2i = 0; l2i <= K; ++l2i) {
                int col = c * nc + l1i * (K + 1) + l2i;
                finite = imax(finite, col_sums[static_cast<size_t>(col)] /
                                          pw[static_cast<size_t>(l1i) + l2i]);
            }
    out.finite_norm = finite;

    double margin = min_re_margin(re_interval(l1), re_interval(l2));
    out.tail_L = exact(1) / (exact(K + 1) * Interval(margin));

    // ||Df(P)|| as the max over columns of the summed multiplier norms.
    Interval df_norm(0.0);
    for (int j = 0; j < 3; ++j) {
        Interval s(0.0);
        for (int i = 0; i < 3; ++i)
            s += weighted_norm(W[static_cast<size_t>(i)][static_cast<size_t>(j)], nu);
        df_norm = imax(df_norm, s);
    }
    out.df_norm = df_norm;
    out.Z0 = imax(out.finite_norm, out.tail_L * df_norm);

    // ||A DiagL P_{<=K}||: columns of A_fin scaled by the divisor inverses.
    Interval al(0.0);
    for (int c = 0; c < 3; ++c)
        for (int l1i = 0; l1i <= K; ++l1i)
            for (int l2i = 0; l2i <= K; ++l2i) {
                if (l1i + l2i < 2) continue;
                int col = c * nc + l1i * (K + 1) + l2i;
                S div = T::from_int(l1i) * l1 + T::from_int(l2i) * l2;
                Interval li_abs = T::abs_enclosure(T::one() / div);
                Interval s(0.0);
                for (int cc = 0; cc < 3; ++cc)
                    for (int k1 = 0; k1 <= K; ++k1)
                        for (int k2 = 0; k2 <= K; ++k2) {
                            Interval a = T::abs_enclosure(
                                A_fin(cc * nc + k1 * (K + 1) + k2, col));
                            if (a.hi != 0.0) s += a * pw[static_cast<size_t>(k1) + k2];
                        }
                al = imax(al, s * li_abs / pw[static_cast<size_t>(l1i) + l2i]);
            }
    out.opnorm_AL = imax(al, out.tail_L);
    out.Z1 = exact(2) * Interval(R) * out.opnorm_AL;
    out.Z = out.Z0 + out.Z1;
    return out;
}

template <class S, class FS>
ManifoldCertificate validate_impl(const Params& p, const EquilibriumCertificate& c,
                                  const EigenCertificate& e1, const EigenCertificate& e2,
                                  int K, double nu, double scale, double R_factor,
                                  const NewtonOptions& opt, bool stable_side) {
    if (K < 2) throw std::invalid_argument("validate_manifold: K must be >= 2");
    if (!(nu > 1.0)) throw std::invalid_argument("validate_manifold: nu must exceed 1");
    if (!e1.sign_definite || !e2.sign_definite)
        throw std::invalid_argument("validate_manifold: sign-indefinite eigenvalue certificate");

    EigenData<S> ed = eigen_data<S>(e1, e2, scale);
    min_re_margin(re_interval(ed.l1), re_interval(ed.l2)); // non-resonance gate

    // Floating-point solve from the first-order guess.
    std::array<FS, 3> v1f, v2f;
    FS l1f, l2f;
    if constexpr (std::is_same_v<S, CI>) {
        for (int i = 0; i < 3; ++i) {
            v1f[static_cast<size_t>(i)] = complex<double>(mid(ed.v1[static_cast<size_t>(i)].re),
                                                          mid(ed.v1[static_cast<size_t>(i)].im));
            v2f[static_cast<size_t>(i)] = complex<double>(mid(ed.v2[static_cast<size_t>(i)].re),
                                                          mid(ed.v2[static_cast<size_t>(i)].im));
        }
        l1f = complex<double>(mid(ed.l1.re), mid(ed.l1.im));
        l2f = complex<double>(mid(ed.l2.re), mid(ed.l2.im));
    } else {
        for (int i = 0; i < 3; ++i) {
            v1f[static_cast<size_t>(i)] = mid(ed.v1[static_cast<size_t>(i)]);
            v2f[static_cast<size_t>(i)] = mid(ed.v2[static_cast<size_t>(i)]);
        }
        l1f = mid(ed.l1);
        l2f = mid(ed.l2);
    }
    auto P_bar = solve_impl<FS>(p, c.c_bar, l1f, l2f, v1f, v2f, K, opt);

    // Exact conjugation symmetry of the midpoints, P_{(k2,k1)} = conj P_{(k1,k2)},
    // so that evaluation on gamma(alpha) is provably real downstream.
    if constexpr (std::is_same_v<S, CI>) {
        for (auto& comp : P_bar)
            for (int i = 0; i <= comp.order1(); ++i) {
                comp.at(i, i) = complex<double>(comp.at(i, i).real(), 0.0);
                for (int j = 0; j < i; ++j) comp.at(j, i) = std::conj(comp.at(i, j));
            }
    }

    auto P_enc = promote(P_bar);

    // phi with certified enclosures.
    Vec3<S> c_enc;
    for (int i = 0; i < 3; ++i) {
        if constexpr (std::is_same_v<S, CI>)
            c_enc[static_cast<size_t>(i)] = CI(c.enclosure[static_cast<size_t>(i)]);
        else
            c_enc[static_cast<size_t>(i)] = c.enclosure[static_cast<size_t>(i)];
    }
    auto phi = build_phi<S>(c_enc, ed.v1, ed.v2);

    Mat<S> DF_K = manifold_jacobian_matrix(P_enc, ed.l1, ed.l2, p.a, p.b, K, K);
    Mat<S> A_fin = to_interval_mat(approx_inverse(mid_mat(DF_K)));

    SpaceLayout layout{SpaceLayout::Kind::taylor2, K, 3, 0};
    SeqOperator<S> A = make_tail_extended(A_fin, layout);

    Interval nu_i = exact(nu);
    auto F = manifold_residual(P_enc, phi, ed.l1, ed.l2, p.a, p.b);
    auto AF = matvec(A, F);
    Interval Y = product_norm(AF, nu_i);

    double R = R_factor * Y.hi;
    ZParts z = z_bounds(A_fin, P_enc, DF_K, ed.l1, ed.l2, p, K, nu_i, R);

    ExistenceResult res = interval_of_existence(Y, z.Z, R);
    if (!res.success)
        throw std::runtime_error("validate_manifold: contraction gate failed (Z = " +
                                 to_string(z.Z) + ")");

    ManifoldCertificate cert;
    if constexpr (std::is_same_v<S, CI>) {
        cert.P = P_enc;
        cert.lambda1 = ed.l1;
        cert.lambda2 = ed.l2;
        cert.v1 = ed.v1;
        cert.v2 = ed.v2;
        cert.real_valued = false;
    } else {
        cert.P = complexify(P_enc);
        cert.lambda1 = CI(ed.l1);
        cert.lambda2 = CI(ed.l2);
        for (int i = 0; i < 3; ++i) {
            cert.v1[static_cast<size_t>(i)] = CI(ed.v1[static_cast<size_t>(i)]);
            cert.v2[static_cast<size_t>(i)] = CI(ed.v2[static_cast<size_t>(i)]);
        }
        cert.real_valued = true;
    }
    cert.r = res.r_inf;
    cert.nu = nu;
    cert.K = K;
    cert.scale = scale;
    cert.stable_side = stable_side;
    cert.c_bar = c.c_bar;
    cert.c_r = c.r;
    cert.Y = Y;
    cert.Z0 = z.Z0;
    cert.Z1 = z.Z1;
    cert.Z = z.Z;
    cert.R = R;
    return cert;
}

} // namespace

ManifoldCertificate validate_manifold(const Params& p, const EquilibriumCertificate& c,
                                      const EigenCertificate& e1,
                                      const EigenCertificate& e2, int K, double nu,
                                      double scale, double R_factor,
                                      const NewtonOptions& opt) {
    bool stable = e1.stability == Stability::stable;
    if ((e2.stability == Stability::stable) != stable)
        throw std::invalid_argument("validate_manifold: mixed stability eigenpair");
    if (e1.real_pair && e2.real_pair)
        return validate_impl<Interval, double>(p, c, e1, e2, K, nu, scale, R_factor, opt,
                                               stable);
    // Complex pair: require exactly conjugate enclosures so the restriction
    // to gamma(alpha) is real.
    EigenCertificate e2c = conjugate_pair(e1);
    if (!(e2.lambda.re == e2c.lambda.re && e2.lambda.im == e2c.lambda.im))
        throw std::invalid_argument(
            "validate_manifold: second eigenpair must be the conjugate certificate");
    return validate_impl<CI, complex<double>>(p, c, e1, e2c, K, nu, scale, R_factor, opt,
                                              stable);
}

Vec3<Taylor2Seq<complex<double>>> midpoint_coefficients(const ManifoldCertificate& cert) {
    using CD = complex<double>;
    Vec3<Taylor2Seq<CD>> P;
    for (int c = 0; c < 3; ++c) {
        const auto& src = cert.P[static_cast<size_t>(c)];
        Taylor2Seq<CD> u(src.order1(), src.order2());
        for (int i = 0; i <= src.order1(); ++i)
            for (int j = 0; j <= src.order2(); ++j)
                u.at(i, j) = CD(mid(src.at(i, j).re), mid(src.at(i, j).im));
        P[static_cast<size_t>(c)] = std::move(u);
    }
    return P;
}

double manifold_invariance_residual(const ManifoldCertificate& cert, const Params& p,
                                    int n_samples) {
    using CD = complex<double>;
    Vec3<Taylor2Seq<CD>> P = midpoint_coefficients(cert);
    CD l1(mid(cert.lambda1.re), mid(cert.lambda1.im));
    CD l2(mid(cert.lambda2.re), mid(cert.lambda2.im));

    Vec3<Taylor2Seq<CD>> d1, d2;
    for (int c = 0; c < 3; ++c) {
        d1[static_cast<size_t>(c)] = partial_derivative(P[static_cast<size_t>(c)], 1);
        d2[static_cast<size_t>(c)] = partial_derivative(P[static_cast<size_t>(c)], 2);
    }

    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        CD t1, t2;
        if (cert.real_valued) {
            // Boundary of the real unit square.
            double u = -1.0 + 2.0 * static_cast<double>(s) / (n_samples - 1);
            if (s % 2 == 0) t1 = CD(u, 0.0), t2 = CD(s % 4 == 0 ? 1.0 : -1.0, 0.0);
            else t2 = CD(u, 0.0), t1 = CD(s % 4 == 1 ? 1.0 : -1.0, 0.0);
        } else {
            double phi = 2.0 * M_PI * static_cast<double>(s) / n_samples;
            t1 = std::polar(1.0, phi);
            t2 = std::conj(t1);
        }
        Vec3<CD> val, lhs;
        for (int c = 0; c < 3; ++c) {
            val[static_cast<size_t>(c)] = eval(P[static_cast<size_t>(c)], t1, t2);
            lhs[static_cast<size_t>(c)] = eval(d1[static_cast<size_t>(c)], t1, t2) * l1 * t1 +
                                          eval(d2[static_cast<size_t>(c)], t1, t2) * l2 * t2;
        }
        auto rhs = vector_field(val, p.a_mid, p.b_mid);
        for (int c = 0; c < 3; ++c)
            worst = std::max(worst,
                             std::abs(lhs[static_cast<size_t>(c)] - rhs[static_cast<size_t>(c)]));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Rigorous evaluation inside the unit polydisk.

namespace {

Interval modulus(const CI& z) {
    Interval m2 = abs2(z);
    return sqrt(Interval(std::max(0.0, m2.lo), m2.hi));
}

Interval derivative_widening(double r, const Interval& mod, double nu) {
    if (mod.lo <= 0.0)
        throw std::domain_error("rigorous_eval: |theta_j| encloses zero, derivative bound unavailable");
    if (!(mod.hi < nu))
        throw std::domain_error("rigorous_eval: |theta_j| reaches the polydisk radius nu");
    Interval e = exp(exact(1));
    Interval lnterm = abs(ln(mod / exact(nu)));
    return Interval(r) / (e * mod * lnterm);
}

} // namespace

// The Lemma bounds hold for the exact point, which the caller guarantees to
// lie in the closed unit polydisk; enclosures of circle points overshoot 1 by
// outward rounding, so the gates test the lower bounds and the widening
// formula is evaluated on the modulus clipped back to [0, 1].
Vec3<CI> rigorous_eval_value(const ManifoldCertificate& cert, const CI& t1, const CI& t2) {
    if (modulus(t1).lo > 1.0 || modulus(t2).lo > 1.0)
        throw std::domain_error("rigorous_eval: point outside the closed unit polydisk");
    Vec3<CI> out;
    Interval pad = midpoint_radius(0.0, cert.r);
    for (int c = 0; c < 3; ++c) {
        CI v = eval(cert.P[static_cast<size_t>(c)], t1, t2);
        out[static_cast<size_t>(c)] = CI(v.re + pad, v.im + pad);
    }
    return out;
}

std::array<std::array<CI, 2>, 3> rigorous_eval_jacobian(const ManifoldCertificate& cert,
                                                        const CI& t1, const CI& t2) {
    if (modulus(t1).lo > 1.0 || modulus(t2).lo > 1.0)
        throw std::domain_error("rigorous_eval: point outside the closed unit polydisk");
    auto clip = [](const Interval& m) { return intersect(m, Interval(0.0, 1.0)); };
    std::array<Interval, 2> wid{derivative_widening(cert.r, clip(modulus(t1)), cert.nu),
                                derivative_widening(cert.r, clip(modulus(t2)), cert.nu)};
    std::array<std::array<CI, 2>, 3> out;
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 2; ++j) {
            auto d = partial_derivative(cert.P[static_cast<size_t>(c)], j + 1);
            CI v = eval(d, t1, t2);
            Interval pad = midpoint_radius(0.0, wid[static_cast<size_t>(j)]);
            out[static_cast<size_t>(c)][static_cast<size_t>(j)] = CI(v.re + pad, v.im + pad);
        }
    return out;
}

Vec3<Taylor2Seq<Interval>> real_coefficients(const ManifoldCertificate& cert) {
    if (!cert.real_valued)
        throw std::invalid_argument("real_coefficients: certificate is not real-valued");
    Vec3<Taylor2Seq<Interval>> out;
    for (int c = 0; c < 3; ++c) {
        const auto& src = cert.P[static_cast<size_t>(c)];
        Taylor2Seq<Interval> u(src.order1(), src.order2());
        for (int i = 0; i <= src.order1(); ++i)
            for (int j = 0; j <= src.order2(); ++j)
                u.at(i, j) = real_part(src.at(i, j), "real_coefficients");
        out[static_cast<size_t>(c)] = std::move(u);
    }
    return out;
}

Vec3<Interval> rigorous_eval_value_real(const ManifoldCertificate& cert, const Interval& t1,
                                        const Interval& t2) {
    if (mag(t1) > 1.0 || mag(t2) > 1.0)
        throw std::domain_error("rigorous_eval: point outside the closed unit polydisk");
    auto P = real_coefficients(cert);
    Interval pad = midpoint_radius(0.0, cert.r);
    Vec3<Interval> out;
    for (int c = 0; c < 3; ++c)
        out[static_cast<size_t>(c)] = eval(P[static_cast<size_t>(c)], t1, t2) + pad;
    return out;
}

std::array<std::array<Interval, 2>, 3> rigorous_eval_jacobian_real(
    const ManifoldCertificate& cert, const Interval& t1, const Interval& t2) {
    if (mag(t1) > 1.0 || mag(t2) > 1.0)
        throw std::domain_error("rigorous_eval: point outside the closed unit polydisk");
    auto P = real_coefficients(cert);
    std::array<Interval, 2> wid{derivative_widening(cert.r, abs(t1), cert.nu),
                                derivative_widening(cert.r, abs(t2), cert.nu)};
    std::array<std::array<Interval, 2>, 3> out;
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 2; ++j) {
            auto d = partial_derivative(P[static_cast<size_t>(c)], j + 1);
            out[static_cast<size_t>(c)][static_cast<size_t>(j)] =
                eval(d, t1, t2) + midpoint_radius(0.0, wid[static_cast<size_t>(j)]);
        }
    return out;
}

} // namespace smproof
