#include "smproof/connection.hpp"

#include "smproof/linalg.hpp"

namespace smproof {

namespace {

using CI = ComplexInterval;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;

// ---------------------------------------------------------------------------
// Shared assembly pieces.

/// Matrix of the multiplication operator by w on one-sided coefficients:
/// column l contributes w_{|k-l|} (+ w_{k+l} for l >= 1) to row k.
template <class S>
Mat<S> cheb_mult_matrix(const ChebSeq<S>& w, int nrows, int ncols) {
    Mat<S> m(nrows, ncols);
    for (int k = 0; k < nrows; ++k)
        for (int l = 0; l < ncols; ++l)
            m(k, l) = (l == 0) ? w.get(k) : w.get(k - l) + w.get(k + l);
    return m;
}

/// Composition with the antiderivative operator: row k >= 1 combines rows
/// k-1, k+1 of m; row 0 is the dense lower-limit row.
template <class S>
Mat<S> antiderivative_compose(const Mat<S>& m, int nrows_out) {
    using T = ScalarTraits<S>;
    Mat<S> out(nrows_out, m.cols());
    auto row = [&](int r, int l) -> S {
        return (r >= 0 && r < m.rows()) ? m(r, l) : T::zero();
    };
    S two = T::from_int(2);
    for (int l = 0; l < m.cols(); ++l) {
        S head = row(0, l) - row(1, l) / two;
        for (int r = 2; r < m.rows(); ++r) {
            S coeff = T::from_int(r % 2 == 0 ? -2 : 2) /
                      T::from_int(static_cast<long long>(r) * r - 1);
            head += coeff * row(r, l);
        }
        out(0, l) = head;
        for (int k = 1; k < nrows_out; ++k)
            out(k, l) = (row(k - 1, l) - row(k + 1, l)) / T::from_int(2 * k);
    }
    return out;
}

struct Indexer {
    int K;
    int seq(int c, int k) const { return c * (K + 1) + k; }
    int alpha() const { return 3 * (K + 1); }
    int theta(int j) const { return 3 * (K + 1) + 1 + j; } // j = 0, 1
    int dim() const { return 3 * (K + 1) + 3; }
};

Vec3<Taylor2Seq<double>> real_midpoints(const ManifoldCertificate& cert) {
    auto pc = midpoint_coefficients(cert);
    Vec3<Taylor2Seq<double>> out;
    for (int c = 0; c < 3; ++c) {
        Taylor2Seq<double> u(pc[static_cast<size_t>(c)].order1(),
                             pc[static_cast<size_t>(c)].order2());
        for (int i = 0; i <= u.order1(); ++i)
            for (int j = 0; j <= u.order2(); ++j)
                u.at(i, j) = pc[static_cast<size_t>(c)].at(i, j).real();
        out[static_cast<size_t>(c)] = std::move(u);
    }
    return out;
}

// Float data of both manifold charts used by the approximation path.
struct FloatCharts {
    Vec3<Taylor2Seq<complex<double>>> P, dP1, dP2;
    Vec3<Taylor2Seq<double>> Q, dQ1, dQ2;
};

FloatCharts make_float_charts(const ManifoldCertificate& P_cert,
                              const ManifoldCertificate& Q_cert) {
    FloatCharts fc;
    fc.P = midpoint_coefficients(P_cert);
    fc.Q = real_midpoints(Q_cert);
    for (int c = 0; c < 3; ++c) {
        fc.dP1[static_cast<size_t>(c)] = partial_derivative(fc.P[static_cast<size_t>(c)], 1);
        fc.dP2[static_cast<size_t>(c)] = partial_derivative(fc.P[static_cast<size_t>(c)], 2);
        fc.dQ1[static_cast<size_t>(c)] = partial_derivative(fc.Q[static_cast<size_t>(c)], 1);
        fc.dQ2[static_cast<size_t>(c)] = partial_derivative(fc.Q[static_cast<size_t>(c)], 2);
    }
    return fc;
}

std::array<double, 3> eval_P_circle(const FloatCharts& fc, double alpha) {
    complex<double> t1 = std::polar(1.0, alpha);
    complex<double> t2 = std::conj(t1);
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c) {
        complex<double> v = eval(fc.P[static_cast<size_t>(c)], t1, t2);
        if (std::abs(v.imag()) > 1e-8)
            throw std::runtime_error(
                "connection: P(gamma(alpha)) has non-negligible imaginary part");
        out[static_cast<size_t>(c)] = v.real();
    }
    return out;
}

std::array<double, 3> eval_dP_dalpha(const FloatCharts& fc, double alpha) {
    complex<double> t1 = std::polar(1.0, alpha);
    complex<double> t2 = std::conj(t1);
    complex<double> i1(0.0, 1.0);
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c) {
        complex<double> v = eval(fc.dP1[static_cast<size_t>(c)], t1, t2) * (i1 * t1) +
                            eval(fc.dP2[static_cast<size_t>(c)], t1, t2) * (-i1 * t2);
        out[static_cast<size_t>(c)] = v.real();
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Nonrigorous integration and the initial guess.

OrbitIntegrator::OrbitIntegrator(const Params& p, const std::array<double, 3>& w0,
                                 double tau, int steps)
    : tau_(tau), h_(tau / steps), p_(p) {
    knots_.reserve(static_cast<size_t>(steps) + 1);
    knots_.push_back(w0);
    std::array<double, 3> w = w0;
    auto rk4 = [&](const std::array<double, 3>& y, double h) {
        auto f = [&](const std::array<double, 3>& u) {
            return vector_field<double, double>({u[0], u[1], u[2]}, p_.a_mid, p_.b_mid);
        };
        auto k1 = f(y);
        std::array<double, 3> t;
        for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k1[i];
        auto k2 = f(t);
        for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k2[i];
        auto k3 = f(t);
        for (int i = 0; i < 3; ++i) t[i] = y[i] + h * k3[i];
        auto k4 = f(t);
        std::array<double, 3> out;
        for (int i = 0; i < 3; ++i)
            out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        return out;
    };
    for (int s = 0; s < steps; ++s) {
        w = rk4(w, h_);
        knots_.push_back(w);
    }
}

std::array<double, 3> OrbitIntegrator::at(double t) const {
    if (t <= 0.0) return knots_.front();
    if (t >= tau_) return knots_.back();
    auto idx = static_cast<size_t>(t / h_);
    if (idx >= knots_.size() - 1) idx = knots_.size() - 2;
    double dt = t - static_cast<double>(idx) * h_;
    // One partial RK4 step from the stored knot.
    auto f = [&](const std::array<double, 3>& u) {
        return vector_field<double, double>({u[0], u[1], u[2]}, p_.a_mid, p_.b_mid);
    };
    const auto& y = knots_[idx];
    auto k1 = f(y);
    std::array<double, 3> tmp;
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    auto k2 = f(tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    auto k3 = f(tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + dt * k3[i];
    auto k4 = f(tmp);
    std::array<double, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

OrbitGuess generate_initial_guess(const ManifoldCertificate& P_cert,
                                  const ManifoldCertificate& Q_cert, const Params& p,
                                  double alpha0, double tau, int K, int rk_steps,
                                  double endpoint_tol) {
    FloatCharts fc = make_float_charts(P_cert, Q_cert);
    std::array<double, 3> w0 = eval_P_circle(fc, alpha0);
    OrbitIntegrator orbit(p, w0, tau, rk_steps);

    // Chebyshev-Lobatto interpolation of the rescaled trajectory, one-sided
    // convention: u_0 = a_0 / 2, u_k = a_k / 2, u_K = a_K / 4 where a are the
    // classic doubly-halved DCT coefficients.
    OrbitGuess g;
    std::vector<std::array<double, 3>> vals(static_cast<size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) {
        double s = std::cos(M_PI * j / K);
        vals[static_cast<size_t>(j)] = orbit.at(tau * (s + 1.0) / 2.0);
    }
    for (int c = 0; c < 3; ++c) {
        ChebSeq<double> u(K);
        for (int k = 0; k <= K; ++k) {
            double a = 0.0;
            for (int j = 0; j <= K; ++j) {
                double w = (j == 0 || j == K) ? 0.5 : 1.0;
                a += w * vals[static_cast<size_t>(j)][static_cast<size_t>(c)] *
                     std::cos(M_PI * j * k / K);
            }
            a *= 2.0 / K;
            u.at(k) = (k == K) ? a / 4.0 : a / 2.0;
        }
        g.u[static_cast<size_t>(c)] = std::move(u);
    }
    g.alpha = alpha0;

    // theta from least squares on Q(theta) = w(tau), seeded by projecting the
    // endpoint offset onto the eigvector columns.
    std::array<double, 3> wend = orbit.at(tau);
    Eigen::Vector3d rhs(wend[0] - mid(Q_cert.P[0].at(0, 0).re),
                        wend[1] - mid(Q_cert.P[1].at(0, 0).re),
                        wend[2] - mid(Q_cert.P[2].at(0, 0).re));
    Eigen::Matrix<double, 3, 2> V;
    for (int c = 0; c < 3; ++c) {
        V(c, 0) = mid(Q_cert.v1[static_cast<size_t>(c)].re);
        V(c, 1) = mid(Q_cert.v2[static_cast<size_t>(c)].re);
    }
    Eigen::Vector2d th = V.colPivHouseholderQr().solve(rhs);
    double resid = 0.0;
    for (int it = 0; it < 50; ++it) {
        Eigen::Vector3d gvec;
        Eigen::Matrix<double, 3, 2> J;
        for (int c = 0; c < 3; ++c) {
            gvec(c) = eval(fc.Q[static_cast<size_t>(c)], th(0), th(1)) -
                      wend[static_cast<size_t>(c)];
            J(c, 0) = eval(fc.dQ1[static_cast<size_t>(c)], th(0), th(1));
            J(c, 1) = eval(fc.dQ2[static_cast<size_t>(c)], th(0), th(1));
        }
        resid = gvec.lpNorm<1>();
        if (resid < 1e-13) break;
        th -= J.colPivHouseholderQr().solve(gvec);
        th = th.cwiseMax(-0.95).cwiseMin(0.95);
    }
    if (resid > endpoint_tol)
        throw std::runtime_error(
            "generate_initial_guess: endpoint misses the stable chart "
            "(residual " + std::to_string(resid) + "); increase tau or adjust alpha0");
    g.theta1 = th(0);
    g.theta2 = th(1);
    return g;
}

// ---------------------------------------------------------------------------
// Floating-point residual and Jacobian of the truncated problem.

namespace {

VectorXd f_het_float(const VectorXd& x, const FloatCharts& fc, const Params& p,
                     double tau, int K) {
    Indexer ix{K};
    Vec3<ChebSeq<double>> u;
    for (int c = 0; c < 3; ++c) {
        ChebSeq<double> s(K);
        for (int k = 0; k <= K; ++k) s.at(k) = x(ix.seq(c, k));
        u[static_cast<size_t>(c)] = std::move(s);
    }
    double alpha = x(ix.alpha());
    double t1 = x(ix.theta(0)), t2 = x(ix.theta(1));

    std::array<double, 3> pg = eval_P_circle(fc, alpha);
    auto fu = vector_field(u, p.a_mid, p.b_mid);
    VectorXd out(ix.dim());
    for (int c = 0; c < 3; ++c) {
        ChebSeq<double> seq = u[static_cast<size_t>(c)] -
                              ChebSeq<double>::constant(pg[static_cast<size_t>(c)]) -
                              (tau / 2.0) * antiderivative(fu[static_cast<size_t>(c)]);
        for (int k = 0; k <= K; ++k) out(ix.seq(c, k)) = seq.get(k);
        out(3 * (K + 1) + c) = eval_at_one(u[static_cast<size_t>(c)]) -
                               eval(fc.Q[static_cast<size_t>(c)], t1, t2);
    }
    return out;
}

MatrixXd df_het_float(const VectorXd& x, const FloatCharts& fc, const Params& p,
                      double tau, int K) {
    Indexer ix{K};
    Vec3<ChebSeq<double>> u;
    for (int c = 0; c < 3; ++c) {
        ChebSeq<double> s(K);
        for (int k = 0; k <= K; ++k) s.at(k) = x(ix.seq(c, k));
        u[static_cast<size_t>(c)] = std::move(s);
    }
    double alpha = x(ix.alpha());
    double t1 = x(ix.theta(0)), t2 = x(ix.theta(1));

    MatrixXd m = MatrixXd::Zero(ix.dim(), ix.dim());
    auto W = jacobian_multipliers(u, p.a_mid, p.b_mid);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& w = W[static_cast<size_t>(i)][static_cast<size_t>(j)];
            bool zero = true;
            for (int k = 0; k <= w.order() && zero; ++k)
                if (w.at(k) != 0.0) zero = false;
            if (zero) continue;
            Mat<double> mult = cheb_mult_matrix(w, 2 * K + 2, K + 1);
            Mat<double> lcm = antiderivative_compose(mult, K + 1);
            for (int k = 0; k <= K; ++k)
                for (int l = 0; l <= K; ++l)
                    m(ix.seq(i, k), ix.seq(j, l)) -= (tau / 2.0) * lcm(k, l);
        }
    for (int c = 0; c < 3; ++c) {
        m(ix.seq(c, 0), ix.alpha()) = -eval_dP_dalpha(fc, alpha)[static_cast<size_t>(c)];
        for (int k = 0; k <= K; ++k) {
            m(ix.seq(c, k), ix.seq(c, k)) += 1.0;
            m(3 * (K + 1) + c, ix.seq(c, k)) = (k == 0) ? 1.0 : 2.0;
        }
        m(3 * (K + 1) + c, ix.theta(0)) = -eval(fc.dQ1[static_cast<size_t>(c)], t1, t2);
        m(3 * (K + 1) + c, ix.theta(1)) = -eval(fc.dQ2[static_cast<size_t>(c)], t1, t2);
    }
    return m;
}

Interval product_space_norm(const ChebVec<Interval>& x, const Interval& mu) {
    Interval s(0.0);
    for (int c = 0; c < 3; ++c) s += weighted_norm(x.u[static_cast<size_t>(c)], mu);
    for (const Interval& v : x.scalars) s += abs(v);
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// The proof.

ConnectionCertificate validate_connection(const Params& p,
                                          const ManifoldCertificate& P_cert,
                                          const ManifoldCertificate& Q_cert,
                                          const ConnectionOptions& opt) {
    if (opt.K < 2) throw std::invalid_argument("validate_connection: K must be >= 2");
    if (!(opt.mu > 1.0)) throw std::invalid_argument("validate_connection: mu must exceed 1");
    if (P_cert.real_valued || P_cert.stable_side)
        throw std::invalid_argument("validate_connection: P must be the complex unstable chart");
    if (!Q_cert.real_valued || !Q_cert.stable_side)
        throw std::invalid_argument("validate_connection: Q must be the real stable chart");

    const int K = opt.K;
    const double tau = opt.tau;
    Indexer ix{K};
    FloatCharts fc = make_float_charts(P_cert, Q_cert);

    OrbitGuess guess = generate_initial_guess(P_cert, Q_cert, p, opt.alpha0, tau, K,
                                              opt.rk_steps, opt.endpoint_tol);
    VectorXd x0(ix.dim());
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k <= K; ++k)
            x0(ix.seq(c, k)) = guess.u[static_cast<size_t>(c)].get(k);
    x0(ix.alpha()) = guess.alpha;
    x0(ix.theta(0)) = guess.theta1;
    x0(ix.theta(1)) = guess.theta2;

    auto f = [&](const VectorXd& z) { return f_het_float(z, fc, p, tau, K); };
    auto df = [&](const VectorXd& z) { return df_het_float(z, fc, p, tau, K); };
    auto clamp_theta = [&](VectorXd& z) {
        // Rigorous evaluation of Q needs interior points.
        for (int j = 0; j < 2; ++j)
            z(ix.theta(j)) = std::clamp(z(ix.theta(j)), -0.9, 0.9);
    };
    auto [xbar, ok] = newton(f, df, x0, opt.newton, clamp_theta);
    if (!ok)
        throw std::runtime_error("validate_connection: Newton did not converge on the BVP");

    Vec3<ChebSeq<double>> u_bar;
    Vec3<ChebSeq<Interval>> u_enc;
    for (int c = 0; c < 3; ++c) {
        ChebSeq<double> s(K);
        ChebSeq<Interval> si(K);
        for (int k = 0; k <= K; ++k) {
            s.at(k) = xbar(ix.seq(c, k));
            si.at(k) = Interval(s.at(k));
        }
        u_bar[static_cast<size_t>(c)] = std::move(s);
        u_enc[static_cast<size_t>(c)] = std::move(si);
    }
    double alpha_bar = xbar(ix.alpha());
    double th1 = xbar(ix.theta(0)), th2 = xbar(ix.theta(1));

    Mat<Interval> A_fin = to_interval_mat(approx_inverse(MatrixXd(df(xbar))));
    SpaceLayout layout{SpaceLayout::Kind::cheb, K, 3, 3};
    SeqOperator<Interval> A = make_tail_extended(A_fin, layout);

    Interval mu_i = exact(opt.mu);
    Interval tau_half = Interval(tau) / exact(2);

    // Y = ||A F(x_bar)|| with every chart evaluation carried rigorously.
    auto sigma = unit_circle(exact(alpha_bar));
    Vec3<CI> pg_c = rigorous_eval_value(P_cert, sigma.first, sigma.second);
    Vec3<Interval> pg;
    for (int c = 0; c < 3; ++c) {
        if (!pg_c[static_cast<size_t>(c)].im.contains_zero())
            throw std::runtime_error(
                "validate_connection: imaginary part of P(gamma(alpha)) does not enclose 0");
        pg[static_cast<size_t>(c)] = pg_c[static_cast<size_t>(c)].re;
    }
    Vec3<Interval> qv = rigorous_eval_value_real(Q_cert, exact(th1), exact(th2));

    ChebVec<Interval> F;
    auto fu = vector_field(u_enc, p.a, p.b);
    for (int c = 0; c < 3; ++c)
        F.u[static_cast<size_t>(c)] =
            u_enc[static_cast<size_t>(c)] -
            ChebSeq<Interval>::constant(pg[static_cast<size_t>(c)]) -
            tau_half * antiderivative(fu[static_cast<size_t>(c)]);
    F.scalars.resize(3);
    for (int c = 0; c < 3; ++c)
        F.scalars[static_cast<size_t>(c)] =
            eval_at_one(u_enc[static_cast<size_t>(c)]) - qv[static_cast<size_t>(c)];
    ChebVec<Interval> AF = matvec(A, F);
    Interval Y = product_space_norm(AF, mu_i);
    double R = opt.R_factor * Y.hi;

    // Z0 finite part: rows up to 3K+2 of  P_{<=2K+1} - A DF(x_bar) P_{<=2K+1}.
    const int rows_ord = 3 * K + 2, cols_ord = 2 * K + 1;
    const int nrows = 3 * (rows_ord + 1) + 3, ncols = 3 * (cols_ord + 1) + 3;
    auto bseq = [&](int c, int k) { return c * (rows_ord + 1) + k; };
    auto bscal = [&](int c) { return 3 * (rows_ord + 1) + c; };
    auto cseq = [&](int c, int l) { return c * (cols_ord + 1) + l; };
    const int calpha = 3 * (cols_ord + 1);

    Mat<Interval> B(nrows, ncols);
    auto W = jacobian_multipliers(u_enc, p.a, p.b);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& w = W[static_cast<size_t>(i)][static_cast<size_t>(j)];
            bool zero = true;
            for (int k = 0; k <= w.order() && zero; ++k)
                if (mag(w.at(k)) != 0.0) zero = false;
            if (zero) continue;
            Mat<Interval> mult = cheb_mult_matrix(w, rows_ord + 2, cols_ord + 1);
            Mat<Interval> lcm = antiderivative_compose(mult, rows_ord + 1);
            for (int k = 0; k <= rows_ord; ++k)
                for (int l = 0; l <= cols_ord; ++l) {
                    Interval v = tau_half * lcm(k, l);
                    if (!(v.lo == 0.0 && v.hi == 0.0))
                        B(bseq(i, k), cseq(j, l)) -= v;
                }
        }
    for (int c = 0; c < 3; ++c) {
        for (int l = 0; l <= cols_ord; ++l) {
            if (l <= rows_ord) B(bseq(c, l), cseq(c, l)) += exact(1);
            B(bscal(c), cseq(c, l)) = exact(l == 0 ? 1 : 2);
        }
    }
    {
        auto Jp = rigorous_eval_jacobian(P_cert, sigma.first, sigma.second);
        CI iunit(exact(0), exact(1));
        for (int c = 0; c < 3; ++c) {
            CI d = Jp[static_cast<size_t>(c)][0] * (iunit * sigma.first) +
                   Jp[static_cast<size_t>(c)][1] * (-iunit * sigma.second);
            if (!d.im.contains_zero())
                throw std::runtime_error(
                    "validate_connection: imaginary part of dP/dalpha does not enclose 0");
            B(bseq(c, 0), calpha) = -d.re;
        }
        auto Jq = rigorous_eval_jacobian_real(Q_cert, exact(th1), exact(th2));
        for (int c = 0; c < 3; ++c)
            for (int j = 0; j < 2; ++j)
                B(bscal(c), calpha + 1 + j) = -Jq[static_cast<size_t>(c)][static_cast<size_t>(j)];
    }

    // Head rows (sequence orders <= K plus the scalar rows) feed the finite
    // block of A; all other rows pass through the identity tail.
    Mat<Interval> B_head(ix.dim(), ncols);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k <= K; ++k)
            for (int l = 0; l < ncols; ++l) B_head(ix.seq(c, k), l) = B(bseq(c, k), l);
    for (int c = 0; c < 3; ++c)
        for (int l = 0; l < ncols; ++l) B_head(3 * (K + 1) + c, l) = B(bscal(c), l);
    Mat<Interval> prod = mul(A_fin, B_head);

    Mat<Interval> N(nrows, ncols);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k <= rows_ord; ++k) {
            int row = bseq(c, k);
            for (int l = 0; l < ncols; ++l) {
                Interval av = (k <= K) ? prod(ix.seq(c, k), l) : B(row, l);
                Interval id = (k <= cols_ord && l == cseq(c, k)) ? exact(1) : exact(0);
                N(row, l) = id - av;
            }
        }
    // Scalar coordinate rows: the boundary components of F occupy the
    // (alpha, theta1, theta2) slots of the product space.
    for (int c = 0; c < 3; ++c) {
        int row = bscal(c);
        for (int l = 0; l < ncols; ++l) {
            Interval id = (l == calpha + c) ? exact(1) : exact(0);
            N(row, l) = id - prod(3 * (K + 1) + c, l);
        }
    }

    WeightProfile w_out = cheb_weights(rows_ord, mu_i, 3, 3);
    WeightProfile w_in = cheb_weights(cols_ord, mu_i, 3, 3);
    Interval finite = weighted_opnorm(N, w_out, w_in);

    // Tail part of Z0 per the closed-form antiderivative norms.
    WeightProfile wK = cheb_weights(K, mu_i, 3, 3);
    Interval norm_AP0(0.0);
    for (int c = 0; c < 3; ++c) {
        Interval s(0.0);
        for (int k = 0; k < ix.dim(); ++k)
            s += abs(A_fin(k, ix.seq(c, 0))) * wK.w[static_cast<size_t>(k)];
        norm_AP0 = imax(norm_AP0, s);
    }
    Interval p0lc = exact(1) / (pow_int(mu_i, K + 2) *
                                exact(static_cast<long long>(K + 2) * (K + 2) - 1));
    Interval pklc = exact(1) / (exact(2) * exact(K + 1) * mu_i) +
                    mu_i / (exact(2) * exact(K + 3));
    Interval M = norm_AP0 * p0lc + pklc;

    Interval df_norm(0.0);
    for (int j = 0; j < 3; ++j) {
        Interval s(0.0);
        for (int i = 0; i < 3; ++i)
            s += weighted_norm(W[static_cast<size_t>(i)][static_cast<size_t>(j)], mu_i);
        df_norm = imax(df_norm, s);
    }
    Interval Z0 = imax(finite, M * abs(tau_half) * df_norm);

    Interval norm_A = imax(weighted_opnorm(A_fin, wK, wK), Interval(1.0));
    Interval lc_norm = exact(1) + mu_i;
    Interval Z1 = exact(2) * Interval(R) * abs(tau_half) * norm_A * lc_norm;
    Interval Z = Z0 + Z1;

    ExistenceResult res = interval_of_existence(Y, Z, R);
    if (!res.success)
        throw std::runtime_error("validate_connection: contraction gate failed (Z = " +
                                 to_string(Z) + ")");
    double r = res.r_inf;

    // Certified coordinates must stay strictly inside the unit polydisk.
    if (!(std::abs(th1) + r < 1.0 && std::abs(th2) + r < 1.0))
        throw std::runtime_error("validate_connection: theta coordinates too close to the chart boundary");

    // Endpoint consistency: u(1) and Q(theta) enclosures, widened by r, must meet.
    for (int c = 0; c < 3; ++c) {
        Interval lhs = eval_at_one(u_enc[static_cast<size_t>(c)]) + midpoint_radius(0.0, r);
        Interval rhs = qv[static_cast<size_t>(c)] + midpoint_radius(0.0, r);
        if (lhs.hi < rhs.lo || rhs.hi < lhs.lo)
            throw std::logic_error("validate_connection: endpoint consistency check failed");
    }

    ConnectionCertificate cert;
    cert.u_bar = u_bar;
    cert.alpha = alpha_bar;
    cert.theta1 = th1;
    cert.theta2 = th2;
    cert.tau = tau;
    cert.mu = opt.mu;
    cert.K = K;
    cert.r = r;
    cert.contraction_success = true;
    cert.transversality_note =
        "contraction of the quasi-Newton operator certified; DF is invertible at the "
        "zero, so the unstable and stable manifolds intersect transversally along the orbit";
    cert.Y = Y;
    cert.Z0 = Z0;
    cert.Z1 = Z1;
    cert.Z = Z;
    cert.R = R;
    return cert;
}

double connection_ode_residual(const ConnectionCertificate& cert, const Params& p,
                               int n_samples) {
    Vec3<ChebSeq<double>> du;
    for (int c = 0; c < 3; ++c) du[static_cast<size_t>(c)] = derivative(cert.u_bar[static_cast<size_t>(c)]);
    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        double t = -1.0 + 2.0 * static_cast<double>(s) / (n_samples - 1);
        Vec3<double> u, d;
        for (int c = 0; c < 3; ++c) {
            u[static_cast<size_t>(c)] = eval(cert.u_bar[static_cast<size_t>(c)], t);
            d[static_cast<size_t>(c)] = eval(du[static_cast<size_t>(c)], t);
        }
        auto fu = vector_field(u, p.a_mid, p.b_mid);
        for (int c = 0; c < 3; ++c)
            worst = std::max(worst, std::abs(d[static_cast<size_t>(c)] -
                                             cert.tau / 2.0 * fu[static_cast<size_t>(c)]));
    }
    return worst;
}

} // namespace smproof
