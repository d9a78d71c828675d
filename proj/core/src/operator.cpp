#include "smproof/operator.hpp"

#include <Eigen/Dense>

#include "smproof/linalg.hpp"

namespace smproof {

namespace {

using Eigen::MatrixXd;

// Upper bound of n*u/(1 - n*u), u = 2^-53: the standard dot-product rounding
// factor. Computed in interval arithmetic so the returned double is certain.
double gamma_up(long long n) {
    Interval u = exact(1) / exact(static_cast<long long>(1) << 53);
    Interval g = exact(n) * u / (exact(1) - exact(n) * u);
    return g.hi;
}

void split(const Mat<Interval>& m, MatrixXd& mid_out, MatrixXd& rad_out) {
    mid_out.resize(m.rows(), m.cols());
    rad_out.resize(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            mid_out(i, j) = mid(m(i, j));
            rad_out(i, j) = rad(m(i, j));
        }
}

// Entrywise [c - r', c + r'] with r' covering the linear radius term, the
// gamma * majorant rounding term, and the relative error of computing both.
template <class Assign>
void assemble(const MatrixXd& c, const MatrixXd& rlin, const MatrixXd& mabs,
              double g, Assign&& assign) {
    double scale = 1.0 + 4.0 * g;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) {
            double r = detail::add_up(rlin(i, j), detail::mul_up(g, mabs(i, j)));
            r = detail::mul_up(r, scale);
            assign(i, j, Interval(detail::sub_down(c(i, j), r),
                                  detail::add_up(c(i, j), r)));
        }
}

} // namespace

Mat<Interval> mul_midrad(const Mat<Interval>& a, const Mat<Interval>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul_midrad: dimension mismatch");
    MatrixXd am, ar, bm, br;
    split(a, am, ar);
    split(b, bm, br);

    MatrixXd cm = am * bm;
    MatrixXd a_abs = am.cwiseAbs();
    MatrixXd b_up = bm.cwiseAbs() + br;
    MatrixXd mabs = (a_abs + ar) * b_up;
    MatrixXd rlin = a_abs * br + ar * b_up;

    double g = gamma_up(a.cols() + 8);
    Mat<Interval> out(a.rows(), b.cols());
    assemble(cm, rlin, mabs, g, [&](int i, int j, Interval v) { out(i, j) = v; });
    return out;
}

Mat<ComplexInterval> mul_midrad(const Mat<ComplexInterval>& a,
                                const Mat<ComplexInterval>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul_midrad: dimension mismatch");
    int n = a.cols();
    auto split_c = [](const Mat<ComplexInterval>& m, MatrixXd& rm, MatrixXd& im,
                      MatrixXd& rr, MatrixXd& ir) {
        rm.resize(m.rows(), m.cols());
        im.resize(m.rows(), m.cols());
        rr.resize(m.rows(), m.cols());
        ir.resize(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                rm(i, j) = mid(m(i, j).re);
                im(i, j) = mid(m(i, j).im);
                rr(i, j) = rad(m(i, j).re);
                ir(i, j) = rad(m(i, j).im);
            }
    };
    MatrixXd arm, aim, arr, air, brm, bim, brr, bir;
    split_c(a, arm, aim, arr, air);
    split_c(b, brm, bim, brr, bir);

    MatrixXd crm = arm * brm - aim * bim;
    MatrixXd cim = arm * bim + aim * brm;

    MatrixXd a_abs = arm.cwiseAbs() + aim.cwiseAbs();
    MatrixXd a_rad = arr + air;
    MatrixXd b_abs = brm.cwiseAbs() + bim.cwiseAbs();
    MatrixXd b_rad = brr + bir;
    MatrixXd b_up = b_abs + b_rad;
    MatrixXd mabs = (a_abs + a_rad) * b_up;

    // One shared radius majorizes both the real and imaginary parts.
    bool a_exact = a_rad.size() == 0 || a_rad.maxCoeff() == 0.0;
    MatrixXd rall = a_abs * b_rad;
    if (!a_exact) rall += a_rad * b_up;

    double g = gamma_up(2LL * n + 8);
    Mat<ComplexInterval> out(a.rows(), b.cols());
    double scale = 1.0 + 4.0 * g;
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) {
            double r = detail::add_up(rall(i, j), detail::mul_up(g, mabs(i, j)));
            r = detail::mul_up(r, scale);
            out(i, j) = ComplexInterval(
                Interval(detail::sub_down(crm(i, j), r), detail::add_up(crm(i, j), r)),
                Interval(detail::sub_down(cim(i, j), r), detail::add_up(cim(i, j), r)));
        }
    return out;
}

namespace {
constexpr double kGemmThreshold = 2e7;
}

Mat<Interval> mul(const Mat<Interval>& a, const Mat<Interval>& b) {
    double flops = static_cast<double>(a.rows()) * a.cols() * b.cols();
    return flops > kGemmThreshold ? mul_midrad(a, b) : mul_naive(a, b);
}
Mat<ComplexInterval> mul(const Mat<ComplexInterval>& a, const Mat<ComplexInterval>& b) {
    double flops = static_cast<double>(a.rows()) * a.cols() * b.cols();
    return flops > kGemmThreshold ? mul_midrad(a, b) : mul_naive(a, b);
}

WeightProfile taylor_weights(int K, const Interval& nu, int components) {
    std::vector<Interval> pw(static_cast<size_t>(2 * K) + 1);
    pw[0] = exact(1);
    for (int k = 1; k <= 2 * K; ++k) pw[k] = pw[k - 1] * nu;
    WeightProfile p;
    p.w.reserve(static_cast<size_t>(components) * (K + 1) * (K + 1));
    for (int c = 0; c < components; ++c)
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j) p.w.push_back(pw[static_cast<size_t>(i) + j]);
    return p;
}

WeightProfile cheb_weights(int K, const Interval& mu, int components, int scalar_slots) {
    std::vector<Interval> pw(static_cast<size_t>(K) + 1);
    pw[0] = exact(1);
    for (int k = 1; k <= K; ++k) pw[k] = pw[k - 1] * mu;
    WeightProfile p;
    p.w.reserve(static_cast<size_t>(components) * (K + 1) + scalar_slots);
    for (int c = 0; c < components; ++c) {
        p.w.push_back(exact(1));
        for (int k = 1; k <= K; ++k) p.w.push_back(exact(2) * pw[static_cast<size_t>(k)]);
    }
    for (int s = 0; s < scalar_slots; ++s) p.w.push_back(exact(1));
    return p;
}

namespace {

template <class M>
void check_invertible(const Eigen::PartialPivLU<M>& lu, int n) {
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double d = std::abs(lu.matrixLU()(i, i));
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    if (!(dmin > 0.0) || dmin < 1e-14 * dmax)
        throw std::runtime_error("approx_inverse: matrix singular to working precision");
}

} // namespace

Eigen::MatrixXd approx_inverse(const Eigen::MatrixXd& m) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    check_invertible(lu, static_cast<int>(m.rows()));
    return lu.inverse();
}
Eigen::MatrixXcd approx_inverse(const Eigen::MatrixXcd& m) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    check_invertible(lu, static_cast<int>(m.rows()));
    return lu.inverse();
}

Mat<Interval> to_interval_mat(const Eigen::MatrixXd& m) {
    Mat<Interval> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = Interval(m(i, j));
    return out;
}
Mat<ComplexInterval> to_interval_mat(const Eigen::MatrixXcd& m) {
    Mat<ComplexInterval> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j)
            out(i, j) = ComplexInterval(Interval(m(i, j).real()), Interval(m(i, j).imag()));
    return out;
}
Eigen::MatrixXd mid_mat(const Mat<Interval>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = mid(m(i, j));
    return out;
}
Eigen::MatrixXcd mid_mat(const Mat<ComplexInterval>& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out(i, j) = std::complex<double>(mid(m(i, j).re), mid(m(i, j).im));
    return out;
}

} // namespace smproof
