#pragma once

// Interval matrices on truncated sequence coordinates, weighted ell^1
// operator norms, and the tail-extended operator A = A_fin P_{<=K} + P_{>K}.
//
// Coordinate layout is fixed across the library: product spaces flatten
// component-major, [u^(1) | u^(2) | u^(3) | scalar slots]; bivariate Taylor
// coefficients are row-major in k1 within a component.

#include <vector>

#include "smproof/sequence.hpp"

namespace smproof {

template <class S>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * cols, ScalarTraits<S>::zero()) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

private:
    int rows_, cols_;
    std::vector<S> a_;
};

template <class S>
std::vector<S> matvec(const Mat<S>& m, const std::vector<S>& x) {
    if (static_cast<int>(x.size()) != m.cols())
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<S> y(static_cast<size_t>(m.rows()), ScalarTraits<S>::zero());
    for (int i = 0; i < m.rows(); ++i) {
        S s = ScalarTraits<S>::zero();
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

template <class S>
Mat<S> mul_naive(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Mat mul: dimension mismatch");
    Mat<S> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const S& v = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += v * b(k, j);
        }
    return c;
}

/// Rigorous interval matrix product through midpoint-radius form backed by
/// floating-point GEMM; enclosure widening covers both the interval radii and
/// an a priori bound on the accumulated rounding error.
Mat<Interval> mul_midrad(const Mat<Interval>& a, const Mat<Interval>& b);
Mat<ComplexInterval> mul_midrad(const Mat<ComplexInterval>& a,
                                const Mat<ComplexInterval>& b);

/// Product dispatch: midpoint-radius GEMM above a size threshold, naive loops
/// below it.
Mat<Interval> mul(const Mat<Interval>& a, const Mat<Interval>& b);
Mat<ComplexInterval> mul(const Mat<ComplexInterval>& a, const Mat<ComplexInterval>& b);

/// Per-coordinate weights of a weighted ell^1 norm, stored as enclosures so
/// induced-norm quotients can be rounded in the conservative direction.
struct WeightProfile {
    std::vector<Interval> w;
    int size() const { return static_cast<int>(w.size()); }
};

/// Taylor product-space weights nu^{k1+k2}, component-major.
WeightProfile taylor_weights(int K, const Interval& nu, int components = 3);
/// Chebyshev product-space weights (1, 2mu, 2mu^2, ...) per component plus
/// unit weights on the scalar slots.
WeightProfile cheb_weights(int K, const Interval& mu, int components = 3,
                           int scalar_slots = 0);

/// Induced norm between weighted ell^1 spaces:
/// sup_l (sum_k |M_kl| w_out(k)) / w_in(l), rounded up.
template <class S>
Interval weighted_opnorm(const Mat<S>& m, const WeightProfile& w_out,
                         const WeightProfile& w_in) {
    if (m.rows() != w_out.size() || m.cols() != w_in.size())
        throw std::invalid_argument("weighted_opnorm: weight dimension mismatch");
    Interval best(0.0);
    for (int l = 0; l < m.cols(); ++l) {
        Interval s(0.0);
        for (int k = 0; k < m.rows(); ++k)
            s += ScalarTraits<S>::abs_enclosure(m(k, l)) * w_out.w[static_cast<size_t>(k)];
        best = imax(best, s / w_in.w[static_cast<size_t>(l)]);
    }
    return best;
}

/// 1-norm of an interval vector (sum of moduli), as an enclosure.
template <class S>
Interval norm1(const std::vector<S>& x) {
    Interval s(0.0);
    for (const S& v : x) s += ScalarTraits<S>::abs_enclosure(v);
    return s;
}

/// Unweighted induced 1-norm (all weights one).
template <class S>
Interval opnorm1(const Mat<S>& m) {
    Interval best(0.0);
    for (int l = 0; l < m.cols(); ++l) {
        Interval s(0.0);
        for (int k = 0; k < m.rows(); ++k)
            s += ScalarTraits<S>::abs_enclosure(m(k, l));
        best = imax(best, s);
    }
    return best;
}

/// Which truncated space the finite block of a SeqOperator acts on.
struct SpaceLayout {
    enum class Kind { taylor2, cheb } kind = Kind::taylor2;
    int K = 0;
    int components = 3;
    int scalar_slots = 0;

    int coords_per_component() const {
        return kind == Kind::taylor2 ? (K + 1) * (K + 1) : K + 1;
    }
    int block_dim() const { return components * coords_per_component() + scalar_slots; }
};

/// A = A_fin P_{<=K} + P_{>K}: a finite interval matrix on the truncated
/// coordinates, extended by the identity on every higher-order mode.
template <class S>
struct SeqOperator {
    Mat<S> block;
    bool tail_identity = true;
    SpaceLayout layout;
};

template <class S>
SeqOperator<S> make_tail_extended(Mat<S> block, const SpaceLayout& layout) {
    if (block.rows() != layout.block_dim() || block.cols() != layout.block_dim())
        throw std::invalid_argument("make_tail_extended: block does not match layout");
    return SeqOperator<S>{std::move(block), true, layout};
}

// Component-major flattening of the truncated coordinates.
template <class S>
std::vector<S> flatten(const Vec3<Taylor2Seq<S>>& x, int K) {
    std::vector<S> v;
    v.reserve(3 * static_cast<size_t>(K + 1) * (K + 1));
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j) v.push_back(x[static_cast<size_t>(c)].get(i, j));
    return v;
}

template <class S>
Vec3<Taylor2Seq<S>> unflatten_taylor(const std::vector<S>& v, int K) {
    Vec3<Taylor2Seq<S>> x{Taylor2Seq<S>(K, K), Taylor2Seq<S>(K, K), Taylor2Seq<S>(K, K)};
    size_t idx = 0;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j) x[static_cast<size_t>(c)].at(i, j) = v[idx++];
    return x;
}

/// Tail-extended action on a sequence triple of arbitrary order: the finite
/// block hits the coordinates with max(k1,k2) <= K, the rest pass through.
template <class S>
Vec3<Taylor2Seq<S>> matvec(const SeqOperator<S>& op, const Vec3<Taylor2Seq<S>>& x) {
    int K = op.layout.K;
    std::vector<S> head = flatten(x, K);
    std::vector<S> y = matvec(op.block, head);
    Vec3<Taylor2Seq<S>> out;
    for (int c = 0; c < 3; ++c) {
        const auto& xc = x[static_cast<size_t>(c)];
        Taylor2Seq<S> r(xc.order1(), xc.order2());
        if (op.tail_identity)
            for (int i = 0; i <= xc.order1(); ++i)
                for (int j = 0; j <= xc.order2(); ++j)
                    if (std::max(i, j) > K) r.at(i, j) = xc.at(i, j);
        for (int i = 0; i <= std::min(K, r.order1()); ++i)
            for (int j = 0; j <= std::min(K, r.order2()); ++j)
                r.at(i, j) = y[static_cast<size_t>(c) * (K + 1) * (K + 1) +
                               static_cast<size_t>(i) * (K + 1) + j];
        out[static_cast<size_t>(c)] = std::move(r);
    }
    return out;
}

/// Orbit-space element: three Chebyshev components plus scalar slots.
template <class S>
struct ChebVec {
    Vec3<ChebSeq<S>> u;
    std::vector<S> scalars;
};

template <class S>
std::vector<S> flatten(const ChebVec<S>& x, int K) {
    std::vector<S> v;
    v.reserve(3 * static_cast<size_t>(K + 1) + x.scalars.size());
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k <= K; ++k) v.push_back(x.u[static_cast<size_t>(c)].get(k));
    for (const S& s : x.scalars) v.push_back(s);
    return v;
}

template <class S>
ChebVec<S> matvec(const SeqOperator<S>& op, const ChebVec<S>& x) {
    int K = op.layout.K;
    if (static_cast<int>(x.scalars.size()) != op.layout.scalar_slots)
        throw std::invalid_argument("matvec: scalar slot mismatch");
    std::vector<S> head = flatten(x, K);
    std::vector<S> y = matvec(op.block, head);
    ChebVec<S> out;
    for (int c = 0; c < 3; ++c) {
        const auto& xc = x.u[static_cast<size_t>(c)];
        ChebSeq<S> r(std::max(xc.order(), K));
        if (op.tail_identity)
            for (int k = K + 1; k <= xc.order(); ++k) r.at(k) = xc.at(k);
        for (int k = 0; k <= K; ++k)
            r.at(k) = y[static_cast<size_t>(c) * (K + 1) + k];
        out.u[static_cast<size_t>(c)] = std::move(r);
    }
    out.scalars.assign(y.end() - op.layout.scalar_slots, y.end());
    return out;
}

} // namespace smproof
