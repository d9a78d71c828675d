#pragma once

// Truncated coefficient sequences for the weighted ell^1 spaces used by the
// proofs: bivariate Taylor series (local manifold parameterizations) and
// one-sided Chebyshev series u(s) = u_0 + 2 sum_{k>=1} u_k T_k(s) (orbit
// segments). Products return full-order results; truncation is always an
// explicit call.

#include <array>
#include <stdexcept>
#include <vector>

#include "smproof/scalar.hpp"

namespace smproof {

// ---------------------------------------------------------------------------
// Bivariate Taylor coefficients, dense (K1+1) x (K2+1) grid, row-major in k1.

template <class S>
class Taylor2Seq {
public:
    Taylor2Seq() : k1_(0), k2_(0), c_(1, ScalarTraits<S>::zero()) {}
    Taylor2Seq(int k1, int k2)
        : k1_(k1), k2_(k2),
          c_(static_cast<size_t>(k1 + 1) * (k2 + 1), ScalarTraits<S>::zero()) {
        if (k1 < 0 || k2 < 0) throw std::invalid_argument("Taylor2Seq: negative order");
    }

    static Taylor2Seq constant(const S& v) {
        Taylor2Seq u;
        u.c_[0] = v;
        return u;
    }

    int order1() const { return k1_; }
    int order2() const { return k2_; }

    S& at(int k1, int k2) { return c_[static_cast<size_t>(k1) * (k2_ + 1) + k2]; }
    const S& at(int k1, int k2) const {
        return c_[static_cast<size_t>(k1) * (k2_ + 1) + k2];
    }
    /// Coefficient with implicit zeros beyond the stored grid.
    S get(int k1, int k2) const {
        if (k1 < 0 || k2 < 0 || k1 > k1_ || k2 > k2_) return ScalarTraits<S>::zero();
        return at(k1, k2);
    }

    const std::vector<S>& raw() const { return c_; }
    std::vector<S>& raw() { return c_; }

private:
    int k1_, k2_;
    std::vector<S> c_;
};

template <class S>
Taylor2Seq<S> operator+(const Taylor2Seq<S>& u, const Taylor2Seq<S>& w) {
    Taylor2Seq<S> r(std::max(u.order1(), w.order1()), std::max(u.order2(), w.order2()));
    for (int i = 0; i <= r.order1(); ++i)
        for (int j = 0; j <= r.order2(); ++j)
            r.at(i, j) = u.get(i, j) + w.get(i, j);
    return r;
}

template <class S>
Taylor2Seq<S> operator-(const Taylor2Seq<S>& u, const Taylor2Seq<S>& w) {
    Taylor2Seq<S> r(std::max(u.order1(), w.order1()), std::max(u.order2(), w.order2()));
    for (int i = 0; i <= r.order1(); ++i)
        for (int j = 0; j <= r.order2(); ++j)
            r.at(i, j) = u.get(i, j) - w.get(i, j);
    return r;
}

template <class S>
Taylor2Seq<S> operator-(const Taylor2Seq<S>& u) {
    Taylor2Seq<S> r(u.order1(), u.order2());
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j)
            r.at(i, j) = -u.at(i, j);
    return r;
}

template <class C, class S>
Taylor2Seq<S> operator*(const C& a, const Taylor2Seq<S>& u) {
    Taylor2Seq<S> r(u.order1(), u.order2());
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j)
            r.at(i, j) = a * u.at(i, j);
    return r;
}

/// Cauchy product; output orders add.
template <class S>
Taylor2Seq<S> cauchy_product(const Taylor2Seq<S>& u, const Taylor2Seq<S>& w) {
    Taylor2Seq<S> r(u.order1() + w.order1(), u.order2() + w.order2());
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j) {
            const S& uc = u.at(i, j);
            for (int p = 0; p <= w.order1(); ++p)
                for (int q = 0; q <= w.order2(); ++q)
                    r.at(i + p, j + q) += uc * w.at(p, q);
        }
    return r;
}

template <class S>
Taylor2Seq<S> operator*(const Taylor2Seq<S>& u, const Taylor2Seq<S>& w) {
    return cauchy_product(u, w);
}

/// Projection onto coefficients with max(k1, k2) <= K.
template <class S>
Taylor2Seq<S> truncate(const Taylor2Seq<S>& u, int K) {
    if (K < 0) throw std::invalid_argument("truncate: negative order");
    Taylor2Seq<S> r(std::min(u.order1(), K), std::min(u.order2(), K));
    for (int i = 0; i <= r.order1(); ++i)
        for (int j = 0; j <= r.order2(); ++j)
            r.at(i, j) = u.at(i, j);
    return r;
}

/// Complement of truncate; truncate(u,K) + tail(u,K) = u coefficientwise.
template <class S>
Taylor2Seq<S> tail(const Taylor2Seq<S>& u, int K) {
    Taylor2Seq<S> r(u.order1(), u.order2());
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j)
            if (std::max(i, j) > K) r.at(i, j) = u.at(i, j);
    return r;
}

/// Coefficient-shift derivative: (d/dtheta_j u)_{(k1,k2)}.
template <class S>
Taylor2Seq<S> partial_derivative(const Taylor2Seq<S>& u, int var) {
    if (var != 1 && var != 2) throw std::invalid_argument("partial_derivative: var must be 1 or 2");
    int n1 = var == 1 ? std::max(u.order1() - 1, 0) : u.order1();
    int n2 = var == 2 ? std::max(u.order2() - 1, 0) : u.order2();
    Taylor2Seq<S> r(n1, n2);
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j) {
            if (var == 1)
                r.at(i, j) = ScalarTraits<S>::from_int(i + 1) * u.get(i + 1, j);
            else
                r.at(i, j) = ScalarTraits<S>::from_int(j + 1) * u.get(i, j + 1);
        }
    return r;
}

/// Diagonal scaling by 1/(k1 l1 + k2 l2) for k1 + k2 >= 2, zero otherwise
/// (the right inverse of the order-by-order linearized conjugacy equations).
template <class S>
Taylor2Seq<S> apply_homology_inverse(const Taylor2Seq<S>& u, const S& l1, const S& l2) {
    Taylor2Seq<S> r(u.order1(), u.order2());
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j) {
            if (i + j < 2) continue;
            S div = ScalarTraits<S>::from_int(i) * l1 + ScalarTraits<S>::from_int(j) * l2;
            if constexpr (ScalarTraits<S>::is_rigorous) {
                if (ScalarTraits<S>::abs_enclosure(div).lo <= 0.0)
                    throw std::domain_error(
                        "homology inverse: resonant or near-resonant eigenvalues");
            } else {
                if (ScalarTraits<S>::mag_up(div) == 0.0)
                    throw std::domain_error(
                        "homology inverse: resonant or near-resonant eigenvalues");
            }
            r.at(i, j) = u.at(i, j) / div;
        }
    return r;
}

/// Horner evaluation of sum u_k theta1^k1 theta2^k2.
template <class S, class X>
X eval(const Taylor2Seq<S>& u, const X& t1, const X& t2) {
    X acc = X(ScalarTraits<S>::zero());
    for (int i = u.order1(); i >= 0; --i) {
        X row = X(ScalarTraits<S>::zero());
        for (int j = u.order2(); j >= 0; --j) row = row * t2 + X(u.at(i, j));
        acc = acc * t1 + row;
    }
    return acc;
}

/// Rounded-up enclosure of sum |u_k| nu^{k1+k2}; requires nu >= 1.
template <class S>
Interval weighted_norm(const Taylor2Seq<S>& u, const Interval& nu) {
    static_assert(ScalarTraits<S>::is_rigorous);
    if (nu.lo < 1.0) throw std::invalid_argument("weighted_norm: nu must be >= 1");
    int n = u.order1() + u.order2();
    std::vector<Interval> p(static_cast<size_t>(n) + 1);
    p[0] = exact(1);
    for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * nu;
    Interval s(0.0);
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j)
            s += ScalarTraits<S>::abs_enclosure(u.at(i, j)) * p[i + j];
    return s;
}

template <class S>
double weighted_norm_estimate(const Taylor2Seq<S>& u, double nu) {
    double s = 0.0;
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j)
            s += ScalarTraits<S>::mag_up(u.at(i, j)) * std::pow(nu, i + j);
    return s;
}

// ---------------------------------------------------------------------------
// One-sided Chebyshev coefficients u_0..u_K under u = u_0 + 2 sum u_k T_k.

template <class S>
class ChebSeq {
public:
    ChebSeq() : c_(1, ScalarTraits<S>::zero()) {}
    explicit ChebSeq(int K) : c_(static_cast<size_t>(K) + 1, ScalarTraits<S>::zero()) {
        if (K < 0) throw std::invalid_argument("ChebSeq: negative order");
    }

    static ChebSeq constant(const S& v) {
        ChebSeq u;
        u.c_[0] = v;
        return u;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    S& at(int k) { return c_[static_cast<size_t>(k)]; }
    const S& at(int k) const { return c_[static_cast<size_t>(k)]; }
    S get(int k) const {
        int a = k < 0 ? -k : k;
        return a <= order() ? c_[static_cast<size_t>(a)] : ScalarTraits<S>::zero();
    }

    const std::vector<S>& raw() const { return c_; }
    std::vector<S>& raw() { return c_; }

private:
    std::vector<S> c_;
};

template <class S>
ChebSeq<S> operator+(const ChebSeq<S>& u, const ChebSeq<S>& w) {
    ChebSeq<S> r(std::max(u.order(), w.order()));
    for (int k = 0; k <= r.order(); ++k) r.at(k) = u.get(k) + w.get(k);
    return r;
}
template <class S>
ChebSeq<S> operator-(const ChebSeq<S>& u, const ChebSeq<S>& w) {
    ChebSeq<S> r(std::max(u.order(), w.order()));
    for (int k = 0; k <= r.order(); ++k) r.at(k) = u.get(k) - w.get(k);
    return r;
}
template <class S>
ChebSeq<S> operator-(const ChebSeq<S>& u) {
    ChebSeq<S> r(u.order());
    for (int k = 0; k <= u.order(); ++k) r.at(k) = -u.at(k);
    return r;
}
template <class C, class S>
ChebSeq<S> operator*(const C& a, const ChebSeq<S>& u) {
    ChebSeq<S> r(u.order());
    for (int k = 0; k <= u.order(); ++k) r.at(k) = a * u.at(k);
    return r;
}

/// Discrete convolution (u*w)_k = sum_{l in Z} u_{|k-l|} w_{|l|}.
template <class S>
ChebSeq<S> convolve(const ChebSeq<S>& u, const ChebSeq<S>& w) {
    ChebSeq<S> r(u.order() + w.order());
    for (int k = 0; k <= r.order(); ++k) {
        S s = ScalarTraits<S>::zero();
        for (int l = -w.order(); l <= w.order(); ++l) s += u.get(k - l) * w.get(l);
        r.at(k) = s;
    }
    return r;
}
template <class S>
ChebSeq<S> operator*(const ChebSeq<S>& u, const ChebSeq<S>& w) {
    return convolve(u, w);
}

template <class S>
ChebSeq<S> truncate(const ChebSeq<S>& u, int K) {
    if (K < 0) throw std::invalid_argument("truncate: negative order");
    ChebSeq<S> r(std::min(u.order(), K));
    for (int k = 0; k <= r.order(); ++k) r.at(k) = u.at(k);
    return r;
}
template <class S>
ChebSeq<S> tail(const ChebSeq<S>& u, int K) {
    ChebSeq<S> r(u.order());
    for (int k = K + 1; k <= u.order(); ++k) r.at(k) = u.at(k);
    return r;
}

/// Antiderivative s -> integral_{-1}^{s} u; output order K+1.
/// Row k = 0 carries the lower integration limit and is summed left to right.
template <class S>
ChebSeq<S> antiderivative(const ChebSeq<S>& u) {
    int K = u.order();
    ChebSeq<S> r(K + 1);
    S two = ScalarTraits<S>::from_int(2);
    S head = u.get(0) - u.get(1) / two;
    for (int l = 2; l <= K; ++l) {
        S coeff = ScalarTraits<S>::from_int(l % 2 == 0 ? -2 : 2) /
                  ScalarTraits<S>::from_int(static_cast<long long>(l) * l - 1);
        head += coeff * u.at(l);
    }
    r.at(0) = head;
    for (int k = 1; k <= K + 1; ++k)
        r.at(k) = (u.get(k - 1) - u.get(k + 1)) / ScalarTraits<S>::from_int(2 * k);
    return r;
}

/// Chebyshev derivative via the backward recurrence d_{k-1} = d_{k+1} + 2k u_k;
/// the exact left inverse of antiderivative on coefficients.
template <class S>
ChebSeq<S> derivative(const ChebSeq<S>& u) {
    int K = u.order();
    if (K == 0) return ChebSeq<S>(0);
    ChebSeq<S> r(K - 1);
    S next = ScalarTraits<S>::zero();  // d_{k+1}
    S next2 = ScalarTraits<S>::zero(); // d_{k+2}
    for (int k = K; k >= 1; --k) {
        S d = next2 + ScalarTraits<S>::from_int(2 * k) * u.at(k);
        if (k - 1 <= r.order()) r.at(k - 1) = d;
        next2 = next;
        next = d;
    }
    return r;
}

/// Clenshaw evaluation; requires s within [-1, 1].
template <class S, class X>
X eval(const ChebSeq<S>& u, const X& s) {
    X b1 = X(ScalarTraits<S>::zero());
    X b2 = b1;
    X two_s = s + s;
    for (int k = u.order(); k >= 1; --k) {
        X b = two_s * b1 - b2 + X(ScalarTraits<S>::from_int(2) * u.at(k));
        b2 = b1;
        b1 = b;
    }
    return s * b1 - b2 + X(u.at(0));
}

inline void check_cheb_domain(const Interval& s) {
    if (s.lo < -1.0 || s.hi > 1.0)
        throw std::domain_error("eval_cheb: point outside [-1, 1]");
}
template <class S>
Interval eval_cheb(const ChebSeq<S>& u, const Interval& s) {
    static_assert(std::is_same_v<S, Interval>);
    check_cheb_domain(s);
    return eval(u, s);
}

/// u(1) = u_0 + 2 sum u_k (the evaluation row (1 2 2 2 ...)).
template <class S>
S eval_at_one(const ChebSeq<S>& u) {
    S s = ScalarTraits<S>::zero();
    S two = ScalarTraits<S>::from_int(2);
    for (int k = u.order(); k >= 1; --k) s += two * u.at(k);
    return s + u.at(0);
}

/// Rounded-up enclosure of |u_0| + 2 sum |u_k| mu^k; requires mu >= 1.
template <class S>
Interval weighted_norm(const ChebSeq<S>& u, const Interval& mu) {
    static_assert(ScalarTraits<S>::is_rigorous);
    if (mu.lo < 1.0) throw std::invalid_argument("weighted_norm: mu must be >= 1");
    Interval s = ScalarTraits<S>::abs_enclosure(u.at(0));
    Interval p = exact(1);
    for (int k = 1; k <= u.order(); ++k) {
        p = p * mu;
        s += exact(2) * ScalarTraits<S>::abs_enclosure(u.at(k)) * p;
    }
    return s;
}

template <class S>
double weighted_norm_estimate(const ChebSeq<S>& u, double mu) {
    double s = ScalarTraits<S>::mag_up(u.at(0));
    double p = 1.0;
    for (int k = 1; k <= u.order(); ++k) {
        p *= mu;
        s += 2.0 * ScalarTraits<S>::mag_up(u.at(k)) * p;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Triples of sequences (the three phase-space components).

template <class T>
using Vec3 = std::array<T, 3>;

template <class T, class W>
Interval product_norm(const Vec3<T>& u, const W& weight) {
    return weighted_norm(u[0], weight) + weighted_norm(u[1], weight) +
           weighted_norm(u[2], weight);
}

template <class T>
Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <class T>
Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

} // namespace smproof
