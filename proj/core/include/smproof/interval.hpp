#pragma once

// Directed-rounding real and rectangular complex interval arithmetic.
//
// Outward rounding is done by post-operation widening (nextafter on the
// endpoints) instead of switching the hardware rounding mode, so every
// operation is pure and thread-safe. Results that are provably exact in
// binary64 (checked with TwoSum / FMA residuals) are not widened; this keeps
// small-integer and dyadic arithmetic tight, e.g. exact(3)/exact(4) is the
// point interval [0.75, 0.75].
//
// Requires -ffp-contract=off: the residual checks assume each source-level
// operation rounds individually.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace smproof {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One-step outward moves. An infinite endpoint produced by overflow is kept
// on its own side and clamped to +-DBL_MAX on the opposite side, which is
// always a valid bound for the exact result.
inline double step_down(double x) {
    if (x == -kInf) return x;
    if (x == kInf) return std::numeric_limits<double>::max();
    return std::nextafter(x, -kInf);
}
inline double step_up(double x) {
    if (x == kInf) return x;
    if (x == -kInf) return std::numeric_limits<double>::lowest();
    return std::nextafter(x, kInf);
}

// Residual-based exactness gates only trust the FMA residual away from the
// subnormal range, where two-product style identities can silently round.
inline constexpr double kResidualGate = 1e-300;

// a + b is exact iff the TwoSum error term vanishes (exact at all scales,
// overflow aside).
inline double two_sum_err(double a, double b, double s) {
    double bv = s - a;
    double av = s - bv;
    return (a - av) + (b - bv);
}

inline double add_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return step_down(s);
    double e = two_sum_err(a, b, s);
    return e < 0.0 ? std::nextafter(s, -kInf) : s;
}
inline double add_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return step_up(s);
    double e = two_sum_err(a, b, s);
    return e > 0.0 ? std::nextafter(s, kInf) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return step_down(p);
    double r = std::fma(a, b, -p);
    if (r > 0.0) return p;
    if (r == 0.0 && std::fabs(p) > kResidualGate) return p;
    return std::nextafter(p, -kInf);
}
inline double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return step_up(p);
    double r = std::fma(a, b, -p);
    if (r < 0.0) return p;
    if (r == 0.0 && std::fabs(p) > kResidualGate) return p;
    return std::nextafter(p, kInf);
}

// x/y = q - r/y with r = fma(q, y, -x); the sign of r/y tells which side of
// q the exact quotient lies on.
inline double div_down(double x, double y, double q) {
    if (!std::isfinite(q)) return step_down(q);
    if (x == 0.0) return 0.0;
    double r = std::fma(q, y, -x);
    double corr = (y > 0.0) ? -r : r; // sign of (exact - q)
    if (corr > 0.0) return q;
    if (r == 0.0 && std::fabs(x) > kResidualGate) return q;
    return std::nextafter(q, -kInf);
}
inline double div_up(double x, double y, double q) {
    if (!std::isfinite(q)) return step_up(q);
    if (x == 0.0) return 0.0;
    double r = std::fma(q, y, -x);
    double corr = (y > 0.0) ? -r : r;
    if (corr < 0.0) return q;
    if (r == 0.0 && std::fabs(x) > kResidualGate) return q;
    return std::nextafter(q, kInf);
}

} // namespace detail

/// Closed interval [lo, hi] of binary64 endpoints. Every operation returns an
/// enclosure of the exact result over all point selections in the operands.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
    }

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// Point interval for a value treated as mathematically exact.
inline Interval exact(double v) {
    if (std::isnan(v)) throw std::invalid_argument("exact: NaN");
    return Interval(v);
}
inline Interval exact(long long n) {
    double v = static_cast<double>(n);
    if (static_cast<long long>(v) != n)
        throw std::invalid_argument("exact: integer not representable in binary64");
    return Interval(v);
}
inline Interval exact(int n) { return exact(static_cast<long long>(n)); }

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(detail::sub_down(a.lo, b.hi), detail::sub_up(a.hi, b.lo));
}
inline Interval operator*(const Interval& a, const Interval& b) {
    double lo = detail::mul_down(a.lo, b.lo);
    double hi = detail::mul_up(a.lo, b.lo);
    auto consider = [&](double x, double y) {
        lo = std::min(lo, detail::mul_down(x, y));
        hi = std::max(hi, detail::mul_up(x, y));
    };
    consider(a.lo, b.hi);
    consider(a.hi, b.lo);
    consider(a.hi, b.hi);
    return Interval(lo, hi);
}
inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
        throw std::domain_error("Interval division: divisor encloses zero (not invertible)");
    double lo = detail::kInf, hi = -detail::kInf;
    auto consider = [&](double x, double y) {
        double q = x / y;
        lo = std::min(lo, detail::div_down(x, y, q));
        hi = std::max(hi, detail::div_up(x, y, q));
    };
    consider(a.lo, b.lo);
    consider(a.lo, b.hi);
    consider(a.hi, b.lo);
    consider(a.hi, b.hi);
    return Interval(lo, hi);
}

inline Interval& operator+=(Interval& a, const Interval& b) { a = a + b; return a; }
inline Interval& operator-=(Interval& a, const Interval& b) { a = a - b; return a; }
inline Interval& operator*=(Interval& a, const Interval& b) { a = a * b; return a; }

/// Tight square (respects the x*x dependency, so sqr([-1,2]) = [0,4]).
inline Interval sqr(const Interval& a) {
    double m = std::max(std::fabs(a.lo), std::fabs(a.hi));
    double up = detail::mul_up(m, m);
    if (a.contains_zero()) return Interval(0.0, up);
    double mn = std::min(std::fabs(a.lo), std::fabs(a.hi));
    return Interval(detail::mul_down(mn, mn), up);
}

inline double mag(const Interval& a) { return std::max(std::fabs(a.lo), std::fabs(a.hi)); }
inline double mig(const Interval& a) {
    if (a.contains_zero()) return 0.0;
    return std::min(std::fabs(a.lo), std::fabs(a.hi));
}
inline double mid(const Interval& a) {
    if (a.lo == -detail::kInf || a.hi == detail::kInf)
        throw std::domain_error("mid: unbounded interval");
    double m = 0.5 * a.lo + 0.5 * a.hi;
    if (m < a.lo) m = a.lo;
    if (m > a.hi) m = a.hi;
    return m;
}
/// Radius r such that [mid - r, mid + r] covers the interval (rounded up).
inline double rad(const Interval& a) {
    double m = mid(a);
    return std::max(detail::sub_up(m, a.lo), detail::sub_up(a.hi, m));
}
inline double width(const Interval& a) { return detail::sub_up(a.hi, a.lo); }

inline Interval abs(const Interval& a) { return Interval(mig(a), mag(a)); }

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}
inline Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw std::domain_error("intersect: empty intersection");
    return Interval(lo, hi);
}
/// Interval enclosing max(a, b) over all point selections.
inline Interval imax(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

/// Box enclosure [mid_i - r, mid_i + r] per component, outward rounded.
Interval midpoint_radius(double mid, double r);
Interval midpoint_radius(double mid, const Interval& r);

Interval sqrt(const Interval& a);
Interval ln(const Interval& a);
Interval exp(const Interval& a);
Interval cos(const Interval& a);
Interval sin(const Interval& a);

/// Enclosure of pi.
Interval pi_interval();

/// Enclosure of a^n, n >= 0.
Interval pow_int(const Interval& a, int n);

/// "[lo, hi]" with decimal endpoints rounded down / up at `sig` significant
/// digits (REPL-style log output).
std::string to_string(const Interval& a, int sig = 6);

/// Shortest decimal that round-trips to x (CSV export).
std::string shortest_repr(double x);

/// Rectangular complex enclosure: re x im box.
struct ComplexInterval {
    Interval re;
    Interval im;

    ComplexInterval() = default;
    explicit ComplexInterval(const Interval& r) : re(r) {}
    ComplexInterval(const Interval& r, const Interval& i) : re(r), im(i) {}
    explicit ComplexInterval(double r, double i = 0.0) : re(r), im(i) {}

    bool is_real_point_zero_im() const { return im.lo == 0.0 && im.hi == 0.0; }
};

inline ComplexInterval operator-(const ComplexInterval& a) {
    return {-a.re, -a.im};
}
inline ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
}
inline ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
}
inline ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexInterval conj(const ComplexInterval& a) { return {a.re, -a.im}; }

/// Enclosure of |z|^2; the divisor gate for complex division.
inline Interval abs2(const ComplexInterval& a) { return sqr(a.re) + sqr(a.im); }

inline ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    Interval d = abs2(b);
    if (d.lo <= 0.0)
        throw std::domain_error("ComplexInterval division: divisor modulus encloses zero");
    ComplexInterval num = a * conj(b);
    return {num.re / d, num.im / d};
}
inline ComplexInterval& operator+=(ComplexInterval& a, const ComplexInterval& b) { a = a + b; return a; }
inline ComplexInterval& operator-=(ComplexInterval& a, const ComplexInterval& b) { a = a - b; return a; }

/// Rounded-up sup of |z| over the rectangle.
inline double mag(const ComplexInterval& a) {
    double mr = mag(a.re), mi = mag(a.im);
    double s = detail::add_up(detail::mul_up(mr, mr), detail::mul_up(mi, mi));
    Interval r = sqrt(Interval(0.0, s));
    return r.hi;
}
/// Rounded-down inf of |z| over the rectangle (0 if the box contains 0).
inline double mig(const ComplexInterval& a) {
    double mr = mig(a.re), mi = mig(a.im);
    double s = detail::mul_down(mr, mr);
    s = detail::add_down(s, detail::mul_down(mi, mi));
    if (s <= 0.0) return 0.0;
    Interval r = sqrt(Interval(s, s));
    return r.lo;
}

/// Enclosures of (e^{i a}, e^{-i a}); both moduli enclose 1.
std::pair<ComplexInterval, ComplexInterval> unit_circle(const Interval& alpha);

std::string to_string(const ComplexInterval& a, int sig = 6);

} // namespace smproof
