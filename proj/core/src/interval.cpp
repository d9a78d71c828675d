#include "smproof/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace smproof {

using detail::kInf;

Interval midpoint_radius(double mid, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("midpoint_radius: negative radius");
    return Interval(detail::sub_down(mid, r), detail::add_up(mid, r));
}
Interval midpoint_radius(double mid, const Interval& r) {
    return midpoint_radius(mid, r.hi);
}

// IEEE sqrt is correctly rounded; the FMA residual recovers which side of the
// computed value the exact root lies on.
static double sqrt_down(double x) {
    if (x == 0.0) return 0.0;
    double s = std::sqrt(x);
    double r = std::fma(s, s, -x); // sign of (s - sqrt(x))
    if (r <= 0.0) return s;        // s*s <= x  =>  s <= sqrt(x)
    return std::nextafter(s, -kInf);
}
static double sqrt_up(double x) {
    if (x == 0.0) return 0.0;
    double s = std::sqrt(x);
    double r = std::fma(s, s, -x);
    if (r >= 0.0) return s;
    return std::nextafter(s, kInf);
}

Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw std::domain_error("sqrt: interval extends below zero");
    return Interval(sqrt_down(a.lo), sqrt_up(a.hi));
}

// libm exp/log/cos/sin are faithful but not proven correctly rounded here;
// two outward steps cover the documented error bounds with margin.
static double widen2_down(double x) {
    return std::nextafter(std::nextafter(x, -kInf), -kInf);
}
static double widen2_up(double x) {
    return std::nextafter(std::nextafter(x, kInf), kInf);
}

Interval ln(const Interval& a) {
    if (a.lo <= 0.0) throw std::domain_error("ln: interval not strictly positive");
    return Interval(widen2_down(std::log(a.lo)), widen2_up(std::log(a.hi)));
}

Interval exp(const Interval& a) {
    double lo = widen2_down(std::exp(a.lo));
    if (lo < 0.0) lo = 0.0;
    double hi = std::exp(a.hi);
    hi = (hi == kInf) ? kInf : widen2_up(hi);
    return Interval(lo, hi);
}

Interval pi_interval() {
    double p = 3.14159265358979311599796346854; // nearest binary64 below pi
    return Interval(p, std::nextafter(p, kInf));
}

Interval pow_int(const Interval& a, int n) {
    if (n < 0) throw std::invalid_argument("pow_int: negative exponent");
    Interval r = exact(1);
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

Interval cos(const Interval& a) {
    if (!a.is_finite()) return Interval(-1.0, 1.0);
    Interval pi = pi_interval();
    if (width(a) >= 2.0 * pi.hi) return Interval(-1.0, 1.0);

    double clo = widen2_down(std::cos(a.lo));
    double chi = widen2_up(std::cos(a.lo));
    double lo = std::min(clo, widen2_down(std::cos(a.hi)));
    double hi = std::max(chi, widen2_up(std::cos(a.hi)));

    // Extrema of cos sit at k*pi; scan the few integer candidates whose
    // rigorous multiple of pi can intersect [a.lo, a.hi].
    long long k_begin = static_cast<long long>(std::floor(a.lo / pi.hi)) - 1;
    long long k_end = static_cast<long long>(std::ceil(a.hi / pi.lo)) + 1;
    for (long long k = k_begin; k <= k_end; ++k) {
        Interval kpi = exact(k) * pi;
        if (kpi.lo <= a.hi && kpi.hi >= a.lo) {
            if (k % 2 == 0) hi = 1.0;
            else lo = -1.0;
        }
    }
    return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval sin(const Interval& a) {
    // sin(x) = cos(x - pi/2); the pi/2 enclosure costs one extra ulp.
    Interval half_pi = pi_interval() / exact(2);
    return cos(a - half_pi);
}

std::pair<ComplexInterval, ComplexInterval> unit_circle(const Interval& alpha) {
    Interval c = cos(alpha);
    Interval s = sin(alpha);
    return {ComplexInterval(c, s), ComplexInterval(c, -s)};
}

// ---------------------------------------------------------------------------
// Decimal output with directed rounding.

namespace {

struct DecimalDigits {
    bool neg = false;
    uint64_t mant = 0; // sig decimal digits, leading digit nonzero (unless value 0)
    int exp10 = 0;     // value = mant * 10^(exp10 - sig + 1)
};

uint64_t pow10_u64(int p) {
    uint64_t r = 1;
    while (p-- > 0) r *= 10;
    return r;
}

// Nearest-rounded decimal at sig digits, then one decimal-ulp adjustment in
// the requested direction if the parse-back overshoots.
std::string decimal_directed(double x, int sig, bool round_down) {
    if (x == 0.0) return "0.0";
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", sig - 1, x);
    double parsed = std::strtod(buf, nullptr);

    DecimalDigits d;
    d.neg = (buf[0] == '-');
    const char* p = buf + (d.neg ? 1 : 0);
    d.mant = 0;
    int digits = 0;
    for (; *p && *p != 'e' && *p != 'E'; ++p) {
        if (*p == '.') continue;
        d.mant = d.mant * 10 + static_cast<uint64_t>(*p - '0');
        ++digits;
    }
    d.exp10 = std::atoi(p + 1);

    bool need_dec = round_down ? (parsed > x) : (parsed < x);
    if (need_dec) {
        bool shrink = (round_down != d.neg); // move mantissa toward zero
        if (shrink) {
            d.mant -= 1;
            if (d.mant < pow10_u64(digits - 1) && d.mant > 0) {
                d.mant = d.mant * 10 + 9;
                d.exp10 -= 1;
            }
        } else {
            d.mant += 1;
            if (d.mant >= pow10_u64(digits)) {
                d.mant /= 10;
                d.exp10 += 1;
            }
        }
    }
    if (d.mant == 0) return round_down ? "-0.0" : "0.0";

    // Render: fixed notation for moderate exponents, scientific otherwise,
    // trailing zeros trimmed.
    char ds[32];
    std::snprintf(ds, sizeof ds, "%0*llu", sig, static_cast<unsigned long long>(d.mant));
    std::string digits_str(ds);
    while (digits_str.size() > 1 && digits_str.back() == '0') digits_str.pop_back();

    std::string out = d.neg ? "-" : "";
    if (d.exp10 >= -4 && d.exp10 < sig + 2) {
        if (d.exp10 >= 0) {
            int ip = d.exp10 + 1;
            std::string intpart = digits_str.substr(0, std::min<size_t>(ip, digits_str.size()));
            while (static_cast<int>(intpart.size()) < ip) intpart += '0';
            std::string frac = (static_cast<int>(digits_str.size()) > ip)
                                   ? digits_str.substr(ip)
                                   : "0";
            out += intpart + "." + frac;
        } else {
            out += "0.";
            for (int i = 0; i < -d.exp10 - 1; ++i) out += '0';
            out += digits_str;
        }
    } else {
        out += digits_str.substr(0, 1);
        out += ".";
        out += digits_str.size() > 1 ? digits_str.substr(1) : "0";
        out += "e";
        if (d.exp10 >= 0) out += "+";
        out += std::to_string(d.exp10);
    }
    return out;
}

} // namespace

std::string to_string(const Interval& a, int sig) {
    return "[" + decimal_directed(a.lo, sig, true) + ", " +
           decimal_directed(a.hi, sig, false) + "]";
}

std::string to_string(const ComplexInterval& a, int sig) {
    return to_string(a.re, sig) + " + " + to_string(a.im, sig) + "i";
}

std::string shortest_repr(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace smproof
