#pragma once

// Scalar-ring glue so sequence operations share one code path between the
// floating-point (Newton) and interval (bounds) instantiations.

#include <complex>

#include "smproof/interval.hpp"

namespace smproof {

// Mixed real-scalar times complex-rectangle product, needed because the model
// parameters stay real while eigendata is complex.
inline ComplexInterval operator*(const Interval& a, const ComplexInterval& b) {
    return {a * b.re, a * b.im};
}
inline ComplexInterval operator*(const ComplexInterval& a, const Interval& b) {
    return b * a;
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool is_rigorous = false;
    static constexpr bool is_complex = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long n) { return static_cast<double>(n); }
    static double mag_up(double v) { return std::fabs(v); }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr bool is_rigorous = false;
    static constexpr bool is_complex = true;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_int(long long n) { return {static_cast<double>(n), 0.0}; }
    static double mag_up(const std::complex<double>& v) { return std::abs(v); }
};

template <>
struct ScalarTraits<Interval> {
    static constexpr bool is_rigorous = true;
    static constexpr bool is_complex = false;
    static Interval zero() { return Interval(0.0); }
    static Interval one() { return Interval(1.0); }
    static Interval from_int(long long n) { return exact(n); }
    static double mag_up(const Interval& v) { return mag(v); }
    static Interval abs_enclosure(const Interval& v) { return abs(v); }
};

template <>
struct ScalarTraits<ComplexInterval> {
    static constexpr bool is_rigorous = true;
    static constexpr bool is_complex = true;
    static ComplexInterval zero() { return ComplexInterval(Interval(0.0)); }
    static ComplexInterval one() { return ComplexInterval(Interval(1.0)); }
    static ComplexInterval from_int(long long n) { return ComplexInterval(exact(n)); }
    static double mag_up(const ComplexInterval& v) { return mag(v); }
    static Interval abs_enclosure(const ComplexInterval& v) {
        return Interval(mig(v), mag(v));
    }
};

} // namespace smproof
