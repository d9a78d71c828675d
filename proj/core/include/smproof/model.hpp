#pragma once

// The Shimizu-Morioka vector field f(x,y,z) = (y, x - a y - x z, -b z + x^2)
// and its Jacobian, written once over an abstract scalar ring so the
// floating-point Newton path and the interval bound path evaluate the same
// expressions. Sequence rings use their convolution as the product.

#include "smproof/sequence.hpp"

namespace smproof {

/// Fixed parameters a = 3/4, b = 9/20, kept both as exact-rational interval
/// quotients and as binary64 midpoints for the Newton path.
struct Params {
    Interval a;
    Interval b;
    double a_mid;
    double b_mid;

    static Params standard() {
        Params p;
        p.a = exact(3) / exact(4);
        p.b = exact(9) / exact(20);
        p.a_mid = mid(p.a);
        p.b_mid = mid(p.b);
        return p;
    }
};

template <class R, class C>
Vec3<R> vector_field(const Vec3<R>& u, const C& a, const C& b) {
    return {u[1],
            u[0] - a * u[1] - u[0] * u[2],
            -(b * u[2]) + u[0] * u[0]};
}

/// Jacobian over a scalar ring: [[0,1,0],[1-z,-a,-x],[2x,0,-b]].
template <class R>
std::array<std::array<R, 3>, 3> jacobian(const Vec3<R>& u, const R& a, const R& b) {
    using T = ScalarTraits<R>;
    R zero = T::zero();
    R one = T::one();
    return {{{zero, one, zero},
             {one - u[2], -a, -u[0]},
             {T::from_int(2) * u[0], zero, -b}}};
}

/// Multiplier sequences for the Jacobian as a 3x3 block of multiplication
/// operators; entry (i,j) multiplies the j-th component in the i-th equation.
template <class Seq, class C>
std::array<std::array<Seq, 3>, 3> jacobian_multipliers(const Vec3<Seq>& u,
                                                       const C& a, const C& b) {
    using S = std::remove_cvref_t<decltype(u[0].raw()[0])>;
    using T = ScalarTraits<S>;
    Seq zero;
    Seq one = Seq::constant(T::one());
    Seq neg_a = Seq::constant(-(a * T::one()));
    Seq neg_b = Seq::constant(-(b * T::one()));
    return {{{zero, one, zero},
             {one - u[2], neg_a, -u[0]},
             {T::from_int(2) * u[0], zero, neg_b}}};
}

} // namespace smproof
