#include "smproof/rpa.hpp"

namespace smproof {

ExistenceResult interval_of_existence(const Interval& Y, const Interval& Z, double R) {
    if (Y.lo < 0.0 || Z.lo < 0.0)
        throw std::invalid_argument("interval_of_existence: Y, Z must be nonnegative enclosures");
    ExistenceResult res;
    res.Y = Y;
    res.Z = Z;
    res.R = R;
    res.r_sup = R;
    if (!(Z.hi < 1.0)) return res; // no contraction
    Interval q = Interval(Y.hi) / (exact(1) - Interval(Z.hi));
    res.r_inf = q.hi;
    res.success = res.r_inf <= R;
    return res;
}

} // namespace smproof
