#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace sifs {

/// Closed double interval widened outward by one ulp after every operation,
/// so it always contains the exact result of the same real computation.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double v) { return {v, v}; }

    bool contains_zero() const { return !(lo > 0.0) && !(hi < 0.0); }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    /// +1 / -1 when the interval excludes zero, 0 when undecided.
    int certain_sign() const {
        if (!finite()) return 0;
        if (lo > 0.0) return 1;
        if (hi < 0.0) return -1;
        return 0;
    }
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    double magnitude() const { return std::max(std::fabs(lo), std::fabs(hi)); }
};

namespace detail {
inline double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
}  // namespace detail

inline Interval operator+(Interval a, Interval b) { return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)}; }
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }
inline Interval operator-(Interval a, Interval b) { return a + (-b); }
inline Interval operator*(Interval a, Interval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {detail::down(std::min({p1, p2, p3, p4})), detail::up(std::max({p1, p2, p3, p4}))};
}
inline Interval operator*(double s, Interval a) { return Interval::point(s) * a; }

inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }
inline bool overlaps(Interval a, Interval b) { return !(a.hi < b.lo) && !(b.hi < a.lo); }

}  // namespace sifs
