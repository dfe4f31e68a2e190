#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <ostream>
#include <string>

#include "sifs/error.hpp"
#include "sifs/interval.hpp"
#include "sifs/rational.hpp"

namespace sifs {

/// Element a + b*sqrt3 + c*sqrt5 + d*sqrt15 of the real field Q(sqrt3, sqrt5).
///
/// The basis {1, sqrt3, sqrt5, sqrt15} is linearly independent over Q, so the
/// coefficient vector is a canonical form: equality and hashing are exact and
/// need no numerics. Ordering of values goes through sign().
class QuarticScalar {
public:
    static constexpr std::size_t kOne = 0, kSqrt3 = 1, kSqrt5 = 2, kSqrt15 = 3;

    QuarticScalar() = default;
    QuarticScalar(int v) : c_{Rational(v), {}, {}, {}} {}
    QuarticScalar(long v) : c_{Rational(v), {}, {}, {}} {}
    QuarticScalar(Rational a) : c_{std::move(a), {}, {}, {}} {}
    QuarticScalar(Rational a, Rational b, Rational c, Rational d)
        : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static QuarticScalar sqrt3() { return {0, 1, 0, 0}; }
    static QuarticScalar sqrt5() { return {0, 0, 1, 0}; }
    static QuarticScalar sqrt15() { return {0, 0, 0, 1}; }
    /// Golden mean (1 + sqrt5) / 2.
    static QuarticScalar golden() { return {Rational(1, 2), 0, Rational(1, 2), 0}; }
    /// Hat contraction ratio (3 - sqrt5) / 2, the inverse square of the golden mean.
    static QuarticScalar hat_ratio() { return {Rational(3, 2), 0, Rational(-1, 2), 0}; }

    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::array<Rational, 4>& coefficients() const { return c_; }

    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
    bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
    /// True when the sqrt5 and sqrt15 parts vanish, i.e. the value lies in Q(sqrt3).
    bool in_q_sqrt3() const { return c_[2].is_zero() && c_[3].is_zero(); }

    QuarticScalar operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

    friend QuarticScalar operator+(const QuarticScalar& x, const QuarticScalar& y) {
        return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
    }
    friend QuarticScalar operator-(const QuarticScalar& x, const QuarticScalar& y) {
        return {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2], x.c_[3] - y.c_[3]};
    }
    friend QuarticScalar operator*(const QuarticScalar& x, const QuarticScalar& y) {
        // Structure constants: e_i * e_j = factor * e_k.
        static constexpr int kTarget[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static constexpr int kFactor[4][4] = {{1, 1, 1, 1}, {1, 3, 1, 3}, {1, 1, 5, 5}, {1, 3, 5, 15}};
        std::array<Rational, 4> out;
        for (int i = 0; i < 4; ++i) {
            if (x.c_[i].is_zero()) continue;
            for (int j = 0; j < 4; ++j) {
                if (y.c_[j].is_zero()) continue;
                Rational p = x.c_[i] * y.c_[j];
                if (kFactor[i][j] != 1) p *= Rational(kFactor[i][j]);
                out[kTarget[i][j]] += p;
            }
        }
        return {out[0], out[1], out[2], out[3]};
    }
    friend QuarticScalar operator*(const Rational& s, const QuarticScalar& x) {
        if (s.is_zero()) return {};
        return {s * x.c_[0], s * x.c_[1], s * x.c_[2], s * x.c_[3]};
    }
    friend QuarticScalar operator*(int s, const QuarticScalar& x) { return Rational(s) * x; }
    friend QuarticScalar operator*(const QuarticScalar& x, int s) { return Rational(s) * x; }
    friend QuarticScalar operator/(const QuarticScalar& x, const QuarticScalar& y) { return x * y.inverse(); }

    QuarticScalar& operator+=(const QuarticScalar& o) { return *this = *this + o; }
    QuarticScalar& operator-=(const QuarticScalar& o) { return *this = *this - o; }
    QuarticScalar& operator*=(const QuarticScalar& o) { return *this = *this * o; }
    QuarticScalar& operator/=(const QuarticScalar& o) { return *this = *this / o; }

    /// Galois conjugate sqrt3 -> -sqrt3.
    QuarticScalar conj3() const { return {c_[0], -c_[1], c_[2], -c_[3]}; }
    /// Galois conjugate sqrt5 -> -sqrt5.
    QuarticScalar conj5() const { return {c_[0], c_[1], -c_[2], -c_[3]}; }

    QuarticScalar inverse() const {
        if (is_zero()) throw DomainError("division by zero in Q(sqrt3, sqrt5)");
        if (is_rational()) return QuarticScalar(c_[0].reciprocal());
        // x * conj5(x) lies in Q(sqrt3); multiplying by its sqrt3-conjugate lands in Q.
        QuarticScalar t = conj5();
        QuarticScalar n = *this * t;
        QuarticScalar t2 = n.conj3();
        QuarticScalar m = n * t2;
        return m[0].reciprocal() * (t * t2);
    }

    QuarticScalar pow(unsigned e) const {
        QuarticScalar result(1), base = *this;
        while (e != 0) {
            if (e & 1u) result *= base;
            base *= base;
            e >>= 1u;
        }
        return result;
    }

    friend bool operator==(const QuarticScalar& x, const QuarticScalar& y) { return x.c_ == y.c_; }

    /// Coefficient-lexicographic order. A total order on representations, not on real values.
    friend bool lex_less(const QuarticScalar& x, const QuarticScalar& y) {
        for (std::size_t i = 0; i < 4; ++i) {
            auto c = x.c_[i] <=> y.c_[i];
            if (c != 0) return c < 0;
        }
        return false;
    }

    Interval enclose() const {
        static const Interval kRoots[4] = {
            Interval::point(1.0),
            {detail::down(std::sqrt(3.0)), detail::up(std::sqrt(3.0))},
            {detail::down(std::sqrt(5.0)), detail::up(std::sqrt(5.0))},
            {detail::down(std::sqrt(15.0)), detail::up(std::sqrt(15.0))},
        };
        Interval acc = Interval::point(0.0);
        bool first = true;
        for (std::size_t i = 0; i < 4; ++i) {
            if (c_[i].is_zero()) continue;
            Interval r;
            c_[i].enclose(r.lo, r.hi);
            Interval term = i == 0 ? r : r * kRoots[i];
            acc = first ? term : acc + term;
            first = false;
        }
        return acc;
    }

    std::size_t hash() const {
        std::size_t h = 0;
        for (const auto& r : c_) h = h * 0x9e3779b97f4a7c15ULL + r.hash();
        return h;
    }

    /// "a + b*r3 + c*r5 + d*r15" with each coefficient written as p or p/q.
    std::string str() const {
        return c_[0].str() + " + " + c_[1].str() + "*r3 + " + c_[2].str() + "*r5 + " + c_[3].str() + "*r15";
    }

    friend std::ostream& operator<<(std::ostream& os, const QuarticScalar& x) { return os << x.str(); }

private:
    std::array<Rational, 4> c_;
};

namespace detail {

// Rational bounds lo <= sqrt(n) <= hi with hi - lo = 2^-bits.
inline void sqrt_bounds(unsigned long n, unsigned long bits, mpq_class& lo, mpq_class& hi) {
    BigInt scaled = BigInt(n) << static_cast<mp_bitcnt_t>(2 * bits);
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    BigInt denom = BigInt(1) << static_cast<mp_bitcnt_t>(bits);
    lo = mpq_class(root, denom);
    hi = mpq_class(BigInt(root + 1), denom);
    lo.canonicalize();
    hi.canonicalize();
}

// Exact rational enclosure of x using sqrt bounds at the given precision.
inline void rational_enclosure(const QuarticScalar& x, unsigned long bits, mpq_class& lo, mpq_class& hi) {
    static constexpr unsigned long kRadicands[4] = {1, 3, 5, 15};
    lo = x[0].to_mpq();
    hi = lo;
    for (std::size_t i = 1; i < 4; ++i) {
        if (x[i].is_zero()) continue;
        mpq_class rlo, rhi;
        sqrt_bounds(kRadicands[i], bits, rlo, rhi);
        mpq_class coef = x[i].to_mpq();
        if (coef > 0) {
            lo += coef * rlo;
            hi += coef * rhi;
        } else {
            lo += coef * rhi;
            hi += coef * rlo;
        }
    }
}

}  // namespace detail

/// Exact sign of the real value: 0 iff every coefficient is zero.
///
/// A double interval filter settles almost every call. Otherwise the value is
/// enclosed with rational bounds on the square roots at doubling precision until
/// the enclosure excludes zero; this terminates because the value is nonzero.
inline int sign(const QuarticScalar& x) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return x[0].sign();
    if (int s = x.enclose().certain_sign(); s != 0) return s;
    for (unsigned long bits = 64;; bits *= 2) {
        mpq_class lo, hi;
        detail::rational_enclosure(x, bits, lo, hi);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
}

inline int compare(const QuarticScalar& x, const QuarticScalar& y) { return sign(x - y); }

/// Approximation with relative error at most 2^(1 - precision_bits).
inline mpf_class float_approx(const QuarticScalar& x, unsigned long precision_bits) {
    if (precision_bits < 53) throw DomainError("float_approx needs at least 53 bits");
    mpf_class out(0, precision_bits + 64);
    if (x.is_zero()) return out;
    for (unsigned long bits = precision_bits + 16;; bits *= 2) {
        mpq_class lo, hi;
        detail::rational_enclosure(x, bits, lo, hi);
        if (sgn(lo) == sgn(hi) && sgn(lo) != 0) {
            mpq_class width = hi - lo;
            mpq_class mag = abs(lo) < abs(hi) ? mpq_class(abs(lo)) : mpq_class(abs(hi));
            mpq_class tol = mag / mpq_class(BigInt(1) << static_cast<mp_bitcnt_t>(precision_bits + 2));
            if (width <= tol) {
                out = mpf_class((lo + hi) / 2, precision_bits + 64);
                return out;
            }
        }
    }
}

/// Nearest-double style conversion, relative error within 2^-52.
inline double to_double(const QuarticScalar& x) {
    if (x.is_zero()) return 0.0;
    if (x.is_rational()) return x[0].to_double();
    return float_approx(x, 60).get_d();
}

/// Fast approximation for rendering and metric code; error is a few ulps of the term magnitudes.
inline double approx_double(const QuarticScalar& x) { return x.enclose().mid(); }

}  // namespace sifs

template <>
struct std::hash<sifs::QuarticScalar> {
    std::size_t operator()(const sifs::QuarticScalar& x) const noexcept { return x.hash(); }
};
