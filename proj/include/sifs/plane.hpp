#pragma once

#include <complex>
#include <ostream>
#include <string>

#include "sifs/quartic.hpp"

namespace sifs {

/// Point of the plane, identified with C, with exact coordinates in Q(sqrt3, sqrt5).
struct PlanePoint {
    QuarticScalar re;
    QuarticScalar im;

    PlanePoint() = default;
    PlanePoint(QuarticScalar r) : re(std::move(r)) {}
    PlanePoint(QuarticScalar r, QuarticScalar i) : re(std::move(r)), im(std::move(i)) {}

    static PlanePoint i() { return {0, 1}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    PlanePoint conj() const { return {re, -im}; }
    /// Squared modulus, exact.
    QuarticScalar norm() const { return re * re + im * im; }

    PlanePoint operator-() const { return {-re, -im}; }
    friend PlanePoint operator+(const PlanePoint& a, const PlanePoint& b) { return {a.re + b.re, a.im + b.im}; }
    friend PlanePoint operator-(const PlanePoint& a, const PlanePoint& b) { return {a.re - b.re, a.im - b.im}; }
    friend PlanePoint operator*(const PlanePoint& a, const PlanePoint& b) {
        if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
        if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend PlanePoint operator*(const QuarticScalar& s, const PlanePoint& p) { return {s * p.re, s * p.im}; }
    friend PlanePoint operator/(const PlanePoint& p, const QuarticScalar& s) {
        QuarticScalar inv = s.inverse();
        return {p.re * inv, p.im * inv};
    }
    PlanePoint& operator+=(const PlanePoint& o) { return *this = *this + o; }
    PlanePoint& operator-=(const PlanePoint& o) { return *this = *this - o; }

    friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.re == b.re && a.im == b.im; }

    friend bool lex_less(const PlanePoint& a, const PlanePoint& b) {
        if (lex_less(a.re, b.re)) return true;
        if (lex_less(b.re, a.re)) return false;
        return lex_less(a.im, b.im);
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
    std::complex<double> approx() const { return {approx_double(re), approx_double(im)}; }

    std::size_t hash() const { return re.hash() * 31u + im.hash(); }

    std::string str() const { return "(" + re.str() + ", " + im.str() + ")"; }
    friend std::ostream& operator<<(std::ostream& os, const PlanePoint& p) { return os << p.str(); }
};

/// e^{i k pi/3}, exact (components use only halves and sqrt3).
inline PlanePoint sextant_rotation(int k) {
    k = ((k % 6) + 6) % 6;
    const Rational half(1, 2);
    const QuarticScalar s = Rational(1, 2) * QuarticScalar::sqrt3();
    switch (k) {
        case 0: return {1, 0};
        case 1: return {half, s};
        case 2: return {-half, s};
        case 3: return {-1, 0};
        case 4: return {-half, -s};
        default: return {half, -s};
    }
}

}  // namespace sifs

template <>
struct std::hash<sifs::PlanePoint> {
    std::size_t operator()(const sifs::PlanePoint& p) const noexcept { return p.hash(); }
};
