#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sifs/error.hpp"

namespace sifs {

using BigInt = mpz_class;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 gcd_u128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if ((a >> 64) == 0 && (b >> 64) == 0) {
        std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
        while (y != 0) {
            std::uint64_t t = x % y;
            x = y;
            y = t;
        }
        return x;
    }
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u128 abs_u128(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

inline bool fits_i64(i128 v) {
    // INT64_MIN is excluded so negation never overflows on the small path.
    return v <= std::numeric_limits<std::int64_t>::max() && v >= -std::numeric_limits<std::int64_t>::max();
}

inline BigInt to_big(i128 v) {
    bool neg = v < 0;
    u128 m = abs_u128(v);
    BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64));
    BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(m));
    BigInt r = (hi << 64) + lo;
    return neg ? BigInt(-r) : r;
}

}  // namespace detail

/// Exact rational number, always reduced with a positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are kept inline;
/// anything larger is promoted to a shared, immutable GMP rational. Every
/// operation demotes its result again when it fits, so the representation
/// of a value is unique and equality can compare fields directly.
class Rational {
public:
    Rational() = default;
    Rational(int v) : num_(v) {}
    Rational(long v) : Rational(static_cast<long long>(v)) {}
    Rational(long long v) {
        if (v == std::numeric_limits<long long>::min()) {
            set_big(mpq_class(BigInt(std::to_string(v))));
        } else {
            num_ = v;
        }
    }
    Rational(std::int64_t n, std::int64_t d) { assign(static_cast<detail::i128>(n), static_cast<detail::i128>(d)); }
    explicit Rational(const BigInt& v) { set_big(mpq_class(v)); }
    Rational(const BigInt& n, const BigInt& d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        mpq_class q(n, d);
        q.canonicalize();
        set_big(std::move(q));
    }
    explicit Rational(const mpq_class& q) {
        mpq_class c(q);
        c.canonicalize();
        set_big(std::move(c));
    }

    /// Parses "p" or "p/q" with optional leading sign.
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(s, 10));
            return Rational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed rational '" + s + "'", 0);
        }
    }

    bool is_small() const { return big_ == nullptr; }
    bool is_zero() const { return big_ == nullptr && num_ == 0; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    BigInt numerator() const { return big_ ? BigInt(big_->get_num()) : BigInt(static_cast<long>(num_)); }
    BigInt denominator() const { return big_ ? BigInt(big_->get_den()) : BigInt(static_cast<long>(den_)); }
    mpq_class to_mpq() const {
        if (big_) return *big_;
        return mpq_class(BigInt(static_cast<long>(num_)), BigInt(static_cast<long>(den_)));
    }

    /// Interval [lo, hi] of doubles guaranteed to contain the value.
    void enclose(double& lo, double& hi) const {
        double v;
        if (big_) {
            v = big_->get_d();
        } else {
            v = static_cast<double>(num_) / static_cast<double>(den_);
        }
        if (!std::isfinite(v)) {
            lo = -std::numeric_limits<double>::infinity();
            hi = std::numeric_limits<double>::infinity();
            return;
        }
        if (is_small() && den_ == 1 && (num_ < (1LL << 53) && num_ > -(1LL << 53))) {
            lo = hi = v;
            return;
        }
        constexpr double inf = std::numeric_limits<double>::infinity();
        lo = std::nextafter(std::nextafter(v, -inf), -inf);
        hi = std::nextafter(std::nextafter(v, inf), inf);
    }

    double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    std::size_t hash() const {
        if (!big_) return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
        return std::hash<std::string>{}(big_->get_str());
    }

    Rational operator-() const {
        Rational r;
        if (big_) {
            r.set_big(mpq_class(-*big_));
        } else {
            r.num_ = -num_;
            r.den_ = den_;
        }
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            if (a.num_ == 0) return b;
            if (b.num_ == 0) return a;
            using detail::i128;
            if (a.den_ == b.den_) {
                Rational r;
                r.assign(static_cast<i128>(a.num_) + b.num_, a.den_);
                return r;
            }
            Rational r;
            r.assign(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_);
            return r;
        }
        return Rational::from_mpq(a.to_mpq() + b.to_mpq());
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            if (a.num_ == 0 || b.num_ == 0) return Rational();
            using detail::i128;
            if (a.den_ == 1 && b.den_ == 1) {
                Rational r;
                r.assign(static_cast<i128>(a.num_) * b.num_, 1);
                return r;
            }
            std::int64_t g1 = static_cast<std::int64_t>(detail::gcd_u128(detail::abs_u128(a.num_), b.den_));
            std::int64_t g2 = static_cast<std::int64_t>(detail::gcd_u128(detail::abs_u128(b.num_), a.den_));
            i128 n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
            i128 d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
            Rational r;
            if (detail::fits_i64(n) && detail::fits_i64(d)) {
                r.num_ = static_cast<std::int64_t>(n);
                r.den_ = static_cast<std::int64_t>(d);
            } else {
                r.set_big(mpq_class(detail::to_big(n), detail::to_big(d)));
            }
            return r;
        }
        return Rational::from_mpq(a.to_mpq() * b.to_mpq());
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DomainError("division by zero");
        return a * b.reciprocal();
    }

    Rational reciprocal() const {
        if (is_zero()) throw DomainError("division by zero");
        Rational r;
        if (big_) {
            r.set_big(mpq_class(1) / *big_);
        } else {
            r.num_ = num_ < 0 ? -den_ : den_;
            r.den_ = num_ < 0 ? -num_ : num_;
        }
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (a.is_small() != b.is_small()) return false;
        if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
        return *a.big_ == *b.big_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            detail::i128 l = static_cast<detail::i128>(a.num_) * b.den_;
            detail::i128 r = static_cast<detail::i128>(b.num_) * a.den_;
            return l <=> r;
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static Rational from_mpq(mpq_class q) {
        Rational r;
        r.set_big(std::move(q));
        return r;
    }

    void assign(detail::i128 n, detail::i128 d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            big_.reset();
            return;
        }
        detail::u128 g = detail::gcd_u128(detail::abs_u128(n), static_cast<detail::u128>(d));
        if (g > 1) {
            n /= static_cast<detail::i128>(g);
            d /= static_cast<detail::i128>(g);
        }
        if (detail::fits_i64(n) && detail::fits_i64(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
        } else {
            mpq_class q(detail::to_big(n), detail::to_big(d));
            big_ = std::make_shared<const mpq_class>(std::move(q));
            num_ = 0;
            den_ = 1;
        }
    }

    // Demotes to the inline form whenever the canonical value fits.
    void set_big(mpq_class q) {
        const auto& n = q.get_num();
        const auto& d = q.get_den();
        if (n.fits_slong_p() && d.fits_slong_p()) {
            long nl = n.get_si(), dl = d.get_si();
            if (nl != std::numeric_limits<long>::min() && dl != std::numeric_limits<long>::min()) {
                num_ = nl;
                den_ = dl;
                big_.reset();
                return;
            }
        }
        num_ = 0;
        den_ = 1;
        big_ = std::make_shared<const mpq_class>(std::move(q));
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

}  // namespace sifs

template <>
struct std::hash<sifs::Rational> {
    std::size_t operator()(const sifs::Rational& r) const noexcept { return r.hash(); }
};
