#pragma once

#include <complex>
#include <ostream>
#include <string>

#include "sifs/plane.hpp"

namespace sifs {

/// Similarity z -> scale * e^{i sextant pi/3} * (conj(z) if reflect else z) + translation.
class PlaneMap {
public:
    PlaneMap() : scale_(1) {}
    PlaneMap(QuarticScalar scale, int sextant, bool reflect, PlanePoint translation)
        : scale_(std::move(scale)), sextant_(((sextant % 6) + 6) % 6), reflect_(reflect),
          translation_(std::move(translation)) {
        if (sign(scale_) <= 0) throw DomainError("similarity scale must be positive");
    }

    static PlaneMap identity() { return {}; }
    static PlaneMap scaling(QuarticScalar s) { return {std::move(s), 0, false, {}}; }
    static PlaneMap translation(PlanePoint t) { return {1, 0, false, std::move(t)}; }

    const QuarticScalar& scale() const { return scale_; }
    int sextant() const { return sextant_; }
    bool reflect() const { return reflect_; }
    const PlanePoint& translation() const { return translation_; }

    /// Complex coefficient a of the linear part, so the map is a*z + t or a*conj(z) + t.
    PlanePoint linear() const { return scale_ * sextant_rotation(sextant_); }

    PlanePoint operator()(const PlanePoint& z) const {
        const PlanePoint& w = reflect_ ? z.conj() : z;
        PlanePoint rotated = sextant_ == 0 ? w : sextant_rotation(sextant_) * w;
        return scale_ * rotated + translation_;
    }

    bool is_identity() const { return sextant_ == 0 && !reflect_ && scale_ == QuarticScalar(1) && translation_.is_zero(); }

    friend bool operator==(const PlaneMap& a, const PlaneMap& b) {
        return a.sextant_ == b.sextant_ && a.reflect_ == b.reflect_ && a.scale_ == b.scale_ &&
               a.translation_ == b.translation_;
    }

    /// Total order on representations; used for canonical keys, not geometry.
    friend bool lex_less(const PlaneMap& a, const PlaneMap& b) {
        if (a.sextant_ != b.sextant_) return a.sextant_ < b.sextant_;
        if (a.reflect_ != b.reflect_) return !a.reflect_;
        if (lex_less(a.scale_, b.scale_)) return true;
        if (lex_less(b.scale_, a.scale_)) return false;
        return lex_less(a.translation_, b.translation_);
    }

    std::size_t hash() const {
        return ((scale_.hash() * 7u + static_cast<std::size_t>(sextant_)) * 3u + (reflect_ ? 1u : 0u)) * 1000003u +
               translation_.hash();
    }

    std::string str() const {
        return "z -> (" + scale_.str() + ") * e^(" + std::to_string(sextant_) + "i pi/3) * " +
               (reflect_ ? "conj(z)" : "z") + " + " + translation_.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const PlaneMap& m) { return os << m.str(); }

private:
    QuarticScalar scale_;
    int sextant_ = 0;
    bool reflect_ = false;
    PlanePoint translation_;
};

/// outer after inner.
inline PlaneMap compose(const PlaneMap& outer, const PlaneMap& inner) {
    int sextant = outer.reflect() ? outer.sextant() - inner.sextant() : outer.sextant() + inner.sextant();
    return {outer.scale() * inner.scale(), sextant, outer.reflect() != inner.reflect(), outer(inner.translation())};
}

inline PlaneMap invert(const PlaneMap& m) {
    QuarticScalar inv_scale = m.scale().inverse();
    if (!m.reflect()) {
        // z = rho^{-k} (w - t) / s
        PlanePoint t = sextant_rotation(-m.sextant()) * m.translation();
        return {inv_scale, -m.sextant(), false, -(inv_scale * t)};
    }
    // z = rho^{k} conj(w - t) / s
    PlanePoint t = sextant_rotation(m.sextant()) * m.translation().conj();
    return {inv_scale, m.sextant(), true, -(inv_scale * t)};
}

inline PlanePoint apply_map(const PlaneMap& m, const PlanePoint& z) { return m(z); }

/// Double-precision copy of a map for bulk point clouds and metrics.
struct ApproxMap {
    std::complex<double> linear;
    bool reflect = false;
    std::complex<double> translation;

    explicit ApproxMap(const PlaneMap& m)
        : linear(m.linear().to_complex()), reflect(m.reflect()), translation(m.translation().to_complex()) {}

    std::complex<double> operator()(std::complex<double> z) const {
        return linear * (reflect ? std::conj(z) : z) + translation;
    }
};

}  // namespace sifs

template <>
struct std::hash<sifs::PlaneMap> {
    std::size_t operator()(const sifs::PlaneMap& m) const noexcept { return m.hash(); }
};
