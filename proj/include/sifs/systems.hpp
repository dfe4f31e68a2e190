#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sifs/fibonacci.hpp"
#include "sifs/processing.hpp"

namespace sifs {

// ---------------------------------------------------------------------------
// Fibonacci-indexed coordinate forms.

/// phi^n * ( sum_a alpha_a F_{2n+a} + beta ), where phi is the hat contraction ratio.
///
/// Binet gives phi^n F_{2n+a} -> g^a / sqrt5 (g the golden mean) with error
/// g^{-4n-a} / sqrt5, and phi^n beta -> 0, so one form yields the level-n value,
/// its limit, and an explicit bound on the gap.
struct FibForm {
    std::vector<std::pair<int, QuarticScalar>> terms;
    QuarticScalar constant;

    QuarticScalar at(int n) const {
        QuarticScalar sum = constant;
        for (const auto& [a, alpha] : terms) {
            if (2 * n + a < 0) throw DomainError("negative Fibonacci index in a hat formula");
            sum += alpha * QuarticScalar(fib_rational(2 * n + a));
        }
        return QuarticScalar::hat_ratio().pow(static_cast<unsigned>(n)) * sum;
    }

    QuarticScalar limit() const {
        const QuarticScalar g = QuarticScalar::golden();
        const QuarticScalar inv_sqrt5 = Rational(1, 5) * QuarticScalar::sqrt5();
        QuarticScalar sum;
        for (const auto& [a, alpha] : terms) {
            QuarticScalar ga = a >= 0 ? g.pow(static_cast<unsigned>(a)) : g.inverse().pow(static_cast<unsigned>(-a));
            sum += alpha * ga * inv_sqrt5;
        }
        return sum;
    }

    /// Upper bound on |at(n) - limit()|.
    double gap(int n) const {
        const double g = (1.0 + std::sqrt(5.0)) / 2.0;
        double err = std::abs(approx_double(constant)) * std::pow(g, -2.0 * n);
        for (const auto& [a, alpha] : terms) err += std::abs(approx_double(alpha)) * std::pow(g, -4.0 * n - a) / std::sqrt(5.0);
        return err * (1.0 + 1e-9);
    }
};

struct PointForm {
    FibForm re, im;
    PlanePoint at(int n) const { return {re.at(n), im.at(n)}; }
    PlanePoint limit() const { return {re.limit(), im.limit()}; }
    double gap(int n) const { return std::hypot(re.gap(n), im.gap(n)); }
};

// ---------------------------------------------------------------------------
// The hat family T_c.

/// c = 1/(1 + sqrt3), the parameter of the hat in the figures.
inline QuarticScalar default_hat_parameter() { return {Rational(-1, 2), Rational(1, 2), 0, 0}; }

inline void check_hat_parameter(const QuarticScalar& c) {
    if (sign(c) < 0 || compare(c, 1) > 0) throw DomainError("hat parameter c must lie in [0, 1], got " + c.str());
}

/// The thirteen vertices v_1 ... v_13, unreduced. v_2 = 2(1 - c)i, so that the
/// edge v_2 v_3 is a translate of v_11 v_10.
inline std::vector<PlanePoint> hat_vertices(const QuarticScalar& c) {
    check_hat_parameter(c);
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    auto P = [](QuarticScalar x, QuarticScalar y) { return PlanePoint{std::move(x), std::move(y)}; };
    const PlanePoint base = u * P(r3, 3);
    return {
        P(0, 0),
        P(0, 2 * u),
        base,
        base + c * P(-1, r3),
        base + c * P(1, 3 * r3),
        base + c * P(3, 3 * r3),
        u * P(r3, 1) + c * P(3, 3 * r3),
        P(2 * u * r3, 0) + c * P(3, 3 * r3),
        P(2 * u * r3, 0) + c * P(2, 2 * r3),
        P(2 * u * r3, 0) + c * P(3, r3),
        u * P(r3, -1) + c * P(3, r3),
        c * P(3, r3),
        P(2 * c, 0),
    };
}

/// T_c with repeated vertices and spikes (which occur at c = 0 and c = 1) collapsed.
inline Polygon hat_prototile(const QuarticScalar& c) { return Polygon(collapse_degenerate(hat_vertices(c))); }

namespace detail {

inline std::array<PointForm, 8> hat_forms(const QuarticScalar& c) {
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    const QuarticScalar ru = r3 * u, cr = c * r3;
    std::array<PointForm, 8> f;
    // f_1 is z -> phi z: zero form.
    f[1] = {{{{2, ru}, {-1, 3 * c}}, -2 * ru - 3 * c}, {{{-1, 3 * u + cr}, {1, 2 * cr}}, -cr}};
    f[2] = {{{{1, 3 * ru + 3 * c}, {-1, 6 * c}}, -3 * ru - 6 * c}, {{{-2, -3 * u}, {1, 3 * cr}}, 3 * u}};
    f[3] = {{{{1, 2 * ru}, {2, 6 * c}}, -3 * c}, {{{1, -6 * u}, {-1, -2 * cr}}, 6 * u + 3 * cr}};
    f[4] = {{{{0, ru + 9 * c}}, ru}, {{{-1, -3 * u - cr}, {1, -3 * u - cr}}, 3 * u + 2 * cr}};
    f[5] = {{{{0, ru + 3 * c}, {-2, ru + 3 * c}}, {}}, {{{-1, -3 * u + cr}}, {}}};
    f[6] = {{{{1, ru + 3 * c}, {-1, ru + 3 * c}}, {}}, {{{0, -3 * u + cr}}, {}}};
    return f;
}

// Rotation of f_1 ... f_7 in sextants.
inline constexpr std::array<int, 7> kHatSextants = {0, -1, -2, 2, 1, 0, 0};

inline PlaneMap hat_reflection_map(const QuarticScalar& c) {
    const QuarticScalar phi = QuarticScalar::hat_ratio(), u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    return {phi, 0, true, phi * PlanePoint{2 * r3 * u + 6 * c, 4 * r3 * c}};
}

}  // namespace detail

/// F_{n,c}: eight maps at n = 1 (f_8 reflects), seven effective maps above with f_8 aliasing f_6.
inline IfsLevel hat_level(int n, const QuarticScalar& c) {
    if (n < 1) throw DomainError("hat levels start at n = 1");
    check_hat_parameter(c);
    const QuarticScalar phi = QuarticScalar::hat_ratio();
    auto forms = detail::hat_forms(c);
    std::vector<PlaneMap> maps;
    for (int i = 0; i < 7; ++i) maps.emplace_back(phi, detail::kHatSextants[static_cast<std::size_t>(i)], false, forms[static_cast<std::size_t>(i)].at(n));
    if (n == 1) {
        maps.push_back(detail::hat_reflection_map(c));
        return IfsLevel(std::move(maps));
    }
    maps.push_back(maps[5]);
    return IfsLevel(std::move(maps), {0, 1, 2, 3, 4, 5, 6, 5});
}

/// The limit IFS: translations replaced by their Binet limits; f_8 = f_6.
inline IfsLevel hat_limit(const QuarticScalar& c) {
    check_hat_parameter(c);
    const QuarticScalar phi = QuarticScalar::hat_ratio();
    auto forms = detail::hat_forms(c);
    std::vector<PlaneMap> maps;
    for (int i = 0; i < 7; ++i) maps.emplace_back(phi, detail::kHatSextants[static_cast<std::size_t>(i)], false, forms[static_cast<std::size_t>(i)].limit());
    maps.push_back(maps[5]);
    return IfsLevel(std::move(maps), {0, 1, 2, 3, 4, 5, 6, 5});
}

/// Upper bound on family_distance(hat_level(n), hat_limit, radius).
inline double hat_bound(int n, const QuarticScalar& c, double radius) {
    auto forms = detail::hat_forms(c);
    double worst = 0.0;
    for (const auto& f : forms) worst = std::max(worst, f.gap(n));
    if (n == 1) {
        // f_8 reflects at level one but not in the limit: |Delta t| + 2 phi R covers the boundary sup.
        PlaneMap f8 = detail::hat_reflection_map(c);
        double dt = std::abs(f8.translation().approx() - forms[5].limit().approx());
        worst = std::max(worst, (dt + 2.0 * approx_double(QuarticScalar::hat_ratio()) * radius) * (1.0 + 1e-9));
    }
    return worst;
}

struct SystemOptions {
    QuarticScalar c = default_hat_parameter();
    /// Negative control: shifts every f_2 translation so tiles overlap partially.
    bool corrupt = false;
};

namespace detail {

inline IfsLevel corrupted(IfsLevel level) {
    const PlaneMap& f2 = level.maps[1];
    PlaneMap shifted(f2.scale(), f2.sextant(), f2.reflect(), f2.translation() + f2.scale() * PlanePoint{Rational(1, 3), 0});
    level.maps[1] = shifted;
    return level;
}

}  // namespace detail

inline SifsFamily hat_family(const SystemOptions& options = {}) {
    const QuarticScalar c = options.c;
    IfsLevel limit = hat_limit(c);
    const double radius = attractor_radius_bound(limit);
    const bool corrupt = options.corrupt;
    auto level = [c, corrupt](int n) {
        IfsLevel l = hat_level(n, c);
        return corrupt ? detail::corrupted(std::move(l)) : l;
    };
    if (corrupt) limit = detail::corrupted(std::move(limit));
    return SifsFamily(corrupt ? "hat-corrupt" : "hat", 8, level, std::move(limit),
                      [c, radius](int n) { return hat_bound(n, c, radius); });
}

inline TileSystem hat_system(const SystemOptions& options = {}) {
    return TileSystem(hat_family(options), {hat_prototile(options.c)});
}

// ---------------------------------------------------------------------------
// Closed forms for p_n and q_n, the translation derivations, and the forced intersections.

/// p_n: closed form of v_8 on the tile pi_T(7...7 | n).
inline PlanePoint p_closed(int n, const QuarticScalar& c) {
    if (n < 1) throw DomainError("p_n is defined for n >= 1");
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    auto F = [](int i) { return QuarticScalar(fib_rational(i)); };
    const QuarticScalar s = F(2 * n + 2) + F(2 * n) - 1;
    const QuarticScalar t = F(2 * n + 1) - 1;
    PlanePoint inner = hat_vertices(c)[7] + PlanePoint{r3 * u * s + 3 * c * s, -3 * u * t + c * r3 * t};
    return QuarticScalar::hat_ratio().pow(static_cast<unsigned>(n)) * inner;
}

/// q_n: closed form of v_1 on the tile pi_T(4 1...1 | n).
inline PlanePoint q_closed(int n, const QuarticScalar& c) {
    if (n < 1) throw DomainError("q_n is defined for n >= 1");
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    auto F = [](int i) { return QuarticScalar(fib_rational(i)); };
    PlanePoint inner{2 * r3 * u * F(2 * n + 1) + 3 * c * (2 * F(2 * n + 2) - 1),
                     -6 * u * (F(2 * n + 1) - 1) - c * r3 * (2 * F(2 * n - 1) - 3)};
    return QuarticScalar::hat_ratio().pow(static_cast<unsigned>(n)) * inner;
}

inline PlanePoint p_bruteforce(const SifsFamily& family, int n, const QuarticScalar& c) {
    Address sevens;
    for (int i = 0; i < n; ++i) sevens.push_back(7);
    return tile_transform(family, sevens)(hat_vertices(c)[7]);
}

inline PlanePoint q_bruteforce(const SifsFamily& family, int n, const QuarticScalar& c) {
    Address word{4};
    for (int i = 1; i < n; ++i) word.push_back(1);
    return tile_transform(family, word)(hat_vertices(c)[0]);
}

/// Intermediate point f_4^{(n+1)}(p_n) in closed form.
inline PlanePoint f4_intermediate(int n, const QuarticScalar& c) {
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    auto F = [](int i) { return QuarticScalar(fib_rational(i)); };
    PlanePoint inner{r3 * u * (F(2 * n + 5) - 2 * F(2 * n) - 2) + 3 * c * (F(2 * n + 5) - 2),
                     -3 * u * (F(2 * n + 3) + F(2 * n + 1) - 2) + c * r3 * (F(2 * n) + F(2 * n - 2) + 2)};
    return QuarticScalar::hat_ratio().pow(static_cast<unsigned>(n + 1)) * inner;
}

/// f_i^{(n+1)}(0) for i = 2..7 in closed form.
///
/// f_4 is taken along its derivation (intermediate point minus e^{2 pi i/3} phi p_n);
/// the one-line simplification of that step drops a factor 2 in front of F_{2n+4}.
inline PlanePoint derived_translation(int i, int n, const QuarticScalar& c) {
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3(), phi = QuarticScalar::hat_ratio();
    auto F = [](int j) { return QuarticScalar(fib_rational(j)); };
    const QuarticScalar scale = phi.pow(static_cast<unsigned>(n + 1));
    switch (i) {
        case 2:
            return scale * PlanePoint{r3 * u * (F(2 * n + 4) - 2) + 3 * c * (F(2 * n + 1) - 1),
                                      3 * u * F(2 * n + 1) + c * r3 * (2 * F(2 * n + 3) + F(2 * n + 1) - 1)};
        case 3:
            return scale * PlanePoint{3 * r3 * u * (F(2 * n + 3) - 1) + 3 * c * (2 * F(2 * n + 1) + F(2 * n + 3) - 2),
                                      3 * u * (1 - F(2 * n)) + 3 * c * r3 * F(2 * n + 3)};
        case 4:
            return f4_intermediate(n, c) - phi * (sextant_rotation(2) * p_closed(n, c));
        case 5:
            return scale * PlanePoint{r3 * u * (F(2 * n + 2) + 1) + 9 * c * F(2 * n + 2),
                                      -3 * u * (F(2 * n + 3) + F(2 * n + 1) - 1) +
                                          c * r3 * (2 - F(2 * n + 1) - F(2 * n + 3))};
        case 6:
            return scale * PlanePoint{(r3 * u + 3 * c) * (F(2 * n + 2) + F(2 * n)), (-3 * u + c * r3) * F(2 * n + 1)};
        case 7:
            return scale * PlanePoint{(r3 * u + 3 * c) * (F(2 * n + 3) + F(2 * n + 1)), (-3 * u + c * r3) * F(2 * n + 2)};
        default: throw DomainError("derived translations exist for maps 2..7");
    }
}

/// The one-line simplified f_4 translation, which disagrees with the derivation.
inline PlanePoint simplified_f4_translation(int n, const QuarticScalar& c) {
    const QuarticScalar u = QuarticScalar(1) - c, r3 = QuarticScalar::sqrt3();
    auto F = [](int j) { return QuarticScalar(fib_rational(j)); };
    return QuarticScalar::hat_ratio().pow(static_cast<unsigned>(n + 1)) *
           PlanePoint{2 * r3 * u * F(2 * n + 3) + 3 * c * (F(2 * n + 4) - 1),
                      -6 * u * (F(2 * n + 3) - 1) + c * r3 * (3 - 2 * F(2 * n + 1))};
}

/// True when `point` lies in the closed support of the sub-collection f_i^{(m)}(S_{m-1}).
inline bool in_subcollection_support(const TileSystem& system, int m, int first_symbol, const PlanePoint& point) {
    bool found = false;
    PreparedPolygon::Vertex target = PreparedPolygon::make_vertex(point);
    for_each_tile_near(system, m, point.approx(), 1e-9, [&](const Address& a, const PlaneMap& t, std::size_t proto) {
        if (found || a[0] != first_symbol) return;
        PreparedPolygon tile(transform_polygon(t, system.prototile(proto)));
        found = geom::locate(target, tile) != geom::Where::outside;
    });
    return found;
}

struct IntersectionReport {
    int n = 0;
    std::array<bool, 3> identities{};  // (1)-(3) as point equalities
    std::array<bool, 3> supports{};    // the point lies on all three named supports
    bool passed() const {
        return identities[0] && identities[1] && identities[2] && supports[0] && supports[1] && supports[2];
    }
};

/// The three forced intersections: f_1(p_n) = f_2(q_n), f_4(p_n) = f_5(q_n), f_2(p_n) = f_3(q_n) at level n+1.
inline IntersectionReport intersection_identities(const TileSystem& system, int n, const QuarticScalar& c,
                                                  bool check_supports = true) {
    const SifsFamily& family = system.family();
    const IfsLevel& next = family.level(n + 1);
    PlanePoint p = p_closed(n, c), q = q_closed(n, c);
    IntersectionReport r;
    r.n = n;
    struct Item {
        int a, b, third;
    };
    const Item items[3] = {{1, 2, 6}, {4, 5, 7}, {2, 3, 6}};
    for (int i = 0; i < 3; ++i) {
        PlanePoint lhs = next.map(items[i].a)(p);
        r.identities[static_cast<std::size_t>(i)] = lhs == next.map(items[i].b)(q);
        if (!check_supports) {
            r.supports[static_cast<std::size_t>(i)] = true;
            continue;
        }
        bool all = true;
        for (int s : {items[i].a, items[i].b, items[i].third}) all = all && in_subcollection_support(system, n + 1, s, lhs);
        r.supports[static_cast<std::size_t>(i)] = all;
    }
    return r;
}

struct Clusters {
    std::vector<AddressedTile> h8;
    std::vector<AddressedTile> h7;
};

/// H_8 = F_1(T_c) and H_7 = H_8 without the f_1 copy.
inline Clusters clusters(const QuarticScalar& c) {
    IfsLevel level = hat_level(1, c);
    AddressedTile seed{Address{}, PlaneMap::identity(), 0};
    Clusters out;
    out.h8 = apply_ifs(level, std::span<const AddressedTile>(&seed, 1));
    for (const auto& t : out.h8)
        if (t.address != Address{1}) out.h7.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// The hexagon system.

/// floor(3 * 2^{n-2} - 1/2) as an exact integer.
inline long long hex_step(int n) {
    if (n < 1) throw DomainError("hexagon levels start at n = 1");
    if (n > 60) throw DomainError("hexagon level too large");
    return n == 1 ? 1 : 3LL * (1LL << (n - 2)) - 1;
}

namespace detail {
inline IfsLevel hex_with_offset(const Rational& offset) {
    const QuarticScalar half(Rational(1, 2));
    const PlanePoint radial{0, QuarticScalar::sqrt3()};
    std::vector<PlaneMap> maps{PlaneMap::scaling(half)};
    for (int k = 2; k <= 7; ++k)
        maps.emplace_back(half, 0, false, QuarticScalar(offset) * (radial * sextant_rotation(k - 2)));
    return IfsLevel(std::move(maps));
}
}  // namespace detail

/// f_1 = z/2, f_k = z/2 + (i sqrt3 / 2^n) e^{(k-2) i pi/3} floor(3 * 2^{n-2} - 1/2).
inline IfsLevel hex_level(int n) { return detail::hex_with_offset(Rational(hex_step(n), 1LL << n)); }

inline IfsLevel hex_limit() { return detail::hex_with_offset(Rational(3, 4)); }

/// Exact gap |t_k^{(n)} - t_k| = sqrt3 |step/2^n - 3/4|; linear parts agree.
inline double hex_bound(int n) {
    double gap = std::abs(static_cast<double>(hex_step(n)) / std::ldexp(1.0, n) - 0.75);
    return std::sqrt(3.0) * gap * (1.0 + 1e-12);
}

/// Regular hexagon, circumradius 1, vertices at angles k pi/3.
inline Polygon hex_prototile() {
    std::vector<PlanePoint> v;
    for (int k = 0; k < 6; ++k) v.push_back(sextant_rotation(k));
    return Polygon(std::move(v));
}

inline SifsFamily hex_family(const SystemOptions& options = {}) {
    const bool corrupt = options.corrupt;
    IfsLevel limit = hex_limit();
    if (corrupt) limit = detail::corrupted(std::move(limit));
    return SifsFamily(corrupt ? "hex-corrupt" : "hex", 7,
                      [corrupt](int n) { return corrupt ? detail::corrupted(hex_level(n)) : hex_level(n); },
                      std::move(limit), [](int n) { return hex_bound(n); });
}

inline TileSystem hex_system(const SystemOptions& options = {}) { return TileSystem(hex_family(options), {hex_prototile()}); }

/// True when z = a * i sqrt3 + b * i sqrt3 e^{i pi/3} for integers a, b.
inline bool on_hex_lattice(const PlanePoint& z) {
    if (!z.re.is_rational()) return false;
    if (!(z.im[0].is_zero() && z.im[2].is_zero() && z.im[3].is_zero())) return false;
    Rational b = Rational(-2, 3) * z.re[0];
    Rational a = z.im[1] - Rational(1, 2) * b;
    return a.is_integer() && b.is_integer();
}

// ---------------------------------------------------------------------------
// Registry.

inline const std::vector<std::string>& system_names() {
    static const std::vector<std::string> names{"hat", "hex"};
    return names;
}

inline TileSystem make_system(const std::string& name, const SystemOptions& options = {}) {
    if (name == "hat") return hat_system(options);
    if (name == "hex") return hex_system(options);
    throw DomainError("unknown system '" + name + "' (expected hat or hex)");
}

}  // namespace sifs
