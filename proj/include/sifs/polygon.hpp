#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sifs/ifs.hpp"
#include "sifs/interval.hpp"
#include "sifs/plane_map.hpp"

namespace sifs {

/// Drops repeated consecutive vertices and zero-width spikes (a -> b -> a).
///
/// Returns the reduced cycle; the caller compares sizes to learn how many
/// vertices were degenerate.
inline std::vector<PlanePoint> collapse_degenerate(std::vector<PlanePoint> cycle) {
    bool changed = true;
    while (changed && cycle.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < cycle.size() && cycle.size() >= 3; ++i) {
            std::size_t n = cycle.size();
            const PlanePoint& a = cycle[i];
            const PlanePoint& b = cycle[(i + 1) % n];
            if (a == b) {
                cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>((i + 1) % n));
                changed = true;
                break;
            }
            const PlanePoint& c = cycle[(i + 2) % n];
            if (a == c) {
                // Spike at b: remove b and the repeated a.
                std::size_t ib = (i + 1) % n, ic = (i + 2) % n;
                std::size_t first = std::max(ib, ic), second = std::min(ib, ic);
                cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(first));
                cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(second));
                changed = true;
                break;
            }
        }
    }
    return cycle;
}

/// Twice the signed area (shoelace sum).
inline QuarticScalar twice_signed_area(std::span<const PlanePoint> v) {
    QuarticScalar acc;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PlanePoint& a = v[i];
        const PlanePoint& b = v[(i + 1) % v.size()];
        acc += a.re * b.im - a.im * b.re;
    }
    return acc;
}

/// Simple polygon with exact vertices, stored counterclockwise.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<PlanePoint> vertices) : v_(std::move(vertices)) {
        if (v_.size() < 3) throw DomainError("a polygon needs at least three vertices");
        QuarticScalar a2 = twice_signed_area(v_);
        int s = sign(a2);
        if (s == 0) throw DomainError("degenerate polygon with zero area");
        if (s < 0) std::reverse(v_.begin(), v_.end());
    }

    /// Skips the orientation check; `vertices` must already be a counterclockwise simple cycle.
    static Polygon trusted(std::vector<PlanePoint> vertices) {
        Polygon p;
        p.v_ = std::move(vertices);
        return p;
    }

    const std::vector<PlanePoint>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    const PlanePoint& operator[](std::size_t i) const { return v_[i]; }

    std::vector<std::complex<double>> approx_vertices() const {
        std::vector<std::complex<double>> out;
        out.reserve(v_.size());
        for (const auto& p : v_) out.push_back(p.approx());
        return out;
    }

private:
    std::vector<PlanePoint> v_;
};

inline QuarticScalar area(const Polygon& p) { return Rational(1, 2) * twice_signed_area(p.vertices()); }

inline Polygon transform_polygon(const PlaneMap& m, const Polygon& p) {
    std::vector<PlanePoint> out;
    out.reserve(p.size());
    for (const auto& v : p.vertices()) out.push_back(m(v));
    // Similarities preserve orientation unless they reflect.
    if (m.reflect()) std::reverse(out.begin(), out.end());
    return Polygon::trusted(std::move(out));
}

/// Area centroid, exact.
inline PlanePoint centroid(const Polygon& p) {
    QuarticScalar cx, cy;
    const auto& v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PlanePoint& a = v[i];
        const PlanePoint& b = v[(i + 1) % v.size()];
        QuarticScalar cross = a.re * b.im - a.im * b.re;
        cx += (a.re + b.re) * cross;
        cy += (a.im + b.im) * cross;
    }
    QuarticScalar six_area = Rational(3) * twice_signed_area(v);
    return {cx / six_area, cy / six_area};
}

/// True when the cycles agree up to rotation of the starting vertex.
inline bool same_cycle(const Polygon& a, const Polygon& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        if (!(a[0] == b[shift])) continue;
        bool all = true;
        for (std::size_t i = 1; i < n && all; ++i) all = a[i] == b[(i + shift) % n];
        if (all) return true;
    }
    return false;
}

/// Isometries g with g(P) = P, built from the twelve rotations and reflections
/// by multiples of pi/3 about the centroid. The identity comes first.
inline std::vector<PlaneMap> symmetry_group(const Polygon& p) {
    PlanePoint c = centroid(p);
    std::vector<PlaneMap> group;
    for (int reflect = 0; reflect < 2; ++reflect) {
        for (int k = 0; k < 6; ++k) {
            PlaneMap linear(1, k, reflect != 0, {});
            PlaneMap g(1, k, reflect != 0, c - linear(c));
            if (same_cycle(transform_polygon(g, p), p)) group.push_back(g);
        }
    }
    return group;
}

/// { t o g : g in G } minimised in representation order; equal keys mean equal tiles.
inline PlaneMap canonical_key(const PlaneMap& transform, std::span<const PlaneMap> group) {
    PlaneMap best = transform;
    for (const auto& g : group) {
        if (g.is_identity()) continue;
        PlaneMap candidate = compose(transform, g);
        if (lex_less(candidate, best)) best = candidate;
    }
    return best;
}

enum class Overlap { disjoint, boundary_only, coincident, partial };

inline std::string_view to_string(Overlap o) {
    switch (o) {
        case Overlap::disjoint: return "disjoint";
        case Overlap::boundary_only: return "boundary_only";
        case Overlap::coincident: return "coincident";
        case Overlap::partial: return "partial";
    }
    return "?";
}

/// Polygon with cached interval enclosures of every coordinate, for filtered predicates.
class PreparedPolygon {
public:
    struct Vertex {
        PlanePoint exact;
        Interval x, y;
    };

    explicit PreparedPolygon(const Polygon& p) {
        vertices_.reserve(p.size());
        for (const auto& v : p.vertices()) vertices_.push_back(make_vertex(v));
        box_x_ = vertices_.front().x;
        box_y_ = vertices_.front().y;
        for (const auto& v : vertices_) {
            box_x_ = hull(box_x_, v.x);
            box_y_ = hull(box_y_, v.y);
        }
    }

    static Vertex make_vertex(const PlanePoint& p) { return {p, p.re.enclose(), p.im.enclose()}; }

    std::size_t size() const { return vertices_.size(); }
    const Vertex& operator[](std::size_t i) const { return vertices_[i]; }
    const Vertex& next(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
    Interval box_x() const { return box_x_; }
    Interval box_y() const { return box_y_; }

private:
    std::vector<Vertex> vertices_;
    Interval box_x_, box_y_;
};

namespace geom {

using V = PreparedPolygon::Vertex;

inline int compare(const QuarticScalar& a, Interval ia, const QuarticScalar& b, Interval ib) {
    if (ia.hi < ib.lo) return -1;
    if (ia.lo > ib.hi) return 1;
    if (a == b) return 0;
    return sifs::compare(a, b);
}

/// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear.
inline int orientation(const V& a, const V& b, const V& c) {
    Interval d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (int s = d.certain_sign(); s != 0) return s;
    const PlanePoint& pa = a.exact;
    const PlanePoint& pb = b.exact;
    const PlanePoint& pc = c.exact;
    if (pa == pb || pa == pc || pb == pc) return 0;
    QuarticScalar lhs = (pb.re - pa.re) * (pc.im - pa.im);
    QuarticScalar rhs = (pb.im - pa.im) * (pc.re - pa.re);
    if (lhs == rhs) return 0;
    return sifs::compare(lhs, rhs);
}

// c within the closed axis-aligned box spanned by a and b.
inline bool in_box(const V& a, const V& b, const V& c) {
    auto between = [](const QuarticScalar& lo, Interval ilo, const QuarticScalar& hi, Interval ihi,
                      const QuarticScalar& v, Interval iv) {
        int s1 = compare(lo, ilo, v, iv), s2 = compare(v, iv, hi, ihi);
        if (s1 <= 0 && s2 <= 0) return true;
        int t1 = compare(hi, ihi, v, iv), t2 = compare(v, iv, lo, ilo);
        return t1 <= 0 && t2 <= 0;
    };
    return between(a.exact.re, a.x, b.exact.re, b.x, c.exact.re, c.x) &&
           between(a.exact.im, a.y, b.exact.im, b.y, c.exact.im, c.y);
}

inline bool on_segment(const V& a, const V& b, const V& c) { return orientation(a, b, c) == 0 && in_box(a, b, c); }

inline bool boxes_meet(const V& a, const V& b, const V& c, const V& d) {
    return overlaps(hull(a.x, b.x), hull(c.x, d.x)) && overlaps(hull(a.y, b.y), hull(c.y, d.y));
}

inline bool proper_crossing(const V& a, const V& b, const V& c, const V& d) {
    if (!boxes_meet(a, b, c, d)) return false;
    int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    if (o1 == 0 || o2 == 0 || o1 == o2) return false;
    int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    return o3 != 0 && o4 != 0 && o3 != o4;
}

enum class Where { outside, on, inside };

inline Where locate(const V& m, const PreparedPolygon& q) {
    if (!overlaps(m.x, q.box_x()) || !overlaps(m.y, q.box_y())) return Where::outside;
    bool inside = false;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const V& a = q[i];
        const V& b = q.next(i);
        bool box = overlaps(hull(a.x, b.x), m.x) && overlaps(hull(a.y, b.y), m.y);
        if (box && on_segment(a, b, m)) return Where::on;
        bool a_above = compare(a.exact.im, a.y, m.exact.im, m.y) > 0;
        bool b_above = compare(b.exact.im, b.y, m.exact.im, m.y) > 0;
        if (a_above == b_above) continue;
        // Upward edges count when m is strictly left of them, downward edges when strictly right.
        int o = orientation(a, b, m);
        if (b_above ? o > 0 : o < 0) inside = !inside;
    }
    return inside ? Where::inside : Where::outside;
}

// Splits each edge of p at vertices of q lying on it and locates every piece.
// Returns {any piece inside q, all pieces on q's boundary, any contact at all}.
struct PieceSummary {
    bool any_inside = false;
    bool all_on = true;
    bool contact = false;
};

inline PieceSummary classify_pieces(const PreparedPolygon& p, const PreparedPolygon& q) {
    PieceSummary out;
    std::vector<const V*> cuts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const V& a = p[i];
        const V& b = p.next(i);
        Interval ex = hull(a.x, b.x), ey = hull(a.y, b.y);
        if (!overlaps(ex, q.box_x()) || !overlaps(ey, q.box_y())) {
            out.all_on = false;
            continue;
        }
        cuts.clear();
        for (std::size_t j = 0; j < q.size(); ++j) {
            const V& c = q[j];
            if (!overlaps(ex, c.x) || !overlaps(ey, c.y)) continue;
            if (on_segment(a, b, c)) {
                out.contact = true;
                if (!(c.exact == a.exact) && !(c.exact == b.exact)) cuts.push_back(&c);
            }
        }
        // Order cut points along a -> b by projection onto the edge direction.
        const QuarticScalar dx = b.exact.re - a.exact.re, dy = b.exact.im - a.exact.im;
        std::sort(cuts.begin(), cuts.end(), [&](const V* u, const V* w) {
            QuarticScalar pu = (u->exact.re - a.exact.re) * dx + (u->exact.im - a.exact.im) * dy;
            QuarticScalar pw = (w->exact.re - a.exact.re) * dx + (w->exact.im - a.exact.im) * dy;
            return sifs::compare(pu, pw) < 0;
        });
        const V* prev = &a;
        auto visit = [&](const V& from, const V& to) {
            PlanePoint mid = Rational(1, 2) * (from.exact + to.exact);
            V m = PreparedPolygon::make_vertex(mid);
            switch (locate(m, q)) {
                case Where::inside: out.any_inside = true; out.all_on = false; break;
                case Where::on: out.contact = true; break;
                case Where::outside: out.all_on = false; break;
            }
        };
        for (const V* c : cuts) {
            visit(*prev, *c);
            prev = c;
        }
        visit(*prev, b);
    }
    return out;
}

}  // namespace geom

/// Exact relation between two simple polygons.
inline Overlap classify_overlap(const PreparedPolygon& p, const PreparedPolygon& q) {
    if (!overlaps(p.box_x(), q.box_x()) || !overlaps(p.box_y(), q.box_y())) return Overlap::disjoint;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            if (geom::proper_crossing(p[i], p.next(i), q[j], q.next(j))) return Overlap::partial;
    geom::PieceSummary pq = geom::classify_pieces(p, q);
    if (pq.any_inside) return Overlap::partial;
    geom::PieceSummary qp = geom::classify_pieces(q, p);
    if (qp.any_inside) return Overlap::partial;
    if (pq.all_on && qp.all_on) return Overlap::coincident;
    if (pq.contact || qp.contact) return Overlap::boundary_only;
    // No vertex of either lies on the other and no crossings: one may still contain the other.
    if (geom::locate(p[0], q) == geom::Where::inside || geom::locate(q[0], p) == geom::Where::inside)
        return Overlap::partial;
    return Overlap::disjoint;
}

inline Overlap classify_overlap(const Polygon& p, const Polygon& q) {
    return classify_overlap(PreparedPolygon(p), PreparedPolygon(q));
}

/// True when no two non-adjacent edges meet and adjacent edges share only their common vertex.
inline bool is_simple(const Polygon& p) {
    PreparedPolygon pp(p);
    const std::size_t n = pp.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = pp[i];
            const auto& b = pp.next(i);
            const auto& c = pp[j];
            const auto& d = pp.next(j);
            bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (geom::proper_crossing(a, b, c, d)) return false;
            if (adjacent) {
                // Shared vertex only: the far endpoints must not lie on the other edge.
                const auto& far_i = (j == i + 1) ? a : b;
                const auto& far_j = (j == i + 1) ? d : c;
                if (geom::on_segment(c, d, far_i) || geom::on_segment(a, b, far_j)) return false;
                continue;
            }
            if (geom::on_segment(a, b, c) || geom::on_segment(a, b, d) || geom::on_segment(c, d, a) ||
                geom::on_segment(c, d, b))
                return false;
        }
    }
    return true;
}

/// Every vertex of every tile, exact duplicates removed, in first-seen order.
inline std::vector<PlanePoint> vertex_cloud(std::span<const AddressedTile> tiles, std::span<const Polygon> prototiles) {
    std::vector<PlanePoint> out;
    std::unordered_set<PlanePoint> seen;
    for (const auto& t : tiles) {
        for (const auto& v : prototiles[t.prototile].vertices()) {
            PlanePoint w = t.transform(v);
            if (seen.insert(w).second) out.push_back(std::move(w));
        }
    }
    return out;
}

}  // namespace sifs
