#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sifs/ifs.hpp"
#include "sifs/parallel.hpp"
#include "sifs/polygon.hpp"
#include "sifs/spatial_hash.hpp"

namespace sifs {

/// Identity of a placed tile: prototile plus its transform reduced modulo the prototile's symmetries.
struct TileKey {
    std::size_t prototile = 0;
    PlaneMap map;
    friend bool operator==(const TileKey&, const TileKey&) = default;
};

struct TileKeyHash {
    std::size_t operator()(const TileKey& k) const noexcept { return k.map.hash() * 31u + k.prototile; }
};

/// A SIFS together with the prototiles its tiles are copies of.
class TileSystem {
public:
    TileSystem(SifsFamily family, std::vector<Polygon> prototiles)
        : family_(std::move(family)), prototiles_(std::move(prototiles)) {
        if (prototiles_.empty()) throw DomainError("a tile system needs a prototile");
        for (const auto& p : prototiles_) {
            symmetries_.push_back(symmetry_group(p));
            for (const auto& v : p.vertices()) radius_ = std::max(radius_, std::abs(v.approx()));
        }
        radius_ *= 1.0 + 1e-9;
    }

    const SifsFamily& family() const { return family_; }
    const std::vector<Polygon>& prototiles() const { return prototiles_; }
    const Polygon& prototile(std::size_t i = 0) const { return prototiles_.at(i); }
    const std::vector<PlaneMap>& symmetries(std::size_t i = 0) const { return symmetries_.at(i); }
    /// Radius of an origin-centred disk holding every prototile.
    double prototile_radius() const { return radius_; }

    TileKey key(const PlaneMap& transform, std::size_t prototile) const {
        return {prototile, canonical_key(transform, symmetries_[prototile])};
    }
    TileKey key(const AddressedTile& t) const { return key(t.transform, t.prototile); }

    Polygon polygon(const AddressedTile& t) const { return transform_polygon(t.transform, prototiles_[t.prototile]); }

    /// ratio^{-k}: maps depth-k tiles back to unit size.
    QuarticScalar normalizer(int k) const { return family_.ratio().inverse().pow(static_cast<unsigned>(k)); }

    /// Radius of an origin-centred disk holding the support of S_depth.
    double support_radius(int depth) const {
        double r = radius_;
        double lambda = approx_double(family_.ratio());
        for (int level = 1; level <= depth; ++level) {
            double t = 0.0;
            for (const auto& m : family_.level(level).maps) t = std::max(t, std::abs(m.translation().approx()));
            r = (t + lambda * r) * (1.0 + 1e-9);
        }
        return r;
    }

    /// Replaces aliased symbols by their targets, level by level.
    Address canonical_word(const Address& word) const {
        std::vector<std::uint8_t> out(word.symbols());
        const int k = static_cast<int>(word.size());
        for (int p = 0; p < k; ++p) {
            const IfsLevel& level = family_.level(k - p);
            std::size_t idx = static_cast<std::size_t>(out[static_cast<std::size_t>(p)] - 1);
            if (idx >= level.arity()) throw DomainError("address symbol out of range at position " + std::to_string(p + 1));
            out[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(level.alias[idx] + 1);
        }
        return Address(std::move(out));
    }

private:
    SifsFamily family_;
    std::vector<Polygon> prototiles_;
    std::vector<std::vector<PlaneMap>> symmetries_;
    double radius_ = 0.0;
};

struct Removal {
    Address removed;
    Address survivor;
};

struct Violation {
    Address first;
    Address second;
    Overlap kind;
};

/// Processed depth-k collection: coincident duplicates removed, keeping the top address.
struct ProcessedCollection {
    int depth = 0;
    std::size_t raw_count = 0;
    std::vector<AddressedTile> survivors;
    std::vector<Removal> removed;
    std::vector<Violation> violations;
    std::size_t pairs_checked = 0;
    std::size_t contacts = 0;
    bool geometry_checked = false;

    std::vector<Address> addresses() const {
        std::vector<Address> out;
        out.reserve(survivors.size());
        for (const auto& t : survivors) out.push_back(t.address);
        return out;
    }
};

namespace detail {

inline Box polygon_box(const PreparedPolygon& p) { return {p.box_x(), p.box_y()}; }

inline double diameter_bound(const Polygon& p) {
    double d = 0.0;
    auto v = p.approx_vertices();
    for (auto a : v)
        for (auto b : v) d = std::max(d, std::abs(a - b));
    return d * (1.0 + 1e-9) + 1e-12;
}

}  // namespace detail

struct ProcessOptions {
    /// Run the exact pairwise overlap sweep over survivors.
    bool sweep = true;
};

/// Keep/delete processing of the raw depth-k collection.
///
/// Tiles with equal keys cover the same set; the plain-lexicographically
/// smallest address of each group survives (symbol 1 ranks highest). Surviving
/// tiles are then swept pairwise in unit-scaled coordinates; partial overlaps
/// are logged as violations, and any coincidence the keys missed is merged.
inline ProcessedCollection process(const TileSystem& system, int k, ProcessOptions options = {}) {
    if (k < 1) throw DomainError("processing needs depth k >= 1");
    ProcessedCollection out;
    out.depth = k;
    std::vector<AddressedTile> raw = supertile(system.family(), k);
    out.raw_count = raw.size();

    std::vector<TileKey> keys(raw.size());
    parallel_for(raw.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) keys[i] = system.key(raw[i]);
    });
    // Raw tiles arrive sorted by address, so the first member of a group is its top.
    std::unordered_map<TileKey, std::size_t, TileKeyHash> first;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = first.try_emplace(keys[i], i);
        if (inserted) {
            keep.push_back(i);
        } else {
            out.removed.push_back({raw[i].address, raw[it->second].address});
        }
    }
    for (std::size_t i : keep) out.survivors.push_back(raw[i]);

    if (!options.sweep) return out;
    out.geometry_checked = true;
    const PlaneMap unit = PlaneMap::scaling(system.normalizer(k));
    std::vector<std::optional<PreparedPolygon>> prepared(out.survivors.size());
    parallel_for(prepared.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const auto& t = out.survivors[i];
            prepared[i].emplace(transform_polygon(compose(unit, t.transform), system.prototile(t.prototile)));
        }
    });
    std::vector<Box> boxes;
    boxes.reserve(prepared.size());
    double pitch = 0.0;
    for (const auto& p : system.prototiles()) pitch = std::max(pitch, detail::diameter_bound(p));
    for (const auto& p : prepared) boxes.push_back(detail::polygon_box(*p));
    SpatialHash grid(std::move(boxes), pitch);
    auto pairs = grid.candidate_pairs();
    out.pairs_checked = pairs.size();
    std::vector<Overlap> kinds(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t n = b; n < e; ++n) kinds[n] = classify_overlap(*prepared[pairs[n].first], *prepared[pairs[n].second]);
    });

    std::vector<std::size_t> parent(out.survivors.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    bool merged = false;
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        auto [i, j] = pairs[n];
        switch (kinds[n]) {
            case Overlap::boundary_only: ++out.contacts; break;
            case Overlap::partial:
                out.violations.push_back({out.survivors[i].address, out.survivors[j].address, Overlap::partial});
                break;
            case Overlap::coincident: {
                std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
                merged = true;
                break;
            }
            case Overlap::disjoint: break;
        }
    }
    if (merged) {
        std::vector<AddressedTile> kept;
        for (std::size_t i = 0; i < out.survivors.size(); ++i) {
            std::size_t r = find(i);
            if (r == i) {
                kept.push_back(out.survivors[i]);
            } else {
                out.removed.push_back({out.survivors[i].address, out.survivors[r].address});
            }
        }
        out.survivors = std::move(kept);
    }
    std::sort(out.removed.begin(), out.removed.end(), [](const Removal& a, const Removal& b) { return a.removed < b.removed; });
    return out;
}

/// Sigma_{T,k}: addresses that survive processing at depth k, sorted.
inline std::vector<Address> sigma_addresses(const TileSystem& system, int k) {
    return process(system, k, {.sweep = false}).addresses();
}

// ---------------------------------------------------------------------------
// Local search: tiles of a deep collection near a point, without building it.

/// Calls visit(address, transform) for each depth-m tile whose support may lie
/// within `slack` of `point`. Only effective symbols are enumerated.
template <class Visit>
void for_each_tile_near(const TileSystem& system, int m, std::complex<double> point, double slack, Visit&& visit) {
    std::vector<double> radius(static_cast<std::size_t>(m) + 1);
    for (int l = 0; l <= m; ++l) radius[static_cast<std::size_t>(l)] = system.support_radius(l);
    std::function<void(int, const Address&, const PlaneMap&, double)> descend =
        [&](int level, const Address& prefix, const PlaneMap& acc, double acc_scale) {
            const IfsLevel& lv = system.family().level(level);
            for (std::size_t i : lv.effective()) {
                PlaneMap next = compose(acc, lv.maps[i]);
                double s = acc_scale * approx_double(lv.ratio);
                double reach = s * radius[static_cast<std::size_t>(level - 1)] + slack;
                if (std::abs(next.translation().approx() - point) > reach * (1.0 + 1e-9) + 1e-12) continue;
                Address addr = prefix + Address{static_cast<int>(i + 1)};
                if (level == 1) {
                    visit(addr, next, system.family().starting_tile(static_cast<int>(i + 1)));
                } else {
                    descend(level - 1, addr, next, s);
                }
            }
        };
    descend(m, Address{}, PlaneMap::identity(), 1.0);
}

/// True when the tile with this address is not removed by processing at its depth.
///
/// The word is canonicalised through the alias tables first; a coincident tile
/// with a plain-lexicographically smaller address means removal.
inline bool survives(const TileSystem& system, const Address& word) {
    Address w = system.canonical_word(word);
    PlaneMap t = tile_transform(system.family(), w);
    std::size_t proto = system.family().starting_tile(w.back());
    TileKey key = system.key(t, proto);
    std::complex<double> anchor = t(system.prototile(proto)[0]).approx();
    bool alive = true;
    for_each_tile_near(system, static_cast<int>(w.size()), anchor, 1e-9,
                       [&](const Address& other, const PlaneMap& m, std::size_t other_proto) {
                           if (!alive || !(other < w)) return;
                           if (system.key(m, other_proto) == key) alive = false;
                       });
    return alive;
}

// ---------------------------------------------------------------------------
// Tiling conditions.

struct ConditionLevel {
    int k = 0;
    std::size_t raw = 0;
    std::size_t survivors = 0;
    std::size_t removed = 0;
    std::size_t partial = 0;
    std::optional<Violation> witness;
    bool interiors_disjoint = true;
    bool area_identity = true;
    // Comparisons against depth k + 1 (absent at k_max). A depth-(k+1) word
    // w = j1 j2 ... j_{k+1} restricts to depth k by dropping its level-(k+1)
    // symbol j1, which keeps every remaining symbol at its own level.
    std::optional<bool> prefix_consistent;
    std::optional<bool> extends;
    std::optional<Address> prefix_witness;
    // Diagnostic only: keep j1 ... jk instead, shifting every symbol down a level.
    std::optional<bool> leading_truncation;
};

struct ConditionReport {
    std::vector<ConditionLevel> levels;

    bool first_condition() const {
        return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.partial == 0; });
    }
    bool prefix_consistency() const {
        return std::all_of(levels.begin(), levels.end(), [](const auto& l) {
            return l.prefix_consistent.value_or(true) && l.extends.value_or(true);
        });
    }
    bool interiors_disjoint() const {
        return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.interiors_disjoint; });
    }
    bool area_identity() const {
        return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.area_identity; });
    }
    bool passed() const { return first_condition() && prefix_consistency() && interiors_disjoint() && area_identity(); }
};

/// Runs the finite checks for both tiling conditions at depths 1..k_max.
///
/// First condition: the exact sweep finds no partial overlap. Second condition
/// (finite proxy): restricting Sigma_{k+1} to levels 1..k gives exactly Sigma_k,
/// so the tile i1...ik of S_k is the tile j i1...ik of S_{k+1} for some j.
inline ConditionReport check_conditions(const TileSystem& system, int k_max) {
    if (k_max < 2) throw DomainError("check_conditions needs k_max >= 2");
    ConditionReport report;
    std::vector<std::vector<Address>> sigma;
    for (int k = 1; k <= k_max; ++k) {
        ProcessedCollection pc = process(system, k);
        ConditionLevel level;
        level.k = k;
        level.raw = pc.raw_count;
        level.survivors = pc.survivors.size();
        level.removed = pc.removed.size();
        level.partial = pc.violations.size();
        if (!pc.violations.empty()) level.witness = pc.violations.front();
        level.interiors_disjoint = pc.violations.empty();
        QuarticScalar total;
        for (const auto& t : pc.survivors) total += area(system.polygon(t));
        QuarticScalar lambda2k = system.family().ratio().pow(static_cast<unsigned>(2 * k));
        QuarticScalar expected = Rational(static_cast<long long>(pc.survivors.size())) * lambda2k * area(system.prototile());
        level.area_identity = total == expected;
        report.levels.push_back(level);
        sigma.push_back(pc.addresses());
    }
    for (int k = 1; k < k_max; ++k) {
        const auto& lo = sigma[static_cast<std::size_t>(k - 1)];
        const auto& hi = sigma[static_cast<std::size_t>(k)];
        std::set<Address> restricted, leading;
        for (const auto& w : hi) {
            restricted.insert(w.suffix_from(1));
            leading.insert(system.canonical_word(w.truncated(static_cast<std::size_t>(k))));
        }
        std::set<Address> lower(lo.begin(), lo.end());
        auto& level = report.levels[static_cast<std::size_t>(k - 1)];
        level.prefix_consistent = restricted == lower;
        level.extends = std::includes(restricted.begin(), restricted.end(), lower.begin(), lower.end());
        level.leading_truncation = leading == lower;
        if (!*level.prefix_consistent) {
            std::vector<Address> diff;
            std::set_symmetric_difference(restricted.begin(), restricted.end(), lower.begin(), lower.end(),
                                          std::back_inserter(diff));
            if (!diff.empty()) level.prefix_witness = diff.front();
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Stabilised collections and blowups.

/// Periodic symbol stream j1 j2 j3 ... given by a repeating pattern.
class BlowupString {
public:
    BlowupString() : pattern_{1} {}
    explicit BlowupString(Address pattern) : pattern_(std::move(pattern)) {
        if (pattern_.empty()) throw DomainError("blowup string needs at least one symbol");
    }
    /// Accepts "1", "17", or "111..." (a trailing ellipsis is ignored).
    static BlowupString parse(std::string_view text) {
        while (!text.empty() && (text.back() == '.' || text.back() == ' ')) text.remove_suffix(1);
        if (text.empty()) throw ParseError("empty blowup string", 0);
        return BlowupString(Address::parse(text));
    }
    /// j_position, 1-based.
    int symbol(std::size_t position) const { return pattern_[(position - 1) % pattern_.size()]; }
    Address prefix(std::size_t length) const {
        Address a;
        for (std::size_t p = 1; p <= length; ++p) a.push_back(symbol(p));
        return a;
    }
    std::string str() const { return pattern_.str() + "..."; }

private:
    Address pattern_;
};

struct BlowupPatch {
    BlowupString blowup;
    int k = 0;
    int stabilization = 0;  // M
    Address blowup_prefix;  // j1 ... jk
    PlaneMap expansion;     // (f_{j1}^{(1)})^{-1} ... (f_{jk}^{(k)})^{-1}
    std::vector<AddressedTile> tiles;
};

inline constexpr int kDefaultStabilizationCap = 10;

/// Addresses w in S_k whose tiles survive under the outward prefix j_m ... j_{k+1}.
inline std::vector<Address> survivors_under_prefix(const TileSystem& system, int k, int m, const BlowupString& blowup,
                                                   std::span<const AddressedTile> words) {
    Address prefix;
    for (int p = m; p > k; --p) prefix.push_back(blowup.symbol(static_cast<std::size_t>(p)));
    std::vector<char> alive(words.size());
    parallel_for(words.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) alive[i] = survives(system, prefix + words[i].address) ? 1 : 0;
    });
    std::vector<Address> out;
    for (std::size_t i = 0; i < words.size(); ++i)
        if (alive[i]) out.push_back(words[i].address);
    return out;
}

/// Stabilised processing S^_k for a blowup string: the smallest M such that
/// the surviving sub-collection under prefixes j_m ... j_{k+1} stops changing.
inline BlowupPatch stabilized(const TileSystem& system, int k, const BlowupString& blowup,
                              int cap = kDefaultStabilizationCap) {
    if (k < 1) throw DomainError("stabilisation needs k >= 1");
    std::vector<AddressedTile> raw = supertile(system.family(), k);
    std::vector<Address> prev = survivors_under_prefix(system, k, k, blowup, raw);
    for (int m = k + 1; m <= k + cap; ++m) {
        std::vector<Address> cur = survivors_under_prefix(system, k, m, blowup, raw);
        if (cur == prev) {
            BlowupPatch patch;
            patch.blowup = blowup;
            patch.k = k;
            patch.stabilization = m;
            patch.blowup_prefix = blowup.prefix(static_cast<std::size_t>(k));
            std::unordered_set<Address> keep(cur.begin(), cur.end());
            for (auto& t : raw)
                if (keep.count(t.address)) patch.tiles.push_back(std::move(t));
            return patch;
        }
        prev = std::move(cur);
    }
    throw DomainError("no stabilisation within " + std::to_string(cap) + " levels above k = " + std::to_string(k) +
                      " for blowup " + blowup.str());
}

/// Blown-up patch (f_{j1}^{(1)})^{-1} ... (f_{jk}^{(k)})^{-1} (S^_k), all tiles at unit scale.
inline BlowupPatch blowup_tiling(const TileSystem& system, const BlowupString& blowup, int k,
                                 int cap = kDefaultStabilizationCap) {
    BlowupPatch patch = stabilized(system, k, blowup, cap);
    Address outward;
    for (int p = k; p >= 1; --p) outward.push_back(blowup.symbol(static_cast<std::size_t>(p)));
    patch.expansion = invert(tile_transform(system.family(), system.canonical_word(outward)));
    for (auto& t : patch.tiles) t.transform = compose(patch.expansion, t.transform);
    return patch;
}

/// True when every tile of `inner` occurs in `outer` (same prototile, same covered set).
inline bool patch_contains(const TileSystem& system, const BlowupPatch& outer, const BlowupPatch& inner) {
    std::unordered_set<TileKey, TileKeyHash> keys;
    for (const auto& t : outer.tiles) keys.insert(system.key(t));
    return std::all_of(inner.tiles.begin(), inner.tiles.end(), [&](const auto& t) { return keys.count(system.key(t)) > 0; });
}

inline void write_patch(std::ostream& os, const BlowupPatch& patch) {
    os << "blowup=" << patch.blowup.str() << " k=" << patch.k << " M=" << patch.stabilization << '\n';
    write_tile_list(os, patch.tiles);
}

// ---------------------------------------------------------------------------
// Overlap operator and the limiting tile.

/// Tiles of K that meet some f_i^{-1} f_j (K), i != j, in positive area.
///
/// K is a finite union of polygons; the result lists indices into K, ascending.
inline std::vector<std::size_t> overlap_operator(const IfsLevel& level, std::span<const Polygon> region) {
    if (region.empty()) return {};
    std::vector<std::optional<PreparedPolygon>> prepared(region.size());
    parallel_for(region.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) prepared[i].emplace(region[i]);
    });
    std::vector<Box> boxes;
    double pitch = 0.0;
    std::complex<double> lo{1e300, 1e300}, hi{-1e300, -1e300};
    std::vector<std::vector<std::complex<double>>> approx(region.size());
    for (std::size_t i = 0; i < region.size(); ++i) {
        boxes.push_back(detail::polygon_box(*prepared[i]));
        pitch = std::max(pitch, detail::diameter_bound(region[i]));
        approx[i] = region[i].approx_vertices();
        lo = {std::min(lo.real(), boxes.back().x.lo), std::min(lo.imag(), boxes.back().y.lo)};
        hi = {std::max(hi.real(), boxes.back().x.hi), std::max(hi.imag(), boxes.back().y.hi)};
    }
    const std::complex<double> centre = 0.5 * (lo + hi);
    const double spread = 0.5 * std::abs(hi - lo);
    SpatialHash grid(boxes, pitch);
    std::vector<char> kept(region.size(), 0);
    auto eff = level.effective();
    for (std::size_t i : eff) {
        PlaneMap inv = invert(level.maps[i]);
        for (std::size_t j : eff) {
            if (i == j) continue;
            PlaneMap g = compose(inv, level.maps[j]);
            ApproxMap ga(g);
            // g is an isometry here; skip it when g(K) cannot reach K.
            if (std::abs(ga(centre) - centre) > 2 * spread * (1 + 1e-9) + 1e-12) continue;
            std::vector<std::vector<std::size_t>> hits(region.size());
            parallel_for(region.size(), [&](std::size_t b, std::size_t e) {
                for (std::size_t t = b; t < e; ++t) {
                    Box box{{1e300, -1e300}, {1e300, -1e300}};
                    for (auto v : approx[t]) {
                        auto w = ga(v);
                        box.x = {std::min(box.x.lo, w.real()), std::max(box.x.hi, w.real())};
                        box.y = {std::min(box.y.lo, w.imag()), std::max(box.y.hi, w.imag())};
                    }
                    double pad = 1e-9 * (1.0 + std::max(std::abs(box.x.lo), std::abs(box.y.lo)));
                    box.x = {box.x.lo - pad, box.x.hi + pad};
                    box.y = {box.y.lo - pad, box.y.hi + pad};
                    auto candidates = grid.query(box);
                    if (candidates.empty()) continue;
                    std::optional<PreparedPolygon> image;
                    for (auto c : candidates) {
                        if (kept[c]) continue;
                        if (!image) image.emplace(transform_polygon(g, region[t]));
                        Overlap o = classify_overlap(*image, *prepared[c]);
                        if (o == Overlap::partial || o == Overlap::coincident) hits[t].push_back(c);
                    }
                }
            });
            for (const auto& h : hits)
                for (auto c : h) kept[c] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kept.size(); ++i)
        if (kept[i]) out.push_back(i);
    return out;
}

struct LimitTileResult {
    int n = 0;
    int depth = 0;
    std::vector<AddressedTile> tiles;  // surviving tiles of S_depth
    std::vector<std::size_t> sizes;    // region size after each operator, innermost first
    double hausdorff_to_prototile = 0.0;
};

/// Filled point sample of a polygon: vertices, boundary points at spacing h, and interior grid points.
inline std::vector<std::complex<double>> filled_sample(const Polygon& p, double h) {
    auto v = p.approx_vertices();
    std::vector<std::complex<double>> out(v.begin(), v.end());
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto a = v[i], b = v[(i + 1) % v.size()];
        int steps = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / h)));
        for (int s = 1; s < steps; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / steps));
        x0 = std::min(x0, a.real()), x1 = std::max(x1, a.real());
        y0 = std::min(y0, a.imag()), y1 = std::max(y1, a.imag());
    }
    for (double y = y0 + h / 2; y < y1; y += h) {
        for (double x = x0 + h / 2; x < x1; x += h) {
            bool inside = false;
            for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
                if ((v[i].imag() > y) != (v[j].imag() > y) &&
                    x < (v[j].real() - v[i].real()) * (y - v[i].imag()) / (v[j].imag() - v[i].imag()) + v[i].real())
                    inside = !inside;
            }
            if (inside) out.emplace_back(x, y);
        }
    }
    return out;
}

/// Ov_{F_1} o ... o Ov_{F_n} applied to the support of processed S_depth, at tile granularity.
inline LimitTileResult limit_tile(const TileSystem& system, int n, int depth) {
    if (n < 1) throw DomainError("limit_tile needs n >= 1");
    if (depth < 1) throw DomainError("limit_tile needs an approximation depth >= 1");
    LimitTileResult result;
    result.n = n;
    result.depth = depth;
    ProcessedCollection pc = process(system, depth, {.sweep = false});
    std::vector<AddressedTile> tiles = std::move(pc.survivors);
    for (int level = n; level >= 1; --level) {
        std::vector<Polygon> region;
        region.reserve(tiles.size());
        for (const auto& t : tiles) region.push_back(system.polygon(t));
        auto keep = overlap_operator(system.family().level(level), region);
        if (keep.empty())
            throw DomainError("overlap operator at level " + std::to_string(level) +
                              " left an empty region; increase the approximation depth");
        std::vector<AddressedTile> next;
        for (auto i : keep) next.push_back(tiles[i]);
        tiles = std::move(next);
        result.sizes.push_back(tiles.size());
    }
    double h = 0.0;
    std::vector<std::complex<double>> cloud;
    for (const auto& t : tiles) {
        Polygon p = system.polygon(t);
        h = std::max(h, detail::diameter_bound(p));
        auto s = filled_sample(p, detail::diameter_bound(p) / 4);
        cloud.insert(cloud.end(), s.begin(), s.end());
    }
    auto target = filled_sample(system.prototile(), h / 4);
    result.hausdorff_to_prototile = hausdorff(cloud, target);
    result.tiles = std::move(tiles);
    return result;
}

}  // namespace sifs
