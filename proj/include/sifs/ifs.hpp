#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "sifs/address.hpp"
#include "sifs/plane_map.hpp"
#include "sifs/point_grid.hpp"

namespace sifs {

/// One IFS F_n: an ordered list of similarities sharing a contraction ratio.
///
/// Index i (0-based) is address symbol i+1. A map may alias an earlier one
/// (alias[i] != i); aliased indices are kept so the arity stays fixed across
/// levels but are never enumerated when building tiles.
struct IfsLevel {
    std::vector<PlaneMap> maps;
    std::vector<std::size_t> alias;
    QuarticScalar ratio;

    IfsLevel() = default;
    IfsLevel(std::vector<PlaneMap> m, std::vector<std::size_t> a = {}) : maps(std::move(m)), alias(std::move(a)) {
        if (maps.empty()) throw DomainError("an IFS needs at least one map");
        if (alias.empty()) {
            alias.resize(maps.size());
            for (std::size_t i = 0; i < maps.size(); ++i) alias[i] = i;
        }
        if (alias.size() != maps.size()) throw DomainError("alias table size does not match arity");
        ratio = maps.front().scale();
        if (sign(ratio) <= 0 || compare(ratio, 1) >= 0) throw DomainError("IFS ratio must lie in (0, 1)");
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (!(maps[i].scale() == ratio)) throw DomainError("IFS maps must share one contraction ratio");
            std::size_t target = alias[i];
            if (target >= maps.size() || alias[target] != target || !(maps[target] == maps[i]))
                throw DomainError("alias entry " + std::to_string(i + 1) + " does not name an equal effective map");
        }
    }

    std::size_t arity() const { return maps.size(); }
    bool is_effective(std::size_t index) const { return alias[index] == index; }

    /// 0-based indices of maps that are not aliases, ascending.
    std::vector<std::size_t> effective() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < maps.size(); ++i)
            if (is_effective(i)) out.push_back(i);
        return out;
    }

    const PlaneMap& map(int symbol) const { return maps.at(static_cast<std::size_t>(symbol - 1)); }
};

/// A sequential IFS n -> F_n (n >= 1) together with its limit IFS.
///
/// `bound(n)` is an a-priori upper bound on d(F_n, F) that tends to zero; the
/// metric is taken over the disk used by family_distance(). Levels are built on
/// demand and cached; the cache is safe to share between threads.
class SifsFamily {
public:
    using LevelFn = std::function<IfsLevel(int)>;
    using BoundFn = std::function<double(int)>;

    SifsFamily(std::string name, std::size_t arity, LevelFn level, IfsLevel limit, BoundFn bound,
               std::vector<std::size_t> starting_tile = {})
        : name_(std::move(name)), arity_(arity), level_fn_(std::move(level)), limit_(std::move(limit)),
          bound_fn_(std::move(bound)), starting_tile_(std::move(starting_tile)), cache_(std::make_shared<Cache>()) {
        if (limit_.arity() != arity_) throw DomainError("limit IFS arity differs from family arity");
        if (starting_tile_.empty()) starting_tile_.assign(arity_, 0);
        if (starting_tile_.size() != arity_) throw DomainError("starting-tile table must cover every symbol");
    }

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    const IfsLevel& limit() const { return limit_; }
    const QuarticScalar& ratio() const { return limit_.ratio; }
    double bound(int n) const { return bound_fn_(n); }
    /// Prototile index assigned to the innermost symbol of a word.
    std::size_t starting_tile(int symbol) const { return starting_tile_.at(static_cast<std::size_t>(symbol - 1)); }

    const IfsLevel& level(int n) const {
        if (n < 1) throw DomainError("SIFS levels start at n = 1");
        {
            std::shared_lock lock(cache_->mutex);
            auto it = cache_->levels.find(n);
            if (it != cache_->levels.end()) return *it->second;
        }
        auto built = std::make_unique<IfsLevel>(level_fn_(n));
        if (built->arity() != arity_) throw DomainError("level " + std::to_string(n) + " has the wrong arity");
        if (!(built->ratio == limit_.ratio)) throw DomainError("level " + std::to_string(n) + " has a different ratio");
        std::unique_lock lock(cache_->mutex);
        auto [it, inserted] = cache_->levels.try_emplace(n, std::move(built));
        return *it->second;
    }

private:
    struct Cache {
        std::shared_mutex mutex;
        std::map<int, std::unique_ptr<IfsLevel>> levels;
    };

    std::string name_;
    std::size_t arity_;
    LevelFn level_fn_;
    IfsLevel limit_;
    BoundFn bound_fn_;
    std::vector<std::size_t> starting_tile_;
    std::shared_ptr<Cache> cache_;
};

/// A depth-k tile: its address and the composed similarity placing its prototile.
struct AddressedTile {
    Address address;
    PlaneMap transform;
    std::size_t prototile = 0;
};

/// F(T) = { f_i o t }, new symbol prepended. Aliased maps are skipped.
inline std::vector<AddressedTile> apply_ifs(const IfsLevel& level, std::span<const AddressedTile> tiles) {
    std::vector<AddressedTile> out;
    auto eff = level.effective();
    out.reserve(eff.size() * tiles.size());
    for (std::size_t i : eff) {
        for (const auto& t : tiles)
            out.push_back({t.address.prefixed(static_cast<int>(i + 1)), compose(level.maps[i], t.transform), t.prototile});
    }
    return out;
}

namespace detail {
inline void check_symbols(const SifsFamily& family, const Address& address) {
    for (std::size_t p = 0; p < address.size(); ++p) {
        int s = address[p];
        if (s < 1 || static_cast<std::size_t>(s) > family.arity())
            throw DomainError("address symbol " + std::to_string(s) + " at position " + std::to_string(p + 1) +
                              " is outside 1.." + std::to_string(family.arity()));
    }
}
}  // namespace detail

/// f^{(k)}_{j1} o f^{(k-1)}_{j2} o ... o f^{(1)}_{jk} for the word j1...jk.
inline PlaneMap tile_transform(const SifsFamily& family, const Address& address) {
    if (address.empty()) throw DomainError("tile addresses are nonempty");
    detail::check_symbols(family, address);
    const int k = static_cast<int>(address.size());
    PlaneMap acc = family.level(1).map(address.back());
    for (int p = k - 2; p >= 0; --p) acc = compose(family.level(k - p).map(address[static_cast<std::size_t>(p)]), acc);
    return acc;
}

/// Depth-k collection S_k built by the recursion S_{k+1} = U_i f_i^{(k+1)}(S_k).
///
/// k = 0 returns one identity tile per prototile. The result is sorted by
/// address and independent of how the recursion is evaluated.
inline std::vector<AddressedTile> supertile(const SifsFamily& family, int k, std::size_t prototile_count = 1) {
    if (k < 0) throw DomainError("supertile depth must be nonnegative");
    std::vector<AddressedTile> tiles;
    if (k == 0) {
        for (std::size_t p = 0; p < prototile_count; ++p) tiles.push_back({Address{}, PlaneMap::identity(), p});
        return tiles;
    }
    const IfsLevel& first = family.level(1);
    for (std::size_t i : first.effective())
        tiles.push_back({Address{static_cast<int>(i + 1)}, first.maps[i], family.starting_tile(static_cast<int>(i + 1))});
    for (int n = 2; n <= k; ++n) tiles = apply_ifs(family.level(n), tiles);
    return tiles;
}

/// f_{j1} o ... o f_{jm}(x) for a single IFS; m = 0 returns x.
inline PlanePoint coding_point(const IfsLevel& level, const Address& prefix, const PlanePoint& seed) {
    PlanePoint z = seed;
    for (std::size_t p = prefix.size(); p-- > 0;) z = level.map(prefix[p])(z);
    return z;
}

/// Same for the sequential system: the depth-m tile map applied to x.
inline PlanePoint coding_point(const SifsFamily& family, const Address& prefix, const PlanePoint& seed) {
    if (prefix.empty()) return seed;
    return tile_transform(family, prefix)(seed);
}

inline constexpr std::size_t kDefaultCloudCap = 1'000'000;

/// { f_{j|m}(seed) : all words of length m over the effective maps }, in double precision.
inline std::vector<std::complex<double>> attractor_cloud(const IfsLevel& level, int depth,
                                                         std::complex<double> seed = {0.0, 0.0},
                                                         std::size_t cap = kDefaultCloudCap) {
    if (depth < 0) throw DomainError("attractor depth must be nonnegative");
    auto eff = level.effective();
    double count = std::pow(static_cast<double>(eff.size()), depth);
    if (count > static_cast<double>(cap))
        throw DomainError("attractor cloud of " + std::to_string(static_cast<long long>(count)) +
                          " points exceeds the cap of " + std::to_string(cap) + "; use a smaller depth");
    std::vector<ApproxMap> maps;
    for (std::size_t i : eff) maps.emplace_back(level.maps[i]);
    std::vector<std::complex<double>> cloud{seed};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::complex<double>> next;
        next.reserve(cloud.size() * maps.size());
        for (const auto& m : maps)
            for (auto z : cloud) next.push_back(m(z));
        cloud = std::move(next);
    }
    return cloud;
}

/// Radius of a disk about the origin containing the attractor: max|t_i| / (1 - ratio).
inline double attractor_radius_bound(const IfsLevel& level) {
    double t = 0.0;
    for (const auto& m : level.maps) t = std::max(t, std::abs(m.translation().to_complex()));
    double lambda = to_double(level.ratio);
    return t / (1.0 - lambda) * (1.0 + 1e-12);
}

/// max_i sup_{|z| <= radius} |f_i(z) - g_i(z)|.
inline double family_distance(const IfsLevel& f, const IfsLevel& g, double radius) {
    if (f.arity() != g.arity()) throw DomainError("family_distance needs equal arity");
    double worst = 0.0;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        const PlaneMap& a = f.maps[i];
        const PlaneMap& b = g.maps[i];
        double dt = std::abs((a.translation() - b.translation()).to_complex());
        double d;
        if (a.reflect() == b.reflect()) {
            d = dt + radius * std::abs((a.linear() - b.linear()).to_complex());
        } else {
            // a conj(z) - b z + dt is real-linear: its sup over the disk sits on the boundary circle.
            ApproxMap fa(a), fb(b);
            d = 0.0;
            constexpr int kSamples = 4096;
            for (int s = 0; s < kSamples; ++s) {
                double theta = 2.0 * std::numbers::pi * s / kSamples;
                std::complex<double> z = std::polar(radius, theta);
                d = std::max(d, std::abs(fa(z) - fb(z)));
            }
        }
        worst = std::max(worst, d);
    }
    return worst;
}

/// Two-sided Hausdorff distance between finite point sets.
inline double hausdorff(std::span<const std::complex<double>> x, std::span<const std::complex<double>> y) {
    if (x.empty() || y.empty()) throw DomainError("hausdorff distance needs nonempty sets");
    PointGrid gx(x), gy(y);
    double d = 0.0;
    for (auto p : x) d = std::max(d, gy.nearest_distance(p));
    for (auto p : y) d = std::max(d, gx.nearest_distance(p));
    return d;
}

/// Tile-list line: address, scale, sextant, reflect, translation "re,im".
inline void write_tile_list(std::ostream& os, std::span<const AddressedTile> tiles) {
    for (const auto& t : tiles) {
        os << t.address.str() << '\t' << t.transform.scale().str() << '\t' << t.transform.sextant() << '\t'
           << (t.transform.reflect() ? 1 : 0) << '\t' << t.transform.translation().re.str() << ','
           << t.transform.translation().im.str() << '\n';
    }
}

}  // namespace sifs
