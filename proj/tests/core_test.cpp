#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "sifs/ifs.hpp"
#include "sifs/systems.hpp"

using namespace sifs;
using cld = std::complex<long double>;

namespace {

// Reference action of a similarity, evaluated straight from its fields.
cld act(const PlaneMap& m, cld z) {
    long double s = to_double(m.scale());
    long double angle = m.sextant() * std::acos(-1.0L) / 3.0L;
    cld w = m.reflect() ? std::conj(z) : z;
    cld t(to_double(m.translation().re), to_double(m.translation().im));
    return s * std::polar(1.0L, angle) * w + t;
}

PlaneMap random_map(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(-6, 6), pos(1, 5), sext(0, 5), coin(0, 1);
    QuarticScalar scale(Rational(pos(rng), pos(rng)), 0, 0, 0);
    if (coin(rng)) scale = scale * QuarticScalar::hat_ratio();
    PlanePoint t{QuarticScalar(small(rng), Rational(small(rng), 2), 0, 0), QuarticScalar(Rational(small(rng), 3), 0, small(rng), 0)};
    return PlaneMap(scale, sext(rng), coin(rng) == 1, t);
}

const QuarticScalar kPhi = QuarticScalar::hat_ratio();

}  // namespace

TEST(PlaneMap, ComposeWithIdentity) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        PlaneMap m = random_map(rng);
        EXPECT_EQ(compose(PlaneMap::identity(), m), m);
        EXPECT_EQ(compose(m, PlaneMap::identity()), m);
    }
}

TEST(PlaneMap, ComposeScalings) {
    PlanePoint t{QuarticScalar(2), QuarticScalar::sqrt3()};
    PlaneMap a = PlaneMap::scaling(kPhi);
    PlaneMap b(kPhi, 0, false, t);
    PlaneMap expected(kPhi * kPhi, 0, false, kPhi * t);
    EXPECT_EQ(compose(a, b), expected);
}

TEST(PlaneMap, ComposeMatchesPointwiseAction) {
    std::mt19937_64 rng(11);
    const cld samples[] = {{0, 0}, {1, 0}, {0.3L, -2.5L}, {-1.75L, 0.5L}};
    for (int i = 0; i < 200; ++i) {
        PlaneMap a = random_map(rng), b = random_map(rng);
        PlaneMap ab = compose(a, b);
        for (cld z : samples) EXPECT_LT(std::abs(act(ab, z) - act(a, act(b, z))), 1e-12L);
    }
}

TEST(PlaneMap, CompositionIsAssociative) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        PlaneMap a = random_map(rng), b = random_map(rng), c = random_map(rng);
        EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    }
}

TEST(PlaneMap, Inverse) {
    EXPECT_EQ(invert(PlaneMap::scaling(kPhi)), PlaneMap::scaling(QuarticScalar::golden() * QuarticScalar::golden()));
    EXPECT_EQ(invert(PlaneMap::identity()), PlaneMap::identity());
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        PlaneMap m = random_map(rng);
        EXPECT_TRUE(compose(m, invert(m)).is_identity());
        EXPECT_TRUE(compose(invert(m), m).is_identity());
    }
    IfsLevel level = hat_level(1, default_hat_parameter());
    EXPECT_TRUE(compose(invert(level.map(2)), level.map(2)).is_identity());
}

TEST(PlaneMap, HatImagesOfOrigin) {
    const QuarticScalar c = default_hat_parameter();
    for (int n = 1; n <= 5; ++n) EXPECT_TRUE(hat_level(n, c).map(1)(PlanePoint{}).is_zero());
    // f_8^{(1)}(0) = phi [(2 sqrt3 (1 - c) + 6c) + 4 sqrt3 c i]
    const QuarticScalar r3 = QuarticScalar::sqrt3(), u = QuarticScalar(1) - c;
    PlanePoint expected = kPhi * PlanePoint{2 * r3 * u + 6 * c, 4 * r3 * c};
    EXPECT_EQ(hat_level(1, c).map(8)(PlanePoint{}), expected);
    PlanePoint v{QuarticScalar(Rational(5, 7)), QuarticScalar::sqrt5()};
    EXPECT_EQ(PlaneMap::identity()(v), v);
}

TEST(Ifs, ApplyCounts) {
    AddressedTile seed{Address{}, PlaneMap::identity(), 0};
    std::span<const AddressedTile> one(&seed, 1);
    EXPECT_EQ(apply_ifs(hat_level(1, default_hat_parameter()), one).size(), 8u);
    EXPECT_TRUE(apply_ifs(hat_level(1, default_hat_parameter()), std::span<const AddressedTile>()).empty());
    auto hex = apply_ifs(hex_level(1), one);
    ASSERT_EQ(hex.size(), 7u);
    // Centre tile plus six radial tiles at distance sqrt3/2.
    EXPECT_TRUE(hex[0].transform.translation().is_zero());
    for (std::size_t i = 1; i < hex.size(); ++i) EXPECT_EQ(hex[i].transform.translation().norm(), QuarticScalar(Rational(3, 4)));
    // Level >= 2 hat: the aliased eighth map is not enumerated.
    EXPECT_EQ(apply_ifs(hat_level(2, default_hat_parameter()), one).size(), 7u);
}

TEST(Ifs, LevelValidation) {
    EXPECT_THROW(IfsLevel(std::vector<PlaneMap>{}), DomainError);
    EXPECT_THROW(IfsLevel({PlaneMap::identity()}), DomainError);  // ratio 1 is not contractive
    EXPECT_THROW(IfsLevel({PlaneMap::scaling(Rational(1, 2)), PlaneMap::scaling(Rational(1, 3))}), DomainError);
    EXPECT_THROW(IfsLevel({PlaneMap::scaling(Rational(1, 2)), PlaneMap(Rational(1, 2), 1, false, {})}, {0, 0}), DomainError);
}

TEST(TileTransform, FixedPointAndOverlapIdentity) {
    SifsFamily hat = hat_family();
    EXPECT_EQ(tile_transform(hat, Address{1}), PlaneMap::scaling(kPhi));
    Address ones;
    for (int k = 1; k <= 6; ++k) {
        ones.push_back(1);
        EXPECT_EQ(tile_transform(hat, ones), PlaneMap::scaling(kPhi.pow(static_cast<unsigned>(k))));
    }
    EXPECT_EQ(tile_transform(hat, Address::parse("67")), tile_transform(hat, Address::parse("71")));
    EXPECT_NE(tile_transform(hat, Address::parse("66")), tile_transform(hat, Address::parse("71")));
}

TEST(TileTransform, RejectsSymbolsOutOfRange) {
    SifsFamily hex = hex_family();
    try {
        tile_transform(hex, Address::parse("128"));
        FAIL() << "expected a DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(tile_transform(hex, Address{}), DomainError);
}

TEST(Supertile, Counts) {
    SifsFamily hat = hat_family();
    EXPECT_EQ(supertile(hat, 0).size(), 1u);
    EXPECT_EQ(supertile(hat, 1).size(), 8u);
    EXPECT_EQ(supertile(hat, 3).size(), 8u * 7u * 7u);
    EXPECT_EQ(supertile(hex_family(), 3).size(), 343u);
    EXPECT_THROW(supertile(hat, -1), DomainError);
}

TEST(Supertile, RecursionMatchesDirectEvaluation) {
    for (const SifsFamily& family : {hat_family(), hex_family()}) {
        auto tiles = supertile(family, 3);
        ASSERT_FALSE(tiles.empty());
        for (std::size_t i = 1; i < tiles.size(); ++i) EXPECT_LT(tiles[i - 1].address, tiles[i].address);
        for (const auto& t : tiles) EXPECT_EQ(t.transform, tile_transform(family, t.address)) << t.address.str();
    }
}

TEST(CodingPoint, ContractionAndCauchy) {
    const IfsLevel limit = hat_limit(default_hat_parameter());
    PlanePoint x{QuarticScalar(3), QuarticScalar(-1)}, y{QuarticScalar(-2), QuarticScalar(Rational(1, 2))};
    EXPECT_EQ(coding_point(limit, Address{}, x), x);
    Address word = Address::parse("25163742");
    const double lambda = to_double(kPhi);
    const double dxy = std::abs(x.to_complex() - y.to_complex());
    for (std::size_t m = 1; m <= word.size(); ++m) {
        Address prefix = word.truncated(m);
        double d = std::abs(coding_point(limit, prefix, x).to_complex() - coding_point(limit, prefix, y).to_complex());
        EXPECT_LE(d, std::pow(lambda, static_cast<double>(m)) * dxy * (1 + 1e-12));
    }
    // Cauchy: moving from depth m to m' changes the point by at most lambda^m * (|x| + R) * 2.
    const double R = attractor_radius_bound(limit);
    for (std::size_t m = 1; m < word.size(); ++m) {
        auto a = coding_point(limit, word.truncated(m), x).to_complex();
        auto b = coding_point(limit, word, x).to_complex();
        EXPECT_LE(std::abs(a - b), std::pow(lambda, static_cast<double>(m)) * 2 * (std::abs(x.to_complex()) + R));
    }
    // "111..." converges to the fixed point 0 of f_1.
    Address ones = Address::parse("11111111111111111111");
    EXPECT_LT(std::abs(coding_point(limit, ones, x).to_complex()), 1e-7);
}

TEST(Attractor, CloudSizesAndCap) {
    const IfsLevel limit = hat_limit(default_hat_parameter());
    auto zero = attractor_cloud(limit, 0, {0.5, 0.25});
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_EQ(zero[0], std::complex<double>(0.5, 0.25));
    EXPECT_EQ(attractor_cloud(limit, 3).size(), 7u * 7u * 7u);
    EXPECT_EQ(attractor_cloud(hex_limit(), 4).size(), 7u * 7u * 7u * 7u);
    EXPECT_THROW(attractor_cloud(limit, 9, {0, 0}, 1000), DomainError);
    EXPECT_THROW(attractor_cloud(limit, -1), DomainError);
}

TEST(FamilyDistance, BasicCases) {
    const IfsLevel limit = hat_limit(default_hat_parameter());
    EXPECT_EQ(family_distance(limit, limit, 10.0), 0.0);
    IfsLevel a({PlaneMap::scaling(Rational(1, 2))});
    IfsLevel b({PlaneMap(Rational(1, 2), 0, false, PlanePoint{QuarticScalar(3), QuarticScalar(4)})});
    EXPECT_NEAR(family_distance(a, b, 1.0), 5.0, 1e-12);
    EXPECT_NEAR(family_distance(a, b, 100.0), 5.0, 1e-12);
    EXPECT_THROW(family_distance(a, limit, 1.0), DomainError);
    // Rotation difference: sup over |z| <= R of |(e^{i pi/3} - 1) z / 2| = R / 2.
    IfsLevel r({PlaneMap(Rational(1, 2), 1, false, {})});
    EXPECT_NEAR(family_distance(a, r, 4.0), 2.0, 1e-12);
    // Reflection difference: sup |conj(z) - z| / 2 = R, attained on the imaginary axis.
    IfsLevel s({PlaneMap(Rational(1, 2), 0, true, {})});
    EXPECT_NEAR(family_distance(a, s, 3.0), 3.0, 1e-9);
}

TEST(FamilyDistance, BoundedByFamilyBound) {
    for (const SifsFamily& family : {hat_family(), hex_family()}) {
        const double radius = attractor_radius_bound(family.limit());
        double last_bound = 1e300;
        for (int n = 1; n <= 12; ++n) {
            double d = family_distance(family.level(n), family.limit(), radius);
            EXPECT_LE(d, family.bound(n)) << family.name() << " n=" << n;
            EXPECT_LE(family.bound(n), last_bound * (1 + 1e-12)) << family.name() << " n=" << n;
            last_bound = family.bound(n);
        }
        EXPECT_LT(family.bound(30), 1e-5);
    }
}

TEST(Hausdorff, Examples) {
    std::vector<std::complex<double>> x{{0, 0}}, y{{3, 4}};
    EXPECT_DOUBLE_EQ(hausdorff(x, y), 5.0);
    std::vector<std::complex<double>> pts{{0, 0}, {1, 1}, {-2, 0.5}};
    EXPECT_EQ(hausdorff(pts, pts), 0.0);
    EXPECT_THROW(hausdorff(std::vector<std::complex<double>>{}, pts), DomainError);
}

TEST(Hausdorff, MatchesBruteForce) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::complex<double>> a(300), b(200);
        for (auto& p : a) p = {g(rng), g(rng)};
        for (auto& p : b) p = {g(rng) + 0.5, g(rng)};
        auto directed = [](const auto& from, const auto& to) {
            double worst = 0.0;
            for (auto p : from) {
                double best = 1e300;
                for (auto q : to) best = std::min(best, std::abs(p - q));
                worst = std::max(worst, best);
            }
            return worst;
        };
        EXPECT_NEAR(hausdorff(a, b), std::max(directed(a, b), directed(b, a)), 1e-12);
    }
}

TEST(Hausdorff, CloudsOfLevelsApproachTheLimit) {
    // d_H(A_n cloud, A cloud) <= d(F_n, F) / (1 - lambda) + 2 lambda^m C.
    SifsFamily hat = hat_family();
    const IfsLevel& limit = hat.limit();
    const double lambda = to_double(hat.ratio());
    const double R = attractor_radius_bound(limit);
    const int m = 5;
    auto target = attractor_cloud(limit, m);
    for (int n = 2; n <= 8; n += 2) {
        auto cloud = attractor_cloud(hat.level(n), m);
        double d = family_distance(hat.level(n), limit, 2 * R);
        double allowance = d / (1 - lambda) + 2 * std::pow(lambda, m) * 2 * R;
        EXPECT_LE(hausdorff(cloud, target), allowance) << "n=" << n;
    }
}

TEST(TileList, Format) {
    std::vector<AddressedTile> tiles{{Address::parse("12"), PlaneMap(Rational(1, 4), 5, true, {QuarticScalar(1), QuarticScalar::sqrt3()}), 0}};
    std::ostringstream os;
    write_tile_list(os, tiles);
    EXPECT_EQ(os.str(), "12\t1/4 + 0*r3 + 0*r5 + 0*r15\t5\t1\t1 + 0*r3 + 0*r5 + 0*r15,0 + 1*r3 + 0*r5 + 0*r15\n");
}
