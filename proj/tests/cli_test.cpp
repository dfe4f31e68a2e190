#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <unistd.h>

#include "sifs/cli.hpp"

using namespace sifs;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "sifs");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + needle.size())) ++n;
    return n;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST(ParseParam, Examples) {
    const double r3 = std::sqrt(3.0), r5 = std::sqrt(5.0);
    EXPECT_EQ(parse_param("1/(1+sqrt3)"), default_hat_parameter());
    EXPECT_EQ(parse_param("  (r3 - 1) / 2 "), default_hat_parameter());
    EXPECT_EQ(parse_param("0"), QuarticScalar(0));
    EXPECT_EQ(parse_param("1/4"), QuarticScalar(Rational(1, 4)));
    EXPECT_EQ(parse_param("-(-3)"), QuarticScalar(3));
    EXPECT_EQ(parse_param("sqrt3*sqrt5"), QuarticScalar::sqrt15());
    EXPECT_EQ(parse_param("r15/r5"), QuarticScalar::sqrt3());
    EXPECT_NEAR(to_double(parse_param("2 - 3*sqrt5/(7 + sqrt15)")), 2 - 3 * r5 / (7 + r3 * r5), 1e-14);
    EXPECT_NEAR(to_double(parse_param("1/(1/(1/(1+r3)))")), 1 / (1 + r3), 1e-15);
}

TEST(ParseParam, ErrorsCarryPositions) {
    auto position_of = [](const std::string& text) {
        try {
            parse_param(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    EXPECT_EQ(position_of(""), 0);
    EXPECT_EQ(position_of("1/0"), 1);
    EXPECT_EQ(position_of("1/(r3-r3)"), 1);
    EXPECT_EQ(position_of("2*pi"), 2);
    EXPECT_EQ(position_of("(1+2"), 4);
    EXPECT_EQ(position_of("1+"), 2);
    EXPECT_EQ(position_of("1)"), 1);
    EXPECT_EQ(position_of("3 $"), 2);
}

TEST(ParseParam, RoundTripsPrintedValues) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int t = 0; t < 200; ++t) {
        QuarticScalar x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                        Rational(num(rng), den(rng)));
        EXPECT_EQ(parse_param(x.str()), x) << x.str();
        if (!x.is_zero()) {
            EXPECT_EQ(parse_param("1/(" + x.str() + ")"), x.inverse());
        }
    }
}

TEST(Render, SingleTilePath) {
    TileSystem hat = hat_system();
    auto tiles = supertile(hat.family(), 0);
    std::string svg = render_svg(tiles, hat.prototiles());
    EXPECT_EQ(count(svg, "<path"), 1u);
    EXPECT_EQ(count(svg, " L"), 12u);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("</svg>\n"), std::string::npos);
    EXPECT_EQ(svg.find("-0,"), std::string::npos);
}

TEST(Render, ProcessedDepthThreeHat) {
    TileSystem hat = hat_system();
    auto tiles = process(hat, 3, {.sweep = false}).survivors;
    std::string svg = render_svg(tiles, hat.prototiles());
    EXPECT_EQ(count(svg, "<path"), 377u);
    std::set<std::string> fills;
    std::regex fill_re("fill=\"(#[0-9a-f]{6})\"");
    for (std::sregex_iterator it(svg.begin(), svg.end(), fill_re), end; it != end; ++it) fills.insert((*it)[1]);
    EXPECT_EQ(fills.size(), 7u);
    EXPECT_EQ(svg, render_svg(tiles, hat.prototiles()));
}

TEST(Render, YAxisIsFlipped) {
    TileSystem hex = hex_system();
    auto tiles = supertile(hex.family(), 0);
    std::string svg = render_svg(tiles, hex.prototiles());
    // Vertex e^{i pi/3} has positive imaginary part and must come out with negative y.
    EXPECT_NE(svg.find("L0.5,-0.866025404"), std::string::npos) << svg;
}

TEST(Render, Numbers) {
    EXPECT_EQ(svg_number(0.0), "0");
    EXPECT_EQ(svg_number(-0.0), "0");
    EXPECT_EQ(svg_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(svg_number(-2.5), "-2.5");
    EXPECT_EQ(svg_number(1e-12), "1e-12");
}

TEST(Render, CloudEdgeCases) {
    EXPECT_THROW(render_cloud(std::vector<std::complex<double>>{}), DomainError);
    EXPECT_THROW(render_svg(std::vector<AddressedTile>{}, hat_system().prototiles()), DomainError);
    std::vector<std::complex<double>> one{{1.0, 2.0}};
    std::string svg = render_cloud(one);
    EXPECT_EQ(count(svg, "<circle"), 1u);
    EXPECT_NE(svg.find("cy=\"-2\""), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
    EXPECT_EQ(run({"supertile", "--depth", "13"}).code, kExitUsage);
    EXPECT_EQ(run({"supertile", "--system", "kite"}).code, kExitUsage);
    EXPECT_EQ(run({"supertile", "--raw", "--processed"}).code, kExitUsage);
    Outcome bad_c = run({"supertile", "--c", "1/0"});
    EXPECT_EQ(bad_c.code, kExitUsage);
    EXPECT_NE(bad_c.err.find("division by zero"), std::string::npos);
    EXPECT_EQ(run({"supertile", "--c", "2"}).code, kExitUsage);
    EXPECT_EQ(run({"tiling", "--blowup", "1x"}).code, kExitUsage);
    EXPECT_EQ(run({"tiling", "--depth", "0"}).code, kExitUsage);
    EXPECT_EQ(run({"verify", "--suite", "nothing"}).code, kExitUsage);
    // A blowup that needs more levels than allowed is a runtime failure.
    Outcome capped = run({"tiling", "--blowup", "7", "--depth", "1", "--stabilization-cap", "1"});
    EXPECT_EQ(capped.code, kExitFailure);
    EXPECT_NE(capped.err.find("no stabilisation"), std::string::npos);
    EXPECT_EQ(run({"attractor", "--depth", "9", "--cap", "1000"}).code, kExitFailure);
}

TEST(Cli, VerifySuites) {
    Outcome ok = run({"verify", "--suite", "algebra"});
    EXPECT_EQ(ok.code, kExitOk) << ok.out;
    EXPECT_EQ(ok.out.find("\tFAIL"), std::string::npos);
    Outcome bad = run({"verify", "--suite", "overlaps", "--corrupt"});
    EXPECT_EQ(bad.code, kExitFailure);
    EXPECT_NE(bad.out.find("\tFAIL\tpartial"), std::string::npos) << bad.out;
}

TEST(Cli, SupertileOutputs) {
    Outcome svg = run({"supertile", "--depth", "2"});
    ASSERT_EQ(svg.code, kExitOk) << svg.err;
    EXPECT_EQ(count(svg.out, "<path"), 55u);
    Outcome raw = run({"supertile", "--depth", "2", "--raw"});
    EXPECT_EQ(count(raw.out, "<path"), 56u);
    Outcome tsv = run({"supertile", "--system", "hex", "--depth", "2", "--format", "tsv"});
    EXPECT_EQ(count(tsv.out, "\n"), 37u);
    Outcome unit = run({"supertile", "--system", "hex", "--depth", "2", "--format", "tsv", "--normalize"});
    std::istringstream lines(unit.out);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string address, scale;
        std::getline(fields, address, '\t');
        std::getline(fields, scale, '\t');
        EXPECT_EQ(scale, "1 + 0*r3 + 0*r5 + 0*r15") << line;
    }
    Outcome zero = run({"supertile", "--depth", "0"});
    EXPECT_EQ(count(zero.out, "<path"), 1u);
}

TEST(Cli, ExportMatchesTileList) {
    Outcome ex = run({"export", "--depth", "2"});
    ASSERT_EQ(ex.code, kExitOk);
    std::ostringstream expected;
    write_tile_list(expected, process(hat_system(), 2, {.sweep = false}).survivors);
    EXPECT_EQ(ex.out, expected.str());
}

TEST(Cli, TilingAndAttractor) {
    Outcome t = run({"tiling", "--depth", "2", "--format", "tsv"});
    ASSERT_EQ(t.code, kExitOk) << t.err;
    EXPECT_EQ(t.out.rfind("blowup=111... k=2 M=3\n", 0), 0u);
    Outcome a = run({"attractor", "--level", "2", "--depth", "3"});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(count(a.out, "<circle"), 343u);
    Outcome lim = run({"attractor", "--system", "hex", "--depth", "2"});
    EXPECT_EQ(count(lim.out, "<circle"), 49u);
}

TEST(Cli, WritesFilesAndRepeatsByteForByte) {
    auto dir = std::filesystem::temp_directory_path() / ("sifs_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto a = dir / "a.svg", b = dir / "b.svg";
    ASSERT_EQ(run({"supertile", "--depth", "3", "--out", a.string()}).code, kExitOk);
    ASSERT_EQ(run({"supertile", "--depth", "3", "--out", b.string()}).code, kExitOk);
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), run({"supertile", "--depth", "3"}).out);
    EXPECT_EQ(run({"supertile", "--out", (dir / "missing" / "x.svg").string()}).code, kExitFailure);
    std::filesystem::remove_all(dir);
}
