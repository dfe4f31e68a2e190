#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sifs/expr.hpp"
#include "sifs/render.hpp"
#include "sifs/systems.hpp"
#include "sifs/verify.hpp"

namespace sifs {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

namespace detail {

struct CliState {
    std::string system = "hat";
    std::string c_text = "1/(1+sqrt3)";
    int depth = 3;
    bool raw = false;
    bool processed = false;
    bool normalize = false;
    bool corrupt = false;
    std::string out;
    std::string format = "svg";
    std::string blowup = "111...";
    bool limit = false;
    int level = 0;
    std::size_t cap = kDefaultCloudCap;
    int stabilization_cap = kDefaultStabilizationCap;
    std::string suite = "all";
};

/// Thrown for bad option values that CLI11 cannot see (expressions, systems).
struct UsageError : Error {
    using Error::Error;
};

inline TileSystem build_system(const CliState& s) {
    SystemOptions opt;
    opt.corrupt = s.corrupt;
    try {
        opt.c = parse_param(s.c_text);
        check_hat_parameter(opt.c);
        return make_system(s.system, opt);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

inline void emit(const CliState& s, const std::string& text, std::ostream& out) {
    if (s.out.empty() || s.out == "-") {
        out << text;
    } else {
        write_file(s.out, text);
    }
}

inline std::vector<AddressedTile> depth_collection(const TileSystem& sys, const CliState& s) {
    if (s.raw) return supertile(sys.family(), s.depth, sys.prototiles().size());
    if (s.depth == 0) return supertile(sys.family(), 0, sys.prototiles().size());
    return process(sys, s.depth, {.sweep = false}).survivors;
}

inline std::string tile_list_text(std::span<const AddressedTile> tiles) {
    std::ostringstream os;
    write_tile_list(os, tiles);
    return os.str();
}

inline void normalize_tiles(const TileSystem& sys, int depth, std::vector<AddressedTile>& tiles) {
    PlaneMap up = PlaneMap::scaling(sys.normalizer(depth));
    for (auto& t : tiles) t.transform = compose(up, t.transform);
}

}  // namespace detail

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Output goes to `out` (or to --out files), diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    detail::CliState s;
    CLI::App app{"Tilings from sequential iterated function systems", "sifs"};
    app.require_subcommand(1);

    auto add_system = [&](CLI::App* cmd, bool with_depth) {
        cmd->add_option("--system", s.system, "hat or hex")->check(CLI::IsMember(system_names()));
        cmd->add_option("--c", s.c_text, "hat parameter as an exact expression, e.g. 1/(1+sqrt3)");
        if (with_depth) cmd->add_option("--depth", s.depth, "collection depth k")->check(CLI::Range(0, 12));
        cmd->add_flag("--corrupt", s.corrupt, "perturb f_2 (negative control)");
    };

    auto* st = app.add_subcommand("supertile", "render the depth-k collection S_k as SVG");
    add_system(st, true);
    auto* raw_flag = st->add_flag("--raw", s.raw, "keep overlapping duplicates");
    st->add_flag("--processed", s.processed, "remove coincident duplicates (default)")->excludes(raw_flag);
    st->add_flag("--normalize", s.normalize, "scale by ratio^-k so tiles have unit size");
    st->add_option("--format", s.format, "svg or tsv")->check(CLI::IsMember({"svg", "tsv"}));
    st->add_option("--out", s.out, "output file ('-' or omitted: stdout)");

    auto* tl = app.add_subcommand("tiling", "blown-up patch for a blowup string");
    add_system(tl, true);
    tl->add_option("--blowup", s.blowup, "periodic blowup string such as 111... or 17");
    tl->add_option("--stabilization-cap", s.stabilization_cap, "extra levels searched for stabilisation")
        ->check(CLI::Range(1, 20));
    tl->add_option("--format", s.format, "svg or tsv")->check(CLI::IsMember({"svg", "tsv"}));
    tl->add_option("--out", s.out, "output file");

    auto* at = app.add_subcommand("attractor", "point cloud of a level IFS or the limit IFS");
    add_system(at, true);
    auto* lim = at->add_flag("--limit", s.limit, "use the limit IFS (default)");
    at->add_option("--level", s.level, "use F_n instead of the limit")->check(CLI::PositiveNumber)->excludes(lim);
    at->add_option("--cap", s.cap, "largest number of points allowed");
    at->add_option("--out", s.out, "output file");

    auto* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("--suite", s.suite, "algebra, claims, overlaps, sigma, convergence or all")
        ->check(CLI::IsMember(verify_suites()));
    vf->add_flag("--corrupt", s.corrupt, "run against systems with a perturbed f_2 (expected to fail)");

    auto* ex = app.add_subcommand("export", "tile list of S_k as tab-separated text");
    add_system(ex, true);
    auto* raw2 = ex->add_flag("--raw", s.raw, "keep overlapping duplicates");
    ex->add_flag("--processed", s.processed, "remove coincident duplicates (default)")->excludes(raw2);
    ex->add_option("--out", s.out, "output file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "sifs: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*vf) {
            VerifyReport report = run_verify(s.suite, {.corrupt = s.corrupt});
            report.write(out);
            return report.passed() ? kExitOk : kExitFailure;
        }
        TileSystem sys = detail::build_system(s);
        if (*st) {
            auto tiles = detail::depth_collection(sys, s);
            if (s.normalize) detail::normalize_tiles(sys, s.depth, tiles);
            detail::emit(s, s.format == "tsv" ? detail::tile_list_text(tiles) : render_svg(tiles, sys.prototiles()), out);
        } else if (*ex) {
            detail::emit(s, detail::tile_list_text(detail::depth_collection(sys, s)), out);
        } else if (*tl) {
            if (s.depth < 1) throw detail::UsageError("tiling needs --depth >= 1");
            BlowupString b;
            try {
                b = BlowupString::parse(s.blowup);
            } catch (const Error& e) {
                throw detail::UsageError(e.what());
            }
            BlowupPatch patch = blowup_tiling(sys, b, s.depth, s.stabilization_cap);
            if (s.format == "tsv") {
                std::ostringstream os;
                write_patch(os, patch);
                detail::emit(s, os.str(), out);
            } else {
                detail::emit(s, render_svg(patch.tiles, sys.prototiles()), out);
            }
        } else if (*at) {
            const IfsLevel& ifs = s.level > 0 ? sys.family().level(s.level) : sys.family().limit();
            detail::emit(s, render_cloud(attractor_cloud(ifs, s.depth, {0.0, 0.0}, s.cap)), out);
        }
        return kExitOk;
    } catch (const detail::UsageError& e) {
        err << "sifs: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "sifs: " << e.what() << '\n';
        return kExitFailure;
    }
}

inline int run_cli(int argc, char** argv) { return run_cli(std::vector<std::string>(argv, argv + argc)); }

}  // namespace sifs
