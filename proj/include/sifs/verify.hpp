#pragma once

#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sifs/expr.hpp"
#include "sifs/systems.hpp"

namespace sifs {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string witness;  // empty on success
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void add(std::string name, bool ok, std::string witness = {}) {
        checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
    }
    /// "name<TAB>PASS" or "name<TAB>FAIL<TAB>witness", one line per check.
    void write(std::ostream& os) const {
        for (const auto& c : checks) {
            os << c.name << '\t' << (c.passed ? "PASS" : "FAIL");
            if (!c.passed && !c.witness.empty()) os << '\t' << c.witness;
            os << '\n';
        }
    }
};

struct VerifyOptions {
    /// Build every system with the corrupted f_2 (negative control).
    bool corrupt = false;
    int sigma_depth = 5;
    int condition_depth = 4;
};

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"algebra", "claims", "overlaps", "sigma", "convergence", "all"};
    return names;
}

/// The four hat parameters the exact checks sweep: 0, 1/4, 1/(1+sqrt3), 1.
inline std::vector<std::pair<std::string, QuarticScalar>> hat_parameter_sweep() {
    return {{"0", QuarticScalar(0)},
            {"1/4", QuarticScalar(Rational(1, 4))},
            {"1/(1+sqrt3)", default_hat_parameter()},
            {"1", QuarticScalar(1)}};
}

/// Words of length k over per-level alphabets (first symbol 1..7 when k > 1,
/// last symbol 1..8) with no factor "71", generated without any geometry.
inline std::vector<Address> hat_language(int k) {
    std::vector<Address> out;
    Address word;
    std::function<void(int)> grow = [&](int pos) {
        if (pos == k) {
            out.push_back(word);
            return;
        }
        int top = pos == k - 1 ? 8 : 7;
        for (int s = 1; s <= top; ++s) {
            if (pos > 0 && word.back() == 7 && s == 1) continue;
            word.push_back(s);
            grow(pos + 1);
            word = word.truncated(word.size() - 1);
        }
    };
    grow(0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline void verify_algebra(VerifyReport& r) {
    const QuarticScalar r3 = QuarticScalar::sqrt3(), r5 = QuarticScalar::sqrt5();
    r.add("algebra.basis_product", r3 * r5 == QuarticScalar::sqrt15());
    QuarticScalar g = QuarticScalar::golden();
    r.add("algebra.ratio_times_golden_squared", QuarticScalar::hat_ratio() * g * g == QuarticScalar(1));
    QuarticScalar c = parse_param("1/(1+sqrt3)");
    r.add("algebra.parse_hat_parameter", c == default_hat_parameter(), c.str());
    r.add("algebra.parse_round_trip", parse_param(c.str()) == c, c.str());
    r.add("algebra.sign_examples", sign(QuarticScalar()) == 0 && sign(QuarticScalar::hat_ratio() - 1) == -1 &&
                                       sign(QuarticScalar::sqrt15() - r3 * r5) == 0);
    BigInt a = 0, b = 1;
    for (int i = 0; i < 18; ++i) {
        BigInt t = a + b;
        a = b;
        b = t;
    }
    r.add("algebra.fib18", fib(18) == a && a == 2584, fib(18).get_str());
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 30);
    auto pick = [&] { return QuarticScalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                                           Rational(num(rng), den(rng)), Rational(num(rng), den(rng))); };
    bool axioms = true;
    std::string witness;
    for (int t = 0; t < 100 && axioms; ++t) {
        QuarticScalar x = pick(), y = pick(), z = pick();
        axioms = (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z && sign(x) * sign(y) == sign(x * y) &&
                 (x.is_zero() || x * x.inverse() == QuarticScalar(1));
        if (!axioms) witness = x.str();
    }
    r.add("algebra.field_axioms", axioms, witness);
}

inline void verify_claims(VerifyReport& r, bool corrupt) {
    for (const auto& [label, c] : hat_parameter_sweep()) {
        TileSystem sys = hat_system({.c = c, .corrupt = corrupt});
        const SifsFamily& fam = sys.family();
        std::string p_bad, q_bad, t_bad;
        for (int n = 1; n <= 8; ++n) {
            if (p_bad.empty() && !(p_closed(n, c) == p_bruteforce(fam, n, c))) p_bad = "n=" + std::to_string(n);
            if (q_bad.empty() && !(q_closed(n, c) == q_bruteforce(fam, n, c))) q_bad = "n=" + std::to_string(n);
            for (int i = 2; i <= 7 && t_bad.empty(); ++i)
                if (!(derived_translation(i, n, c) == fam.level(n + 1).map(i).translation()))
                    t_bad = "f_" + std::to_string(i) + " at level " + std::to_string(n + 1);
        }
        r.add("claims.p_closed c=" + label, p_bad.empty(), p_bad);
        r.add("claims.q_closed c=" + label, q_bad.empty(), q_bad);
        r.add("claims.translations c=" + label, t_bad.empty(), t_bad);
        std::string id_bad;
        for (int n = 1; n <= 6 && id_bad.empty(); ++n) {
            auto rep = intersection_identities(sys, n, c, n <= 4);
            if (!rep.passed()) id_bad = "n=" + std::to_string(n);
        }
        r.add("claims.intersections c=" + label, id_bad.empty(), id_bad);
    }
    const SifsFamily fam = hat_family({.corrupt = corrupt});
    std::string ov_bad;
    for (int k = 2; k <= 8 && ov_bad.empty(); ++k)
        if (!(compose(fam.level(k).map(6), fam.level(k - 1).map(7)) == compose(fam.level(k).map(7), fam.level(k - 1).map(1))))
            ov_bad = "k=" + std::to_string(k);
    r.add("claims.overlap_identity", ov_bad.empty(), ov_bad);
}

inline std::string violation_witness(const ProcessedCollection& pc) {
    const auto& v = pc.violations.front();
    return std::string(to_string(v.kind)) + " " + v.first.str() + " " + v.second.str() + " (depth " +
           std::to_string(pc.depth) + ")";
}

inline void verify_overlaps(VerifyReport& r, const VerifyOptions& opt) {
    for (const std::string& name : system_names()) {
        TileSystem sys = make_system(name, {.corrupt = opt.corrupt});
        ConditionReport rep = check_conditions(sys, opt.condition_depth);
        std::string first_bad, prefix_bad, area_bad;
        for (const auto& l : rep.levels) {
            if (first_bad.empty() && l.witness)
                first_bad = std::string(to_string(l.witness->kind)) + " " + l.witness->first.str() + " " +
                            l.witness->second.str() + " (depth " + std::to_string(l.k) + ")";
            if (prefix_bad.empty() && !(l.prefix_consistent.value_or(true) && l.extends.value_or(true)))
                prefix_bad = "k=" + std::to_string(l.k) + (l.prefix_witness ? " word " + l.prefix_witness->str() : "");
            if (area_bad.empty() && !l.area_identity) area_bad = "k=" + std::to_string(l.k);
        }
        std::string depth = " k<=" + std::to_string(opt.condition_depth);
        r.add("overlaps." + name + ".first_condition" + depth, rep.first_condition(), first_bad);
        r.add("overlaps." + name + ".prefix_consistency" + depth, rep.prefix_consistency(), prefix_bad);
        r.add("overlaps." + name + ".area_identity" + depth, rep.area_identity(), area_bad);
    }
    // H_8 is just-touching.
    Clusters cl = clusters(default_hat_parameter());
    Polygon hat = hat_prototile(default_hat_parameter());
    std::string h8_bad;
    for (std::size_t i = 0; i < cl.h8.size() && !opt.corrupt; ++i)
        for (std::size_t j = i + 1; j < cl.h8.size() && h8_bad.empty(); ++j) {
            Overlap o = classify_overlap(transform_polygon(cl.h8[i].transform, hat), transform_polygon(cl.h8[j].transform, hat));
            if (o != Overlap::boundary_only && o != Overlap::disjoint)
                h8_bad = std::string(to_string(o)) + " " + cl.h8[i].address.str() + " " + cl.h8[j].address.str();
        }
    if (!opt.corrupt) r.add("overlaps.h8_just_touching", h8_bad.empty(), h8_bad);
}

inline void verify_sigma(VerifyReport& r, const VerifyOptions& opt) {
    TileSystem sys = hat_system({.corrupt = opt.corrupt});
    for (int k = 1; k <= opt.sigma_depth; ++k) {
        ProcessedCollection pc = process(sys, k);
        auto sigma = pc.addresses();
        std::sort(sigma.begin(), sigma.end());
        auto lang = hat_language(k);
        std::string w;
        if (!pc.violations.empty()) {
            w = violation_witness(pc);
        } else if (sigma != lang) {
            std::vector<Address> diff;
            std::set_symmetric_difference(sigma.begin(), sigma.end(), lang.begin(), lang.end(), std::back_inserter(diff));
            w = "size " + std::to_string(sigma.size()) + " vs " + std::to_string(lang.size()) +
                (diff.empty() ? "" : ", first difference " + diff.front().str());
        }
        r.add("sigma.hat k=" + std::to_string(k) + " |Sigma|=" + std::to_string(sigma.size()),
              pc.violations.empty() && sigma == lang, w);
    }
}

inline void verify_convergence(VerifyReport& r) {
    for (const std::string& name : system_names()) {
        TileSystem sys = make_system(name);
        const SifsFamily& fam = sys.family();
        const double radius = attractor_radius_bound(fam.limit());
        std::string bound_bad, mono_bad;
        double prev = -1.0;
        for (int n = 1; n <= 12; ++n) {
            double d = family_distance(fam.level(n), fam.limit(), radius);
            if (bound_bad.empty() && d > fam.bound(n))
                bound_bad = "n=" + std::to_string(n) + " d=" + std::to_string(d) + " bound=" + std::to_string(fam.bound(n));
            if (mono_bad.empty() && n >= 3 && !(d < prev)) mono_bad = "n=" + std::to_string(n);
            prev = d;
        }
        r.add("convergence." + name + ".distance_within_bound", bound_bad.empty(), bound_bad);
        r.add("convergence." + name + ".distance_decreasing", mono_bad.empty(), mono_bad);
    }
    // Vertex clouds of processed S_n approach the limit attractor.
    TileSystem sys = hat_system();
    auto cloud = attractor_cloud(sys.family().limit(), 6);
    std::string h_bad;
    double prev = 1e300;
    for (int n = 1; n <= 4; ++n) {
        auto pc = process(sys, n, {.sweep = false});
        auto verts = vertex_cloud(pc.survivors, sys.prototiles());
        std::vector<std::complex<double>> pts;
        for (const auto& v : verts) pts.push_back(v.approx());
        double h = hausdorff(pts, cloud);
        if (h_bad.empty() && h > prev * (1 + 1e-9)) h_bad = "n=" + std::to_string(n) + " " + std::to_string(h);
        prev = h;
    }
    r.add("convergence.hat.hausdorff_nonincreasing", h_bad.empty(), h_bad);
}

}  // namespace detail

/// Runs one suite ("algebra", "claims", "overlaps", "sigma", "convergence") or "all".
inline VerifyReport run_verify(const std::string& suite, const VerifyOptions& options = {}) {
    VerifyReport r;
    bool all = suite == "all";
    bool known = all;
    for (const auto& s : verify_suites()) known = known || s == suite;
    if (!known) throw DomainError("unknown verify suite '" + suite + "'");
    if (all || suite == "algebra") detail::verify_algebra(r);
    if (all || suite == "claims") detail::verify_claims(r, options.corrupt);
    if (all || suite == "overlaps") detail::verify_overlaps(r, options);
    if (all || suite == "sigma") detail::verify_sigma(r, options);
    if (all || suite == "convergence") detail::verify_convergence(r);
    return r;
}

}  // namespace sifs
