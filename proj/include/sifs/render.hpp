#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sifs/ifs.hpp"
#include "sifs/polygon.hpp"

namespace sifs {

/// Fill colours keyed by the first address symbol (symbol 1 -> entry 0).
inline constexpr std::array<const char*, 8> kPalette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                                       "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};

struct RenderSpec {
    double stroke_width = 0.0;  // 0 picks 1/400 of the larger viewport side
    double margin = 0.02;       // fraction of the larger side added on every edge
    double pixel_width = 800.0;
    double marker_radius = 0.0;  // clouds; 0 picks 1/1000 of the larger side
};

/// "%.9g": nine significant digits, the same bytes on every run.
inline std::string svg_number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace detail {

struct Viewport {
    double x0, y0, w, h;  // SVG user coordinates (y already negated)
};

inline Viewport fit(double xmin, double xmax, double ymin, double ymax, double margin) {
    double side = std::max({xmax - xmin, ymax - ymin, 1e-9});
    double pad = margin * side;
    if (xmax - xmin < 1e-9 && ymax - ymin < 1e-9) pad = 1.0;
    return {xmin - pad, -ymax - pad, xmax - xmin + 2 * pad, ymax - ymin + 2 * pad};
}

inline void open_svg(std::ostringstream& os, const Viewport& v, double pixel_width) {
    double height = pixel_width * v.h / v.w;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << svg_number(pixel_width)
       << "\" height=\"" << svg_number(height) << "\" viewBox=\"" << svg_number(v.x0) << ' ' << svg_number(v.y0) << ' '
       << svg_number(v.w) << ' ' << svg_number(v.h) << "\">\n";
}

}  // namespace detail

/// One closed path per tile, filled by its first address symbol. The plane's
/// y axis points up, so coordinates are emitted with y negated.
inline std::string render_svg(std::span<const AddressedTile> tiles, std::span<const Polygon> prototiles,
                              const RenderSpec& spec = {}) {
    if (tiles.empty()) throw DomainError("render_svg needs at least one tile");
    std::vector<std::vector<std::complex<double>>> paths;
    paths.reserve(tiles.size());
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& t : tiles) {
        Polygon p = transform_polygon(t.transform, prototiles[t.prototile]);
        auto& path = paths.emplace_back();
        for (const auto& v : p.vertices()) {
            auto z = v.to_complex();
            path.push_back(z);
            xmin = std::min(xmin, z.real()), xmax = std::max(xmax, z.real());
            ymin = std::min(ymin, z.imag()), ymax = std::max(ymax, z.imag());
        }
    }
    auto view = detail::fit(xmin, xmax, ymin, ymax, spec.margin);
    double stroke = spec.stroke_width > 0 ? spec.stroke_width : std::max(view.w, view.h) / 400.0;
    std::ostringstream os;
    detail::open_svg(os, view, spec.pixel_width);
    os << "<g stroke=\"#202020\" stroke-width=\"" << svg_number(stroke) << "\" stroke-linejoin=\"round\">\n";
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        int first = tiles[i].address.empty() ? 1 : tiles[i].address.front();
        os << "<path data-address=\"" << (tiles[i].address.empty() ? "" : tiles[i].address.str()) << "\" fill=\""
           << kPalette[static_cast<std::size_t>(first - 1) % kPalette.size()] << "\" d=\"";
        for (std::size_t j = 0; j < paths[i].size(); ++j)
            os << (j == 0 ? "M" : " L") << svg_number(paths[i][j].real()) << ',' << svg_number(-paths[i][j].imag());
        os << " Z\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

/// One dot per point.
inline std::string render_cloud(std::span<const std::complex<double>> points, const RenderSpec& spec = {}) {
    if (points.empty()) throw DomainError("render_cloud needs at least one point");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto z : points) {
        xmin = std::min(xmin, z.real()), xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag()), ymax = std::max(ymax, z.imag());
    }
    auto view = detail::fit(xmin, xmax, ymin, ymax, spec.margin);
    double r = spec.marker_radius > 0 ? spec.marker_radius : std::max(view.w, view.h) / 1000.0;
    std::ostringstream os;
    detail::open_svg(os, view, spec.pixel_width);
    os << "<g fill=\"#202020\">\n";
    for (auto z : points)
        os << "<circle cx=\"" << svg_number(z.real()) << "\" cy=\"" << svg_number(-z.imag()) << "\" r=\""
           << svg_number(r) << "\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << contents;
    if (!out.flush()) throw Error("write to " + path + " failed");
}

}  // namespace sifs
