#include "idpm/io/svg.hpp"

#include <fmt/format.h>

#include "idpm/errors.hpp"
#include "idpm/io/binary.hpp"

namespace idpm::io {

namespace {

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string scatter_svg(const nn::Matrix& points, const ScatterOptions& options) {
    if (points.cols() != 2) {
        throw ShapeError("scatter: unsupported dimension d = " + std::to_string(points.cols()) + " (only d = 2)");
    }
    if (!(options.extent > 0.0)) throw ConfigError("scatter: extent must be positive");
    const double half = scatter_canvas / 2.0;
    const double scale = half / options.extent;
    const auto px = [&](double v) { return half + v * scale; };
    const auto py = [&](double v) { return half - v * scale; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {0} {0}\" width=\"{0}\" height=\"{0}\">\n",
        scatter_canvas);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", scatter_canvas);
    out += fmt::format("<line x1=\"0\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#ccc\"/>\n", half, scatter_canvas);
    out += fmt::format("<line x1=\"{0}\" y1=\"0\" x2=\"{0}\" y2=\"{1}\" stroke=\"#ccc\"/>\n", half, scatter_canvas);
    if (options.unit_circle) {
        out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#d33\" stroke-dasharray=\"4 3\"/>\n",
                           half, half, scale);
    }
    if (!options.title.empty()) {
        out += fmt::format("<text x=\"8\" y=\"16\" font-size=\"12\">{}</text>\n", escape_xml(options.title));
    }
    for (std::size_t r = 0; r < points.rows(); ++r) {
        out += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"1.5\" fill=\"#2a6fdb\" fill-opacity=\"0.6\"/>\n",
                           px(points(r, 0)), py(points(r, 1)));
    }
    out += "</svg>\n";
    return out;
}

void write_scatter_svg(const nn::Matrix& points, const std::filesystem::path& path, const ScatterOptions& options) {
    write_file_atomic(path, scatter_svg(points, options));
}

} // namespace idpm::io
