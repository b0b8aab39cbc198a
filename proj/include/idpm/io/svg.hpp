#pragma once

#include <filesystem>
#include <string>

#include "idpm/nn/matrix.hpp"

namespace idpm::io {

struct ScatterOptions {
    // Points are mapped from [-extent, extent]^2 onto the fixed viewBox.
    double extent = 2.0;
    bool unit_circle = false;
    std::string title;
};

inline constexpr double scatter_canvas = 400.0;

// Rows of `points` must be 2-D; anything else throws ShapeError.
std::string scatter_svg(const nn::Matrix& points, const ScatterOptions& options = {});
void write_scatter_svg(const nn::Matrix& points, const std::filesystem::path& path,
                       const ScatterOptions& options = {});

} // namespace idpm::io
