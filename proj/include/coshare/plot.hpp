#pragma once

#include <span>
#include <string>
#include <vector>

#include "coshare/poly.hpp"

namespace coshare::plot {

struct Curve {
    std::string label;
    Polynomial poly;
};

// Positions x in 0..p-1 where at least two curves take the same value.
std::vector<std::uint64_t> agreement_xs(std::span<const Curve> curves);

// One period of every curve (x = 0..p-1) as a point plot: samples joined
// by straight segments, agreement positions drawn as filled markers.
// Integer coordinates only, so output is byte-stable.
std::string render_svg(std::span<const Curve> curves);

// Tab-separated table of (x, f_j(x)) rows with a final column marking
// agreement positions.
std::string render_points_table(std::span<const Curve> curves);

} // namespace coshare::plot
