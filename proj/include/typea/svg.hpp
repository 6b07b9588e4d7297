#pragma once

// SVG 1.1 documents on a fixed 800 x 800 canvas. Coordinates are written with
// three decimals, paths in input order, so output is reproducible.

#include <span>
#include <string>

#include "typea/moduli.hpp"
#include "typea/phase_portrait.hpp"

namespace typea {

inline constexpr double kCanvasSize = 800.0;

/// Axes, one arrow per grid row (length scaled to the cell), flow curves on top.
std::string phase_portrait_svg(const Window& window, std::span<const GridRow> grid,
                               std::span<const FlowCurve> curves);

/// Polylines of the plus curve, minus curve and delta segment in the (Sigma, Psi) plane.
std::string moduli_svg(std::span<const ModuliCurvePoint> points);

}  // namespace typea
