#pragma once

// The velocity flow (u, v) = (-dx^1/dt, -dx^2/dt) of a Type A model. By
// homogeneity of E_i it reads (du/dt, dv/dt) = (E_1(u, v), E_2(u, v)).

#include <span>
#include <vector>

#include "typea/affine_core.hpp"
#include "typea/integrator.hpp"

namespace typea {

Vec2 phase_field_eval(const ChristoffelSymbols& c, double u, double v) noexcept;

struct FlowSample {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
};

struct FlowCurve {
    std::vector<FlowSample> samples;
    Termination termination = Termination::HorizonReached;
    std::optional<double> escape_time;
    IntegrationStats stats;
};

/// Blow-up is monitored on |(u, v)|.
FlowCurve flow_integrate(const ChristoffelSymbols& c, const Vec2& p0, double t0, double t1,
                         const IntegrateOptions& opts = {});

/// For M-(delta): the slope alpha = (-u + delta v) / v of the flow satisfies
/// d(alpha)/dt = u (-v^2 - u^2 + delta u v) / v^2 <= -(1 - delta/2) |u| at every sample. Throws InputDomain for
/// delta outside [0, 2) or a sample with u <= 0, v == 0 or non-finite entries.
bool slope_certificate(double delta, std::span<const Vec2> samples);

/// For M-(delta): d/dt (u^2 + v^2) = 2 delta u v^2 <= 0 at every sample. Throws InputDomain
/// for delta < 0 or a sample with u > 0.
bool radial_certificate(double delta, std::span<const Vec2> samples);

struct Window {
    double umin = -2.0;
    double umax = 2.0;
    double vmin = -2.0;
    double vmax = 2.0;
};

struct GridRow {
    double u = 0.0;
    double v = 0.0;
    double du = 0.0;
    double dv = 0.0;
};

/// n x n uniform sample, v-major then u ascending. Throws InputDomain for
/// n < 2 or a window with empty interior.
std::vector<GridRow> field_grid(const ChristoffelSymbols& c, const Window& window, int n);

/// True when the curve leaves the open first quadrant and later returns to it.
bool reenters_first_quadrant(const FlowCurve& curve) noexcept;

}  // namespace typea
