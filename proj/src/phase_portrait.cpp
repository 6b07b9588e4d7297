#include "typea/phase_portrait.hpp"

#include <cmath>

#include "typea/completeness.hpp"

namespace typea {

Vec2 phase_field_eval(const ChristoffelSymbols& c, double u, double v) noexcept { return e_values(c, u, v); }

FlowCurve flow_integrate(const ChristoffelSymbols& c, const Vec2& p0, double t0, double t1,
                         const IntegrateOptions& opts) {
    if (!c.is_finite()) throw Error(ErrorKind::InputDomain, "Christoffel symbols must be finite");
    const OdeRhs<2> rhs = [&c](const Vec2& y, Vec2& dydt) { dydt = phase_field_eval(c, y[0], y[1]); };
    const OdeNorm<2> norm = [](const Vec2& y) { return std::hypot(y[0], y[1]); };
    const auto sol = integrate_autonomous<2>(rhs, p0, t0, t1, opts, norm);
    FlowCurve out;
    out.samples.reserve(sol.samples.size());
    for (const auto& s : sol.samples) out.samples.push_back({s.t, s.y[0], s.y[1]});
    out.termination = sol.termination;
    out.escape_time = sol.escape_time;
    out.stats = sol.stats;
    return out;
}

bool slope_certificate(double delta, std::span<const Vec2> samples) {
    if (!(delta >= 0.0 && delta < 2.0)) throw Error(ErrorKind::InputDomain, "slope certificate needs 0 <= delta < 2");
    const double margin = 1.0 - 0.5 * delta;
    bool ok = true;
    for (const Vec2& p : samples) {
        const double u = p[0], v = p[1];
        if (!std::isfinite(u) || !std::isfinite(v) || !(u > 0.0) || v == 0.0)
            throw Error(ErrorKind::InputDomain, "slope certificate samples need u > 0 and v != 0");
        const double slope_rate = u * (-v * v - u * u + delta * u * v) / (v * v);
        if (!(slope_rate <= -margin * std::abs(u))) ok = false;
    }
    return ok;
}

bool radial_certificate(double delta, std::span<const Vec2> samples) {
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw Error(ErrorKind::InputDomain, "radial certificate needs finite delta >= 0");
    bool ok = true;
    for (const Vec2& p : samples) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || p[0] > 0.0)
            throw Error(ErrorKind::InputDomain, "radial certificate samples need u <= 0");
        if (!(2.0 * delta * p[0] * p[1] * p[1] <= 0.0)) ok = false;
    }
    return ok;
}

std::vector<GridRow> field_grid(const ChristoffelSymbols& c, const Window& w, int n) {
    if (n < 2) throw Error(ErrorKind::InputDomain, "grid needs n >= 2");
    if (!std::isfinite(w.umin) || !std::isfinite(w.umax) || !std::isfinite(w.vmin) || !std::isfinite(w.vmax) ||
        !(w.umax > w.umin) || !(w.vmax > w.vmin))
        throw Error(ErrorKind::InputDomain, "window must have nonempty interior");
    std::vector<GridRow> rows;
    rows.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    const auto at = [n](double lo, double hi, int i) {
        if (i == n - 1) return hi;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    for (int j = 0; j < n; ++j) {
        const double v = at(w.vmin, w.vmax, j);
        for (int i = 0; i < n; ++i) {
            const double u = at(w.umin, w.umax, i);
            const Vec2 f = phase_field_eval(c, u, v);
            rows.push_back({u, v, f[0], f[1]});
        }
    }
    return rows;
}

bool reenters_first_quadrant(const FlowCurve& curve) noexcept {
    bool left = false;
    for (const FlowSample& s : curve.samples) {
        const bool inside = s.u > 0.0 && s.v > 0.0;
        if (!inside) left = true;
        else if (left) return true;
    }
    return false;
}

}  // namespace typea
