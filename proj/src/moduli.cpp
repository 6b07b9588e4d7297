#include "typea/moduli.hpp"

#include <cmath>

#include "typea/error.hpp"

namespace typea {

const char* to_string(ModuliBranch b) noexcept {
    switch (b) {
        case ModuliBranch::PlusCurve: return "plus";
        case ModuliBranch::MinusCurve: return "minus";
        case ModuliBranch::DeltaSegment: return "delta";
    }
    return "unknown";
}

ModuliCurvePoint sigma_plus(double t) {
    const double t2 = t * t;
    return {ModuliBranch::PlusCurve, t, 4.0 * t2 + 1.0 / t2 + 2.0, 4.0 * t2 * t2 + 4.0 * t2 + 2.0};
}

ModuliCurvePoint sigma_minus(double t) {
    const double t2 = t * t;
    return {ModuliBranch::MinusCurve, t, -4.0 * t2 - 1.0 / t2 + 2.0, 4.0 * t2 * t2 - 4.0 * t2 + 2.0};
}

ModuliCurvePoint delta_segment(double delta) {
    return {ModuliBranch::DeltaSegment, delta, -3.0 + 2.0 * delta * delta, 2.0};
}

std::vector<ModuliCurvePoint> moduli_points(const ModuliRequest& r) {
    const auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(r.t_lo) || !finite(r.t_hi) || !(r.t_lo > 0.0) || r.t_hi < r.t_lo)
        throw Error(ErrorKind::InputDomain, "t-range must be positive and ordered");
    if (!finite(r.delta_lo) || !finite(r.delta_hi) || r.delta_lo < 0.0 || r.delta_hi < r.delta_lo)
        throw Error(ErrorKind::InputDomain, "delta-range must be nonnegative and ordered");
    if (r.n < 2) throw Error(ErrorKind::InputDomain, "moduli sampling needs n >= 2");

    const auto at = [n = r.n](double lo, double hi, int i) {
        if (i == n - 1) return hi;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    std::vector<ModuliCurvePoint> out;
    out.reserve(3 * static_cast<std::size_t>(r.n));
    for (int i = 0; i < r.n; ++i) out.push_back(sigma_plus(at(r.t_lo, r.t_hi, i)));
    for (int i = 0; i < r.n; ++i) out.push_back(sigma_minus(at(r.t_lo, r.t_hi, i)));
    for (int i = 0; i < r.n; ++i) out.push_back(delta_segment(at(r.delta_lo, r.delta_hi, i)));
    return out;
}

}  // namespace typea
