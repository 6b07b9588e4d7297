#pragma once

// Points of the (Sigma, Psi) moduli picture for rank-2 models.

#include <vector>

namespace typea {

enum class ModuliBranch { PlusCurve, MinusCurve, DeltaSegment };

const char* to_string(ModuliBranch b) noexcept;  // "plus", "minus", "delta"

struct ModuliCurvePoint {
    ModuliBranch branch = ModuliBranch::PlusCurve;
    double t = 0.0;  // curve parameter, or delta on the segment
    double sigma = 0.0;
    double psi = 0.0;
};

/// sigma_+(t) = (4t^2 + 1/t^2 + 2, 4t^4 + 4t^2 + 2)
ModuliCurvePoint sigma_plus(double t);
/// sigma_-(t) = (-4t^2 - 1/t^2 + 2, 4t^4 - 4t^2 + 2)
ModuliCurvePoint sigma_minus(double t);
/// (Sigma, Psi) of M-(delta): (-3 + 2 delta^2, 2).
ModuliCurvePoint delta_segment(double delta);

struct ModuliRequest {
    double t_lo = 0.5;
    double t_hi = 2.0;
    double delta_lo = 0.0;
    double delta_hi = 1.9;
    int n = 61;
};

/// n samples per branch, uniformly spaced with exact endpoints; plus curve,
/// then minus curve, then the segment. Throws InputDomain for t_lo <= 0,
/// reversed ranges, a negative delta or n < 2.
std::vector<ModuliCurvePoint> moduli_points(const ModuliRequest& request);

}  // namespace typea
