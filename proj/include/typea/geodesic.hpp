#pragma once

// Geodesic flow of Type A models and of the variable-coefficient surface
// ~M3 (Gamma_22^1(x) = x^1, all other symbols zero).

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "typea/affine_core.hpp"
#include "typea/integrator.hpp"

namespace typea {

struct ConstantModel {
    ChristoffelSymbols symbols;
};
struct TildeM3Model {};

using ModelKind = std::variant<ConstantModel, TildeM3Model>;

/// Christoffel symbols of the model at x.
ChristoffelSymbols christoffel_at(const ModelKind& kind, const Vec2& x);

struct GeodesicState {
    Vec2 x{};
    Vec2 v{};
};

/// (v, a) with a^k = -Gamma_ij^k(x) v^i v^j.
std::array<double, 4> geodesic_rhs(const ModelKind& kind, const GeodesicState& s);

struct TrajectorySample {
    double t = 0.0;
    Vec2 x{};
    Vec2 v{};
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Termination termination = Termination::HorizonReached;
    std::optional<double> escape_time;
    IntegrationStats stats;
};

/// Integrates the geodesic equation; blow-up is monitored on |v|.
Trajectory integrate(const ModelKind& kind, const GeodesicState& s0, double t0, double t1,
                     const IntegrateOptions& opts = {});

/// h(t; d) = sum_{n >= 1} d^(n-1) t^n / n!, i.e. t for d = 0 and
/// (e^(dt) - 1) / d otherwise.
double h_function(double t, double d);

inline constexpr double kHSwitchTolerance = 1e-4;

/// Geodesic of M2 through (a, b) with velocity (c, d) at t = 0.
Vec2 closed_form_m2(double a, double b, double c, double d, double t);

/// Geodesic of ~M3 through (a, b) with velocity (c, d) at t = 0.
Vec2 closed_form_m3tilde(double a, double b, double c, double d, double t);

enum class ExpModel { M2, TildeM3 };

/// Time-one geodesic flow from base with initial velocity tangent.
Vec2 exp_map(ExpModel model, const Vec2& base, const Vec2& tangent);

/// The curve (a, b) log t and its velocity at t > 0.
GeodesicState log_geodesic_curve(double a, double b, double t);

struct Rank1Witness {
    Trajectory trajectory;
    LinearMap adapted_frame;   // w = T x with dw^2 proportional to the Ricci covector
    bool exact_log_geodesic = false;  // the initial data lies on a curve (a, b) log(t + 1)
    std::vector<std::pair<double, double>> kappa;  // (t, rho(v, v)) per sample
    std::optional<double> kappa_exponent;  // slope of log kappa vs log(t - t_esc)
};

/// For a rank-1 model with nabla rho != 0, integrates backward from t = 0 along
/// initial data adapted to the Ricci covector; the x^2 component in the adapted
/// frame is (C_22^2)^(-1) log(1 + t) so the escape happens at t = -1.
/// Throws Misuse unless rank(rho) = 1 and nabla rho != 0.
Rank1Witness rank1_incomplete_witness(const ChristoffelSymbols& c, const IntegrateOptions& opts = {});

}  // namespace typea
