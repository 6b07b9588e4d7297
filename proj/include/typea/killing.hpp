#pragma once

// Numerical checks of affine Killing fields, L_X(nabla) = 0, and of the chart
// u = (e^{-x^1}, x^2) carrying M3 onto ~M3.

#include <span>
#include <string>
#include <vector>

#include "typea/geodesic.hpp"

namespace typea {

enum class BasisFunction { One, X1, X2, ExpX1, SinX2, CosX2 };

/// coefficient * (product of factors) * d/dx^(direction + 1)
struct FieldTerm {
    double coefficient = 1.0;
    std::vector<BasisFunction> factors;  // empty means the constant 1
    int direction = 0;                   // 0 or 1
};

struct VectorFieldSpec {
    std::vector<FieldTerm> terms;

    Vec2 operator()(const Vec2& x) const;
};

struct NamedField {
    std::string name;
    VectorFieldSpec field;
};

/// d_1, d_2, e^{x1} cos(x2) d_1, e^{x1} sin(x2) d_1
std::vector<NamedField> m3_killing_fields();
/// xi_1..xi_3 and eta_1..eta_3 on ~M3.
std::vector<NamedField> tilde_m3_killing_fields();

/// Largest |(L_X nabla)_ij^k| over the points, with
/// (L_X nabla)_ij^k = d_i d_j X^k + X^m d_m Gamma_ij^k + Gamma_mj^k d_i X^m
///                    + Gamma_im^k d_j X^m - Gamma_ij^m d_m X^k.
/// Derivatives are central differences with step h, Richardson-refined once.
/// Throws InputDomain for h <= 0.
double verify_killing(const ModelKind& kind, const VectorFieldSpec& field, std::span<const Vec2> points,
                      double h = 1e-4);

/// Pushes the M3 symbols through Phi(x) = (e^{-x^1}, x^2) with
/// finite-difference Jacobian and Hessian of Phi and returns the largest
/// deviation from the ~M3 symbols at Phi(x).
double tilde_m3_chart_check(const Vec2& x, double h = 1e-4);

}  // namespace typea
