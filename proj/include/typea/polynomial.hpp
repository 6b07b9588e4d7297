#pragma once

#include <span>
#include <vector>

namespace typea {

struct RealRoot {
    double value = 0.0;
    int multiplicity = 1;
};

/// Real roots of a polynomial of degree <= 3 given by coefficients in
/// increasing degree. An identically zero polynomial is reported through
/// identically_zero and carries no roots.
struct PolynomialRoots {
    bool identically_zero = false;
    std::vector<RealRoot> roots;  // ascending, each distinct root once
};

/// p(x) for coefficients in increasing degree.
double evaluate_polynomial(std::span<const double> coeffs, double x) noexcept;

/// Closed form by exact degree (discriminant dispatch for quadratics and
/// cubics), then Newton polishing of simple roots until
/// |p(x)| <= tol * sum |c_i| |x|^i. Throws InputDomain for more than four
/// coefficients or non-finite input.
PolynomialRoots real_roots(std::span<const double> coeffs, double tol = 1e-12);

}  // namespace typea
