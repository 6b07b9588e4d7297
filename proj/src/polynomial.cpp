#include "typea/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "typea/error.hpp"

namespace typea {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative size below which a discriminant is treated as zero.
constexpr double kDoubleRootTolerance = 64.0 * kEps;

double magnitude_at(std::span<const double> c, double x) noexcept {
    double s = 0.0;
    double p = 1.0;
    for (double ci : c) {
        s += std::abs(ci) * p;
        p *= std::abs(x);
    }
    return s;
}

double derivative_at(std::span<const double> c, double x) noexcept {
    double s = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) s = s * x + static_cast<double>(i) * c[i];
    return s;
}

double polish(std::span<const double> c, double x, double tol) {
    for (int iter = 0; iter < 8; ++iter) {
        const double f = evaluate_polynomial(c, x);
        if (std::abs(f) <= tol * magnitude_at(c, x)) break;
        const double df = derivative_at(c, x);
        if (df == 0.0 || !std::isfinite(df)) break;
        const double next = x - f / df;
        if (!std::isfinite(next)) break;
        // Keep the step only if it does not make the residual worse.
        if (std::abs(evaluate_polynomial(c, next)) > std::abs(f)) break;
        x = next;
    }
    return x;
}

void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
    // a x^2 + b x + c with a != 0
    const double disc = b * b - 4.0 * a * c;
    const double scale = b * b + std::abs(4.0 * a * c);
    if (std::abs(disc) <= kDoubleRootTolerance * scale) {
        const double r = -b / (2.0 * a);
        out.push_back(r);
        out.push_back(r);
        return;
    }
    if (disc < 0.0) return;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
        // b == 0 and c == 0 handled by the double-root branch; here b == 0.
        const double r = std::sqrt(-c / a);
        out.push_back(-r);
        out.push_back(r);
        return;
    }
    out.push_back(q / a);
    out.push_back(c / q);
}

// Real roots of the monic cubic x^3 + A x^2 + B x + C through the depressed
// form t^3 + p t + q, dispatching on the discriminant. A discriminant that is
// zero up to roundoff yields the exact double-root formula.
void cubic_roots(double A, double B, double C, std::vector<double>& out) {
    const double p = B - A * A / 3.0;
    const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
    const double shift = -A / 3.0;
    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;

    const double q_scale = std::max({std::abs(2.0 * A * A * A / 27.0), std::abs(A * B / 3.0), std::abs(C)});
    const double p_scale = std::max(std::abs(B), A * A / 3.0);
    const double disc_scale = 0.25 * q_scale * q_scale + std::pow(p_scale / 3.0, 3);

    if (std::abs(disc) <= kDoubleRootTolerance * disc_scale) {
        const double m = std::cbrt(-half_q);
        out.push_back(2.0 * m + shift);
        out.push_back(-m + shift);
        out.push_back(-m + shift);
        return;
    }
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-half_q + std::copysign(s, -half_q));
        const double t = u != 0.0 ? u - third_p / u : 0.0;
        out.push_back(t + shift);
        return;
    }
    const double r = std::sqrt(-third_p);
    const double arg = std::clamp(-half_q / (r * r * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) out.push_back(2.0 * r * std::cos(phi - 2.0 * M_PI * k / 3.0) + shift);
}

}  // namespace

double evaluate_polynomial(std::span<const double> coeffs, double x) noexcept {
    double s = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
    return s;
}

PolynomialRoots real_roots(std::span<const double> coeffs, double tol) {
    if (coeffs.size() > 4) throw Error(ErrorKind::InputDomain, "real_roots handles degree <= 3");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw Error(ErrorKind::InputDomain, "polynomial coefficients must be finite");

    int degree = -1;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0.0) degree = static_cast<int>(i);

    PolynomialRoots out;
    if (degree < 0) {
        out.identically_zero = true;
        return out;
    }
    const std::span<const double> c = coeffs.first(static_cast<std::size_t>(degree) + 1);

    std::vector<double> raw;
    switch (degree) {
        case 0:
            break;
        case 1:
            raw.push_back(-c[0] / c[1]);
            break;
        case 2:
            quadratic_roots(c[2], c[1], c[0], raw);
            break;
        case 3:
            cubic_roots(c[2] / c[3], c[1] / c[3], c[0] / c[3], raw);
            break;
        default:
            break;
    }

    std::sort(raw.begin(), raw.end());
    // Repeated roots come from the exact double-root formulas; only simple
    // roots are Newton-polished.
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const bool repeated = (i > 0 && raw[i] == raw[i - 1]) || (i + 1 < raw.size() && raw[i] == raw[i + 1]);
        if (!repeated) raw[i] = polish(c, raw[i], tol);
    }
    std::sort(raw.begin(), raw.end());

    // Merge coincident roots into multiplicities.
    for (double r : raw) {
        if (!out.roots.empty()) {
            RealRoot& last = out.roots.back();
            const double gap = std::abs(r - last.value);
            if (gap <= 1e-7 * std::max(1.0, std::abs(r))) {
                last.value = (last.value * last.multiplicity + r) / (last.multiplicity + 1);
                ++last.multiplicity;
                continue;
            }
        }
        out.roots.push_back({r, 1});
    }
    return out;
}

}  // namespace typea
