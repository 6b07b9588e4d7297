#include "typea/geodesic.hpp"

#include <cmath>
#include <limits>

#include "typea/completeness.hpp"
#include "typea/polynomial.hpp"

namespace typea {

ChristoffelSymbols christoffel_at(const ModelKind& kind, const Vec2& x) {
    if (const auto* m = std::get_if<ConstantModel>(&kind)) return m->symbols;
    ChristoffelSymbols c;
    c.c221 = x[0];
    return c;
}

std::array<double, 4> geodesic_rhs(const ModelKind& kind, const GeodesicState& s) {
    const ChristoffelSymbols c = christoffel_at(kind, s.x);
    const Vec2 e = e_values(c, s.v[0], s.v[1]);
    return {s.v[0], s.v[1], -e[0], -e[1]};
}

Trajectory integrate(const ModelKind& kind, const GeodesicState& s0, double t0, double t1,
                     const IntegrateOptions& opts) {
    if (const auto* m = std::get_if<ConstantModel>(&kind); m && !m->symbols.is_finite())
        throw Error(ErrorKind::InputDomain, "Christoffel symbols must be finite");
    using State = std::array<double, 4>;
    const OdeRhs<4> rhs = [&kind](const State& y, State& dydt) {
        dydt = geodesic_rhs(kind, {{y[0], y[1]}, {y[2], y[3]}});
    };
    const OdeNorm<4> velocity_norm = [](const State& y) { return std::hypot(y[2], y[3]); };
    const auto sol = integrate_autonomous<4>(rhs, {s0.x[0], s0.x[1], s0.v[0], s0.v[1]}, t0, t1, opts,
                                             velocity_norm);
    Trajectory out;
    out.samples.reserve(sol.samples.size());
    for (const auto& s : sol.samples) out.samples.push_back({s.t, {s.y[0], s.y[1]}, {s.y[2], s.y[3]}});
    out.termination = sol.termination;
    out.escape_time = sol.escape_time;
    out.stats = sol.stats;
    return out;
}

double h_function(double t, double d) {
    if (std::abs(d) >= kHSwitchTolerance) return std::expm1(d * t) / d;
    double term = t;
    double sum = t;
    for (int n = 1; n < 400; ++n) {
        term *= d * t / (n + 1);
        sum += term;
        if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
    }
    return sum;
}

Vec2 closed_form_m2(double a, double b, double c, double d, double t) {
    return {a + c * h_function(t, d), b + d * t};
}

Vec2 closed_form_m3tilde(double a, double b, double c, double d, double t) {
    if (d == 0.0) return {a + c * t, b};
    return {a * std::cos(d * t) + c / d * std::sin(d * t), b + d * t};
}

Vec2 exp_map(ExpModel model, const Vec2& base, const Vec2& tangent) {
    if (model == ExpModel::M2) return closed_form_m2(base[0], base[1], tangent[0], tangent[1], 1.0);
    return closed_form_m3tilde(base[0], base[1], tangent[0], tangent[1], 1.0);
}

GeodesicState log_geodesic_curve(double a, double b, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::InputDomain, "log-geodesic needs t > 0");
    const double l = std::log(t);
    return {{a * l, b * l}, {a / t, b / t}};
}

namespace {

std::optional<double> fit_power_law(const std::vector<std::pair<double, double>>& kappa, double escape) {
    // Slope of log|kappa| against log(distance to escape) over the final decades.
    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, k] : kappa) {
        const double dist = std::abs(t - escape);
        if (dist > 1e-6 && dist < 1e-1 && k != 0.0) pts.emplace_back(std::log(dist), std::log(std::abs(k)));
    }
    if (pts.size() < 5) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

}  // namespace

Rank1Witness rank1_incomplete_witness(const ChristoffelSymbols& c, const IntegrateOptions& opts) {
    const RicciReport report = ricci_report(c);
    if (report.rank != 1 || report.is_symmetric_space)
        throw Error(ErrorKind::Misuse, "rank-1 witness needs rank-1 Ricci with nabla rho != 0");

    // rho = mu e (x) e for the unit eigenvector e of the nonzero eigenvalue.
    const SymmetricBilinear& rho = report.rho;
    const auto ev = eigenvalues(rho);
    const double mu = std::abs(ev[0]) > std::abs(ev[1]) ? ev[0] : ev[1];
    Vec2 e = std::abs(rho.m11 - mu) + std::abs(rho.m12) > std::abs(rho.m22 - mu) + std::abs(rho.m12)
                 ? Vec2{-rho.m12, rho.m11 - mu}
                 : Vec2{rho.m22 - mu, -rho.m12};
    const double len = std::hypot(e[0], e[1]);
    e = {e[0] / len, e[1] / len};

    // w^1 = e_perp . x, w^2 = e . x
    const LinearMap frame{-e[1], e[0], e[0], e[1]};
    const ChristoffelSymbols adapted = pushforward(c, frame);
    const double scale = std::max(1.0, adapted.max_abs());
    if (std::abs(adapted.c112) > 1e-8 * scale || std::abs(adapted.c122) > 1e-8 * scale)
        throw Error(ErrorKind::InternalInconsistency, "adapted frame does not annihilate C_11^2, C_12^2");
    const double c22 = adapted.c222;
    if (std::abs(c22) <= 1e-12 * scale)
        throw Error(ErrorKind::InternalInconsistency, "adapted C_22^2 vanishes although nabla rho != 0");

    // With b = 1 / C_22^2 the first component of a log-geodesic solves
    // C_11^1 z^2 + (2 C_12^1 / C_22^2 - 1) z + C_22^1 / C_22^2^2 = 0.
    const double b = 1.0 / c22;
    const std::array<double, 3> coeffs{adapted.c221 * b * b, 2.0 * adapted.c121 * b - 1.0, adapted.c111};
    const PolynomialRoots roots = real_roots(coeffs);
    double z = 0.0;
    bool exact = roots.identically_zero;
    if (!roots.identically_zero && !roots.roots.empty()) {
        z = roots.roots.front().value;
        for (const RealRoot& r : roots.roots)
            if (std::abs(r.value) < std::abs(z)) z = r.value;
        exact = true;
    }

    const Vec2 v0 = frame.inverse().apply({z, b});
    Rank1Witness out;
    out.adapted_frame = frame;
    out.exact_log_geodesic = exact;
    out.trajectory = integrate(ConstantModel{c}, {{0.0, 0.0}, v0}, 0.0, -2.0, opts);
    out.kappa.reserve(out.trajectory.samples.size());
    for (const auto& s : out.trajectory.samples) out.kappa.emplace_back(s.t, rho.apply(s.v, s.v));
    if (out.trajectory.termination == Termination::BlowUp && out.trajectory.escape_time)
        out.kappa_exponent = fit_power_law(out.kappa, *out.trajectory.escape_time);
    return out;
}

}  // namespace typea
