#include "typea/killing.hpp"

#include <algorithm>
#include <cmath>

namespace typea {

namespace {

double basis_value(BasisFunction f, const Vec2& x) {
    switch (f) {
        case BasisFunction::One: return 1.0;
        case BasisFunction::X1: return x[0];
        case BasisFunction::X2: return x[1];
        case BasisFunction::ExpX1: return std::exp(x[0]);
        case BasisFunction::SinX2: return std::sin(x[1]);
        case BasisFunction::CosX2: return std::cos(x[1]);
    }
    return 0.0;
}

using Sym = std::array<double, 6>;  // (11^1, 11^2, 12^1, 12^2, 22^1, 22^2)

Sym flatten(const ChristoffelSymbols& c) { return {c.c111, c.c112, c.c121, c.c122, c.c221, c.c222}; }

int slot(int i, int j, int k) {
    if (i > j) std::swap(i, j);
    return (i + j) * 2 + k;  // (0,0)->0, (0,1)->2, (1,1)->4
}

template <typename F>
auto richardson(F&& estimate, double h) {
    auto coarse = estimate(h);
    auto fine = estimate(0.5 * h);
    for (std::size_t n = 0; n < fine.size(); ++n) fine[n] = (4.0 * fine[n] - coarse[n]) / 3.0;
    return fine;
}

Vec2 shifted(const Vec2& p, int i, double s) {
    Vec2 q = p;
    q[i] += s;
    return q;
}

Vec2 shifted(const Vec2& p, int i, double si, int j, double sj) {
    Vec2 q = p;
    q[i] += si;
    q[j] += sj;
    return q;
}

// d_i f^k as jac[k][i]
template <typename F>
std::array<Vec2, 2> jacobian(F&& f, const Vec2& p, double h) {
    auto flat = richardson(
        [&](double s) {
            std::array<double, 4> d{};
            for (int i = 0; i < 2; ++i) {
                const Vec2 plus = f(shifted(p, i, s));
                const Vec2 minus = f(shifted(p, i, -s));
                for (int k = 0; k < 2; ++k) d[k * 2 + i] = (plus[k] - minus[k]) / (2.0 * s);
            }
            return d;
        },
        h);
    return {Vec2{flat[0], flat[1]}, Vec2{flat[2], flat[3]}};
}

// d_i d_j f^k as hess[k][i][j]
template <typename F>
std::array<std::array<Vec2, 2>, 2> hessian(F&& f, const Vec2& p, double h) {
    auto flat = richardson(
        [&](double s) {
            std::array<double, 8> d{};
            const Vec2 centre = f(p);
            for (int i = 0; i < 2; ++i) {
                for (int j = i; j < 2; ++j) {
                    Vec2 value{};
                    if (i == j) {
                        const Vec2 plus = f(shifted(p, i, s));
                        const Vec2 minus = f(shifted(p, i, -s));
                        for (int k = 0; k < 2; ++k) value[k] = (plus[k] - 2.0 * centre[k] + minus[k]) / (s * s);
                    } else {
                        const Vec2 pp = f(shifted(p, i, s, j, s));
                        const Vec2 pm = f(shifted(p, i, s, j, -s));
                        const Vec2 mp = f(shifted(p, i, -s, j, s));
                        const Vec2 mm = f(shifted(p, i, -s, j, -s));
                        for (int k = 0; k < 2; ++k) value[k] = (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * s * s);
                    }
                    for (int k = 0; k < 2; ++k) {
                        d[k * 4 + i * 2 + j] = value[k];
                        d[k * 4 + j * 2 + i] = value[k];
                    }
                }
            }
            return d;
        },
        h);
    std::array<std::array<Vec2, 2>, 2> out{};
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out[k][i][j] = flat[k * 4 + i * 2 + j];
    return out;
}

FieldTerm term(double coefficient, std::vector<BasisFunction> factors, int direction) {
    return {coefficient, std::move(factors), direction};
}

}  // namespace

Vec2 VectorFieldSpec::operator()(const Vec2& x) const {
    Vec2 out{};
    for (const FieldTerm& t : terms) {
        double value = t.coefficient;
        for (BasisFunction f : t.factors) value *= basis_value(f, x);
        out[t.direction] += value;
    }
    return out;
}

std::vector<NamedField> m3_killing_fields() {
    using B = BasisFunction;
    return {
        {"d1", {{term(1.0, {}, 0)}}},
        {"d2", {{term(1.0, {}, 1)}}},
        {"exp(x1)cos(x2)d1", {{term(1.0, {B::ExpX1, B::CosX2}, 0)}}},
        {"exp(x1)sin(x2)d1", {{term(1.0, {B::ExpX1, B::SinX2}, 0)}}},
    };
}

std::vector<NamedField> tilde_m3_killing_fields() {
    using B = BasisFunction;
    return {
        {"xi1", {{term(1.0, {B::X1}, 0)}}},
        {"xi2", {{term(1.0, {B::X1}, 0), term(1.0, {B::CosX2}, 0)}}},
        {"xi3", {{term(1.0, {B::X1}, 0), term(-1.0, {B::SinX2}, 0)}}},
        {"eta1", {{term(1.0, {}, 1)}}},
        {"eta2", {{term(1.0, {}, 1), term(1.0, {B::SinX2}, 0)}}},
        {"eta3", {{term(1.0, {}, 1), term(1.0, {B::CosX2}, 0)}}},
    };
}

double verify_killing(const ModelKind& kind, const VectorFieldSpec& field, std::span<const Vec2> points,
                      double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::InputDomain, "finite-difference step must be positive");
    double worst = 0.0;
    for (const Vec2& p : points) {
        const Vec2 x = field(p);
        const auto dx = jacobian(field, p, h);  // dx[k][i] = d_i X^k
        const auto ddx = hessian(field, p, h);
        const ChristoffelSymbols gamma = christoffel_at(kind, p);
        // X^m d_m Gamma as a central difference along X.
        const Sym dgamma = richardson(
            [&](double s) {
                const Sym plus = flatten(christoffel_at(kind, {p[0] + s * x[0], p[1] + s * x[1]}));
                const Sym minus = flatten(christoffel_at(kind, {p[0] - s * x[0], p[1] - s * x[1]}));
                Sym d{};
                for (std::size_t n = 0; n < d.size(); ++n) d[n] = (plus[n] - minus[n]) / (2.0 * s);
                return d;
            },
            h);
        for (int i = 0; i < 2; ++i) {
            for (int j = i; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    double l = ddx[k][i][j] + dgamma[slot(i, j, k)];
                    for (int m = 0; m < 2; ++m) {
                        l += gamma(m, j, k) * dx[m][i] + gamma(i, m, k) * dx[m][j] - gamma(i, j, m) * dx[k][m];
                    }
                    worst = std::max(worst, std::abs(l));
                }
            }
        }
    }
    return worst;
}

double tilde_m3_chart_check(const Vec2& x, double h) {
    auto phi = [](const Vec2& p) { return Vec2{std::exp(-p[0]), p[1]}; };
    const ChristoffelSymbols source = canonical_model(CanonicalFamily::M3);
    const auto jac = jacobian(phi, x, h);  // jac[c][k] = du^c / dx^k
    const auto hess = hessian(phi, x, h);  // hess[c][i][j]
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    // inv[i][a] = dx^i / du^a
    const std::array<Vec2, 2> inv{Vec2{jac[1][1] / det, -jac[0][1] / det}, Vec2{-jac[1][0] / det, jac[0][0] / det}};

    const Vec2 u = phi(x);
    const ChristoffelSymbols expected = christoffel_at(TildeM3Model{}, u);
    double worst = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = a; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                double value = 0.0;
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        double inner = -hess[c][i][j];
                        for (int k = 0; k < 2; ++k) inner += jac[c][k] * source(i, j, k);
                        value += inv[i][a] * inv[j][b] * inner;
                    }
                }
                worst = std::max(worst, std::abs(value - expected(a, b, c)));
            }
        }
    }
    return worst;
}

}  // namespace typea
